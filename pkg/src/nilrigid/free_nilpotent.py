"""Free nilpotent Lie algebras on Lyndon-word bases.

Bracketings are expanded in the tensor algebra and rewritten into the Lyndon
basis by repeatedly stripping the lexicographically smallest word, which is
the leading term of its standard bracketing.  Words of length m carry lower
degree m - 1, so the algebras come out Carnot-homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from string import ascii_lowercase

from . import linalg
from .errors import SizeCapError
from .lie import LieAlgebra

_ZERO = Fraction(0)

TensorPoly = dict[str, Fraction]
BracketTree = str | tuple  # a letter, or a pair of trees


def is_lyndon(w: str) -> bool:
    """Strictly smaller than all proper rotations."""
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(l: int, maxlen: int) -> dict[int, list[str]]:
    """Lyndon words over the first l letters, grouped by length (Duval)."""
    if l < 1 or maxlen < 1:
        raise ValueError("need at least one letter and length 1")
    alphabet = ascii_lowercase[:l]
    out: dict[int, list[str]] = {m: [] for m in range(1, maxlen + 1)}
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if w[-1] < l:
            out[m].append("".join(alphabet[c] for c in w))
            while len(w) < maxlen:
                w.append(w[-m])
        else:
            w.pop()
    for words in out.values():
        words.sort()
    return out


def standard_factorization(w: str) -> tuple[str, str]:
    """Split at the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("factorization needs length >= 2")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w!r} is not a Lyndon word")


def standard_bracketing(w: str) -> BracketTree:
    """Iterated standard factorization of a Lyndon word as a bracket tree."""
    if len(w) == 1:
        return w
    u, v = standard_factorization(w)
    return (standard_bracketing(u), standard_bracketing(v))


def witt_dimension(l: int, n: int) -> int:
    """Dimension of the length-n component of the free Lie algebra on l letters."""

    def mobius(m: int) -> int:
        if m == 1:
            return 1
        result = 1
        p = 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                result = -result
            else:
                p += 1
        if m > 1:
            result = -result
        return result

    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += mobius(d) * l ** (n // d)
    return total // n


def _poly_add(a: TensorPoly, b: TensorPoly, scale: Fraction = Fraction(1)) -> TensorPoly:
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, _ZERO) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def _poly_commutator(a: TensorPoly, b: TensorPoly, maxlen: int) -> TensorPoly:
    out: TensorPoly = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) > maxlen:
                continue
            c = ca * cb
            for word, sign in ((wa + wb, 1), (wb + wa, -1)):
                v = out.get(word, _ZERO) + sign * c
                if v:
                    out[word] = v
                else:
                    out.pop(word, None)
    return out


class LyndonBasis:
    """Lyndon basis of the free Lie algebra, truncated at word length c."""

    def __init__(self, l: int, c: int):
        self.l = l
        self.c = c
        self.by_length = lyndon_words(l, c)
        self.words = [w for m in range(1, c + 1) for w in self.by_length[m]]
        self.index = {w: i for i, w in enumerate(self.words)}
        self._expansion: dict[str, TensorPoly] = {}

    def expansion(self, w: str) -> TensorPoly:
        """Tensor-algebra expansion of the standard bracketing of w."""
        if w in self._expansion:
            return self._expansion[w]
        if len(w) == 1:
            poly = {w: Fraction(1)}
        else:
            u, v = standard_factorization(w)
            poly = _poly_commutator(self.expansion(u), self.expansion(v), self.c)
        self._expansion[w] = poly
        return poly

    def to_coordinates(self, poly: TensorPoly) -> dict[str, Fraction]:
        """Lyndon coordinates of a Lie element given as a tensor polynomial.

        Works because the expansion of a Lyndon bracketing is its word plus
        lexicographically larger rearrangements.
        """
        poly = {w: c for w, c in poly.items() if len(w) <= self.c and c}
        coords: dict[str, Fraction] = {}
        while poly:
            w = min(poly)
            c = poly[w]
            if w not in self.index:
                raise ValueError(f"leading word {w!r} is not Lyndon; input is not a Lie element")
            coords[w] = c
            poly = _poly_add(poly, self.expansion(w), scale=-c)
        return coords

    def tree_expansion(self, tree: BracketTree) -> TensorPoly:
        if isinstance(tree, str):
            if len(tree) != 1 or tree not in ascii_lowercase[: self.l]:
                raise ValueError(f"unknown generator {tree!r}")
            return {tree: Fraction(1)}
        left, right = tree
        return _poly_commutator(
            self.tree_expansion(left), self.tree_expansion(right), self.c
        )


def bracket_to_basis(tree: BracketTree, l: int, c: int) -> dict[str, Fraction]:
    """Expand a binary bracket tree in the Lyndon basis, truncating depth > c."""
    basis = LyndonBasis(l, c)
    return basis.to_coordinates(basis.tree_expansion(tree))


@dataclass(frozen=True)
class FreeNilpotentAlgebra:
    """Free nilpotent Lie algebra of the given class with its word basis."""

    l: int
    nilpotency_class: int
    words: tuple[str, ...]
    algebra: LieAlgebra

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(len(w) - 1 for w in self.words)


def free_nilpotent_lie(l: int, c: int, max_dim: int = 64) -> FreeNilpotentAlgebra:
    """Free nilpotent Lie algebra on l generators of class c."""
    if l < 1 or c < 1:
        raise ValueError("need l >= 1 and c >= 1")
    total = sum(witt_dimension(l, m) for m in range(1, c + 1))
    if total > max_dim:
        raise SizeCapError(f"dimension {total} exceeds the cap of {max_dim}")
    basis = LyndonBasis(l, c)
    words = basis.words
    brackets = {}
    for a, u in enumerate(words):
        for b in range(a + 1, len(words)):
            v = words[b]
            if len(u) + len(v) > c:
                continue
            poly = _poly_commutator(basis.expansion(u), basis.expansion(v), c)
            coords = basis.to_coordinates(poly)
            entries = {basis.index[w]: cf for w, cf in coords.items() if cf}
            if entries:
                brackets[(a, b)] = entries
    return FreeNilpotentAlgebra(
        l=l,
        nilpotency_class=c,
        words=tuple(words),
        algebra=LieAlgebra(tuple(words), brackets),
    )


def theorem3_family(l: int, k: int, subspace, max_dim: int = 64) -> LieAlgebra:
    """Free-to-lower-degree-k algebra whose top component is a chosen subspace.

    The input spans a subspace of the length-(k+2) Lyndon component; the
    algebra is the free nilpotent one of class k+2 with the top component
    quotiented down to that subspace (every complement is central, so the
    quotient is automatic).
    """
    free = free_nilpotent_lie(l, k + 2, max_dim=max_dim)
    top_words = [w for w in free.words if len(w) == k + 2]
    base = len(free.words) - len(top_words)
    width = len(top_words)
    svecs = [[Fraction(x) for x in vec] for vec in subspace]
    for vec in svecs:
        if len(vec) != width:
            raise ValueError(f"subspace vectors must have {width} coordinates")
    if linalg.rank([list(v) for v in svecs], width) != len(svecs):
        raise ValueError("subspace vectors are linearly dependent")

    # complete S to the top component by standard coordinates
    red, pivots = linalg.rref([list(v) for v in svecs], width)
    comp = []
    for j in range(width):
        e = [_ZERO] * width
        e[j] = Fraction(1)
        if not linalg.in_rowspan(red, pivots, e):
            red, pivots = linalg.rref(red + [e], width)
            comp.append(e)
    # top coordinates -> (s coords | complement coords), drop the complement
    change = [[s[j] for s in svecs] + [c[j] for c in comp] for j in range(width)]
    inverse = linalg.invert(change)
    assert inverse is not None

    def project(vec):
        """Full coordinate vector of the free algebra -> quotient coordinates."""
        lower = vec[:base]
        top = linalg.mat_vec(inverse, vec[base:])
        return list(lower) + top[: len(svecs)]

    names = list(free.words[:base])
    used = set(names)
    for i, vec in enumerate(svecs):
        nonzero = [j for j, x in enumerate(vec) if x]
        if len(nonzero) == 1 and vec[nonzero[0]] == 1 and top_words[nonzero[0]] not in used:
            name = top_words[nonzero[0]]
        else:
            name = f"s{i + 1}"
            while name in used:
                name += "_"
        used.add(name)
        names.append(name)

    n_new = base + len(svecs)
    L = free.algebra
    columns = []
    for i in range(base):
        e = [_ZERO] * L.dimension
        e[i] = Fraction(1)
        columns.append(e)
    for vec in svecs:
        e = [_ZERO] * L.dimension
        for j, x in enumerate(vec):
            e[base + j] = x
        columns.append(e)
    brackets = {}
    for a in range(n_new):
        for b in range(a + 1, n_new):
            w = L.bracket(columns[a], columns[b])
            if not any(w):
                continue
            entries = {i: c for i, c in enumerate(project(w)) if c}
            if entries:
                brackets[(a, b)] = entries
    return LieAlgebra(tuple(names), brackets)
