"""Nilpotent Lie algebras by structure constants and their Sullivan models.

Conventions: structure constants are stored for index pairs l < k with the
skew extension implied, and the differential of the model is
d v_i = -sum c^i_{l,k} v_l v_k, so a bracket [x, y] = -n gives d n = x y.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import ModelError, NotNilpotentError
from .forms import Form, Generator, SullivanModel, monomial_weight

Vector = list[Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LieAlgebra:
    """A finite-dimensional Lie algebra given by rational structure constants."""

    __slots__ = ("names", "brackets")

    def __init__(self, names, brackets):
        """brackets maps index pairs (l, k) with l < k to {i: coefficient}."""
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("basis names are not unique")
        n = len(names)
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (l, k), vec in dict(brackets).items():
            if not 0 <= l < k < n:
                raise ValueError(f"bad bracket pair ({l}, {k})")
            entries = {}
            for i, c in dict(vec).items():
                if not 0 <= i < n:
                    raise ValueError(f"bracket [{l},{k}] hits unknown index {i}")
                c = Fraction(c)
                if c:
                    entries[i] = c
            if entries:
                clean[(l, k)] = entries
        self.names = names
        self.brackets = clean

    @property
    def dimension(self) -> int:
        return len(self.names)

    def bracket_basis(self, l: int, k: int) -> dict[int, Fraction]:
        """[X_l, X_k] as a sparse coordinate map (skew-extended)."""
        if l == k:
            return {}
        if l < k:
            return dict(self.brackets.get((l, k), {}))
        return {i: -c for i, c in self.brackets.get((k, l), {}).items()}

    def bracket(self, u: Vector, v: Vector) -> Vector:
        """Bilinear extension of the structure constants."""
        n = self.dimension
        out = [_ZERO] * n
        for (l, k), vec in self.brackets.items():
            f = u[l] * v[k] - u[k] * v[l]
            if f:
                for i, c in vec.items():
                    out[i] += f * c
        return out

    def is_abelian(self) -> bool:
        return not self.brackets

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.names == other.names
            and self.brackets == other.brackets
        )

    def __repr__(self):
        return f"LieAlgebra({', '.join(self.names)}; {len(self.brackets)} bracket pairs)"


@dataclass(frozen=True)
class SubspaceChain:
    """Lower central series as rref bases; last entry empty iff nilpotent."""

    subspaces: tuple[tuple[tuple[Fraction, ...], ...], ...]
    nilpotent: bool

    def dimensions(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.subspaces)


@dataclass(frozen=True)
class AdaptedBasis:
    """Columns are the new basis vectors in the old coordinates."""

    columns: tuple[tuple[Fraction, ...], ...]
    weights: tuple[int, ...]
    names: tuple[str, ...]

    def is_identity(self) -> bool:
        return all(
            col[i] == (1 if i == a else 0)
            for a, col in enumerate(self.columns)
            for i in range(len(col))
        )


def jacobi_defect(L: LieAlgebra) -> list[tuple[int, int, int, Vector]]:
    """Triples (i, j, k) where the Jacobi identity fails, with the defect."""
    n = L.dimension
    defects = []
    basis = linalg.identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            bij = L.bracket(basis[i], basis[j])
            for k in range(j + 1, n):
                v = L.bracket(bij, basis[k])
                bjk = L.bracket(basis[j], basis[k])
                w = L.bracket(bjk, basis[i])
                bki = L.bracket(basis[k], basis[i])
                u = L.bracket(bki, basis[j])
                defect = [a + b + c for a, b, c in zip(v, w, u)]
                if any(defect):
                    defects.append((i, j, k, defect))
    return defects


def lower_central_series(L: LieAlgebra) -> SubspaceChain:
    """Chain g = g^(0) >= [g,g] >= ...; stabilizing nonzero means non-nilpotent."""
    n = L.dimension
    basis = linalg.identity(n)
    chain = [tuple(tuple(r) for r in basis)]
    current = basis
    while True:
        rows = []
        for u in current:
            for e in basis:
                w = L.bracket(list(u), e)
                if any(w):
                    rows.append(w)
        red, _ = linalg.rref(rows, n)
        if len(red) == len(current):
            # stabilized at a nonzero subspace
            return SubspaceChain(tuple(chain), nilpotent=False)
        chain.append(tuple(tuple(r) for r in red))
        if not red:
            return SubspaceChain(tuple(chain), nilpotent=True)
        current = red


def adapted_basis(L: LieAlgebra) -> AdaptedBasis:
    """Basis adapted to the lower central series.

    Complements are chosen greedily: at each weight, standard basis vectors
    of exactly that weight are promoted first (in index order), so an algebra
    already given in adapted coordinates keeps the identity basis.
    """
    chain = lower_central_series(L)
    if not chain.nilpotent:
        raise NotNilpotentError("lower central series stabilizes at a nonzero subspace")
    n = L.dimension
    stages = [
        (list(map(list, sub)), linalg.rref(list(map(list, sub)), n)[1])
        for sub in chain.subspaces
    ]
    depth = len(stages) - 1  # last stage is zero

    def stage_contains(i: int, v: Vector) -> bool:
        rows, pivots = stages[i]
        return linalg.in_rowspan(rows, pivots, v)

    def weight_of(v: Vector) -> int:
        w = 0
        for i in range(1, depth):
            if stage_contains(i, v):
                w = i
            else:
                break
        return w

    std = linalg.identity(n)
    std_weights = [weight_of(std[j]) for j in range(n)]

    columns: list[Vector] = []
    weights: list[int] = []
    names: list[str] = []
    used_names = set()
    for w in range(depth):
        # span of g^(w+1) plus the vectors already chosen at this weight
        span_rows = list(map(list, chain.subspaces[w + 1])) if w + 1 <= depth else []
        red, pivots = linalg.rref(span_rows, n)
        target = len(stages[w][0])

        def try_add(v: Vector, name: str):
            nonlocal red, pivots
            if linalg.in_rowspan(red, pivots, v):
                return False
            red, pivots = linalg.rref(red + [list(v)], n)
            columns.append(list(v))
            weights.append(w)
            base = name
            idx = 1
            while name in used_names:
                idx += 1
                name = f"{base}_{idx}"
            used_names.add(name)
            names.append(name)
            return True

        for j in range(n):
            if std_weights[j] == w:
                try_add(std[j], L.names[j])
            if len(red) == target:
                break
        if len(red) < target:
            for pos, v in enumerate(stages[w][0]):
                try_add(list(v), f"v{len(columns)}")
                if len(red) == target:
                    break
    return AdaptedBasis(
        columns=tuple(tuple(c) for c in columns),
        weights=tuple(weights),
        names=tuple(names),
    )


def trivial_basis(L: LieAlgebra, weights=None) -> AdaptedBasis:
    """Identity change of basis with declared (default zero) weights."""
    n = L.dimension
    if weights is None:
        weights = (0,) * n
    cols = tuple(tuple(_ONE if i == a else _ZERO for i in range(n)) for a in range(n))
    return AdaptedBasis(columns=cols, weights=tuple(weights), names=L.names)


def change_basis(L: LieAlgebra, basis: AdaptedBasis) -> LieAlgebra:
    """Structure constants rewritten in the columns of the given basis."""
    n = L.dimension
    P = [[basis.columns[a][i] for a in range(n)] for i in range(n)]
    Pinv = linalg.invert(P)
    if Pinv is None:
        raise ValueError("change of basis matrix is singular")
    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            old = L.bracket([P[i][a] for i in range(n)], [P[i][b] for i in range(n)])
            if not any(old):
                continue
            new = linalg.mat_vec(Pinv, old)
            entries = {i: c for i, c in enumerate(new) if c}
            if entries:
                brackets[(a, b)] = entries
    return LieAlgebra(basis.names, brackets)


def carnot(L: LieAlgebra) -> LieAlgebra:
    """Associated Carnot-graded algebra in the adapted basis.

    Brackets of basis vectors with weights i and j are projected to the
    component of weight exactly i + j + 1.
    """
    basis = adapted_basis(L)
    Lb = change_basis(L, basis)
    w = basis.weights
    brackets = {}
    for (a, b), vec in Lb.brackets.items():
        target = w[a] + w[b] + 1
        entries = {i: c for i, c in vec.items() if w[i] == target}
        if entries:
            brackets[(a, b)] = entries
    return LieAlgebra(Lb.names, brackets)


def ce_model(L: LieAlgebra, basis: AdaptedBasis | None = None) -> SullivanModel:
    """Chevalley-Eilenberg/Sullivan model of L in the given adapted basis."""
    if basis is None:
        basis = adapted_basis(L)
    Lb = L if basis.is_identity() and basis.names == L.names else change_basis(L, basis)
    gens = tuple(
        Generator(name, idx, weight)
        for idx, (name, weight) in enumerate(zip(basis.names, basis.weights))
    )
    differential = []
    for i in range(len(gens)):
        terms = {}
        for (l, k), vec in Lb.brackets.items():
            c = vec.get(i)
            if c:
                terms[(l, k)] = -c
        differential.append(Form(gens, terms))
    return SullivanModel(gens, differential)


def lie_from_model(A: SullivanModel) -> LieAlgebra:
    """Inverse of ce_model with the same sign convention."""
    from .forms import check_d_squared

    defects = check_d_squared(A)
    if defects:
        names = ", ".join(g.name for g, _ in defects)
        raise ModelError(f"d^2 != 0 on {names}", defects=defects)
    brackets = {}
    for i, df in enumerate(A.differential):
        for mono, c in df.terms.items():
            l, k = mono
            brackets.setdefault((l, k), {})[i] = -c
    return LieAlgebra(tuple(g.name for g in A.generators), brackets)


def is_carnot_homogeneous(A: SullivanModel) -> bool:
    """True iff every monomial of every d v has weight exactly weight(v) - 1."""
    for g, df in zip(A.generators, A.differential):
        for mono in df.terms:
            if monomial_weight(A.generators, mono) != g.weight - 1:
                return False
    return True


def check_triangularity(A: SullivanModel) -> list[tuple[Generator, tuple[int, ...]]]:
    """Monomials of d v with weight >= weight(v), violating nilpotence."""
    bad = []
    for g, df in zip(A.generators, A.differential):
        for mono in df.terms:
            if monomial_weight(A.generators, mono) >= g.weight:
                bad.append((g, mono))
    return bad


def associated_graded_model(A: SullivanModel) -> SullivanModel:
    """Keep only the weight-homogeneous part of weight(v) - 1 in each d v."""
    gens = A.generators
    differential = []
    for g, df in zip(gens, A.differential):
        terms = {
            mono: c
            for mono, c in df.terms.items()
            if monomial_weight(gens, mono) == g.weight - 1
        }
        differential.append(Form(gens, terms))
    return SullivanModel(gens, differential)


def truncate(A: SullivanModel, s: int) -> SullivanModel:
    """Sub-CDGA on the generators of weight <= s.

    Triangularity makes the restriction closed under d.
    """
    keep = [g.index for g in A.generators if g.weight <= s]
    remap = {old: new for new, old in enumerate(keep)}
    gens = tuple(
        Generator(A.generators[old].name, new, A.generators[old].weight)
        for new, old in enumerate(keep)
    )
    differential = []
    for old in keep:
        terms = {}
        for mono, c in A.differential[old].terms.items():
            if all(i in remap for i in mono):
                terms[tuple(remap[i] for i in mono)] = c
            else:
                raise ModelError(
                    f"differential of {A.generators[old].name} leaves the truncation"
                )
        differential.append(Form(gens, terms))
    return SullivanModel(gens, differential)
