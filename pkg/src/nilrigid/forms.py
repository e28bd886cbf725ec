"""Exterior algebra on odd degree-1 generators with rational coefficients.

Values are immutable; every operation returns a fresh Form.  Monomials are
strictly increasing tuples of generator indices (all generators are odd, so a
repeated index kills a monomial) and are ordered lexicographically wherever a
basis is enumerated, which keeps every downstream matrix deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational

from .errors import DomainMismatchError, MixedDegreeError, ModelError

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    """A degree-1 generator with a name and a lower-degree weight."""

    name: str
    index: int
    weight: int = 0


def merge_monomials(a: Monomial, b: Monomial) -> tuple[Monomial | None, int]:
    """Merge two increasing index tuples, counting inversions.

    Returns (merged tuple, sign) or (None, 0) when an index repeats.
    """
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    i = j = 0
    inversions = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            return None, 0
        if x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
            inversions += la - i
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), (-1) ** (inversions & 1)


class Form:
    """A finite rational linear combination of exterior monomials."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: tuple[Generator, ...], terms=None):
        object.__setattr__(self, "gens", gens)
        clean: dict[Monomial, Fraction] = {}
        if terms:
            n = len(gens)
            for mono, coeff in dict(terms).items():
                mono = tuple(mono)
                if any(not 0 <= i < n for i in mono):
                    raise ValueError(f"monomial {mono} references unknown generator index")
                if any(mono[i] >= mono[i + 1] for i in range(len(mono) - 1)):
                    raise ValueError(f"monomial {mono} is not strictly increasing")
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, gens) -> "Form":
        return cls(gens)

    @classmethod
    def unit(cls, gens) -> "Form":
        return cls(gens, {(): Fraction(1)})

    @classmethod
    def generator(cls, gens, index: int) -> "Form":
        return cls(gens, {(index,): Fraction(1)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def degree(self) -> int | None:
        """Common exterior degree, None for the zero form."""
        degrees = {len(m) for m in self.terms}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise MixedDegreeError(f"form has mixed degrees {sorted(degrees)}")
        return degrees.pop()

    def weight(self) -> int | None:
        """Common total weight of the monomials, None for the zero form."""
        weights = {monomial_weight(self.gens, m) for m in self.terms}
        if not weights:
            return None
        if len(weights) > 1:
            raise MixedDegreeError(f"form has mixed weights {sorted(weights)}")
        return weights.pop()

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _require_same_gens(self, other: "Form"):
        if self.gens != other.gens:
            raise DomainMismatchError("forms live over different generator sets")

    def __add__(self, other: "Form") -> "Form":
        self._require_same_gens(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Form(self.gens, terms)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.gens, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return wedge(self, other)
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Form":
        c = Fraction(c)
        return Form(self.gens, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.gens == other.gens
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.gens, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "Form(0)"
        names = [g.name for g in self.gens]
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "^".join(names[i] for i in m) if m else "1"
            parts.append(f"{c} {mono}")
        return "Form(" + " + ".join(parts) + ")"


def monomial_weight(gens: tuple[Generator, ...], mono: Monomial) -> int:
    return sum(gens[i].weight for i in mono)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; sign is the parity of merge inversions."""
    a._require_same_gens(b)
    terms: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            merged, sign = merge_monomials(ma, mb)
            if merged is None:
                continue
            terms[merged] = terms.get(merged, Fraction(0)) + sign * ca * cb
    return Form(a.gens, terms)


class SullivanModel:
    """Degree-1 generators with weights and a quadratic differential.

    The differential is given per generator; it extends to all of the
    exterior algebra as a derivation of degree +1.
    """

    __slots__ = ("generators", "differential")

    def __init__(self, generators, differential):
        generators = tuple(generators)
        differential = tuple(differential)
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ModelError("generator names are not unique")
        for pos, g in enumerate(generators):
            if g.index != pos:
                raise ModelError(f"generator {g.name} has index {g.index}, expected {pos}")
        if len(differential) != len(generators):
            raise ModelError("need exactly one differential form per generator")
        for g, df in zip(generators, differential):
            if df.gens != generators:
                raise ModelError(f"differential of {g.name} lives over a different generator set")
            if not df.is_zero() and df.degree() != 2:
                raise ModelError(f"differential of {g.name} is not quadratic")
        self.generators = generators
        self.differential = differential

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(g.weight for g in self.generators)

    def index_of(self, name: str) -> int:
        for g in self.generators:
            if g.name == name:
                return g.index
        raise KeyError(name)

    def gen(self, name: str) -> Form:
        return Form.generator(self.generators, self.index_of(name))

    def form(self, terms) -> Form:
        return Form(self.generators, terms)

    def zero(self) -> Form:
        return Form.zero(self.generators)

    def d(self, f: Form) -> Form:
        return apply_differential(self, f)

    def __eq__(self, other):
        return (
            isinstance(other, SullivanModel)
            and self.generators == other.generators
            and self.differential == other.differential
        )

    def __hash__(self):
        return hash((self.generators, self.differential))

    def __repr__(self):
        gens = " ".join(f"{g.name}:{g.weight}" for g in self.generators)
        return f"SullivanModel({gens})"


def apply_differential(model: SullivanModel, f: Form) -> Form:
    """Extend the generator differential to f as a degree +1 derivation."""
    if f.gens != model.generators:
        raise DomainMismatchError("form does not live over the model's generators")
    terms: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        for pos, idx in enumerate(mono):
            dgen = model.differential[idx]
            if dgen.is_zero():
                continue
            rest = mono[:pos] + mono[pos + 1 :]
            pos_sign = (-1) ** (pos & 1)
            for dm, dc in dgen.terms.items():
                merged, sign = merge_monomials(rest, dm)
                if merged is None:
                    continue
                value = pos_sign * sign * coeff * dc
                terms[merged] = terms.get(merged, Fraction(0)) + value
    return Form(model.generators, terms)


def check_d_squared(model: SullivanModel) -> list[tuple[Generator, Form]]:
    """Generators on which d^2 fails, with the nonzero defect form.

    Empty exactly when the model is a valid CDGA; checking on generators
    suffices because d^2 is again a derivation.
    """
    defects = []
    for g, df in zip(model.generators, model.differential):
        dd = apply_differential(model, df)
        if not dd.is_zero():
            defects.append((g, dd))
    return defects


def monomial_basis(model: SullivanModel, p: int, weight: int | None = None) -> list[Monomial]:
    """Lexicographically ordered monomials of exterior degree p.

    With a weight filter only monomials of that total weight are kept.
    """
    if p < 0:
        raise ValueError("degree must be nonnegative")
    monos = combinations(range(len(model.generators)), p)
    if weight is None:
        return [tuple(m) for m in monos]
    return [tuple(m) for m in monos if monomial_weight(model.generators, m) == weight]
