"""Cohomology: Betti numbers, representatives, cup products, indecomposables."""

import random
from fractions import Fraction
from math import comb

import pytest

from nilrigid import (
    Cohomology,
    LieAlgebra,
    ModelError,
    NotClosedError,
    apply_differential,
    betti,
    ce_model,
    cochain_matrix,
    lie_from_model,
    theorem1_family,
    theorem2_family,
    trivial_basis,
    wedge,
)
from helpers import form_of
from oracle import abelian, heisenberg, oracle_betti


def model_of(L, weights=None):
    return ce_model(L, trivial_basis(L, weights))


def test_abelian_betti_binomial():
    for n in (2, 4, 5):
        A = model_of(abelian(n))
        assert betti(A) == tuple(comb(n, p) for p in range(n + 1))


def test_heisenberg_betti_and_cup():
    A = model_of(heisenberg(), (0, 0, 1))
    H = Cohomology(A)
    assert H.betti_vector() == (1, 2, 2, 1)
    x1 = H.class_coordinates(form_of(A, "x1"))
    x2 = H.class_coordinates(form_of(A, "x2"))
    assert H.cup(x1, x2).is_zero()  # x1 x2 = d z is exact
    reps = H.basis(2)
    assert len(reps) == 2
    for f in reps:
        assert apply_differential(A, f).is_zero()


def test_theorem1_k1_betti():
    assert betti(theorem1_family(1)) == (1, 2, 2, 2, 1)


def test_betti_invariants_on_families():
    for A in [theorem1_family(1), theorem1_family(2), theorem2_family(2)]:
        b = betti(A)
        n = A.dimension
        assert b[0] == 1 and b[n] == 1
        assert all(b[p] == b[n - p] for p in range(n + 1))
        assert sum((-1) ** p * bp for p, bp in enumerate(b)) == 0


def test_agrees_with_oracle_on_random_algebras():
    rng = random.Random(17)
    from oracle import random_nilpotent

    for _ in range(10):
        L = random_nilpotent(rng)
        assert betti(model_of(L)) == oracle_betti(L)


def test_class_coordinates_round_trip():
    A = theorem1_family(2)
    H = Cohomology(A)
    for p in range(1, A.dimension + 1):
        for i in range(H.betti(p)):
            v = H.unit_class(p, i)
            assert H.class_coordinates(H.form_of(v), p) == v


def test_class_coordinates_rejects_non_closed():
    A = theorem1_family(1)
    H = Cohomology(A)
    with pytest.raises(NotClosedError) as err:
        H.class_coordinates(form_of(A, "n1"))
    assert err.value.differential is not None


def test_exact_form_has_zero_class():
    A = theorem1_family(2)
    H = Cohomology(A)
    f = apply_differential(A, form_of(A, "n1^n2 + x1^m"))
    assert H.class_coordinates(f, 3).is_zero()


def test_cup_product_graded_commutative_in_cohomology():
    A = theorem2_family(2)
    H = Cohomology(A)
    u = H.unit_class(1, 0)
    v = H.unit_class(1, 3)
    # odd-degree classes anticommute, odd times even commutes
    assert H.cup(u, v).coordinates == tuple(-c for c in H.cup(v, u).coordinates)
    w = H.unit_class(2, 3)
    assert H.cup(u, w) == H.cup(w, u)


def test_indecomposables_abelian():
    A = model_of(abelian(4))
    H = Cohomology(A)
    assert H.indecomposables(1)[0] == 4
    for p in range(2, 5):
        count, reps = H.indecomposables(p)
        assert count == 0 and reps == ()


def test_indecomposables_heisenberg():
    H = Cohomology(model_of(heisenberg(), (0, 0, 1)))
    # H^2 holds no products (all degree-1 products die), but the top class
    # [x1 x2 z] = -[x1 z].[x2] is decomposable
    assert H.indecomposables(2)[0] == 2
    assert H.indecomposables(3)[0] == 0


def test_indecomposable_representatives_complete_decomposables():
    from nilrigid import linalg

    A = theorem2_family(2)
    H = Cohomology(A)
    count, reps = H.indecomposables(3)
    dec = H.decomposable_subspace(3)
    rows = [list(r) for r in dec] + [list(v.coordinates) for v in reps]
    assert linalg.rank(rows, H.betti(3)) == H.betti(3)
    assert len(dec) + count == H.betti(3)


def test_betti_by_weight_heisenberg():
    A = model_of(heisenberg(), (0, 0, 1))
    H = Cohomology(A)
    assert H.betti_by_weight(1) == {0: 2}
    assert H.betti_by_weight(2) == {1: 2}
    assert H.betti_by_weight(3) == {1: 1}


def test_betti_by_weight_sums_to_betti():
    A = theorem1_family(2)
    H = Cohomology(A)
    for p in range(A.dimension + 1):
        assert sum(H.betti_by_weight(p).values()) == H.betti(p)


def test_betti_by_weight_requires_homogeneous():
    H = Cohomology(theorem2_family(2))
    with pytest.raises(ModelError):
        H.betti_by_weight(2)


def test_cochain_matrix_shape():
    A = theorem1_family(1)
    rows = cochain_matrix(A, 1)
    assert len(rows) == comb(4, 2)
    assert len(rows[0]) == 4


def test_cohomology_rejects_invalid_model():
    # Jacobi fails on (a, b, c): [[b,c],a] = -e with the other two terms zero
    L = LieAlgebra(
        ("a", "b", "c", "d", "e"),
        {
            (0, 1): {2: Fraction(1)},
            (0, 2): {3: Fraction(1)},
            (1, 2): {3: Fraction(1)},
            (0, 3): {4: Fraction(1)},
        },
    )
    bad = model_of(L)
    with pytest.raises(ModelError):
        Cohomology(bad)
