"""Lie algebra side: LCS, adapted bases, Carnot associates, model round trips."""

import random
from fractions import Fraction

import pytest

from nilrigid import (
    LieAlgebra,
    NotNilpotentError,
    adapted_basis,
    associated_graded_model,
    carnot,
    ce_model,
    change_basis,
    check_triangularity,
    is_carnot_homogeneous,
    jacobi_defect,
    lie_from_model,
    lower_central_series,
    section3_pair,
    theorem1_family,
    theorem2_family,
    theorem4_example,
    trivial_basis,
    truncate,
)
from oracle import corrupt, filiform4, heisenberg, random_nilpotent


def test_heisenberg_lcs():
    chain = lower_central_series(heisenberg())
    assert chain.nilpotent
    assert chain.dimensions() == (3, 1, 0)


def test_filiform_lcs_and_weights():
    chain = lower_central_series(filiform4())
    assert chain.dimensions() == (4, 2, 1, 0)
    basis = adapted_basis(filiform4())
    assert basis.is_identity()
    assert basis.weights == (0, 0, 1, 2)


def test_non_nilpotent_detected():
    L = LieAlgebra(("x", "y"), {(0, 1): {1: Fraction(1)}})
    chain = lower_central_series(L)
    assert not chain.nilpotent
    with pytest.raises(NotNilpotentError):
        adapted_basis(L)


def test_jacobi_defect_empty_on_families():
    for model in [theorem1_family(2), theorem2_family(2), theorem4_example()]:
        assert jacobi_defect(lie_from_model(model)) == []


def test_jacobi_defect_nonempty_on_corruption():
    rng = random.Random(2)
    L = lie_from_model(theorem4_example())
    found = False
    for _ in range(10):
        bad = corrupt(rng, L)
        if jacobi_defect(bad):
            found = True
            break
    assert found


def test_ce_model_round_trip_on_families():
    for model in [
        theorem1_family(1),
        theorem2_family(2),
        theorem4_example(),
        *section3_pair(),
    ]:
        L = lie_from_model(model)
        rebuilt = ce_model(L, trivial_basis(L, model.weights))
        assert rebuilt == model


def test_ce_model_round_trip_random():
    rng = random.Random(9)
    for _ in range(20):
        L = random_nilpotent(rng)
        assert lie_from_model(ce_model(L, trivial_basis(L))) == L


def test_change_basis_inverse():
    rng = random.Random(4)
    L = lie_from_model(theorem1_family(2))
    n = L.dimension
    from oracle import random_invertible

    cols = random_invertible(rng, n)
    basis = trivial_basis(L)
    moved = change_basis(L, type(basis)(columns=cols, weights=basis.weights, names=L.names))
    from nilrigid import linalg

    P = [[cols[a][i] for a in range(n)] for i in range(n)]
    Pinv = linalg.invert(P)
    inv_cols = tuple(tuple(Pinv[i][a] for i in range(n)) for a in range(n))
    back = change_basis(
        moved, type(basis)(columns=inv_cols, weights=basis.weights, names=L.names)
    )
    assert back == L


def test_adapted_basis_on_scrambled_algebra():
    rng = random.Random(12)
    L = random_nilpotent(rng)
    basis = adapted_basis(L)
    graded = change_basis(L, basis)
    model = ce_model(L, basis)
    assert check_triangularity(model) == []
    assert lie_from_model(model) == graded


def test_carnot_is_carnot():
    rng = random.Random(21)
    for _ in range(5):
        L = random_nilpotent(rng)
        C = carnot(L)
        model = ce_model(C, trivial_basis(C, adapted_basis(L).weights))
        assert is_carnot_homogeneous(model)
        # the Carnot associate of a Carnot algebra is itself
        assert carnot(C) == C


def test_carnot_preserves_lcs_dimensions():
    L = lie_from_model(theorem2_family(2))
    C = carnot(L)
    assert lower_central_series(C).dimensions() == lower_central_series(L).dimensions()


def test_associated_graded_model_drops_top_term():
    model = theorem2_family(2)
    bar = associated_graded_model(model)
    m = model.index_of("m")
    dropped = model.differential[m] - bar.differential[m]
    assert list(dropped.terms) == [
        (model.index_of("x4"), model.index_of("x5"))
    ]
    assert is_carnot_homogeneous(bar)
    assert not is_carnot_homogeneous(model)


def test_truncate_two_stage():
    model = theorem1_family(2)
    t = truncate(model, 1)
    names = [g.name for g in t.generators]
    assert names == ["x1", "x2", "x3", "x4", "n1", "n2", "n3"]
    from nilrigid import check_d_squared

    assert check_d_squared(t) == []


def test_triangularity_violation_reported():
    # bracket producing a generator of too low a weight
    L = LieAlgebra(("a", "b", "c"), {(0, 1): {2: Fraction(1)}})
    model = ce_model(L, trivial_basis(L, (0, 1, 0)))
    bad = check_triangularity(model)
    assert [(g.name, mono) for g, mono in bad] == [("c", (0, 1))]
