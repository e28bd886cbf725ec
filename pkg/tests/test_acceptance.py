"""Acceptance suite: eleven criteria, one printed verdict line per test.

Each test prints exactly one line "CRITERION n: PASS|FAIL - detail" before
asserting, so the run log doubles as a scoreboard.  Criteria 1-4 and the
middle clause of criterion 5 encode counts and class lists taken verbatim
from the published source; where our exact-arithmetic computation
contradicts those published numbers the tests are left honestly red and the
measured values are printed in the verdict line.
"""

import random
from fractions import Fraction

import pytest

from nilrigid import (
    Cohomology,
    NotClosedError,
    associated_graded_model,
    ce_model,
    check_d_squared,
    fingerprint,
    free_nilpotent_lie,
    is_decomposable_2form,
    jacobi_defect,
    lie_from_model,
    lower_central_series,
    lyndon_words,
    normalize_perturbation,
    section3_pair,
    theorem1_family,
    theorem2_family,
    theorem4_example,
    trivial_basis,
    verify_cdga_morphism,
    verify_cohomology_ring_iso,
    witt_dimension,
    wedge,
)
from nilrigid.fileformat import emit_algebra, lie_algebra, parse_source
from nilrigid.lie import carnot
from nilrigid import linalg
from helpers import LISTED_CLASSES, PUBLISHED_COUNTS, SECTION3_RING_MAP, form_of
from oracle import oracle_betti, random_nilpotent, corrupt


def verdict(n, ok, detail):
    print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {n}: {detail}"


@pytest.fixture(scope="module")
def theorem2_data():
    """Models and cohomology for both differentials at k = 2 and 3."""
    out = {}
    for k in (2, 3):
        A = theorem2_family(k)
        bar = associated_graded_model(A)
        out[(k, "d")] = (A, Cohomology(A))
        out[(k, "bar")] = (bar, Cohomology(bar))
    return out


@pytest.fixture(scope="module")
def theorem4_data():
    A = theorem4_example()
    bar = associated_graded_model(A)
    return {"d": Cohomology(A), "bar": Cohomology(bar)}


def test_criterion_1_theorem2_k2_counts(theorem2_data):
    got_d = theorem2_data[(2, "d")][1].indecomposables(3)[0]
    got_bar = theorem2_data[(2, "bar")][1].indecomposables(3)[0]
    ok = (got_d, got_bar) == (PUBLISHED_COUNTS[(2, "d")], PUBLISHED_COUNTS[(2, "bar")])
    verdict(
        1,
        ok,
        f"degree-3 indecomposables at k=2: published 6 (d) / 5 (bar d), "
        f"computed {got_d} (d) / {got_bar} (bar d)",
    )


def test_criterion_2_theorem2_k3_counts(theorem2_data):
    got_d = theorem2_data[(3, "d")][1].indecomposables(3)[0]
    got_bar = theorem2_data[(3, "bar")][1].indecomposables(3)[0]
    ok = (got_d, got_bar) == (PUBLISHED_COUNTS[(3, "d")], PUBLISHED_COUNTS[(3, "bar")])
    verdict(
        2,
        ok,
        f"degree-3 indecomposables at k=3: published 9 (d) / 8 (bar d), "
        f"computed {got_d} (d) / {got_bar} (bar d)",
    )


def test_criterion_3_theorem4_counts(theorem4_data):
    got_d = theorem4_data["d"].indecomposables(3)[0]
    got_bar = theorem4_data["bar"].indecomposables(3)[0]
    ok = (got_d, got_bar) == (31, 27)
    verdict(
        3,
        ok,
        f"degree-3 indecomposables for the ten-dimensional example: published "
        f"31 (d) / 27 (bar d), computed {got_d} (d) / {got_bar} (bar d)",
    )


def test_criterion_4_listed_representatives(theorem2_data):
    all_closed = True
    all_independent = True
    ranks = []
    for (k, which), texts in sorted(LISTED_CLASSES.items()):
        A, H = theorem2_data[(k, which)]
        rows = [list(r) for r in H.decomposable_subspace(3)]
        base = linalg.rank(rows, H.betti(3))
        for text in texts:
            f = form_of(A, text)
            try:
                v = H.class_coordinates(f, 3)
            except NotClosedError:
                all_closed = False
                continue
            rows.append(list(v.coordinates))
        indep = linalg.rank(rows, H.betti(3)) - base
        if indep != len(texts):
            all_independent = False
        ranks.append(f"k={k} {which}: {indep} of {len(texts)} independent")
    verdict(
        4,
        all_closed and all_independent,
        "all listed classes closed: %s; independence modulo coboundaries and "
        "decomposables: %s" % (all_closed, "; ".join(ranks)),
    )


def test_criterion_5_section3_rigidity():
    first, second = section3_pair()
    L1, L2 = lie_from_model(first), lie_from_model(second)
    fp_equal = fingerprint(L1) == fingerprint(L2)
    pairs = [
        (form_of(first, s), form_of(second, d)) for s, d in SECTION3_RING_MAP
    ]
    ring = verify_cohomology_ring_iso(Cohomology(first), Cohomology(second), pairs)
    c1, c2 = carnot(L1), carnot(L2)
    carnot_equal = c1.names == c2.names and c1.brackets == c2.brackets
    ok = fp_equal and ring.ok and carnot_equal
    ring_note = "ok" if ring.ok else f"refuted at {ring.stage} (degree {ring.degree})"
    verdict(
        5,
        ok,
        f"fingerprints equal: {fp_equal}; displayed seven-class ring map: "
        f"{ring_note}; Carnot structure constants identical: {carnot_equal}",
    )


def test_criterion_6_section3_obstruction():
    model, _ = section3_pair()
    ok = True
    details = []
    for text in ("a1^c + a2^b", "a1^c + a2^d"):
        w = form_of(model, text)
        result = is_decomposable_2form(w)
        good = (
            not result.decomposable
            and not result.square.is_zero()
            and result.square == wedge(w, w)
        )
        ok = ok and good
        details.append(f"{text}: rank {result.rank}, square nonzero: {good}")
    verdict(6, ok, "; ".join(details))


def _perturbed_theorem1(rng, k):
    base = theorem1_family(k)
    pert = base.zero()
    for i in range(1, 2 * k + 1):
        for j in range(i + 1, 2 * k + 1):
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if c:
                pert = pert + form_of(base, f"x{i}^x{j}").scale(c)
    m = base.index_of("m")
    diffs = list(base.differential)
    diffs[m] = diffs[m] + pert
    return type(base)(base.generators, diffs), base


def test_criterion_7_theorem1_rigidity():
    rng = random.Random(2024)
    successes = 0
    total = 0
    for k in (1, 2, 3):
        for _ in range(100):
            total += 1
            W, base = _perturbed_theorem1(rng, k)
            norm = normalize_perturbation(W)
            if norm.normalized == base and verify_cdga_morphism(
                W, norm.normalized, norm.map
            ).ok:
                successes += 1
    verdict(
        7,
        successes == total,
        f"{successes}/{total} random perturbations normalized onto the "
        f"unperturbed model with a verified isomorphism (k = 1, 2, 3)",
    )


def test_criterion_8_jacobi_iff_d_squared():
    rng = random.Random(777)
    agreements = 0
    total = 500
    corrupted = 0
    for i in range(total):
        L = random_nilpotent(rng)
        if i % 2:
            L = corrupt(rng, L)
            corrupted += 1
        jacobi_ok = not jacobi_defect(L)
        d2_ok = not check_d_squared(ce_model(L, trivial_basis(L)))
        if jacobi_ok == d2_ok:
            agreements += 1
    verdict(
        8,
        agreements == total,
        f"{agreements}/{total} tables (of which {corrupted} corrupted) agree "
        f"on jacobi_defect empty iff d^2 = 0",
    )


def test_criterion_9_betti_oracle():
    instances = [
        lie_from_model(theorem1_family(1)),
        lie_from_model(theorem1_family(2)),
        lie_from_model(theorem2_family(2)),
        lie_from_model(associated_graded_model(theorem2_family(2))),
        lie_from_model(theorem4_example()),
        lie_from_model(section3_pair()[0]),
        lie_from_model(section3_pair()[1]),
    ]
    rng = random.Random(99)
    instances += [random_nilpotent(rng) for _ in range(50)]
    checked = 0
    for L in instances:
        b = Cohomology(ce_model(L, trivial_basis(L))).betti_vector()
        assert b == oracle_betti(L), L.names
        n = L.dimension
        assert all(b[p] == b[n - p] for p in range(n + 1))
        assert sum((-1) ** p * bp for p, bp in enumerate(b)) == 0
        dims = lower_central_series(L).dimensions()
        assert b[1] == dims[0] - dims[1]
        assert b[n] == 1
        checked += 1
    verdict(
        9,
        checked == len(instances),
        f"betti agrees with the brute-force oracle and satisfies duality, "
        f"Euler, b_1 and b_n checks on {checked} instances "
        f"({len(instances) - 50} families, 50 random)",
    )


def test_criterion_10_free_nilpotent():
    witt_ok = True
    for l, expected in ((2, [2, 1, 2, 3, 6]), (3, [3, 3, 8, 18, 48])):
        words = lyndon_words(l, 5)
        counts = [len(words[n]) for n in range(1, 6)]
        witts = [witt_dimension(l, n) for n in range(1, 6)]
        witt_ok = witt_ok and counts == expected == witts
    weight_ok = True
    for l, k in ((2, 1), (2, 2), (3, 1)):
        free = free_nilpotent_lie(l, k + 1)
        L = free.algebra
        H = Cohomology(ce_model(L, trivial_basis(L, free.weights)))
        for p in range(2, L.dimension + 1):
            by_weight = H.betti_by_weight(p)
            if any(w <= k - 1 for w, d in by_weight.items() if d):
                weight_ok = False
    verdict(
        10,
        witt_ok and weight_ok,
        f"Lyndon counts match Witt numbers up to length 5: {witt_ok}; "
        f"H^p vanishes in weights <= k-1 for p >= 2 at (l,k) in "
        f"(2,1),(2,2),(3,1): {weight_ok}",
    )


def test_criterion_11_round_trips():
    rng = random.Random(4242)
    model_ok = 0
    for _ in range(50):
        L = random_nilpotent(rng)
        if lie_from_model(ce_model(L, trivial_basis(L))) == L:
            model_ok += 1
    families = [
        theorem1_family(1),
        theorem1_family(2),
        theorem2_family(2),
        theorem2_family(3),
        theorem4_example(),
        section3_pair()[0],
        section3_pair()[1],
    ]
    file_ok = 0
    for A in families:
        L = lie_from_model(A)
        text = emit_algebra(L, weights=A.weights)
        parsed, weights = lie_algebra(parse_source(text))
        if parsed == L and weights == A.weights and emit_algebra(parsed, weights=weights) == text:
            file_ok += 1
    ok = model_ok == 50 and file_ok == len(families)
    verdict(
        11,
        ok,
        f"lie_from_model after ce_model is the identity on {model_ok}/50 "
        f"random algebras; parse after emit is the identity on "
        f"{file_ok}/{len(families)} family files",
    )
