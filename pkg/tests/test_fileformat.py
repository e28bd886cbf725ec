"""Grammar parsing, canonical emission, round trips, error positions."""

from fractions import Fraction

import pytest

from nilrigid import ParseError, lie_from_model, theorem1_family, theorem2_family
from nilrigid.fileformat import (
    build_form,
    emit_algebra,
    form_to_str,
    lie_algebra,
    model,
    parse_algebra,
    parse_source,
)
from helpers import form_of


def test_parse_generators_with_and_without_weights():
    af = parse_source("generators x1:0 x2:0 n1:1 m:2")
    assert af.generators == [
        ("x1", 0, 1),
        ("x2", 0, 1),
        ("n1", 1, 1),
        ("m", 2, 1),
    ]
    af = parse_source("generators a b c")
    assert [w for _, w, _ in af.generators] == [None, None, None]


def test_parse_brackets_and_build():
    text = """
# the four-dimensional filiform algebra
generators x1:0 x2:0 n1:1 m:2
bracket [x1,x2] = - 1 n1
bracket [x1,n1] = - 1 m
"""
    L, weights = lie_algebra(parse_source(text))
    assert weights == (0, 0, 1, 2)
    assert L == lie_from_model(theorem1_family(1))


def test_model_uses_declared_weights():
    text = "generators x:1 y:0\n"
    A = model(parse_source(text))
    assert A.weights == (1, 0)


def test_model_computes_weights_when_omitted():
    text = "generators x1 x2 n1 m\nbracket [x1,x2] = - n1\nbracket [x1,n1] = - m\n"
    A = model(parse_source(text))
    assert A.weights == (0, 0, 1, 2)


def test_rational_coefficients():
    text = "generators a b c\nbracket [a,b] = 1/2 c\n"
    L = parse_algebra(text)
    assert L.brackets == {(0, 1): {2: Fraction(1, 2)}}


def test_reversed_pair_is_skew_extended():
    L1 = parse_algebra("generators a b c\nbracket [b,a] = c\n")
    L2 = parse_algebra("generators a b c\nbracket [a,b] = - c\n")
    assert L1 == L2


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_source("generators a $\n")
    assert err.value.line == 1 and err.value.column == 14
    with pytest.raises(ParseError):
        parse_source("bracket [a,b] = c\n")  # no generators at all
    with pytest.raises(ParseError):
        parse_source("generators a a\n")


def test_name_resolution_errors():
    with pytest.raises(ParseError) as err:
        lie_algebra(parse_source("generators a b\nbracket [a,a] = b\n"))
    assert err.value.line == 2
    with pytest.raises(ParseError):
        lie_algebra(
            parse_source("generators a b c\nbracket [a,b] = c\nbracket [b,a] = c\n")
        )
    with pytest.raises(ParseError):
        lie_algebra(parse_source("generators a b\nbracket [a,q] = b\n"))


def test_emit_parse_round_trip_families():
    for A in [theorem1_family(1), theorem1_family(2), theorem2_family(2)]:
        L = lie_from_model(A)
        text = emit_algebra(L, weights=A.weights)
        Lp, weights = lie_algebra(parse_source(text))
        assert Lp == L and weights == A.weights


def test_emit_without_weights_round_trips():
    L = lie_from_model(theorem1_family(1))
    text = emit_algebra(L)
    assert lie_algebra(parse_source(text)) == (L, None)


def test_form_to_str_round_trip():
    A = theorem2_family(2)
    samples = [
        "x1^x2 + 1/2 n1^m",
        "- x1 + 3 x2",
        "- 2/3 x1^n1^m",
        "0",
    ]
    for text in samples:
        f = form_of(A, text) if text != "0" else A.zero()
        printed = form_to_str(f)
        again = form_of(A, printed) if printed != "0" else A.zero()
        assert again == f


def test_build_form_unknown_generator():
    A = theorem1_family(1)
    af = parse_source("generators x1 x2 n1 m\nform x1^zz\n")
    with pytest.raises(ParseError):
        build_form(af.forms[0][0], A, lineno=2)


def test_map_class_vector_lines():
    text = (
        "generators a b\n"
        "map a = a - 5 b\n"
        "class a^b -> a^b\n"
        "vector 1 0 -2/3\n"
    )
    af = parse_source(text)
    assert af.maps[0][0] == "a"
    assert af.classes[0][0] and af.classes[0][1]
    assert af.vectors[0][0] == [Fraction(1), Fraction(0), Fraction(-2, 3)]
