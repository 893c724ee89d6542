import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kaehleraut.parser import (Naming, ParseError, TruncationWarning, ValidationError, parse_polynomial,
                               parse_series_map, render_polynomial, tokenize)
from kaehleraut.poly import Polynomial
from kaehleraut.series import NotInvertibleError

from conftest import polynomials


def test_simple_map_component():
    p = parse_polynomial("x1 + x1^2", 1)
    assert p == Polynomial(1, {(1,): 1, (2,): 1})


def test_rational_coefficients():
    p = parse_polynomial("1/2*x1^2*x2 - x2", 2)
    assert p == Polynomial(2, {(2, 1): Fraction(1, 2), (0, 1): -1})
    assert len(p) == 2


def test_negative_exponent_rejected_at_caret_argument():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x1^(-1)", 1)
    assert err.value.position == 4


@pytest.mark.parametrize("text, position", [
    ("2x1", 1), ("x1 +", 4), ("x9", 0), ("x1^1/2", 3), ("(x1", 3), ("x1 $ 2", 3), ("", 0), ("1/0*x1", 0),
])
def test_positioned_errors(text, position):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, 1)
    assert err.value.position == position


def test_precedence():
    x = Polynomial.variable(1, 0)
    assert parse_polynomial("-x^2", 1) == -(x ** 2)
    assert parse_polynomial("2*x^2 + 3*x*x - (x + 1)^2", 1) == 2 * x ** 2 + 3 * x ** 2 - (x + 1) ** 2
    assert parse_polynomial("1 - 2 - 3", 1) == -4


def test_aliases():
    naming = Naming.xy(2, 2)
    assert parse_polynomial("d2x1", naming) == parse_polynomial("y1_2", naming)
    assert parse_polynomial("x", Naming.x(1)) == parse_polynomial("x1", Naming.x(1))


def test_tokens_reconstruct_input():
    text = "1/2*x1^2 - (x2 + 3)"
    toks = tokenize(text)
    positions = [t.position for t in toks[:-1]]
    assert positions == sorted(set(positions))
    assert "".join(t.lexeme for t in toks) == text.replace(" ", "")


@given(polynomials(3, max_degree=4, max_terms=6, bound=50))
def test_parse_render_round_trip(p):
    text = render_polynomial(p)
    assert parse_polynomial(text, 3) == p
    assert render_polynomial(parse_polynomial(text, 3)) == text


def test_rational_round_trip():
    p = Polynomial(2, {(1, 0): Fraction(-7, 3), (0, 2): Fraction(5, 4), (0, 0): Fraction(-1, 9)})
    assert parse_polynomial(render_polynomial(p), 2) == p


def test_series_map_parsing():
    phi = parse_series_map(["x1 + x2^2", "x2"], 2, 2)
    assert phi.is_automorphism()
    with pytest.raises(ValidationError, match="component 1"):
        parse_series_map(["1 + x1"], 1, 2)
    with pytest.warns(TruncationWarning):
        phi = parse_series_map(["x1 + x1^5"], 1, 3)
    assert phi.components[0] == parse_polynomial("x1", 1)
    with pytest.raises(NotInvertibleError):
        parse_series_map(["x1^2"], 1, 2, check_automorphism=True)


@settings(max_examples=500)
@given(st.text(alphabet="x12y_d+-*^()/ 0123456789", max_size=20))
def test_total_on_grammar_alphabet(text):
    try:
        parse_polynomial(text, Naming.xy(2, 2))
    except ParseError as err:
        assert 0 <= err.position <= len(text)


@settings(max_examples=300)
@given(st.binary(max_size=24))
def test_total_on_bytes(data):
    try:
        parse_polynomial(data, 2)
    except ParseError as err:
        assert err.position >= 0


def test_deep_nesting_is_an_error():
    with pytest.raises(ParseError):
        parse_polynomial("(" * 5000 + "x1" + ")" * 5000, 1)
