"""Tokenizer, polynomial expression parser, and pretty-printer."""

import random
from fractions import Fraction

import pytest

import flatcert as fc
from flatcert import ParseError, parse_polynomial
from flatcert.parse import (
    TokenStream,
    expr_text,
    parse_expression,
    to_polynomial,
    tokenize,
)
from helpers import random_poly


def test_tokenize_positions_and_comments():
    toks = tokenize("x + y # trailing comment\n  z")
    kinds = [(t.kind, t.text, t.line, t.col) for t in toks]
    assert kinds[0] == ("name", "x", 1, 1)
    assert kinds[1] == ("+", "+", 1, 3)
    assert kinds[2] == ("name", "y", 1, 5)
    assert kinds[3] == ("name", "z", 2, 3)
    assert toks[-1].kind == "eof"


def test_tokenize_two_char_operators():
    toks = tokenize("-> == !=")
    assert [t.kind for t in toks[:3]] == ["->", "==", "!="]


def test_tokenize_rejects_garbage():
    with pytest.raises(ParseError) as err:
        tokenize("x @ y")
    assert "line 1" in str(err.value)
    assert "col 3" in str(err.value)


def test_parse_simple_polynomials(qq_xyz):
    sig = qq_xyz.signature
    x = fc.poly("x", qq_xyz)
    y = fc.poly("y", qq_xyz)
    z = fc.poly("z", qq_xyz)
    assert parse_polynomial("x*y - z^2", sig) == x * y - z**2
    assert parse_polynomial("-x + 2", sig) == -x + 2
    assert parse_polynomial("(x + y)^2", sig) == (x + y) ** 2
    assert parse_polynomial("1/2*x", sig) == x.scale(Fraction(1, 2))
    assert parse_polynomial("0", sig) == fc.Polynomial.zero(sig)
    assert parse_polynomial("x - - y", sig) == x + y


def test_parse_precedence(qq_xyz):
    sig = qq_xyz.signature
    # '*' binds tighter than '+', '^' tighter than '*', unary '-' weakest
    assert parse_polynomial("x + y*z", sig) == parse_polynomial("x + (y*z)", sig)
    assert parse_polynomial("x*y^2", sig) == parse_polynomial("x*(y^2)", sig)
    assert parse_polynomial("-x^2", sig) == -parse_polynomial("x^2", sig)


def test_parse_errors_carry_positions(qq_xy):
    sig = qq_xy.signature
    # double star is not a polynomial operator
    with pytest.raises(ParseError) as err:
        parse_polynomial("x ** y", sig)
    assert "col 4" in str(err.value)
    with pytest.raises(ParseError):
        parse_polynomial("x +", sig)
    with pytest.raises(ParseError):
        parse_polynomial("x y", sig)  # trailing input
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + w", sig)  # unknown variable
    assert "w" in str(err.value) and "col 5" in str(err.value)
    with pytest.raises(ParseError):
        parse_polynomial("x^y", sig)  # malformed exponent
    with pytest.raises(ParseError):
        parse_polynomial("1/0", sig)  # zero denominator


def test_rationals(qq_xy):
    sig = qq_xy.signature
    f = parse_polynomial("2/3*x + 5", sig)
    assert f.terms[(1, 0)] == Fraction(2, 3)
    assert f.terms[(0, 0)] == Fraction(5)


def test_expr_text_round_trip_random(qq_xyz):
    # printing a random polynomial and reparsing is the identity
    sig = qq_xyz.signature
    rng = random.Random(23)
    for _ in range(80):
        f = random_poly(rng, sig, max_deg=3, max_terms=4)
        assert parse_polynomial(str(f), sig) == f


def test_expr_text_matches_source_shape():
    ts = TokenStream(tokenize("(x + y)*z^2 - 3"))
    node = parse_expression(ts)
    text = expr_text(node)
    ts2 = TokenStream(tokenize(text))
    assert parse_expression(ts2) == node
    sig = fc.RingSignature(("x", "y", "z"))
    assert to_polynomial(node, sig) == parse_polynomial("(x + y)*z^2 - 3", sig)
