from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from richtwist.errors import DivisionByZero, ParseError, PoleAtPoint, ZeroDenominator
from richtwist.field import (
    Certificate,
    PolyQ,
    RatQ,
    is_nonneg_canonical,
    parse_ratq,
    parse_scalar,
    ratq_eval,
    ratq_normalize,
    var,
)

t1, t3, t4, t6 = var(1), var(3), var(4), var(6)

NVARS = 8
SYMS = sympy.symbols(" ".join(f"t{i}" for i in range(1, NVARS + 1)))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


def _exponent(picks: list[int]) -> tuple[int, ...]:
    return tuple(picks.count(i) for i in range(NVARS))


# monomials of degree <= 6 in t1..t8
exponents = st.lists(st.integers(0, NVARS - 1), max_size=6).map(_exponent)
polys = st.dictionaries(exponents, coeffs, min_size=1, max_size=4).map(PolyQ)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratqs = st.builds(ratq_normalize, polys, nonzero_polys)
points = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=NVARS, max_size=NVARS)


def to_sympy(x: RatQ) -> sympy.Expr:
    def poly(p: PolyQ) -> sympy.Expr:
        return sum(
            (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(SYMS, exp)])
             for exp, c in p.terms.items()),
            sympy.Integer(0),
        )

    return poly(x.num) / poly(x.den)


def same_structure(a: RatQ, b: RatQ) -> bool:
    return a.num == b.num and a.den == b.den


# normalization ----------------------------------------------------------------

def test_normalize_cancels_common_factor():
    num = PolyQ({(1, 0, 0, 1): 1, (0, 0, 0, 1, 0, 1): 1})
    den = PolyQ({(0, 0, 0, 1): 1})
    x = ratq_normalize(num, den)
    assert x == t1 + t6
    assert x.den == PolyQ({(): 1})


def test_normalize_zero_and_identity():
    assert ratq_normalize(PolyQ({}), PolyQ({(0, 0, 1): 1})) == RatQ(0)
    assert ratq_normalize(PolyQ({}), PolyQ({(0, 0, 1): 1})).den == PolyQ({(): 1})
    assert ratq_normalize(PolyQ({(1,): 1}), PolyQ({(1,): 1})) == RatQ(1)


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        ratq_normalize(PolyQ({(1,): 1}), PolyQ({}))


def test_den_normal_form():
    x = ratq_normalize(PolyQ({(1,): 3}), PolyQ({(1,): -2, (0, 1): 4}))
    exp, c = x.den.leading()
    assert c > 0
    assert all(coef.denominator == 1 for coef in x.den.terms.values())
    assert math.gcd(*(int(coef) for coef in x.den.terms.values())) == 1
    assert x == RatQ("3*t1/(4*t2 - 2*t1)")


# field operations -------------------------------------------------------------

def test_field_op_examples():
    assert 1 / t6 + t1 / (t1 * t6) == RatQ("2/t6")
    x = (t1 + t6) / (t3 * t4)
    assert x * x ** -1 == 1
    assert (t1 + t6) - t6 == t1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        t1 / RatQ(0)
    with pytest.raises(DivisionByZero):
        RatQ(0) ** -1


def test_mixed_scalars():
    assert t1 + Fraction(1, 2) == RatQ("t1 + 1/2")
    assert 2 * t1 == t1 + t1
    assert (t1 / 3).num == PolyQ({(1,): Fraction(1, 3)})


@settings(max_examples=60, deadline=None)
@given(ratqs, ratqs, ratqs)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if not a.is_zero():
        assert a * (1 / a) == 1


@settings(max_examples=60, deadline=None)
@given(ratqs)
def test_normalize_idempotent(x):
    assert same_structure(ratq_normalize(x.num, x.den), x)
    assert parse_ratq(str(x)) == x
    assert same_structure(parse_ratq(str(x)), x)


@settings(max_examples=40, deadline=None)
@given(ratqs, ratqs)
def test_sympy_oracle(a, b):
    for ours, theirs in ((a + b, to_sympy(a) + to_sympy(b)), (a * b, to_sympy(a) * to_sympy(b))):
        assert sympy.cancel(to_sympy(ours) - theirs) == 0


@settings(max_examples=40, deadline=None)
@given(ratqs, ratqs, points)
def test_eval_homomorphism(a, b, point):
    try:
        ea, eb = ratq_eval(a, point), ratq_eval(b, point)
    except PoleAtPoint:
        assume(False)
    # reduced denominators of a+b and a*b divide den(a)*den(b), so no new poles
    assert ratq_eval(a + b, point) == ea + eb
    assert ratq_eval(a * b, point) == ea * eb


# evaluation -------------------------------------------------------------------

def test_eval_examples():
    x = (t1 + t6) / (t1 * t4)
    assert ratq_eval(x, {1: 1, 4: 1, 6: 1}) == 2
    assert ratq_eval(RatQ(1), {}) == 1
    with pytest.raises(PoleAtPoint):
        ratq_eval(x, {1: 0, 4: 1, 6: 1})


def test_eval_float_and_substitution():
    x = (t1 + t6) / (t1 * t4)
    assert ratq_eval(x, {1: 0.5, 4: 2.0, 6: 1.5}) == pytest.approx(2.0)
    assert ratq_eval(x, {1: t3, 4: RatQ(1), 6: t3}) == 2


# certificates -----------------------------------------------------------------

def test_certificates():
    assert is_nonneg_canonical(RatQ("(t1 + t6)/(t1*t4)")) is Certificate.CERTIFIED_SF
    assert is_nonneg_canonical(RatQ("t1 - t6")) is Certificate.INCONCLUSIVE
    assert is_nonneg_canonical(RatQ(1)) is Certificate.CERTIFIED_SF
    assert not is_nonneg_canonical(RatQ("t1 - t6"))


# strings ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "text",
    ["(t1 + t6)/(t1*t4)", "2/t6", "(1/2)/t1", "(-t1 - t6)/(t4*t6)", "-t1*t6/(t2*t4)", "-1/(t1*t2*t4)", "t3*t4", "0", "-3/4"],
)
def test_canonical_strings_round_trip(text):
    assert str(parse_ratq(text)) == text


def test_parser_accepts_paper_syntax():
    assert parse_ratq("t1^2 * t3 ** 2 / (t1*t3)") == t1 * t3
    assert parse_ratq("-(t1 + t6)/(t4*t6)") == RatQ("(-t1 - t6)/(t4*t6)")


@pytest.mark.parametrize("bad", ["", "t1 +", "(t1", "x1", "t1 t2)"])
def test_parser_errors(bad):
    with pytest.raises(ParseError):
        parse_ratq(bad)


def test_parse_scalar_kinds():
    assert parse_scalar("1/2") == RatQ(Fraction(1, 2))
    assert parse_scalar("0.25", "float") == 0.25
    assert parse_scalar("1/4", "float") == 0.25
