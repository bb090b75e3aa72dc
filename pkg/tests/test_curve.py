from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import EXAMPLES, example_ids
from edslab.curve import (
    INFINITY,
    CurveData,
    RationalPoint,
    WeierstrassCurve,
    closed_form_disc,
    associated_curve,
    denominator_sequence,
    is_divisibility_sequence,
    lowest_terms_ok,
    parse_curve,
    parse_point,
    point_add,
    point_mul,
    point_neg,
    shipsey_signs,
    short_model,
)
from edslab.eds import discriminant, from_initial, is_nonsingular
from edslab.errors import FormMismatch, InvalidInitial, RecursionFailure, SingularCurve, SingularSequence, TorsionPoint

E37 = WeierstrassCurve(0, 0, 1, -1, 0)
E43 = WeierstrassCurve(0, 1, 1, 0, 0)
E710_STYLE = WeierstrassCurve(0, 28, 27, 27, 0)
ORIGIN = RationalPoint(0, 0)


def curve_of(ex):
    return WeierstrassCurve(*ex.curve), RationalPoint(*ex.point)


def test_associated_curve_example1():
    C = associated_curve(from_initial(1, 1, -1, 1))
    assert (C.A, C.B, C.x, C.y, C.disc) == (-1296, 11664, 0, 108, -5033809152)
    assert C.y**2 == C.x**3 + C.A * C.x + C.B
    assert C.disc == 4 * C.A**3 + 27 * C.B**2 == 2**8 * 3**12 * (-1) ** 9 * 37


def test_associated_curve_rejects_singular():
    with pytest.raises(SingularSequence):
        associated_curve(from_initial(1, 2, 3, 4))


def test_curve_formulas_symbolically():
    """Both discriminant expressions agree as polynomials, and the point lies on the curve."""
    a, b, g = sympy.symbols("a b g")
    A = 27 * (-(a**16) - 4 * g * a**12 + (16 * b**3 - 6 * g**2) * a**8
              + (8 * g * b**3 - 4 * g**3) * a**4 - (16 * b**6 + 8 * g**2 * b**3 + g**4))
    B = 54 * (a**24 + 6 * g * a**20 - (24 * b**3 - 15 * g**2) * a**16
              - (60 * g * b**3 - 20 * g**3) * a**12
              + (120 * b**6 - 36 * g**2 * b**3 + 15 * g**4) * a**8
              + (-48 * g * b**6 + 12 * g**3 * b**3 + 6 * g**5) * a**4
              + (64 * b**9 + 48 * g**2 * b**6 + 12 * g**4 * b**3 + g**6))
    x = 3 * (a**8 + 2 * g * a**4 + 4 * b**3 + g**2)
    y = -108 * b**3 * a**4
    assert sympy.expand(y**2 - x**3 - A * x - B) == 0
    assert sympy.expand(4 * A**3 + 27 * B**2 - closed_form_disc(a, b, g)) == 0


initials = (
    st.tuples(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-30, 30))
    .filter(lambda t: t[0] != 0 and t[1] != 0)
    .map(lambda t: from_initial(1, t[0], t[1], t[0] * t[2]))
    .filter(is_nonsingular)
)


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(initials)
def test_disc_expressions_agree(eds):
    C = associated_curve(eds)
    assert C.y**2 == C.x**3 + C.A * C.x + C.B
    assert 4 * C.A**3 + 27 * C.B**2 == closed_form_disc(eds.w2, eds.w3, eds.w4 // eds.w2)
    # independent route through the sequence discriminant
    assert C.disc == 2**8 * 3**12 * eds.w3**9 * eds.w2**4 * discriminant(eds)


def test_curve_data_round_trip():
    C = associated_curve(from_initial(1, 1, 2, 1))
    assert CurveData.from_dict(C.to_dict()) == C


def test_group_law_basics():
    assert point_add(E37, ORIGIN, INFINITY) == ORIGIN
    assert point_add(E37, ORIGIN, point_neg(E37, ORIGIN)).is_infinity
    assert point_add(E37, ORIGIN, ORIGIN) == RationalPoint(1, 0)
    assert point_mul(E37, ORIGIN, 5) == RationalPoint(Fraction(1, 4), Fraction(-5, 8))
    assert point_mul(E37, ORIGIN, 0).is_infinity
    assert point_mul(E37, ORIGIN, -7) == point_neg(E37, point_mul(E37, ORIGIN, 7))


def test_tangent_oracle():
    """Doubling (0, 0) on y^2 + y = x^3 - x by hand: slope -1, x3 = 1, y3 = 0."""
    lam = Fraction(3 * 0**2 - 1, 2 * 0 + 1)
    x3 = lam**2 - 0 - 0
    y3 = -(lam * (x3 - 0) + 0) - 1
    assert RationalPoint(x3, y3) == point_mul(E37, ORIGIN, 2)


def test_singular_curve_rejected():
    with pytest.raises(SingularCurve):
        WeierstrassCurve(0, 0, 0, 0, 0)


def test_torsion_detected():
    E = WeierstrassCurve(0, 0, 0, -1, 0)  # y^2 = x^3 - x has full 2-torsion
    with pytest.raises(TorsionPoint):
        denominator_sequence(E, RationalPoint(1, 0), 5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(EXAMPLES), st.integers(-12, 12), st.integers(-12, 12))
def test_point_mul_additive(ex, m, n):
    E, P = curve_of(ex)
    lhs = point_mul(E, P, m + n)
    rhs = point_add(E, point_mul(E, P, m), point_mul(E, P, n))
    assert lhs == rhs and E.contains(lhs)


def test_denominators_known():
    assert denominator_sequence(E37, ORIGIN, 5) == [1, 1, 1, 1, 2]
    assert denominator_sequence(E43, ORIGIN, 8) == [1, 1, 1, 1, 2, 3, 1, 7]


@pytest.mark.parametrize("ex", EXAMPLES, ids=example_ids())
def test_denominators_form_divisibility_sequence(ex):
    E, P = curve_of(ex)
    D = denominator_sequence(E, P, 60)
    assert is_divisibility_sequence(D)
    assert all(lowest_terms_ok(point_mul(E, P, n)) for n in (1, 7, 12))


@pytest.mark.parametrize("ex", EXAMPLES[:4], ids=example_ids(EXAMPLES[:4]))
def test_abs_terms_equal_denominators(ex):
    E, P = curve_of(ex)
    W = from_initial(*ex.initial).terms(50)[1:]
    assert [abs(w) for w in W] == denominator_sequence(E, P, 50)


def test_example5_ratio_is_power_of_two():
    ex = EXAMPLES[4]
    E, P = curve_of(ex)
    W = from_initial(*ex.initial).terms(30)[1:]
    for w, d in zip(W, denominator_sequence(E, P, 30)):
        ratio = Fraction(abs(w), d)
        k = abs(ratio.numerator.bit_length() - ratio.denominator.bit_length())
        assert ratio in (Fraction(2) ** k, Fraction(1, 2**k))


def test_shipsey_examples():
    assert shipsey_signs(E37, ORIGIN, 10) == [1, 1, -1, 1, 2, -1, -3, -5, 7, -4]
    assert shipsey_signs(E43, ORIGIN, 10) == [1, 1, 1, -1, -2, -3, -1, 7, 11, 20]
    assert shipsey_signs(E43, ORIGIN, 40) == from_initial(1, 1, 1, -1).terms(40)[1:]


def test_shipsey_singular_reduction_fails():
    with pytest.raises(RecursionFailure):
        shipsey_signs(E710_STYLE, ORIGIN, 12)


def test_shipsey_form_mismatch():
    with pytest.raises(FormMismatch):
        shipsey_signs(E37, RationalPoint(1, 0), 5)
    with pytest.raises(FormMismatch):
        shipsey_signs(WeierstrassCurve(1, -1, 0, -1, 1), RationalPoint(1, 0), 5)


def test_short_model_keeps_point_on_curve():
    for ex in EXAMPLES:
        C = short_model(*curve_of(ex))
        assert C.y**2 == C.x**3 + C.A * C.x + C.B


def test_parsers():
    assert parse_curve("0,0,1,-1,0") == E37
    assert parse_point("O").is_infinity
    assert parse_point("1/4,-5/8") == RationalPoint(Fraction(1, 4), Fraction(-5, 8))
    with pytest.raises(InvalidInitial):
        parse_curve("1,2")
    with pytest.raises(InvalidInitial):
        parse_point("1")
