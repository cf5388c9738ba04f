"""Exact polynomial core: arithmetic, Sturm counting, quasi-polynomials."""

from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from exopoly.polycore import (
    ETA,
    IncompatiblePrefactorError,
    IndeterminateRootCountError,
    Interval,
    NEG_INF,
    POS_INF,
    Poly,
    QuasiPoly,
    quasi_extract,
    sturm_count,
)

fractions_small = st.fractions(
    min_value=-20, max_value=20, max_denominator=8
)


def polys(max_degree=12):
    return st.lists(fractions_small, min_size=0, max_size=max_degree + 1).map(Poly)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def test_add_cancellation():
    assert Poly([2, 1]) + Poly([0, -1]) == Poly([2])


def test_difference_of_squares():
    assert Poly([1, 1]) * Poly([1, -1]) == Poly([1, 0, -1])


def test_exact_coefficient_subtraction():
    p = Poly([F(3, 8), F(1, 2), F(1, 2)])
    assert p - Poly([0, 0, F(1, 2)]) == Poly([F(3, 8), F(1, 2)])


def test_mul_degree_law():
    p, q = Poly([1, 2, 3]), Poly([F(1, 7), 0, 0, 5])
    assert (p * q).degree() == p.degree() + q.degree()


def test_divmod_roundtrip():
    p = Poly([1, -3, 0, 2, F(5, 3)])
    d = Poly([2, 1, 1])
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree() < d.degree()


def test_derivative_examples():
    assert Poly([7]).derivative() == Poly()
    assert Poly([2, 1]).derivative() == Poly([1])
    assert Poly([F(3, 8), F(1, 2), F(1, 2)]).derivative() == Poly([F(1, 2), 1])


def test_degree_drop_on_derivative():
    p = Poly([1, 2, 0, F(4, 9)])
    assert p.derivative().degree() == p.degree() - 1


def test_compose_neg():
    p = Poly([1, 2, 3, 4])
    assert p.compose_neg() == Poly([1, -2, 3, -4])
    x = F(5, 7)
    assert p.compose_neg()(x) == p(-x)


# ---------------------------------------------------------------------------
# Sturm counting
# ---------------------------------------------------------------------------

POS_AXIS = Interval(F(0), POS_INF)
REALS = Interval(NEG_INF, POS_INF)


def test_no_real_roots_negative_discriminant():
    # eta^2 + 2 eta + 2: discriminant 4 - 8 < 0
    assert sturm_count(Poly([2, 2, 1]), POS_AXIS) == 0
    assert sturm_count(Poly([2, 2, 1]), REALS) == 0


def test_single_root_placement():
    p = Poly([2, 1])  # root at -2
    assert sturm_count(p, POS_AXIS) == 0
    assert sturm_count(p, Interval(F(-3), F(0))) == 1


def test_laguerre_like_quadratic_has_no_positive_roots():
    # discriminant (1/2)^2 - 4*(1/2)*(3/8) = 1/4 - 3/4 < 0
    p = Poly([F(3, 8), F(1, 2), F(1, 2)])
    assert sturm_count(p, POS_AXIS) == 0


def test_zero_poly_rejected():
    with pytest.raises(IndeterminateRootCountError):
        sturm_count(Poly(), REALS)


def test_distinct_roots_only():
    p = Poly([1, -1]) * Poly([1, -1]) * Poly([-3, 1])  # (1-eta)^2 (eta-3)
    assert sturm_count(p, REALS) == 2
    assert sturm_count(p, Interval(F(0), F(2))) == 1


def test_endpoint_root_flags():
    p = Poly([-2, 1])  # root at 2
    assert sturm_count(p, Interval(F(0), F(2))) == 0
    assert sturm_count(p, Interval(F(0), F(2), hi_closed=True)) == 1
    assert sturm_count(p, Interval(F(2), F(5))) == 0
    assert sturm_count(p, Interval(F(2), F(5), lo_closed=True)) == 1


def test_endpoint_root_with_interior_roots():
    # roots at 0, 1, 2: count inside (0, 2) is 1 regardless of flags on lo/hi
    p = Poly([0, 1]) * Poly([-1, 1]) * Poly([-2, 1])
    assert sturm_count(p, Interval(F(0), F(2))) == 1
    assert sturm_count(p, Interval(F(0), F(2), lo_closed=True, hi_closed=True)) == 3


@given(polys(max_degree=9))
@settings(max_examples=120, deadline=None)
def test_total_count_bounded_by_degree(p):
    assume(not p.is_zero)
    assert sturm_count(p, REALS) <= max(p.degree(), 0)


@given(polys(max_degree=7), st.fractions(min_value=-5, max_value=5, max_denominator=6))
@settings(max_examples=120, deadline=None)
def test_count_additive_over_partition(p, t):
    assume(not p.is_zero)
    assume(p(t) != 0)
    lo, hi = F(-9), F(9)
    assume(lo < t < hi)
    whole = sturm_count(p, Interval(lo, hi))
    left = sturm_count(p, Interval(lo, t))
    right = sturm_count(p, Interval(t, hi))
    assert whole == left + right


# ---------------------------------------------------------------------------
# evaluation: exact vs floating
# ---------------------------------------------------------------------------


@given(polys(), polys(), fractions_small)
@settings(max_examples=150, deadline=None)
def test_product_evaluation_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)


@given(polys(), polys())
@settings(max_examples=150, deadline=None)
def test_derivative_linearity(p, q):
    assert (p + q).derivative() == p.derivative() + q.derivative()


@given(polys(), st.fractions(min_value=-4, max_value=4, max_denominator=16))
@settings(max_examples=200, deadline=None)
def test_float_eval_matches_exact_within_1e12(p, x):
    exact = p(x)
    # guard against catastrophic cancellation, where no fixed relative
    # tolerance is achievable in binary64
    magnitude = sum(abs(c) * abs(x) ** k for k, c in enumerate(p.coeffs))
    assume(abs(exact) >= F(1, 1000) * magnitude)
    assume(exact != 0)
    approx = p.eval_float(float(x))
    assert abs(approx - float(exact)) <= 1e-12 * abs(float(exact))


# ---------------------------------------------------------------------------
# quasi-polynomials
# ---------------------------------------------------------------------------


def test_quasi_derive_pure_exponential():
    q = QuasiPoly.make(Poly([1]), s=-1)
    d = q.derivative()
    assert d.prefactor == (F(-1), F(0), F(0), F(0))
    assert d.body == Poly([-1])


def test_quasi_derive_power_rule():
    a = F(5, 2)
    q = QuasiPoly.make(Poly([1]), a=a)
    d = q.derivative()
    assert d.prefactor == (F(0), a - 1, F(0), F(0))
    assert d.body == Poly([a])


def test_quasi_derive_product_rule():
    q = QuasiPoly.make(Poly([2, 1]), s=-1)
    d = q.derivative()
    assert d.prefactor == (F(-1), F(0), F(0), F(0))
    assert d.body == Poly([-1, -1])


def test_quasi_derive_hand_rule_two_powers():
    # d/deta [(1-eta)^b (1+eta)^c P] extracted over (1-eta)^(b-1)(1+eta)^(c-1)
    # must equal -b(1+eta)P + c(1-eta)P + (1-eta^2)P'
    b, c = F(7, 3), F(-1, 2)
    P = Poly([1, -4, F(2, 5)])
    d = QuasiPoly.make(P, b=b, c=c).derivative()
    got = quasi_extract(d, (0, 0, b - 1, c - 1))
    want = (
        Poly([1, 1]) * P * (-b)
        + Poly([1, -1]) * P * c
        + Poly([1, 0, -1]) * P.derivative()
    )
    assert got == want


def test_quasi_extract_examples():
    q = QuasiPoly.make(Poly([1]), s=-1, a=2)
    assert quasi_extract(q, (-1, 1, 0, 0)) == ETA

    P = Poly([3, 1])
    q2 = QuasiPoly.make(P, b=F(7, 2), c=1)
    assert quasi_extract(q2, (0, 0, F(7, 2), 0)) == Poly([1, 1]) * P

    with pytest.raises(IncompatiblePrefactorError):
        quasi_extract(QuasiPoly.make(P, s=-1), (1, 0, 0, 0))
    with pytest.raises(IncompatiblePrefactorError):
        quasi_extract(QuasiPoly.make(P, a=F(1, 2)), (0, 0, 0, 0))
    with pytest.raises(IncompatiblePrefactorError):
        quasi_extract(QuasiPoly.make(P, a=1), (0, 2, 0, 0))


def test_quasi_add_aligns_integer_gaps():
    q1 = QuasiPoly.make(Poly([1]), s=-1, a=F(5, 2))
    q2 = QuasiPoly.make(Poly([2]), s=-1, a=F(1, 2))
    tot = q1 + q2
    assert tot.prefactor == (F(-1), F(1, 2), F(0), F(0))
    assert tot.body == Poly([2, 0, 1])

    with pytest.raises(IncompatiblePrefactorError):
        QuasiPoly.make(Poly([1]), s=-1) + QuasiPoly.make(Poly([1]), s=1)
    with pytest.raises(IncompatiblePrefactorError):
        QuasiPoly.make(Poly([1]), a=F(1, 2)) + QuasiPoly.make(Poly([1]), a=0)


@given(polys(max_degree=6))
@settings(max_examples=80, deadline=None)
def test_quasi_derivative_reduces_to_poly_calculus(body):
    # with integer prefactor exponents the quasi derivative must agree with
    # differentiating the fully expanded polynomial
    q = QuasiPoly.make(body, a=1, b=2, c=1)
    d = q.derivative()
    expanded = ETA * Poly([1, -1]) * Poly([1, -1]) * Poly([1, 1]) * body
    assert quasi_extract(d, (0, 0, 0, 0)) == expanded.derivative()
