"""Quadrature rules and orthogonality of the deformed families."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from exopoly.polycore import Interval, POS_INF
from exopoly.quadrature import (
    GramReport,
    QuadratureConvergenceError,
    gram,
    inner_product,
    integrate,
    make_rule,
)
from exopoly.systems import Case, Params, build_system

UNIT = Interval(F(0), F(1))
SYM = Interval(F(-1), F(1))
HALF_LINE = Interval(F(0), POS_INF)


# ---------------------------------------------------------------------------
# rules
# ---------------------------------------------------------------------------


def test_rule_invariants():
    for scheme in ("gauss_legendre", "tanh_sinh"):
        rule = make_rule(UNIT, scheme, 5)
        assert np.all(rule.weights > 0)
        assert np.all((rule.nodes > 0) & (rule.nodes < 1))
        total = float(np.dot(rule.weights, np.ones_like(rule.nodes)))
        assert abs(total - 1.0) <= 1e-12


def test_finite_interval_examples():
    rule = make_rule(UNIT, "gauss_legendre", 3)
    assert abs(float(np.dot(rule.weights, rule.nodes)) - 0.5) <= 1e-14
    assert abs(integrate(lambda x: x, UNIT) - 0.5) <= 1e-14
    want = (2.0 / 3.0) * 2.0**1.5
    assert abs(integrate(lambda x: np.sqrt(1 - x), SYM) - want) <= 1e-12 * want


def test_gauss_legendre_polynomial_exactness():
    # 2^level points integrate degree 2*points - 1 exactly
    rule = make_rule(Interval(F(-1), F(1)), "gauss_legendre", 2)  # 4 points
    for k in range(0, 8):
        got = float(np.dot(rule.weights, rule.nodes**k))
        want = 0.0 if k % 2 else 2.0 / (k + 1)
        assert abs(got - want) <= 1e-13


def test_half_line_decaying_integrand():
    assert abs(integrate(lambda x: np.exp(-x), HALF_LINE) - 1.0) <= 1e-10


def test_unsupported_combinations():
    with pytest.raises(ValueError):
        make_rule(HALF_LINE, "gauss_legendre", 4)
    with pytest.raises(ValueError):
        make_rule(Interval(float("-inf"), F(0)), "tanh_sinh", 4)
    with pytest.raises(ValueError):
        make_rule(UNIT, "clenshaw_curtis", 4)
    with pytest.raises(ValueError):
        make_rule(UNIT, "tanh_sinh", 0)


def test_nonconvergence_reports_achieved_estimate():
    # logarithmically divergent on the half line: must refuse to converge
    with pytest.raises(QuadratureConvergenceError) as err:
        integrate(lambda x: 1.0 / (1.0 + x), HALF_LINE)
    assert math.isfinite(err.value.achieved)


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------

REPRESENTATIVES = [
    (Case.L2, Params(1, F(-2))),
    (Case.L1, Params(1, F(1, 2))),
    (Case.J1, Params(1, F(1, 2), F(-2))),
    (Case.J2, Params(1, F(-2), F(1, 2))),
    (Case.EXTJ, Params(2, F(-5, 2), F(-5, 2))),
]


def test_orthogonality_and_positivity():
    for case, params in REPRESENTATIVES:
        sys = build_system(case, params)
        for n in range(4):
            assert inner_product(sys, n, n) > 0
        norm0 = inner_product(sys, 0, 0)
        norm3 = inner_product(sys, 3, 3)
        cross = inner_product(sys, 0, 3)
        assert abs(cross) / math.sqrt(norm0 * norm3) < 1e-10


def test_classical_laguerre_norms_recovered():
    # at ell=0 the family is (alpha - n) L_n^(-alpha-1); dividing the frozen
    # scalar out must reproduce the classical norm Gamma(n - alpha)/n!
    alpha = F(-5, 2)
    sys = build_system(Case.L2, Params(0, alpha))
    for n in range(5):
        got = inner_product(sys, n, n) / float(alpha - n) ** 2
        want = math.gamma(n - float(alpha)) / math.factorial(n)
        assert abs(got - want) <= 1e-8 * want


def test_gram_reports():
    sys = build_system(Case.L2, Params(1, F(-2)))
    rep = gram(sys, 6)
    assert isinstance(rep, GramReport)
    assert rep.size == 6
    assert rep.max_offdiag < 1e-10
    for i in range(6):
        assert rep.matrix[i][i] == 1.0
        for j in range(6):
            assert abs(rep.matrix[i][j] - rep.matrix[j][i]) < 1e-13


def test_gram_extj_includes_constant_ground_level():
    sys = build_system(Case.EXTJ, Params(2, F(-5, 2), F(-5, 2)))
    rep = gram(sys, 5)
    # level-0 row: the constant function against every family member
    for j in range(1, 5):
        assert abs(rep.matrix[0][j]) < 1e-10
    assert rep.max_offdiag < 1e-10


def test_weight_positive_at_all_nodes():
    # the nodeless deforming function keeps the weight from ever flipping
    # sign; beyond eta ~ 745 the e^-eta factor underflows binary64 to an
    # exact 0.0, which is the closest representable value to the true
    # (positive) weight
    from exopoly.polycore import ONE
    from exopoly.quadrature import _weighted_product_integrand, make_rule

    for case, params in REPRESENTATIVES:
        sys = build_system(case, params)
        rule = make_rule(sys.domain_eta, "tanh_sinh", 8)
        weight = _weighted_product_integrand(sys, ONE, ONE)(rule.nodes)
        assert np.all(np.isfinite(weight)), case
        assert np.all(weight >= 0), case
        representable = rule.nodes < 700.0
        assert np.all(weight[representable] > 0), case


def test_defect_shrinks_with_refinement_then_plateaus():
    sys = build_system(Case.J1, Params(1, F(1, 2), F(-2)))
    defects = []
    for rtol in (1e-4, 1e-8, 1e-12):
        val = inner_product(sys, 0, 2, rtol=rtol)
        n0 = inner_product(sys, 0, 0, rtol=rtol)
        n2 = inner_product(sys, 2, 2, rtol=rtol)
        defects.append(abs(val) / math.sqrt(n0 * n2))
    assert defects[-1] < 1e-10
    assert min(defects) <= defects[0] + 1e-12
