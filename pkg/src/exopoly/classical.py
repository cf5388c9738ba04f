"""Classical Laguerre and Jacobi polynomials over exact rationals.

Construction is exact for every real rational parameter value, including the
negative values where the usual three-term recurrences break down.  Each
constructed polynomial is verified once against its defining second-order
equation, so a transcription error cannot survive construction.  The module
also provides the derivative/contiguity identity suite and the classical
zero-counting theory (zero counts on the positive axis and on (-1, 1),
together with the Klein symbol and the nodelessness criterion).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .polycore import ETA, Interval, ONE, POS_INF, Poly, rat, sturm_count

__all__ = [
    "binomial",
    "laguerre",
    "jacobi",
    "jacobi_is_degree_degenerate",
    "IDENTITIES",
    "identity_residual",
    "verify_identity",
    "klein_E",
    "TheoremHypothesisError",
    "ZeroCountPrediction",
    "predict_zero_count",
    "nodeless_condition",
]


def binomial(top, k: int) -> Fraction:
    """Generalized binomial C(top, k) = top (top-1) ... (top-k+1) / k!."""
    top = rat(top)
    num = Fraction(1)
    for j in range(k):
        num *= top - j
    return num / math.factorial(k)


class TheoremHypothesisError(ValueError):
    """Parameters fall outside a zero-count theorem's hypotheses."""


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _laguerre_cached(n: int, alpha: Fraction) -> Poly:
    # recurrence (k+1) L_{k+1} = (2k+1+alpha-eta) L_k - (k+alpha) L_{k-1};
    # the leading prefactor k+1 never vanishes, so this is degeneracy-free
    prev, cur = ONE, Poly([alpha + 1, -1])
    if n == 0:
        cur = prev
    for k in range(1, n):
        nxt = (Poly([2 * k + 1 + alpha, -1]) * cur - (k + alpha) * prev) * Fraction(1, k + 1)
        prev, cur = cur, nxt
    _check_laguerre_ode(n, alpha, cur)
    return cur


def _check_laguerre_ode(n: int, alpha: Fraction, L: Poly) -> None:
    resid = ETA * L.derivative().derivative() \
        + Poly([alpha + 1, -1]) * L.derivative() + n * L
    if not resid.is_zero:
        raise AssertionError(f"Laguerre construction failed its equation: n={n}, alpha={alpha}")


def laguerre(n: int, alpha) -> Poly:
    """Exact generalized Laguerre polynomial L_n^(alpha) of degree n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _laguerre_cached(int(n), rat(alpha))


@lru_cache(maxsize=4096)
def _jacobi_cached(n: int, alpha: Fraction, beta: Fraction) -> Poly:
    # two-binomial expansion: sum_s C(n+alpha, n-s) C(n+beta, s)
    #   * ((eta-1)/2)^s ((eta+1)/2)^(n-s).
    # Unlike the three-term recurrence this has no vanishing prefactors for
    # negative parameter values, which this library depends on.
    half_minus = Poly([Fraction(-1, 2), Fraction(1, 2)])
    half_plus = Poly([Fraction(1, 2), Fraction(1, 2)])
    minus_pows = [ONE]
    plus_pows = [ONE]
    for _ in range(n):
        minus_pows.append(minus_pows[-1] * half_minus)
        plus_pows.append(plus_pows[-1] * half_plus)
    total = Poly()
    for s in range(n + 1):
        coeff = binomial(n + alpha, n - s) * binomial(n + beta, s)
        if coeff:
            total = total + coeff * minus_pows[s] * plus_pows[n - s]
    _check_jacobi_ode(n, alpha, beta, total)
    return total


def _check_jacobi_ode(n: int, alpha: Fraction, beta: Fraction, P: Poly) -> None:
    resid = Poly([1, 0, -1]) * P.derivative().derivative() \
        + Poly([beta - alpha, -(alpha + beta + 2)]) * P.derivative() \
        + n * (n + alpha + beta + 1) * P
    if not resid.is_zero:
        raise AssertionError(
            f"Jacobi construction failed its equation: n={n}, alpha={alpha}, beta={beta}"
        )


def jacobi(n: int, alpha, beta) -> Poly:
    """Exact Jacobi polynomial P_n^(alpha, beta).

    For special negative parameter combinations the leading coefficient
    vanishes and the returned polynomial has degree < n.  The drop is never
    hidden: ``poly.degree()`` exposes it and
    :func:`jacobi_is_degree_degenerate` tests for it directly.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _jacobi_cached(int(n), rat(alpha), rat(beta))


def jacobi_is_degree_degenerate(n: int, alpha, beta) -> bool:
    """True iff the degree-n leading coefficient C(2n+alpha+beta, n)/2^n is 0."""
    return binomial(rat(alpha) + rat(beta) + 2 * n, n) == 0


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

IDENTITIES = ("L-1", "L-2", "L-3", "J-1", "J-2", "J-3", "J-4", "J-5", "J-6", "J-7")

_ONE_MINUS = Poly([1, -1])
_ONE_PLUS = Poly([1, 1])


def identity_residual(name: str, ell: int, alpha, beta=None) -> Poly:
    """Left minus right of a named derivative/contiguity identity.

    The residual is the exact zero polynomial precisely when the identity
    holds.  Laguerre identities take ``alpha`` only; Jacobi ones need
    ``beta`` too.  Identities referencing degree ell-1 require ell >= 1.
    """
    a = rat(alpha)
    if name.startswith("L"):
        if name == "L-1":
            if ell < 1:
                raise ValueError("identity needs degree >= 1")
            return laguerre(ell, a).derivative() + laguerre(ell - 1, a + 1)
        if name == "L-2":
            if ell < 1:
                raise ValueError("identity needs degree >= 1")
            return laguerre(ell, a) + laguerre(ell - 1, a + 1) - laguerre(ell, a + 1)
        if name == "L-3":
            if ell < 1:
                raise ValueError("identity needs degree >= 1")
            return ETA * laguerre(ell - 1, a + 2) \
                - (a + 1) * laguerre(ell - 1, a + 1) + ell * laguerre(ell, a)
        raise ValueError(f"unknown identity {name!r}")

    if beta is None:
        raise ValueError("Jacobi identities need beta")
    b = rat(beta)
    if name == "J-1":
        if ell < 1:
            raise ValueError("identity needs degree >= 1")
        return jacobi(ell, a, b).derivative() \
            - Fraction(1, 2) * (ell + a + b + 1) * jacobi(ell - 1, a + 1, b + 1)
    if name == "J-2":
        if ell < 1:
            raise ValueError("identity needs degree >= 1")
        return 2 * (b + 1) * jacobi(ell, a - 1, b + 1) \
            + (ell + a + b + 1) * _ONE_PLUS * jacobi(ell - 1, a, b + 2) \
            - 2 * (ell + b + 1) * jacobi(ell, a, b)
    if name == "J-3":
        if ell < 1:
            raise ValueError("identity needs degree >= 1")
        return (ell + a) * jacobi(ell, a - 1, b + 1) - a * jacobi(ell, a, b) \
            - Fraction(1, 2) * (ell + a + b + 1) * Poly([-1, 1]) * jacobi(ell - 1, a + 1, b + 1)
    if name == "J-4":
        if ell < 1:
            raise ValueError("identity needs degree >= 1")
        return (ell + a) * _ONE_PLUS * jacobi(ell - 1, a, b + 1) \
            - b * _ONE_MINUS * jacobi(ell - 1, a + 1, b) \
            - 2 * ell * jacobi(ell, a, b - 1)
    if name == "J-5":
        return _ONE_MINUS * jacobi(ell, a, b).derivative() \
            - a * jacobi(ell, a, b) + (ell + a) * jacobi(ell, a - 1, b + 1)
    if name == "J-6":
        return _ONE_PLUS * jacobi(ell, a - 1, b + 1).derivative() \
            + (b + 1) * jacobi(ell, a - 1, b + 1) - (ell + b + 1) * jacobi(ell, a, b)
    if name == "J-7":
        return _ONE_PLUS * jacobi(ell, a, b).derivative() \
            - (ell + b) * jacobi(ell, a + 1, b - 1) + b * jacobi(ell, a, b)
    raise ValueError(f"unknown identity {name!r}")


def verify_identity(name: str, ell: int, alpha, beta=None) -> bool:
    """Exact boolean: does the named identity hold at these parameters?"""
    return identity_residual(name, ell, alpha, beta).is_zero


# ---------------------------------------------------------------------------
# zero counting
# ---------------------------------------------------------------------------


def klein_E(u) -> int:
    """Klein symbol: 0 for u <= 0, floor(u) for positive non-integers,
    u - 1 for positive integers."""
    u = rat(u)
    if u <= 0:
        return 0
    if u.denominator == 1:
        return int(u) - 1
    return math.floor(u)


@dataclass(frozen=True)
class ZeroCountPrediction:
    """Predicted real-zero count with the branch that produced it.

    ``oracle_resolved`` marks the ambiguous Laguerre branch -ell < alpha < -1,
    where the printed count formula admits two readings of the integral part;
    there the count is settled by exact Sturm counting and both readings are
    echoed in ``readings`` (floor first, truncation second).
    """

    count: int
    branch: str
    kind: str
    n: int
    alpha: Fraction
    beta: Optional[Fraction] = None
    oracle_resolved: bool = False
    readings: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.count > self.n:
            raise AssertionError("zero count exceeded the degree")


_POSITIVE_AXIS = Interval(Fraction(0), POS_INF)
_OPEN_UNIT = Interval(Fraction(-1), Fraction(1))


def predict_zero_count(kind: str, n: int, alpha, beta=None) -> ZeroCountPrediction:
    """Classical theorem predictions for real-zero counts.

    kind='laguerre': zeros of L_n^(alpha) on the positive axis, for
    alpha not in {-1, ..., -n}.  kind='jacobi': zeros of P_n^(alpha, beta)
    in (-1, 1), for parameters where the binomial sign test is nonzero.
    """
    a = rat(alpha)
    if kind == "laguerre":
        if a.denominator == 1 and -n <= a <= -1:
            raise TheoremHypothesisError(
                f"theorem hypothesis violated: alpha={a} is in {{-1,...,-{n}}}"
            )
        if a > -1:
            return ZeroCountPrediction(n, "laguerre_pos_zeros", kind, n, a)
        if a < -n:
            return ZeroCountPrediction(0, "laguerre_pos_zeros", kind, n, a)
        # -n < alpha < -1, non-integer: the printed count n + [alpha] + 1 is
        # ambiguous (floor vs truncation); count exactly and report both.
        floor_reading = n + math.floor(a) + 1
        trunc_reading = n + math.trunc(a) + 1
        count = sturm_count(laguerre(n, a), _POSITIVE_AXIS)
        return ZeroCountPrediction(
            count, "laguerre_middle_oracle", kind, n, a,
            oracle_resolved=True, readings=(floor_reading, trunc_reading),
        )
    if kind == "jacobi":
        if beta is None:
            raise ValueError("jacobi prediction needs beta")
        b = rat(beta)
        sign_product = binomial(n + a, n) * binomial(n + b, n)
        if sign_product == 0:
            raise TheoremHypothesisError(
                "theorem hypothesis violated: binomial sign test is zero"
            )
        if n % 2:
            sign_product = -sign_product
        X = klein_E(Fraction(1, 2) * (abs(2 * n + a + b + 1) - abs(a) - abs(b) + 1))
        if sign_product > 0:
            count = 2 * ((X + 1) // 2)
        else:
            count = 2 * (X // 2) + 1
        return ZeroCountPrediction(count, "jacobi_interval", kind, n, a, b)
    raise ValueError(f"unknown kind {kind!r}")


def nodeless_condition(ell: int, alpha, beta) -> bool:
    """True iff P_ell^(alpha, beta) is guaranteed zero-free on (-1, 1):

        |2 ell + alpha + beta + 1| - |alpha| - |beta| + 1 <= 0
        and (-1)^ell C(ell+alpha, ell) C(ell+beta, ell) > 0.
    """
    a, b = rat(alpha), rat(beta)
    sign_product = binomial(ell + a, ell) * binomial(ell + b, ell)
    if sign_product == 0:
        raise TheoremHypothesisError(
            "theorem hypothesis violated: binomial sign test is zero"
        )
    if ell % 2:
        sign_product = -sign_product
    bound = abs(2 * ell + a + b + 1) - abs(a) - abs(b) + 1
    return bound <= 0 and sign_product > 0


def count_zeros_exact(kind: str, n: int, alpha, beta=None) -> int:
    """Sturm-count oracle on the exact polynomial, matching the theorem's
    interval convention (positive axis / open (-1, 1))."""
    if kind == "laguerre":
        return sturm_count(laguerre(n, alpha), _POSITIVE_AXIS)
    if kind == "jacobi":
        return sturm_count(jacobi(n, alpha, beta), _OPEN_UNIT)
    raise ValueError(f"unknown kind {kind!r}")
