"""Exact rational polynomial algebra.

Dense univariate polynomials over arbitrary-precision rationals, Sturm-chain
root counting on (half-)open intervals, and quasi-polynomials of the form

    e^(s*eta) * eta^a * (1-eta)^b * (1+eta)^c * B(eta)

which stay closed under differentiation.  Everything here is pure and
immutable; no operation ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "rat",
    "Poly",
    "ETA",
    "ONE",
    "Interval",
    "sturm_count",
    "QuasiPoly",
    "quasi_extract",
    "IncompatiblePrefactorError",
    "IndeterminateRootCountError",
]

#: Exact scalar type.  All symbolic algebra runs over it.
Rational = Fraction

RationalLike = Union[Fraction, int, str]

NEG_INF = float("-inf")
POS_INF = float("inf")


def rat(x: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings and exact decimal strings to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


class IndeterminateRootCountError(ValueError):
    """Raised when a root count is requested for the zero polynomial."""


class IncompatiblePrefactorError(ValueError):
    """Raised when quasi-polynomial prefactors cannot be reconciled."""


class Poly:
    """Dense univariate polynomial over Fraction, ascending powers.

    Trailing zero coefficients are trimmed on construction, so ``degree``
    is well defined (-1 for the zero polynomial) and equality is
    coefficientwise.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    # -- basic structure ------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    @staticmethod
    def monomial(power: int, coefficient: RationalLike = 1) -> "Poly":
        return Poly([0] * power + [coefficient])

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self._coeffs]})"

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return Poly(
            [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self._coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self._coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly([x])
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Exact euclidean division over the rationals."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        q: list[Fraction] = [Fraction(0)] * max(
            0, len(self._coeffs) - len(divisor._coeffs) + 1
        )
        rem = list(self._coeffs)
        dlc = divisor.leading()
        dd = divisor.degree()
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            factor = rem[-1] / dlc
            q[shift] = factor
            for j, b in enumerate(divisor._coeffs):
                rem[shift + j] -= factor * b
        return Poly(q), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(self._coerce(other))[1]

    # -- calculus and evaluation -----------------------------------------

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self._coeffs)][1:])

    def __call__(self, x: RationalLike) -> Fraction:
        """Exact evaluation at a rational point (Horner)."""
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        """64-bit floating Horner evaluation; exactness is not claimed."""
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self._coeffs]

    # -- transforms -------------------------------------------------------

    def compose_neg(self) -> "Poly":
        """p(eta) -> p(-eta)."""
        return Poly([c if k % 2 == 0 else -c for k, c in enumerate(self._coeffs)])

    def primitive(self) -> "Poly":
        """Scale by a positive rational to integer coefficients with gcd 1.

        Positive scaling only, so sign data (used by Sturm chains) survives.
        """
        if self.is_zero:
            return self
        den = math.lcm(*(c.denominator for c in self._coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self._coeffs]
        g = math.gcd(*(abs(v) for v in ints))
        return Poly([Fraction(v, g) for v in ints])


ETA = Poly([0, 1])
ONE = Poly([1])


@dataclass(frozen=True)
class Interval:
    """Real interval with per-endpoint open/closed flags.

    Bounds are Fractions for exact work; float('+/-inf') marks half-infinite
    intervals and plain floats are tolerated for purely numeric domains
    (e.g. an x-domain ending at pi/2).  Exact root counting insists on
    Fraction-or-infinite bounds.
    """

    lo: Union[Fraction, float]
    hi: Union[Fraction, float]
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval: lo={self.lo!r} >= hi={self.hi!r}")

    def contains(self, x) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if x > self.hi or (x == self.hi and not self.hi_closed):
            return False
        return True

    def __str__(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        lo = "-inf" if self.lo == NEG_INF else str(self.lo)
        hi = "inf" if self.hi == POS_INF else str(self.hi)
        return f"{lb}{lo}, {hi}{rb}"


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    """Euclidean gcd over the rationals, primitive-normalised each step."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero:
        a, b = b, (a % b).primitive()
    return a if a.is_zero else a.primitive()


def _squarefree(p: Poly) -> Poly:
    g = _poly_gcd(p, p.derivative())
    if g.degree() <= 0:
        return p
    return (p // g)


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p.primitive()]
    d = p.derivative()
    if d.is_zero:
        return chain
    chain.append(d.primitive())
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero:
            break
        chain.append((-r).primitive())
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_variations(signs: Sequence[int]) -> int:
    cleaned = [s for s in signs if s != 0]
    return sum(
        1 for prev, nxt in zip(cleaned, cleaned[1:]) if prev != nxt
    )


def _chain_signs_at(chain: Sequence[Poly], point) -> list[int]:
    if point == POS_INF:
        return [_sign(q.leading()) for q in chain]
    if point == NEG_INF:
        return [
            _sign(q.leading()) * (1 if q.degree() % 2 == 0 else -1)
            for q in chain
        ]
    return [_sign(q(point)) for q in chain]


def sturm_count(p: Poly, iv: Interval) -> int:
    """Exact count of distinct real roots of p in the interval.

    Roots landing exactly on a finite endpoint are counted only when that
    endpoint is flagged closed.  Half-infinite intervals use leading-term
    sign analysis.
    """
    if p.is_zero:
        raise IndeterminateRootCountError("indeterminate root count")
    for bound in (iv.lo, iv.hi):
        if not (isinstance(bound, Fraction) or _is_inf(bound)):
            raise TypeError("sturm_count needs Fraction or infinite bounds")
    if p.degree() == 0:
        return 0

    endpoint_roots = 0
    work = p
    for bound, closed in ((iv.lo, iv.lo_closed), (iv.hi, iv.hi_closed)):
        if _is_inf(bound):
            continue
        if work(bound) == 0:
            if closed:
                endpoint_roots += 1
            linear = Poly([-bound, 1])
            while not work.is_zero and work(bound) == 0:
                work = work // linear
    if work.degree() <= 0:
        return endpoint_roots

    chain = _sturm_chain(_squarefree(work))
    v_lo = _sign_variations(_chain_signs_at(chain, iv.lo))
    v_hi = _sign_variations(_chain_signs_at(chain, iv.hi))
    return (v_lo - v_hi) + endpoint_roots


# ---------------------------------------------------------------------------
# Quasi-polynomials
# ---------------------------------------------------------------------------

_ONE_MINUS = Poly([1, -1])
_ONE_PLUS = Poly([1, 1])


def _power_poly(base: Poly, k: int) -> Poly:
    out = ONE
    for _ in range(k):
        out = out * base
    return out


@dataclass(frozen=True)
class QuasiPoly:
    """e^(s*eta) * eta^a * (1-eta)^b * (1+eta)^c times a Poly body.

    Two quasi-polynomials add when their exponential coefficients match and
    their power exponents differ by integers; the gaps are absorbed into the
    bodies.  Differentiation lowers each power exponent by at most one.
    """

    s: Fraction
    a: Fraction
    b: Fraction
    c: Fraction
    body: Poly

    @staticmethod
    def make(body: Poly, s: RationalLike = 0, a: RationalLike = 0,
             b: RationalLike = 0, c: RationalLike = 0) -> "QuasiPoly":
        return QuasiPoly(rat(s), rat(a), rat(b), rat(c), body)

    @property
    def prefactor(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.s, self.a, self.b, self.c)

    def times_poly(self, p: Poly) -> "QuasiPoly":
        return QuasiPoly(self.s, self.a, self.b, self.c, self.body * p)

    def scaled(self, k: RationalLike) -> "QuasiPoly":
        return QuasiPoly(self.s, self.a, self.b, self.c, self.body * rat(k))

    def __add__(self, other: "QuasiPoly") -> "QuasiPoly":
        if self.s != other.s:
            raise IncompatiblePrefactorError(
                "incompatible prefactor: exponential coefficients differ"
            )
        exps = []
        bodies = [self.body, other.body]
        for base, x, y in (
            (ETA, self.a, other.a),
            (_ONE_MINUS, self.b, other.b),
            (_ONE_PLUS, self.c, other.c),
        ):
            gap = x - y
            if gap.denominator != 1:
                raise IncompatiblePrefactorError(
                    "incompatible prefactor: non-integer exponent gap"
                )
            common = min(x, y)
            exps.append(common)
            bodies[0] = bodies[0] * _power_poly(base, int(x - common))
            bodies[1] = bodies[1] * _power_poly(base, int(y - common))
        return QuasiPoly(self.s, exps[0], exps[1], exps[2], bodies[0] + bodies[1])

    def derivative(self) -> "QuasiPoly":
        """Exact d/deta, distributing over the prefactor."""
        out = QuasiPoly(self.s, self.a, self.b, self.c,
                        self.body * self.s + self.body.derivative())
        if self.a != 0:
            out = out + QuasiPoly(self.s, self.a - 1, self.b, self.c,
                                  self.body * self.a)
        if self.b != 0:
            out = out + QuasiPoly(self.s, self.a, self.b - 1, self.c,
                                  self.body * (-self.b))
        if self.c != 0:
            out = out + QuasiPoly(self.s, self.a, self.b, self.c - 1,
                                  self.body * self.c)
        return out


def quasi_extract(q: QuasiPoly, target) -> Poly:
    """Return the Poly R with target_prefactor * R == q, exactly.

    ``target`` is a QuasiPoly (body ignored) or an (s, a, b, c) tuple.  The
    exponent gaps q - target must be nonnegative integers and the
    exponential coefficients must match.
    """
    if isinstance(target, QuasiPoly):
        ts, ta, tb, tc = target.prefactor
    else:
        ts, ta, tb, tc = (rat(v) for v in target)
    if q.s != ts:
        raise IncompatiblePrefactorError(
            "incompatible prefactor: exponential coefficients differ"
        )
    out = q.body
    for base, have, want in (
        (ETA, q.a, ta),
        (_ONE_MINUS, q.b, tb),
        (_ONE_PLUS, q.c, tc),
    ):
        gap = have - want
        if gap < 0 or gap.denominator != 1:
            raise IncompatiblePrefactorError(
                "incompatible prefactor: exponent gap not a nonnegative integer"
            )
        out = out * _power_poly(base, int(gap))
    return out
