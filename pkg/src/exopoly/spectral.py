"""Independent spectral check of the constructed potentials.

The Hamiltonian -d^2/dx^2 + V(x) is discretized by second-order central
differences with Dirichlet walls on a truncated domain, and its lowest
eigenvalues are extracted by bisection on the LDL^T inertia count of the
shifted tridiagonal matrix.  Nothing here reuses the symbolic eigenvalue
formulas, so agreement with them is a genuine two-route test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .systems import Case, XSystem, energy, potential_eval

__all__ = [
    "GridSpec",
    "Tridiag",
    "default_grid",
    "tridiag_from_potential",
    "discretize",
    "eigen_lowest",
    "SpectrumReport",
    "compare_spectrum",
]

# documented truncation defaults: wave functions decay like gaussians times
# powers on the half line and like powers of the wall distance on (0, pi/2),
# so these boxes put the truncation error far below the 1e-3 target
_LAGUERRE_BOX = (1e-3, 12.0)
_JACOBI_BOX = (1e-3, math.pi / 2 - 1e-3)


@dataclass(frozen=True)
class GridSpec:
    """Uniform Dirichlet grid on [x_min, x_max] with `points` interior nodes."""

    x_min: float
    x_max: float
    points: int = 4000
    boundary: str = "dirichlet"

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        if self.points < 100:
            raise ValueError("need at least 100 grid points")
        if self.boundary != "dirichlet":
            raise ValueError("only dirichlet walls are supported")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.points + 1)

    def interior(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.points + 1)


@dataclass(frozen=True)
class Tridiag:
    """Symmetric tridiagonal operator (diagonal and subdiagonal)."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        if len(self.off) != len(self.diag) - 1:
            raise ValueError("subdiagonal length must be n-1")


def default_grid(sys: XSystem, points: int = 4000) -> GridSpec:
    lo, hi = _LAGUERRE_BOX if sys.case.is_laguerre else _JACOBI_BOX
    return GridSpec(lo, hi, points)


def tridiag_from_potential(v: Callable[[float], float], grid: GridSpec) -> Tridiag:
    """Central-difference matrix: 2/h^2 + V(x_i) on the diagonal, -1/h^2 off."""
    h = grid.h
    xs = grid.interior()
    vals = np.array([v(float(x)) for x in xs], dtype=float)
    bad = np.nonzero(~np.isfinite(vals))[0]
    if bad.size:
        i = int(bad[0])
        raise ValueError(
            f"potential is not finite at grid node {i} (x={xs[i]!r}, V={vals[i]!r})"
        )
    diag = 2.0 / h**2 + vals
    off = np.full(len(xs) - 1, -1.0 / h**2)
    return Tridiag(diag, off)


def discretize(sys: XSystem, grid: Optional[GridSpec] = None) -> Tridiag:
    grid = grid or default_grid(sys)
    return tridiag_from_potential(lambda x: potential_eval(sys, x), grid)


def _count_below(diag: Sequence[float], off2: Sequence[float], sigma: float) -> int:
    """Eigenvalues of the tridiagonal matrix strictly below sigma, by the
    inertia of the LDL^T pivots of (T - sigma)."""
    count = 0
    q = 1.0
    tiny = 1e-300
    for i, d in enumerate(diag):
        q = d - sigma - (off2[i - 1] / q if i else 0.0)
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


def eigen_lowest(op: Tridiag, k: int) -> list[float]:
    """The k smallest eigenvalues, ascending, by Sturm-count bisection."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > 10:
        raise ValueError("only the lowest 10 levels are supported")
    n = len(op.diag)
    if k > n:
        raise ValueError("k exceeds the matrix dimension")
    diag = [float(d) for d in op.diag]
    offs = [float(e) for e in op.off]
    off2 = [e * e for e in offs]
    radius = [0.0] * n
    for i in range(n):
        r = abs(offs[i - 1]) if i else 0.0
        if i < n - 1:
            r += abs(offs[i])
        radius[i] = r
    lo0 = min(d - r for d, r in zip(diag, radius))
    hi0 = max(d + r for d, r in zip(diag, radius))
    out = []
    for j in range(1, k + 1):
        lo, hi = lo0, hi0
        # invariant: count(lo) < j <= count(hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if _count_below(diag, off2, mid) >= j:
                hi = mid
            else:
                lo = mid
            if hi - lo <= 1e-14 * max(1.0, abs(mid)):
                break
        out.append(0.5 * (lo + hi))
    return out


@dataclass(frozen=True)
class SpectrumReport:
    case: Case
    analytic: tuple[Fraction, ...]
    numeric: tuple[float, ...]
    errors: tuple[float, ...]
    grid: GridSpec

    @property
    def max_error(self) -> float:
        return max(self.errors)


def compare_spectrum(sys: XSystem, k: int = 5, grid: Optional[GridSpec] = None) -> SpectrumReport:
    """Numeric vs closed-form eigenvalues for the lowest k levels.

    Errors are relative, except for an analytically zero level (the extended
    Jacobi ground state), where the absolute error is reported.
    """
    grid = grid or default_grid(sys)
    numeric = eigen_lowest(discretize(sys, grid), k)
    analytic = [energy(sys, j) for j in range(k)]
    errors = []
    for a, v in zip(analytic, numeric):
        fa = float(a)
        errors.append(abs(v - fa) if fa == 0.0 else abs(v - fa) / abs(fa))
    return SpectrumReport(
        case=sys.case,
        analytic=tuple(analytic),
        numeric=tuple(numeric),
        errors=tuple(errors),
        grid=grid,
    )
