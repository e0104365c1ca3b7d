"""Closed-form comparison bounds for lambda_1 of geodesic balls.

Lower bounds: the volume/area bound 1 / int_0^r V/S, its spherical special
case (Betz-Camera-Gzyl), and the hyperbolic bound max{n/2r, (n-1)coth(r)/2}^2.
Upper bounds: Cheng's (c(n)/r)^2 with c(n) the first zero of J_{n/2-1}, and
the hyperbolic bound from Chavel's book.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .barta import inner_integral
from .profiles import Ball, DomainError, Kind
from .quadrature import DEFAULT_NODES, RadialFunction, RadialGrid, integrate


class Method(enum.Enum):
    BCG = "bcg"
    GENERALIZED_VS = "generalized_vs"
    CHENG_UPPER = "cheng_upper"
    HYPERBOLIC_LOWER = "hyperbolic_lower"
    CHAVEL_UPPER = "chavel_upper"
    BARTA_LOWER = "barta_lower"
    BARTA_UPPER = "barta_upper"
    ORACLE = "oracle"


class Side(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"
    EXACT = "exact"


_SIDES = {
    Method.BCG: {Side.LOWER},
    Method.GENERALIZED_VS: {Side.LOWER},
    Method.HYPERBOLIC_LOWER: {Side.LOWER},
    Method.BARTA_LOWER: {Side.LOWER},
    Method.CHENG_UPPER: {Side.UPPER, Side.EXACT},
    Method.CHAVEL_UPPER: {Side.UPPER},
    Method.BARTA_UPPER: {Side.UPPER},
    Method.ORACLE: {Side.EXACT},
}


@dataclass(frozen=True)
class BoundReport:
    method: Method
    value: float
    side: Side

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"{self.method.value}: bound must be nonnegative, got {self.value}")
        if self.side not in _SIDES[self.method]:
            raise ValueError(f"{self.method.value} cannot be a {self.side.value} bound")


# ---------------------------------------------------------------------------
# Bessel J_nu and its first zero


def _bessel_series(nu: float, x: float) -> tuple[float, float]:
    """Ascending series for J_nu(x), returned as (mantissa, log scale).

    J_nu(x) = mantissa * exp(log scale); the scale is the log of the leading
    term (x/2)^nu / Gamma(nu+1), so large orders neither overflow nor underflow.
    """
    half = 0.5 * x
    q = -half * half
    log_scale = nu * math.log(half) - math.lgamma(nu + 1.0)
    term = 1.0
    terms = [term]
    biggest = 1.0
    k = 0
    while k < 1000:
        k += 1
        term *= q / (k * (k + nu))
        terms.append(term)
        biggest = max(biggest, abs(term))
        # past the peak the terms shrink monotonically
        if k * (k + nu) > -q and abs(term) < 1e-18 * biggest:
            break
    return math.fsum(terms), log_scale


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for nu >= 0, x >= 0.

    Power series for nu <= 10.  Above that the series is summed at order
    nu + K, where (x/2)^2 < nu + K and it converges without cancellation, and
    the value is carried down by the backward three-term recurrence, which is
    stable for J.
    """
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if nu <= 10:
        m, s = _bessel_series(nu, x)
        return m * math.exp(s)
    K = max(int(math.ceil(0.25 * x * x - nu)), 0) + 20
    hi_m, hi_s = _bessel_series(nu + K + 1, x)
    mid, log_scale = _bessel_series(nu + K, x)
    upper = hi_m * math.exp(hi_s - log_scale)
    for j in range(K, 0, -1):
        upper, mid = mid, (2.0 * (nu + j) / x) * mid - upper
        if abs(mid) > 1e100:
            upper *= 1e-100
            mid *= 1e-100
            log_scale += 100.0 * math.log(10.0)
    return mid * math.exp(log_scale)


def _first_zero_guess(nu: float) -> float:
    if nu < 2.5:
        # McMahon expansion for s = 1
        beta = (1.0 + 0.5 * nu - 0.25) * math.pi
        mu = 4.0 * nu * nu
        return (
            beta
            - (mu - 1) / (8 * beta)
            - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * beta) ** 3)
        )
    # large-order expansion near the turning point
    c = nu ** (1.0 / 3.0)
    return nu + 1.8557571 * c + 1.033150 / c - 0.00397 / nu


def bessel_zero(nu: float) -> float:
    """First positive zero j_{nu,1} of J_nu, by bracketing and bisection."""
    if nu < 0:
        raise DomainError(f"Bessel order must be >= 0, got {nu}")
    guess = _first_zero_guess(nu)
    # J_nu > 0 on (0, j_{nu,1}) and consecutive zeros are more than 2.9 apart
    step = 0.25
    lo = max(guess - step, 1e-3)
    while bessel_j(nu, lo) <= 0:
        lo = max(lo - step, 0.5 * lo)
    hi = lo + step
    while bessel_j(nu, hi) > 0:
        lo, hi = hi, hi + step
    flo = bessel_j(nu, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = bessel_j(nu, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Lower bounds


def _vs_ratio(ball: Ball, grid: RadialGrid) -> np.ndarray:
    """V(sigma)/S(sigma) on the grid, via the same quadrature as T(1)."""
    return inner_integral(ball, RadialFunction(grid, np.ones_like(grid.nodes)))


def generalized_vs_bound(ball: Ball, n: int = DEFAULT_NODES) -> BoundReport:
    """1 / int_0^r V(sigma)/S(sigma) dsigma."""
    grid = RadialGrid.uniform(ball.radius, n)
    total = integrate(RadialFunction(grid, _vs_ratio(ball, grid)))
    return BoundReport(Method.GENERALIZED_VS, 1.0 / total, Side.LOWER)


def _sin_power_integral(m: int, x: np.ndarray, points: int = 40) -> np.ndarray:
    """int_0^x sin^m(s) ds for each x, by Gauss-Legendre on [0, x]."""
    gx, gw = np.polynomial.legendre.leggauss(points)
    s = 0.5 * np.outer(x, gx + 1.0)
    return 0.5 * x * (np.sin(s) ** m @ gw)


def bcg_bound(ball: Ball, n: int = DEFAULT_NODES) -> BoundReport:
    """Betz-Camera-Gzyl lower bound for spherical caps.

    Inner integral of sin^{n-1} in closed form, outer integral by Simpson.
    """
    if ball.kind is not Kind.SPHERE:
        raise DomainError("bcg_bound applies to sphere profiles; use generalized_vs_bound")
    k = math.sqrt(ball.profile.curvature)
    grid = RadialGrid.uniform(ball.radius, n)
    x = k * grid.nodes
    m = ball.dim - 1
    inner = np.zeros_like(x)
    inner[1:] = _sin_power_integral(m, x[1:]) / np.sin(x[1:]) ** m / k
    total = integrate(RadialFunction(grid, inner))
    return BoundReport(Method.BCG, 1.0 / total, Side.LOWER)


def _hyperbolic_scale(ball: Ball) -> tuple[float, float]:
    if ball.kind is not Kind.HYPERBOLIC:
        raise DomainError(f"hyperbolic bounds need a hyperbolic profile, got {ball.kind.value}")
    kappa = abs(ball.profile.curvature)
    return kappa, ball.radius * math.sqrt(kappa)


def hyperbolic_lower(ball: Ball) -> BoundReport:
    """max{n/2r, (n-1) coth(r) / 2}^2, rescaled from curvature -1."""
    kappa, r = _hyperbolic_scale(ball)
    n = ball.dim
    root = max(n / (2.0 * r), (n - 1) / (2.0 * math.tanh(r)))
    return BoundReport(Method.HYPERBOLIC_LOWER, root * root * kappa, Side.LOWER)


def chavel_upper(ball: Ball) -> BoundReport:
    kappa, r = _hyperbolic_scale(ball)
    n = ball.dim
    e = 1.0 / math.tanh(0.5 * r) - 1.0
    root = (n - 1) * e / 2.0 + math.sqrt(
        (n - 1) ** 2 / 4.0 + 4.0 * math.pi**2 / r**2 + (n - 1) ** 2 * e * e / 4.0
    )
    return BoundReport(Method.CHAVEL_UPPER, root * root * kappa, Side.UPPER)


def cheng_upper(ball: Ball) -> BoundReport:
    """(j_{n/2-1,1} / r)^2; exact on Euclidean balls, an upper bound on spheres."""
    if ball.kind is Kind.EUCLIDEAN:
        side = Side.EXACT
    elif ball.kind is Kind.SPHERE:
        side = Side.UPPER
    else:
        raise DomainError(f"Cheng's bound needs Ricci >= 0; not valid for {ball.kind.value}")
    c = bessel_zero(ball.dim / 2.0 - 1.0)
    return BoundReport(Method.CHENG_UPPER, (c / ball.radius) ** 2, side)


def classical_bounds(ball: Ball, n: int = DEFAULT_NODES) -> list[BoundReport]:
    """Every closed-form bound applicable to ``ball``."""
    out = [generalized_vs_bound(ball, n)]
    if ball.kind is Kind.SPHERE:
        out.append(bcg_bound(ball, n))
    if ball.kind in (Kind.SPHERE, Kind.EUCLIDEAN):
        out.append(cheng_upper(ball))
    if ball.kind is Kind.HYPERBOLIC:
        out.append(hyperbolic_lower(ball))
        out.append(chavel_upper(ball))
    return out
