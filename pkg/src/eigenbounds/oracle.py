"""Reference lambda_1 of a geodesic ball by shooting on the radial equation.

    u'' + (n-1) (f'/f) u' + lambda u = 0,   u'(0) = 0,   u(r) = 0

The solution regular at the origin is started at t = h from its series,
u(h) = 1 - lambda h^2 / 2n, u'(h) = -lambda h / n, and carried to r by
classical RK4 on the grid.  By Sturm oscillation u stays positive on (0, r]
exactly when lambda < lambda_1, so bisection on that predicate converges to
the first eigenvalue and never to a higher one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import classical
from .profiles import Ball, DomainError, Kind
from .quadrature import DEFAULT_NODES, RadialFunction, RadialGrid, divergence_form

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
MAX_DOUBLINGS = 60


class BracketError(RuntimeError):
    """No sign change found; the profile is inconsistent with its own bounds."""


@dataclass(frozen=True, eq=False)
class OracleResult:
    lambda1: float
    eigenfunction: RadialFunction
    bracket: tuple[float, float]
    evaluations: int
    warnings: tuple[str, ...] = field(default=())


class _Shooter:
    def __init__(self, ball: Ball, grid: RadialGrid):
        t = grid.nodes
        h = grid.step
        n1 = ball.dim - 1
        mids = t[1:] - 0.5 * h
        prof = ball.profile
        # drift coefficient (n-1) f'/f at nodes 1..N and at the half steps between
        self.c_node = (n1 * prof.f_prime(t[1:]) / prof.f(t[1:])).tolist()
        self.c_mid = (n1 * prof.f_prime(mids[1:]) / prof.f(mids[1:])).tolist()
        self.h = h
        self.n = ball.dim
        self.steps = grid.n - 1

    def shoot(self, lam: float, stop_at_zero: bool = True) -> list[float]:
        """u at nodes 1..N; stops early at the first nonpositive value."""
        h = self.h
        half = 0.5 * h
        u = 1.0 - lam * h * h / (2 * self.n)
        v = -lam * h / self.n
        cn, cm = self.c_node, self.c_mid
        out = [u]
        for k in range(self.steps):
            c0, c1, c2 = cn[k], cm[k], cn[k + 1]
            k1u = v
            k1v = -c0 * v - lam * u
            u2 = u + half * k1u
            v2 = v + half * k1v
            k2u = v2
            k2v = -c1 * v2 - lam * u2
            u3 = u + half * k2u
            v3 = v + half * k2v
            k3u = v3
            k3v = -c1 * v3 - lam * u3
            u4 = u + h * k3u
            v4 = v + h * k3v
            k4u = v4
            k4v = -c2 * v4 - lam * u4
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            out.append(u)
            if stop_at_zero and u <= 0.0:
                break
        return out

    def below_first(self, lam: float) -> bool:
        u = self.shoot(lam)
        return len(u) == self.steps + 1 and u[-1] > 0.0


def _initial_bracket(ball: Ball) -> tuple[float, float]:
    lower = classical.generalized_vs_bound(ball).value
    if ball.kind in (Kind.SPHERE, Kind.EUCLIDEAN):
        upper = classical.cheng_upper(ball).value
    elif ball.kind is Kind.HYPERBOLIC:
        upper = classical.chavel_upper(ball).value
    else:
        upper = 10.0 * lower
    return 0.5 * lower, 2.0 * upper


def solve_lambda1(ball: Ball, tol: float = DEFAULT_TOL, n: int = DEFAULT_NODES) -> OracleResult:
    """First Dirichlet eigenvalue of ``ball`` to absolute accuracy ``tol``
    (on top of the O(h^2) discretization error)."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    grid = RadialGrid.uniform(ball.radius, n)
    shooter = _Shooter(ball, grid)
    lo, hi = _initial_bracket(ball)
    evaluations = 0
    warnings: list[str] = []

    shifts = 0
    while True:
        evaluations += 1
        if shooter.below_first(lo):
            break
        shifts += 1
        if shifts > MAX_DOUBLINGS:
            raise BracketError(f"no lower bracket end found below {lo:g}")
        lo *= 0.5
    if shifts:
        msg = f"lower bracket end shifted down {shifts} time(s); initial lower bound exceeded lambda_1"
        log.warning(msg)
        warnings.append(msg)

    doublings = 0
    while True:
        evaluations += 1
        if not shooter.below_first(hi):
            break
        doublings += 1
        if doublings > MAX_DOUBLINGS:
            raise BracketError(f"no sign change of u(r) below lambda = {hi:g}")
        lo, hi = hi, 2.0 * hi

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        evaluations += 1
        if shooter.below_first(mid):
            lo = mid
        else:
            hi = mid

    lam = 0.5 * (lo + hi)
    values = np.empty(grid.n + 1)
    values[0] = 1.0
    values[1:] = shooter.shoot(lam, stop_at_zero=False)
    evaluations += 1
    # Dirichlet data: the shot misses u(r) = 0 by O(tol); impose it
    values[-1] = 0.0
    return OracleResult(
        lambda1=lam,
        eigenfunction=RadialFunction(grid, values),
        bracket=(lo, hi),
        evaluations=evaluations,
        warnings=tuple(warnings),
    )


def residual_vector(ball: Ball, u: RadialFunction, lam: float) -> np.ndarray:
    """(f^{n-1} u')' + lambda f^{n-1} u at interior nodes, central differences."""
    grid = u.grid
    w_mid = ball.weight(grid.midpoints)
    return divergence_form(grid, w_mid, u.values) + lam * ball.weight(grid.nodes[1:-1]) * u.values[1:-1]


def residual(ball: Ball, result: OracleResult) -> float:
    """Max-norm of the discrete eigen-equation residual over interior nodes."""
    return float(np.abs(residual_vector(ball, result.eigenfunction, result.lambda1)).max())
