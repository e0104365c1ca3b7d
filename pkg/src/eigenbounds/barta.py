"""Barta-quotient bounds for the first Dirichlet eigenvalue of a geodesic ball.

For a nonnegative radial ``u`` the operator

    T(u)(t) = int_t^r (1 / f^{n-1}(sigma)) int_0^sigma f^{n-1}(s) u(s) ds dsigma

inverts the radial Laplacian with Dirichlet data at ``r``, and the quotient
h = u / T(u) satisfies inf h <= lambda_1 <= sup h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .profiles import Ball, DomainError
from .quadrature import (
    DEFAULT_NODES,
    RadialFunction,
    RadialGrid,
    cumulative_from_zero,
    cumulative_to_r,
)

NEGATIVE_TOL = 1e-12
# u(r) below this fraction of max u counts as a Dirichlet zero
BOUNDARY_ZERO = 1e-9
DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITERS = 200


def cosine_test_function(ball: Ball, n: int = DEFAULT_NODES) -> RadialFunction:
    """u(t) = cos(pi t / 2r), positive on [0, r) with a simple zero at r."""
    grid = RadialGrid.uniform(ball.radius, n)
    values = np.cos(grid.nodes * (math.pi / (2.0 * ball.radius)))
    values[-1] = 0.0
    return RadialFunction(grid, values)


def constant_test_function(ball: Ball, n: int = DEFAULT_NODES) -> RadialFunction:
    grid = RadialGrid.uniform(ball.radius, n)
    return RadialFunction(grid, np.ones_like(grid.nodes))


def _check_input(ball: Ball, u: RadialFunction) -> None:
    if not math.isclose(u.grid.r, ball.radius, rel_tol=1e-14):
        raise DomainError(f"grid radius {u.grid.r} does not match ball radius {ball.radius}")
    vmin = float(u.values.min())
    if vmin < -NEGATIVE_TOL:
        k = int(np.argmin(u.values))
        raise DomainError(f"test function is negative at t={u.grid.nodes[k]:.6g} (u={vmin:.3g})")
    if not np.any(u.values > 0):
        raise DomainError("test function is identically zero")


def inner_integral(ball: Ball, u: RadialFunction) -> np.ndarray:
    """inner(sigma) = int_0^sigma f^{n-1} u / f^{n-1}(sigma), with inner(0) = 0.

    f^{n-1} u is split as s^{n-1} * g(s) with g = (f(s)/s)^{n-1} u smooth, so
    the zero of order n-1 at the origin is integrated exactly.
    """
    grid = u.grid
    t = grid.nodes
    p = ball.dim - 1
    ratio = np.ones_like(t)
    ratio[1:] = ball.f(t[1:]) / t[1:]
    F = cumulative_from_zero(RadialFunction(grid, ratio**p * u.values), power=p).values
    inner = np.empty_like(F)
    inner[0] = 0.0
    inner[1:] = F[1:] / ball.weight(t[1:])
    return inner


def apply_T(ball: Ball, u: RadialFunction) -> RadialFunction:
    """T(u) on the grid of ``u``; vanishes at r and decreases strictly."""
    _check_input(ball, u)
    return cumulative_to_r(RadialFunction(u.grid, inner_integral(ball, u)))


@dataclass(frozen=True, eq=False)
class BartaBounds:
    lower: float
    upper: float
    grid: RadialGrid = field(repr=False)
    # h(t_k, u); the last entry is the boundary limit or +inf
    quotient: np.ndarray = field(repr=False)
    argmin_t: float = 0.0
    argmax_t: float = 0.0

    @property
    def gap(self) -> float:
        if not self.lower > 0:
            return math.inf
        return (self.upper - self.lower) / self.lower


def _bounds(ball: Ball, u: RadialFunction, include_boundary: bool) -> tuple[BartaBounds, RadialFunction]:
    _check_input(ball, u)
    grid = u.grid
    y = u.values
    inner = inner_integral(ball, u)
    Tu = cumulative_to_r(RadialFunction(grid, inner))

    q = np.empty_like(y)
    q[:-1] = y[:-1] / Tu.values[:-1]
    if abs(y[-1]) <= BOUNDARY_ZERO * y.max():
        # L'Hopital at t = r: u'(r) / T(u)'(r) with T(u)'(r) = -inner(r)
        du = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * grid.step)
        q[-1] = -du / inner[-1]
        boundary_zero = True
    else:
        q[-1] = math.inf
        boundary_zero = False

    considered = q if (include_boundary or not boundary_zero) else q[:-1]
    kmin = int(np.argmin(considered))
    kmax = int(np.argmax(considered))
    result = BartaBounds(
        lower=float(considered[kmin]),
        upper=float(considered[kmax]),
        grid=grid,
        quotient=q,
        argmin_t=float(grid.nodes[kmin]),
        argmax_t=float(grid.nodes[kmax]),
    )
    return result, Tu


def barta_bounds(ball: Ball, u: RadialFunction) -> BartaBounds:
    """inf and sup over the grid of h(t, u) = u(t) / T(u)(t).

    At t = r the quotient is the one-sided limit when u vanishes there and
    +inf otherwise.
    """
    return _bounds(ball, u, include_boundary=True)[0]


@dataclass(frozen=True)
class Step:
    index: int
    lower: float
    upper: float
    gap: float


@dataclass(frozen=True, eq=False)
class IterationTrace:
    steps: list[Step]
    converged: bool
    final_u: RadialFunction

    @property
    def value(self) -> float:
        last = self.steps[-1]
        return 0.5 * (last.lower + last.upper)


def refine(
    ball: Ball,
    u0: RadialFunction,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> IterationTrace:
    """Inverse power iteration u <- T(u) / max T(u), tracking the Barta bounds.

    Each step records the bounds of the current ``u`` (the boundary limit point
    is left out once u(r) = 0) and stops when the relative gap drops below tol.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if max_iters < 1:
        raise DomainError(f"max_iters must be >= 1, got {max_iters}")
    u = u0
    steps: list[Step] = []
    for k in range(1, max_iters + 1):
        b, Tu = _bounds(ball, u, include_boundary=False)
        steps.append(Step(k, b.lower, b.upper, b.gap))
        if b.gap < tol:
            return IterationTrace(steps, True, u)
        u = Tu.scaled(1.0 / Tu.values.max())
    return IterationTrace(steps, False, u)
