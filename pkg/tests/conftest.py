import math

import numpy as np
import pytest

from eigenbounds.profiles import Ball, euclidean, hyperbolic, sphere
from eigenbounds.quadrature import RadialFunction, RadialGrid


def on_grid(ball, fn, n=2048):
    grid = RadialGrid.uniform(ball.radius, n)
    return RadialFunction(grid, fn(grid.nodes))


def random_positive_u(ball, rng, n=2048, vanish=False):
    """Positive Fourier-cosine mixture; optionally times cos(pi t / 2r) so u(r) = 0."""
    r = ball.radius
    k = np.arange(1, 6)
    coef = rng.normal(size=5) / k
    a0 = np.abs(coef).sum() * (1.0 + rng.uniform(0.05, 1.0))

    def fn(t):
        v = a0 + np.cos(np.outer(t, k) * math.pi / r) @ coef
        if vanish:
            v = v * np.cos(t * math.pi / (2 * r))
        return v

    u = on_grid(ball, fn, n)
    if vanish:
        u.values[-1] = 0.0
    return u


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


SANDWICH_BALLS = [
    Ball(2, 1.0, euclidean()),
    Ball(3, 0.7, euclidean()),
    Ball(2, math.pi / 3, sphere()),
    Ball(4, 1.1, sphere(1.0)),
    Ball(3, 0.9, sphere(2.0)),
    Ball(2, 1.5, hyperbolic()),
    Ball(3, 2.0, hyperbolic(-1.0)),
    Ball(5, 0.8, hyperbolic(-4.0)),
]


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
