"""Uniform radial grids with Simpson-consistent cumulative integrals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_NODES = 2048
MIN_NODES = 64


@dataclass(frozen=True, eq=False)
class RadialGrid:
    r: float
    n: int
    nodes: np.ndarray

    @classmethod
    def uniform(cls, r: float, n: int = DEFAULT_NODES) -> "RadialGrid":
        if n < MIN_NODES or n % 2:
            raise ValueError(f"node count must be even and >= {MIN_NODES}, got {n}")
        if not r > 0:
            raise ValueError(f"grid radius must be positive, got {r}")
        nodes = np.linspace(0.0, r, n + 1)
        nodes.setflags(write=False)
        return cls(float(r), int(n), nodes)

    @property
    def step(self) -> float:
        return self.r / self.n

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])


@dataclass(frozen=True, eq=False)
class RadialFunction:
    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.nodes.shape:
            raise ValueError(f"expected {self.grid.nodes.shape[0]} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("radial function values must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, grid: RadialGrid, fn) -> "RadialFunction":
        return cls(grid, np.broadcast_to(np.asarray(fn(grid.nodes), dtype=float), grid.nodes.shape).copy())

    def scaled(self, c: float) -> "RadialFunction":
        return RadialFunction(self.grid, c * self.values)

    def __add__(self, other: "RadialFunction") -> "RadialFunction":
        return RadialFunction(self.grid, self.values + other.values)

    def __mul__(self, c: float) -> "RadialFunction":
        return self.scaled(c)

    __rmul__ = __mul__


def integrate(fn: RadialFunction) -> float:
    """Composite Simpson integral over [0, r]."""
    y = fn.values
    h = fn.grid.step
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))


def _half_panels(y: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Integrals of the panel quadratic over the left and right half of each panel.

    Left + right equals the Simpson value of the panel exactly.
    """
    y0, y1, y2 = y[0:-2:2], y[1:-1:2], y[2::2]
    left = h / 12.0 * (5.0 * y0 + 8.0 * y1 - y2)
    right = h / 12.0 * (-y0 + 8.0 * y1 + 5.0 * y2)
    return left, right


def _lagrange3(x: np.ndarray) -> np.ndarray:
    """Quadratic Lagrange basis on the nodes 0, 1, 2, shape (3, len(x))."""
    return np.array([0.5 * (x - 1.0) * (x - 2.0), -x * (x - 2.0), 0.5 * x * (x - 1.0)])


def _weighted_half_panels(
    y: np.ndarray, nodes: np.ndarray, h: float, power: int
) -> tuple[np.ndarray, np.ndarray]:
    """Half-panel integrals of s^power times the panel quadratic of ``y``.

    Gauss-Legendre with enough points to integrate the degree power+2
    polynomial exactly.
    """
    q = (power + 4) // 2
    gx, gw = np.polynomial.legendre.leggauss(q)
    gx = 0.5 * (gx + 1.0)
    gw = 0.5 * gw
    a = nodes[0:-2:2][:, None]
    panel_y = np.stack([y[0:-2:2], y[1:-1:2], y[2::2]], axis=1)
    out = []
    for shift in (0.0, 1.0):
        x = gx + shift
        basis = _lagrange3(x)                       # (3, q)
        s_pow = (a + h * x[None, :]) ** power       # (panels, q)
        weights = h * (s_pow * gw[None, :]) @ basis.T  # (panels, 3)
        out.append(np.einsum("pi,pi->p", weights, panel_y))
    return out[0], out[1]


def cumulative_from_zero(fn: RadialFunction, power: int = 0) -> RadialFunction:
    """F(t_k) = integral over [0, t_k] of s^power * fn(s).

    Even nodes carry composite Simpson partial sums; odd nodes add the
    integral of the panel quadratic over the first half panel.  With
    ``power > 0`` the factor s^power is integrated exactly against the panel
    quadratic of ``fn``, which keeps full order for integrands that vanish
    like a power of s at the origin.
    """
    y = fn.values
    if power:
        left, right = _weighted_half_panels(y, fn.grid.nodes, fn.grid.step, power)
    else:
        left, right = _half_panels(y, fn.grid.step)
    out = np.empty_like(y)
    out[0] = 0.0
    out[2::2] = np.cumsum(left + right)
    out[1::2] = out[0:-2:2] + left
    return RadialFunction(fn.grid, out)


def cumulative_to_r(fn: RadialFunction) -> RadialFunction:
    """G(t_k) = integral of ``fn`` over [t_k, r]; G + F equals the Simpson total."""
    y = fn.values
    left, right = _half_panels(y, fn.grid.step)
    out = np.empty_like(y)
    out[-1] = 0.0
    out[-3::-2] = np.cumsum((left + right)[::-1])
    out[1::2] = out[2::2] + right
    return RadialFunction(fn.grid, out)


def divergence_form(grid: RadialGrid, weight_mid: np.ndarray, values: np.ndarray) -> np.ndarray:
    """(w y')' at interior nodes by the conservative three-point stencil.

    ``weight_mid`` holds w at the N cell midpoints.  Second order in the step.
    """
    h = grid.step
    flux = weight_mid * np.diff(values) / h
    return np.diff(flux) / h
