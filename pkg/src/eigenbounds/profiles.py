"""Warping functions of spherically symmetric metrics dt^2 + f(t)^2 dtheta^2.

A :class:`MetricProfile` carries ``f`` and ``f'``; a :class:`Ball` pairs a
profile with a dimension and a radius.  Volume and boundary area of geodesic
balls follow from ``f`` alone.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .quadrature import RadialFunction, RadialGrid, integrate


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ProfileError(DomainError):
    """Raised for profiles or balls that violate f(0)=0, f'(0)=1, f>0."""


class Kind(enum.Enum):
    EUCLIDEAN = "euclidean"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"
    TABULATED = "tabulated"


ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class MetricProfile:
    kind: Kind
    f: ArrayFn
    f_prime: ArrayFn
    max_radius: float = math.inf
    curvature: float = 0.0
    # largest admissible ball radius; spheres stop short of the antipode
    radius_limit: float = math.inf
    samples: tuple = field(default=(), repr=False)


def euclidean() -> MetricProfile:
    return MetricProfile(
        kind=Kind.EUCLIDEAN,
        f=lambda t: np.asarray(t, dtype=float) * 1.0,
        f_prime=lambda t: np.ones_like(np.asarray(t, dtype=float)),
    )


def sphere(curvature: float = 1.0) -> MetricProfile:
    if not curvature > 0:
        raise ProfileError(f"sphere curvature must be positive, got {curvature}")
    k = math.sqrt(curvature)
    return MetricProfile(
        kind=Kind.SPHERE,
        f=lambda t: np.sin(k * np.asarray(t, dtype=float)) / k,
        f_prime=lambda t: np.cos(k * np.asarray(t, dtype=float)),
        max_radius=math.pi / k,
        curvature=curvature,
        radius_limit=math.pi / k,
    )


def hyperbolic(curvature: float = -1.0) -> MetricProfile:
    if not curvature < 0:
        raise ProfileError(f"hyperbolic curvature must be negative, got {curvature}")
    k = math.sqrt(-curvature)
    return MetricProfile(
        kind=Kind.HYPERBOLIC,
        f=lambda t: np.sinh(k * np.asarray(t, dtype=float)) / k,
        f_prime=lambda t: np.cosh(k * np.asarray(t, dtype=float)),
        curvature=curvature,
    )


def space_form(curvature: float) -> MetricProfile:
    """Profile of the simply connected space form of constant curvature."""
    if curvature > 0:
        return sphere(curvature)
    if curvature < 0:
        return hyperbolic(curvature)
    return euclidean()


def make_tabulated(samples: Sequence[tuple[float, float]]) -> MetricProfile:
    """Build a profile from ``(t, f(t))`` samples via a natural cubic spline.

    The first sample must be ``(0, 0)``, ``t`` strictly increasing, all other
    values positive, and the spline slope at 0 within 1e-3 of 1.
    """
    pts = [(float(t), float(v)) for t, v in samples]
    if len(pts) < 8:
        raise ProfileError(f"need at least 8 samples, got {len(pts)}")
    if pts[0][0] != 0.0:
        raise ProfileError(f"sample 0 must be at t=0, got t={pts[0][0]}")
    if pts[0][1] != 0.0:
        raise ProfileError(f"sample 0 must have f=0, got f={pts[0][1]}")
    for i in range(1, len(pts)):
        t, v = pts[i]
        if not t > pts[i - 1][0]:
            raise ProfileError(f"sample {i}: t={t} is not strictly increasing")
        if not v > 0:
            raise ProfileError(f"sample {i}: f({t})={v} must be positive")
    ts = np.array([p[0] for p in pts])
    vs = np.array([p[1] for p in pts])
    spline = CubicSpline(ts, vs, bc_type="natural")
    deriv = spline.derivative()
    slope0 = float(deriv(0.0))
    if abs(slope0 - 1.0) > 1e-3:
        raise ProfileError(f"sample 0: reconstructed f'(0)={slope0:.6g}, expected 1 within 1e-3")
    return MetricProfile(
        kind=Kind.TABULATED,
        f=lambda t: spline(np.asarray(t, dtype=float)),
        f_prime=lambda t: deriv(np.asarray(t, dtype=float)),
        max_radius=float(ts[-1]),
        radius_limit=float(ts[-1]),
        samples=tuple(pts),
    )


def read_profile_csv(path: str | Path) -> MetricProfile:
    """Read a tabulated profile from a CSV with header ``t,f``."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != ["t", "f"]:
            raise ProfileError(f"{path}: expected header 't,f', got {reader.fieldnames}")
        rows = [(float(row["t"]), float(row["f"])) for row in reader]
    return make_tabulated(rows)


def gamma_exact(x: float) -> float:
    """Gamma at a positive integer or half-integer via its closed form."""
    twice = 2 * x
    if twice != round(twice) or x <= 0:
        raise ValueError(f"gamma_exact needs a positive integer or half-integer, got {x}")
    m = int(round(twice))
    if m % 2 == 0:
        return float(math.factorial(m // 2 - 1))
    k = (m - 1) // 2
    # Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
    return math.factorial(2 * k) / (4**k * math.factorial(k)) * math.sqrt(math.pi)


def unit_sphere_area(n: int) -> float:
    """(n-1)-volume of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2)."""
    return 2.0 * math.pi ** (n / 2) / gamma_exact(n / 2)


@dataclass(frozen=True, eq=False)
class Ball:
    dim: int
    radius: float
    profile: MetricProfile

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ProfileError(f"dimension must be an integer >= 2, got {self.dim}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ProfileError(f"radius must be positive and finite, got {self.radius}")
        p = self.profile
        if p.kind is Kind.SPHERE and self.radius >= p.radius_limit:
            raise ProfileError(
                f"sphere ball radius {self.radius} must stay below pi/sqrt(k) = {p.radius_limit}"
            )
        if self.radius > p.radius_limit:
            raise ProfileError(f"radius {self.radius} exceeds profile max radius {p.radius_limit}")

    @property
    def kind(self) -> Kind:
        return self.profile.kind

    def f(self, t):
        return self.profile.f(t)

    def weight(self, t):
        """f^(n-1), the radial density of the volume form."""
        return self.profile.f(t) ** (self.dim - 1)


def volume(ball: Ball, t: float, n_nodes: int = 2048) -> float:
    """Volume of the concentric ball of radius ``t``."""
    if not 0 <= t <= ball.radius:
        raise DomainError(f"t={t} outside [0, {ball.radius}]")
    if t == 0:
        return 0.0
    grid = RadialGrid.uniform(t, n_nodes)
    return unit_sphere_area(ball.dim) * integrate(RadialFunction(grid, ball.weight(grid.nodes)))


def boundary_area(ball: Ball, t: float) -> float:
    if not 0 < t <= ball.radius:
        raise DomainError(f"t={t} outside (0, {ball.radius}]")
    return unit_sphere_area(ball.dim) * float(ball.weight(t))
