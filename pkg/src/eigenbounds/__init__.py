"""Bounds for the first Dirichlet eigenvalue of geodesic balls in
spherically symmetric manifolds."""

from .barta import BartaBounds, IterationTrace, apply_T, barta_bounds, refine
from .classical import (
    BoundReport,
    bcg_bound,
    bessel_zero,
    chavel_upper,
    cheng_upper,
    generalized_vs_bound,
    hyperbolic_lower,
)
from .oracle import OracleResult, residual, solve_lambda1
from .profiles import (
    Ball,
    DomainError,
    MetricProfile,
    ProfileError,
    boundary_area,
    euclidean,
    hyperbolic,
    make_tabulated,
    sphere,
    volume,
)
from .quadrature import (
    RadialFunction,
    RadialGrid,
    cumulative_from_zero,
    cumulative_to_r,
    integrate,
)

__version__ = "0.1.0"
