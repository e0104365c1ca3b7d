import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenbounds.quadrature import (
    RadialFunction,
    RadialGrid,
    cumulative_from_zero,
    cumulative_to_r,
    divergence_form,
    integrate,
)


def sampled(r, fn, n=64):
    grid = RadialGrid.uniform(r, n)
    return RadialFunction(grid, fn(grid.nodes))


def test_grid_validation():
    with pytest.raises(ValueError):
        RadialGrid.uniform(1.0, 63)
    with pytest.raises(ValueError):
        RadialGrid.uniform(1.0, 66 + 1)
    with pytest.raises(ValueError):
        RadialGrid.uniform(0.0, 64)
    g = RadialGrid.uniform(2.0, 64)
    assert g.nodes[0] == 0.0 and g.nodes[-1] == 2.0 and len(g.nodes) == 65


def test_radial_function_rejects_nonfinite():
    g = RadialGrid.uniform(1.0, 64)
    v = np.ones(65)
    v[3] = np.nan
    with pytest.raises(ValueError):
        RadialFunction(g, v)
    with pytest.raises(ValueError):
        RadialFunction(g, np.ones(10))


def test_integrate_constant():
    assert integrate(sampled(1.7, np.ones_like)) == pytest.approx(1.7, rel=1e-15)


def test_integrate_cubic_exact():
    assert integrate(sampled(1.0, lambda t: t**3)) == pytest.approx(0.25, rel=1e-14)


def test_integrate_sine():
    assert integrate(sampled(math.pi, np.sin, 256)) == pytest.approx(2.0, abs=1e-8)


def test_cumulative_from_zero_examples():
    one = cumulative_from_zero(sampled(1.0, np.ones_like))
    np.testing.assert_allclose(one.values, one.grid.nodes, atol=1e-15)
    lin = cumulative_from_zero(sampled(1.0, lambda t: 2 * t))
    np.testing.assert_allclose(lin.values, lin.grid.nodes**2, atol=1e-10)
    sq = cumulative_from_zero(sampled(math.pi, lambda t: np.sin(t) ** 2, 2048))
    assert sq.values[-1] == pytest.approx(math.pi / 2, abs=1e-8)
    assert sq.values[0] == 0.0


def test_cumulative_to_r_examples():
    one = cumulative_to_r(sampled(1.0, np.ones_like))
    np.testing.assert_allclose(one.values, 1 - one.grid.nodes, atol=1e-15)
    r = 1.3
    half = cumulative_to_r(sampled(r, lambda s: s / 2))
    np.testing.assert_allclose(half.values, (r**2 - half.grid.nodes**2) / 4, atol=1e-14)
    assert half.values[-1] == 0.0


def _smooth_mixture(r, coefs):
    def fn(t):
        return sum(c * np.cos((k + 0.5) * t / r) for k, c in enumerate(coefs)) + 3.0
    return fn


coef_lists = st.lists(st.floats(-1, 1), min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(coefs=coef_lists, r=st.floats(0.1, 5.0))
def test_additivity(coefs, r):
    fn = sampled(r, _smooth_mixture(r, coefs), 128)
    total = integrate(fn)
    F = cumulative_from_zero(fn).values
    G = cumulative_to_r(fn).values
    assert F[-1] == pytest.approx(total, rel=1e-12)
    np.testing.assert_allclose(F + G, total, rtol=1e-12, atol=1e-13 * abs(total))


@settings(max_examples=40, deadline=None)
@given(c1=coef_lists, c2=coef_lists, a=st.floats(-3, 3), b=st.floats(-3, 3))
def test_linearity(c1, c2, a, b):
    u = sampled(1.0, _smooth_mixture(1.0, c1), 128)
    v = sampled(1.0, _smooth_mixture(1.0, c2), 128)
    lhs = integrate(RadialFunction(u.grid, a * u.values + b * v.values))
    rhs = a * integrate(u) + b * integrate(v)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(coefs=st.lists(st.floats(0, 1), min_size=1, max_size=4))
def test_monotone_for_nonnegative_integrand(coefs):
    fn = sampled(2.0, lambda t: sum(c * np.sin((k + 1) * t / 2) ** 2 for k, c in enumerate(coefs)) + 0.01, 128)
    assert np.all(np.diff(cumulative_from_zero(fn).values) >= 0)
    assert np.all(np.diff(cumulative_to_r(fn).values) <= 0)


@pytest.mark.parametrize(
    "fn, exact, r",
    [
        (np.exp, math.e - 1, 1.0),
        (np.sin, 2.0, math.pi),
        (lambda t: 1 / (1 + t**2), math.atan(2.0), 2.0),
    ],
)
def test_refinement_order(fn, exact, r):
    errs = [abs(integrate(sampled(r, fn, n)) - exact) for n in (64, 128, 256)]
    assert errs[0] / errs[1] >= 8
    assert errs[1] / errs[2] >= 8
    cum = [abs(cumulative_from_zero(sampled(r, fn, n)).values[-1] - exact) for n in (64, 128, 256)]
    assert cum[0] / cum[1] >= 8


@pytest.mark.parametrize("power", [1, 2, 3, 4, 6])
def test_weighted_cumulative_exact_for_quadratic_factor(power):
    grid = RadialGrid.uniform(1.5, 64)
    t = grid.nodes
    g = 1.0 - 0.3 * t + 0.7 * t**2
    F = cumulative_from_zero(RadialFunction(grid, g), power=power).values
    p = power
    exact = t ** (p + 1) / (p + 1) - 0.3 * t ** (p + 2) / (p + 2) + 0.7 * t ** (p + 3) / (p + 3)
    np.testing.assert_allclose(F, exact, rtol=1e-13, atol=1e-300)


def test_weighted_cumulative_power_zero_matches_plain():
    fn = sampled(2.0, np.exp, 128)
    a = cumulative_from_zero(fn).values
    from eigenbounds.quadrature import _weighted_half_panels

    left, right = _weighted_half_panels(fn.values, fn.grid.nodes, fn.grid.step, 0)
    np.testing.assert_allclose(np.cumsum(left + right), a[2::2], rtol=1e-14)


def test_divergence_form_second_order():
    errs = []
    for n in (64, 128, 256):
        grid = RadialGrid.uniform(1.0, n)
        w = lambda t: 1 + t**2
        y = np.sin(grid.nodes)
        exact = (2 * grid.nodes * np.cos(grid.nodes) - (1 + grid.nodes**2) * np.sin(grid.nodes))[1:-1]
        errs.append(np.abs(divergence_form(grid, w(grid.midpoints), y) - exact).max())
    assert errs[0] / errs[1] > 3.8 and errs[1] / errs[2] > 3.8
