"""Exit criteria; each test records one PASS/FAIL line for the summary."""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_positive_u
from eigenbounds import cli
from eigenbounds.barta import apply_T, barta_bounds, constant_test_function, cosine_test_function, refine
from eigenbounds.classical import (
    bessel_zero,
    chavel_upper,
    generalized_vs_bound,
    hyperbolic_lower,
)
from eigenbounds.oracle import solve_lambda1
from eigenbounds.profiles import Ball, euclidean, hyperbolic, sphere
from eigenbounds.quadrature import RadialFunction, RadialGrid, divergence_form


def record(label, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, detail


def test_ac1_table_reproduction():
    start = time.perf_counter()
    rows = cli.table_entries(2048)
    elapsed = time.perf_counter() - start
    worst = max(r["deviation"] for r in rows)
    ok = len(rows) == 20 and worst <= 0.02 and elapsed < 5.0
    record("AC1 table reproduction", ok, f"20 entries, max |dev| = {worst:.4f} (tol 0.02), {elapsed:.2f}s (< 5s)")


def test_ac2_equality_cases():
    details, ok = [], True
    for n in (2, 3):
        ball = Ball(n, math.pi / 2, sphere())
        b = barta_bounds(ball, cosine_test_function(ball))
        h = b.quotient
        spread = (h.max() - h.min()) / h.min()
        err = max(abs(h.max() - n), abs(h.min() - n)) / n
        tr = refine(ball, cosine_test_function(ball))
        step1 = tr.converged and len(tr.steps) == 1
        ok = ok and spread <= 1e-6 and err <= 1e-6 and step1
        details.append(f"n={n}: spread {spread:.1e}, |h-n|/n {err:.1e}, refine steps {len(tr.steps)}")
    record("AC2 exact equality cases", ok, "; ".join(details))


def test_ac3_euclidean_closed_form():
    worst = 0.0
    for n in (2, 3):
        for r in (0.5, 1.0, 2.0):
            exact = (bessel_zero(n / 2 - 1) / r) ** 2
            worst = max(worst, abs(solve_lambda1(Ball(n, r, euclidean())).lambda1 / exact - 1))
    half = abs(bessel_zero(0.5) - math.pi) / math.pi
    ok = worst <= 1e-6 and half <= 1e-12
    record("AC3 Euclidean closed form", ok, f"max rel err {worst:.1e} (tol 1e-6); j_(1/2,1) rel err {half:.1e} (tol 1e-12)")


SANDWICH = [
    Ball(2, 1.0, euclidean()),
    Ball(4, 0.6, euclidean()),
    Ball(2, math.pi / 3, sphere()),
    Ball(3, 2.4, sphere()),
    Ball(5, 0.7, sphere(3.0)),
    Ball(2, 2.0, hyperbolic()),
    Ball(3, 0.8, hyperbolic(-4.0)),
]


def test_ac4_sandwich():
    rng = np.random.default_rng(4)
    count = violations = 0
    for ball in SANDWICH:
        lam = solve_lambda1(ball).lambda1
        for i in range(4):
            b = barta_bounds(ball, random_positive_u(ball, rng, vanish=bool(i % 2)))
            count += 1
            violations += not (b.lower <= lam <= b.upper)
    ok = count >= 20 and violations == 0
    record("AC4 sandwich", ok, f"{count} test functions on {len(SANDWICH)} balls (3 curvature signs), {violations} violations")


IDENTITY_CASES = [
    (Ball(2, 1.0, euclidean()), np.cos),
    (Ball(3, math.pi / 3, sphere()), np.cos),
    (Ball(4, 2.0, hyperbolic()), lambda t: 2 + np.sin(3 * t)),
    (Ball(2, 2.5, sphere()), lambda t: np.exp(-t)),
    (Ball(3, 1.0, hyperbolic(-2.0)), lambda t: 1 + t**2),
]


def _identity_residual(ball, fn, n):
    grid = RadialGrid.uniform(ball.radius, n)
    u = RadialFunction(grid, fn(grid.nodes))
    T = apply_T(ball, u)
    res = divergence_form(grid, ball.weight(grid.midpoints), T.values)
    res += ball.weight(grid.nodes[1:-1]) * u.values[1:-1]
    return np.abs(res).max()


def test_ac5_operator_identity():
    worst = math.inf
    for ball, fn in IDENTITY_CASES:
        res = np.array([_identity_residual(ball, fn, n) for n in (256, 512, 1024, 2048)])
        worst = min(worst, np.log2(res[:-1] / res[1:]).min())
    record("AC5 operator identity", worst >= 1.9, f"min observed order {worst:.3f} (need >= 1.9) over 5 cases")


def test_ac6_bcg_coincidence():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(10):
        k = rng.uniform(0.25, 4.0)
        ball = Ball(int(rng.integers(2, 8)), rng.uniform(0.02, 0.98) * math.pi / math.sqrt(k), sphere(k))
        b = barta_bounds(ball, constant_test_function(ball)).lower
        worst = max(worst, abs(b / generalized_vs_bound(ball).value - 1))
    record("AC6 BCG coincidence", worst <= 1e-9, f"max rel diff {worst:.1e} (tol 1e-9) on 10 random sphere balls")


def test_ac7_refinement():
    ok = True
    worst_err, most_steps = 0.0, 0
    for n in (2, 3):
        for m in range(1, 6):
            ball = Ball(n, m * math.pi / 8, sphere())
            tr = refine(ball, constant_test_function(ball), tol=1e-8, max_iters=200)
            lam = solve_lambda1(ball).lambda1
            err = abs(tr.value / lam - 1)
            ok = ok and tr.converged and tr.steps[-1].gap < 1e-8
            worst_err = max(worst_err, err)
            most_steps = max(most_steps, len(tr.steps))
    ok = ok and worst_err <= 1e-5
    record("AC7 refinement", ok, f"10 configs converged in <= {most_steps} steps; max rel err vs oracle {worst_err:.1e} (tol 1e-5)")


def test_ac8_hyperbolic():
    ok = True
    for n in (2, 3):
        for r in (0.5, 1.0, 3.0, 10.0):
            ball = Ball(n, r, hyperbolic())
            lam = solve_lambda1(ball).lambda1
            ok = ok and hyperbolic_lower(ball).value <= lam <= chavel_upper(ball).value
    worst = 0.0
    for kappa in (-0.25, -4.0):
        for n in (2, 3):
            for r in (0.5, 1.0, 3.0, 10.0):
                scaled = Ball(n, r, hyperbolic(kappa))
                unit = Ball(n, r * math.sqrt(-kappa), hyperbolic())
                for fn in (hyperbolic_lower, chavel_upper):
                    worst = max(worst, abs(fn(scaled).value / (-kappa * fn(unit).value) - 1))
    ok = ok and worst <= 1e-12
    record("AC8 hyperbolic bounds", ok, f"sandwich on 8 balls; rescaling max rel diff {worst:.1e} (tol 1e-12)")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "eigenbounds", *argv], capture_output=True, check=False).stdout


def test_ac9_determinism():
    table = [_cli("table", "--output", "csv") for _ in range(2)]
    sweep_args = ("sweep", "--dim", "2", "--r-min", "pi/8", "--r-max", "5pi/8", "--steps", "5", "--output", "csv")
    sweep = [_cli(*sweep_args) for _ in range(2)]
    ok = table[0] == table[1] and sweep[0] == sweep[1] and bool(table[0]) and bool(sweep[0])
    record("AC9 determinism", ok, f"table {len(table[0])} bytes, sweep {len(sweep[0])} bytes, byte-identical on rerun")
