"""Command-line front end.

    eigenbounds table
    eigenbounds bounds --space sphere --dim 3 --radius 5pi/8
    eigenbounds iterate --space hyperbolic --dim 3 --radius 1 --test-fn one
    eigenbounds oracle --space euclidean --dim 2 --radius 1
    eigenbounds sweep --space sphere --dim 2 --r-min pi/8 --r-max 5pi/8 --steps 5 --output csv

Exit codes: 0 success, 1 usage error, 2 tolerance or convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
from scipy.interpolate import CubicSpline

from . import barta, classical, oracle
from .classical import BoundReport, Method, Side
from .profiles import Ball, DomainError, Kind, read_profile_csv, space_form
from .quadrature import DEFAULT_NODES, RadialFunction, RadialGrid

log = logging.getLogger("eigenbounds")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2

TABLE_TOL = 0.02
# n -> (BCG row, BB row) for r = pi/8, pi/4, 3pi/8, pi/2, 5pi/8
PUBLISHED_TABLE = {
    2: ((25.77, 6.31, 2.70, 1.44, 0.85), (35.85, 8.78, 3.76, 2.00, 1.01)),
    3: ((38.50, 9.31, 3.90, 2.00, 1.10), (57.94, 14.01, 5.86, 3.00, 1.27)),
}
TABLE_RADII = ((1, "pi/8"), (2, "pi/4"), (3, "3pi/8"), (4, "pi/2"), (5, "5pi/8"))


class UsageError(Exception):
    pass


_PI_LITERAL = re.compile(r"^\s*(\d+)?\s*\*?\s*(?:pi|π)\s*(?:/\s*(\d+))?\s*$", re.IGNORECASE)


def parse_length(text: str) -> float:
    """Decimal, or an integer multiple of pi over an integer: ``3pi/8``, ``pi``, ``2*pi/3``."""
    m = _PI_LITERAL.match(text)
    if m:
        num = int(m.group(1)) if m.group(1) else 1
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise UsageError(f"zero denominator in {text!r}")
        return num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse length {text!r}; use a decimal or e.g. 3pi/8") from None


@dataclass
class RunConfig:
    space: str = "sphere"
    curvature: float | None = None
    dim: int = 2
    radius: float | None = None
    test_fn: str = "cos"
    grid_n: int = DEFAULT_NODES
    tol: float = barta.DEFAULT_TOL
    max_iters: int = barta.DEFAULT_MAX_ITERS
    output: str = "pretty"
    profile_csv: str | None = None

    def resolved_curvature(self) -> float:
        if self.space == "euclidean":
            if self.curvature not in (None, 0.0):
                raise UsageError("euclidean space has curvature 0")
            return 0.0
        if self.space == "sphere":
            k = 1.0 if self.curvature is None else self.curvature
            if k <= 0:
                raise UsageError("sphere curvature must be positive")
            return k
        if self.space == "hyperbolic":
            k = -1.0 if self.curvature is None else self.curvature
            if k >= 0:
                raise UsageError("hyperbolic curvature must be negative")
            return k
        return math.nan

    def profile(self):
        if self.space == "tabulated":
            if not self.profile_csv:
                raise UsageError("--space tabulated needs --profile-csv")
            return read_profile_csv(self.profile_csv)
        return space_form(self.resolved_curvature())

    def ball(self, radius: float | None = None, profile=None) -> Ball:
        r = self.radius if radius is None else radius
        if r is None:
            raise UsageError("--radius is required")
        return Ball(self.dim, r, profile if profile is not None else self.profile())

    def as_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if self.space != "tabulated":
            d["curvature"] = self.resolved_curvature()
        return d


def load_test_function(path: str, ball: Ball, n: int) -> RadialFunction:
    """Resample a ``t,u`` CSV onto the grid of ``ball`` by cubic interpolation."""
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != ["t", "u"]:
                raise UsageError(f"{path}: expected header 't,u'")
            rows = [(float(row["t"]), float(row["u"])) for row in reader]
    except OSError as exc:
        raise UsageError(f"cannot read test function: {exc}") from None
    t = np.array([p[0] for p in rows])
    u = np.array([p[1] for p in rows])
    if len(t) < 4 or np.any(np.diff(t) <= 0):
        raise UsageError(f"{path}: need at least 4 rows with strictly increasing t")
    if t[0] > 1e-12 or t[-1] < ball.radius * (1 - 1e-12):
        raise UsageError(f"{path}: samples must cover [0, {ball.radius}]")
    grid = RadialGrid.uniform(ball.radius, n)
    values = CubicSpline(t, u)(grid.nodes)
    if values.min() < 0:
        log.warning("test function interpolant is negative somewhere; clamped to 0")
        values = np.clip(values, 0.0, None)
    return RadialFunction(grid, values)


def test_function(cfg: RunConfig, ball: Ball) -> RadialFunction:
    name = cfg.test_fn
    if name in ("cos", "cos_default"):
        return barta.cosine_test_function(ball, cfg.grid_n)
    if name in ("one", "const_one"):
        return barta.constant_test_function(ball, cfg.grid_n)
    return load_test_function(name, ball, cfg.grid_n)


# ---------------------------------------------------------------------------
# commands; each returns (payload rows, pretty text, exit code)


def _report_row(rep: BoundReport) -> dict[str, Any]:
    return {"method": rep.method.value, "side": rep.side.value, "value": rep.value}


def cmd_bounds(cfg: RunConfig):
    ball = cfg.ball()
    u = test_function(cfg, ball)
    bb = barta.barta_bounds(ball, u)
    reports = [
        BoundReport(Method.BARTA_LOWER, bb.lower, Side.LOWER),
        BoundReport(Method.BARTA_UPPER, bb.upper, Side.UPPER),
    ]
    reports += classical.classical_bounds(ball, cfg.grid_n)
    res = oracle.solve_lambda1(ball, n=cfg.grid_n)
    reports.append(BoundReport(Method.ORACLE, res.lambda1, Side.EXACT))
    rows = [_report_row(r) for r in reports]
    lines = [f"{'method':<18}{'side':<8}value"]
    lines += [f"{r['method']:<18}{r['side']:<8}{_fmt(r['value'])}" for r in rows]
    return rows, "\n".join(lines), EXIT_OK


def table_entries(n_nodes: int = DEFAULT_NODES) -> list[dict[str, Any]]:
    profile = space_form(1.0)
    out = []
    for n, (bcg_row, bb_row) in PUBLISHED_TABLE.items():
        for i, (m, label) in enumerate(TABLE_RADII):
            ball = Ball(n, m * math.pi / 8, profile)
            bcg = classical.bcg_bound(ball, n_nodes).value
            bb = barta.barta_bounds(ball, barta.cosine_test_function(ball, n_nodes)).lower
            for method, value, published in (("BCG", bcg, bcg_row[i]), ("BB", bb, bb_row[i])):
                out.append(
                    {
                        "n": n,
                        "radius": label,
                        "method": method,
                        "computed": value,
                        "published": published,
                        "deviation": abs(value - published),
                    }
                )
    return out


def cmd_table(cfg: RunConfig):
    rows = table_entries(cfg.grid_n)
    bad = [r for r in rows if r["deviation"] > TABLE_TOL]
    lines = [f"{'n':<3}{'r':<8}{'row':<5}{'computed':>10}{'published':>10}{'dev':>7}"]
    for r in rows:
        flag = "  FAIL" if r["deviation"] > TABLE_TOL else ""
        lines.append(
            f"{r['n']:<3}{r['radius']:<8}{r['method']:<5}"
            f"{r['computed']:>10.2f}{r['published']:>10.2f}{r['deviation']:>7.2f}{flag}"
        )
    lines.append(f"{len(rows) - len(bad)}/{len(rows)} entries within {TABLE_TOL}")
    return rows, "\n".join(lines), EXIT_TOLERANCE if bad else EXIT_OK


def cmd_iterate(cfg: RunConfig):
    ball = cfg.ball()
    trace = barta.refine(ball, test_function(cfg, ball), cfg.tol, cfg.max_iters)
    rows = [
        {"step": s.index, "lower": s.lower, "upper": s.upper, "gap": s.gap} for s in trace.steps
    ]
    lines = [f"{'step':>5}  {'lower':<22}{'upper':<22}gap"]
    lines += [f"{r['step']:>5}  {_fmt(r['lower']):<22}{_fmt(r['upper']):<22}{_fmt(r['gap'])}" for r in rows]
    status = "converged" if trace.converged else "NOT converged"
    lines.append(f"{status} after {len(rows)} step(s); lambda_1 ~ {_fmt(trace.value)}")
    payload = {"steps": rows, "converged": trace.converged, "lambda1": trace.value}
    return payload, "\n".join(lines), EXIT_OK if trace.converged else EXIT_TOLERANCE


def cmd_oracle(cfg: RunConfig):
    ball = cfg.ball()
    res = oracle.solve_lambda1(ball, n=cfg.grid_n)
    payload = {
        "lambda1": res.lambda1,
        "bracket_lo": res.bracket[0],
        "bracket_hi": res.bracket[1],
        "evaluations": res.evaluations,
        "residual": oracle.residual(ball, res),
    }
    lines = [f"{k:<12}{_fmt(v)}" for k, v in payload.items()]
    lines += [f"warning: {w}" for w in res.warnings]
    return payload, "\n".join(lines), EXIT_OK


SWEEP_COLUMNS = (
    "radius",
    "bcg_or_vs",
    "barta_lower",
    "barta_upper",
    "cheng_or_chavel_upper",
    "oracle",
    "iterate_final",
)


def sweep_row(cfg: RunConfig, ball: Ball) -> tuple[dict[str, Any], bool]:
    if ball.kind is Kind.SPHERE:
        low = classical.bcg_bound(ball, cfg.grid_n).value
    else:
        low = classical.generalized_vs_bound(ball, cfg.grid_n).value
    if ball.kind in (Kind.SPHERE, Kind.EUCLIDEAN):
        up = classical.cheng_upper(ball).value
    elif ball.kind is Kind.HYPERBOLIC:
        up = classical.chavel_upper(ball).value
    else:
        up = None
    u = test_function(cfg, ball)
    bb = barta.barta_bounds(ball, u)
    trace = barta.refine(ball, u, cfg.tol, cfg.max_iters)
    row = {
        "radius": ball.radius,
        "bcg_or_vs": low,
        "barta_lower": bb.lower,
        "barta_upper": bb.upper,
        "cheng_or_chavel_upper": up,
        "oracle": oracle.solve_lambda1(ball, n=cfg.grid_n).lambda1,
        "iterate_final": trace.value,
    }
    return row, trace.converged


def cmd_sweep(cfg: RunConfig, r_min: float | None, r_max: float | None, steps: int):
    if r_min is None or r_max is None:
        raise UsageError("sweep needs --r-min and --r-max")
    if not 0 < r_min < r_max:
        raise UsageError("sweep needs 0 < r-min < r-max")
    if steps < 2:
        raise UsageError("sweep needs --steps >= 2")
    if cfg.test_fn not in ("cos", "cos_default", "one", "const_one"):
        raise UsageError("sweep supports only the cos and one test functions")
    profile = cfg.profile()
    radii = [r_min + i * (r_max - r_min) / (steps - 1) for i in range(steps)]
    radii[-1] = r_max
    try:
        balls = [cfg.ball(r, profile) for r in radii]
    except DomainError as exc:
        raise UsageError(f"radius range outside the profile domain: {exc}") from None
    rows, ok = [], True
    for ball in balls:
        row, converged = sweep_row(cfg, ball)
        rows.append(row)
        ok = ok and converged
    lines = ["".join(f"{c:>22}" for c in SWEEP_COLUMNS)]
    lines += ["".join(f"{_fmt(r[c]):>22}" for c in SWEEP_COLUMNS) for r in rows]
    return rows, "\n".join(lines), EXIT_OK if ok else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# rendering


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def render(cfg: RunConfig, command: str, payload: Any, pretty: str) -> str:
    if cfg.output == "pretty":
        return pretty + "\n"
    if cfg.output == "json":
        doc = {"command": command, "config": cfg.as_dict(), "results": payload}
        return json.dumps(_jsonable(doc), indent=2, sort_keys=False) + "\n"
    rows = payload["steps"] if isinstance(payload, dict) and "steps" in payload else payload
    if isinstance(rows, dict):
        rows = [rows]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", choices=("euclidean", "sphere", "hyperbolic", "tabulated"), default="sphere")
    common.add_argument("--curvature", type=float)
    common.add_argument("--dim", type=int, default=2)
    common.add_argument("--radius")
    common.add_argument("--test-fn", default="cos", help="cos, one, or a CSV file with columns t,u")
    common.add_argument("--grid-n", type=int, default=DEFAULT_NODES)
    common.add_argument("--tol", type=float, default=barta.DEFAULT_TOL)
    common.add_argument("--max-iters", type=int, default=barta.DEFAULT_MAX_ITERS)
    common.add_argument("--output", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--profile-csv")

    parser = _Parser(prog="eigenbounds", description="Bounds for the first Dirichlet eigenvalue of geodesic balls.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("bounds", parents=[common], help="all applicable bounds plus the oracle value")
    sub.add_parser("table", parents=[common], help="recompute the spherical-cap comparison table")
    sub.add_parser("iterate", parents=[common], help="refine the bounds by iterating T")
    sub.add_parser("oracle", parents=[common], help="reference eigenvalue by shooting")
    sw = sub.add_parser("sweep", parents=[common], help="bounds over a range of radii")
    sw.add_argument("--r-min")
    sw.add_argument("--r-max")
    sw.add_argument("--steps", type=int, default=5)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            space=args.space,
            curvature=args.curvature,
            dim=args.dim,
            radius=parse_length(args.radius) if args.radius is not None else None,
            test_fn=args.test_fn,
            grid_n=args.grid_n,
            tol=args.tol,
            max_iters=args.max_iters,
            output=args.output,
            profile_csv=args.profile_csv,
        )
        cfg.resolved_curvature()
        if args.command == "bounds":
            payload, pretty, code = cmd_bounds(cfg)
        elif args.command == "table":
            payload, pretty, code = cmd_table(cfg)
        elif args.command == "iterate":
            payload, pretty, code = cmd_iterate(cfg)
        elif args.command == "oracle":
            payload, pretty, code = cmd_oracle(cfg)
        else:
            r_min = parse_length(args.r_min) if args.r_min is not None else None
            r_max = parse_length(args.r_max) if args.r_max is not None else None
            payload, pretty, code = cmd_sweep(cfg, r_min, r_max, args.steps)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"eigenbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(cfg, args.command, payload, pretty))
    return code


if __name__ == "__main__":
    sys.exit(main())
