"""Command-line front end: generate datasets, solve instances, run benchmark
sweeps, and cross-check the solver against the brute-force reference.

Exit codes: 0 success/optimal, 1 verification mismatch, 2 usage or input
error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from math import comb
from pathlib import Path

from .datasets import KINDS, DatasetSpec, generate
from .dual import solve_meb
from .errors import SizeGuardError
from .geometry import load_points, save_points
from .oracle import MKEB_SUBSET_GUARD, oracle_mkeb
from .search import SolveOptions, SolveReport, solve_mkeb

JSON_SCHEMA_VERSION = 1

_CSV_COLUMNS = ["dataset", "m", "n", "k", "seed", "strategy", "radius",
                "lower_bound", "gap", "explored_nodes", "pct_en_at_optimum",
                "dual_iters_per_node", "time_seconds", "status"]

_AGG_COLUMNS = ["dataset", "m", "n", "k", "strategy", "runs", "radius",
                "lower_bound", "gap", "explored_nodes", "pct_en_at_optimum",
                "dual_iters_per_node", "time_seconds"]


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _spec_from_args(args) -> DatasetSpec:
    return DatasetSpec(kind=args.kind, m=args.m, n=args.n, seed=args.seed,
                       ring_inner=args.inner, ring_outer=args.outer,
                       outliers=args.b, shell_inner=args.shell_inner,
                       shell_outer=args.shell_outer)


def cmd_gen(args) -> int:
    try:
        spec = _spec_from_args(args)
        ps = generate(spec)
        save_points(ps, args.out)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    print(f"wrote {ps.m} points of dimension {ps.n} to {args.out}")
    return 0


def _report_json(report: SolveReport) -> dict:
    return {
        "schema": JSON_SCHEMA_VERSION,
        "radius": report.radius,
        "center": [float(x) for x in report.ball.center],
        "covered_ids": list(report.covered),
        "k": report.k,
        "m": report.m,
        "n": report.n,
        "explored_nodes": report.explored_nodes,
        "pct_en_at_optimum": report.pct_en_at_optimum,
        "dual_iterations": report.dual_iterations,
        "dual_iters_per_node": report.dual_iters_per_node,
        "pruned_nodes": report.pruned_nodes,
        "time_seconds": report.wall_time_s,
        "lower_bound": report.lower_bound,
        "gap": report.gap,
        "strategy": report.strategy,
        "seed": report.seed,
        "status": report.status,
    }


def _print_report(report: SolveReport) -> None:
    rows = [
        ("radius", f"{report.radius:.12g}"),
        ("covered points", str(len(report.covered))),
        ("status", report.status),
        ("explored nodes", str(report.explored_nodes)),
        ("% EN optimum found", f"{report.pct_en_at_optimum:.1f}"),
        ("dual iters / node", f"{report.dual_iters_per_node:.3f}"),
        ("lower bound", "-" if report.lower_bound is None
         else f"{report.lower_bound:.12g}"),
        ("gap", "-" if report.gap is None else f"{report.gap:.3e}"),
        ("time (s)", f"{report.wall_time_s:.3f}"),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")
    print(json.dumps(_report_json(report), sort_keys=True))


def cmd_solve(args) -> int:
    try:
        ps = load_points(args.input)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if args.meb_only:
        sol = solve_meb(ps, range(ps.m))
        print(f"radius  {sol.ball.radius:.12g}")
        print(json.dumps({"schema": JSON_SCHEMA_VERSION,
                          "radius": sol.ball.radius,
                          "center": [float(x) for x in sol.ball.center],
                          "dual_iterations": sol.iterations},
                         sort_keys=True))
        return 0
    if args.k is None:
        return _fail("--k is required unless --meb-only is given")
    if not 1 <= args.k <= ps.m:
        return _fail(f"k must be in [1, {ps.m}], got {args.k}")
    options = SolveOptions(strategy=args.strategy, seed=args.seed,
                           node_budget=args.node_budget,
                           time_budget_s=args.time_budget)
    report = solve_mkeb(ps, args.k, options)
    _print_report(report)
    return 0 if report.status == "optimal" else 3


def cmd_bench(args) -> int:
    kinds = [s.strip() for s in args.kinds.split(",") if s.strip()]
    for kind in kinds:
        if kind not in KINDS:
            return _fail(f"unknown dataset kind {kind!r}")
    try:
        ks = [int(s) for s in args.ks.split(",") if s.strip()]
    except ValueError as exc:
        return _fail(str(exc))
    if not kinds or not ks or args.reps < 1:
        return _fail("need at least one kind, one k, and one repetition")

    rows = []
    failures = 0
    for kind in kinds:
        for k in ks:
            if not 1 <= k <= args.m:
                return _fail(f"k={k} out of range for m={args.m}")
            for rep in range(args.reps):
                seed = args.seed + rep
                row = {"dataset": kind, "m": args.m, "n": args.n, "k": k,
                       "seed": seed, "strategy": args.strategy}
                try:
                    spec = DatasetSpec(kind=kind, m=args.m, n=args.n, seed=seed)
                    ps = generate(spec)
                    report = solve_mkeb(ps, k,
                                        SolveOptions(strategy=args.strategy))
                except Exception as exc:  # record the row, keep sweeping
                    failures += 1
                    print(f"error: {kind} k={k} seed={seed}: {exc}",
                          file=sys.stderr)
                    row.update({c: None for c in _CSV_COLUMNS
                                if c not in row})
                    row["status"] = "error"
                    rows.append(row)
                    continue
                row.update({
                    "radius": report.radius,
                    "lower_bound": report.lower_bound,
                    "gap": report.gap,
                    "explored_nodes": report.explored_nodes,
                    "pct_en_at_optimum": report.pct_en_at_optimum,
                    "dual_iters_per_node": report.dual_iters_per_node,
                    "time_seconds": report.wall_time_s,
                    "status": report.status,
                })
                rows.append(row)

    out_runs = Path(args.out_prefix + "_runs.csv")
    out_agg = Path(args.out_prefix + "_agg.csv")
    with open(out_runs, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)

    def _mean(cell_rows, key):
        vals = [r[key] for r in cell_rows
                if r["status"] != "error" and r[key] is not None]
        return sum(vals) / len(vals) if vals else ""

    with open(out_agg, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_AGG_COLUMNS)
        writer.writeheader()
        for kind in kinds:
            for k in ks:
                cell = [r for r in rows if r["dataset"] == kind and r["k"] == k]
                writer.writerow({
                    "dataset": kind, "m": args.m, "n": args.n, "k": k,
                    "strategy": args.strategy, "runs": len(cell),
                    "radius": _mean(cell, "radius"),
                    "lower_bound": _mean(cell, "lower_bound"),
                    "gap": _mean(cell, "gap"),
                    "explored_nodes": _mean(cell, "explored_nodes"),
                    "pct_en_at_optimum": _mean(cell, "pct_en_at_optimum"),
                    "dual_iters_per_node": _mean(cell, "dual_iters_per_node"),
                    "time_seconds": _mean(cell, "time_seconds"),
                })
    print(f"wrote {len(rows)} runs to {out_runs} and "
          f"{len(kinds) * len(ks)} aggregate rows to {out_agg}")
    return 0 if failures == 0 else 1


def cmd_check(args) -> int:
    try:
        ps = load_points(args.input)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if not 1 <= args.k <= ps.m:
        return _fail(f"k must be in [1, {ps.m}], got {args.k}")
    if comb(ps.m, args.k) > MKEB_SUBSET_GUARD:
        return _fail(f"instance too large for the brute-force reference: "
                     f"C({ps.m}, {args.k}) > {MKEB_SUBSET_GUARD}")
    report = solve_mkeb(ps, args.k, SolveOptions(strategy=args.strategy))
    solver_radius = report.radius + args.inflate_radius
    try:
        reference = oracle_mkeb(ps, args.k)
    except SizeGuardError as exc:
        return _fail(str(exc))
    scale = max(reference.radius, 1e-300)
    discrepancy = abs(solver_radius - reference.radius) / scale
    print(f"solver radius     {solver_radius:.15g}")
    print(f"reference radius  {reference.radius:.15g}")
    print(f"relative gap      {discrepancy:.3e}")
    if discrepancy <= args.tol:
        print("agreement within tolerance")
        return 0
    print("MISMATCH beyond tolerance", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kball",
        description="Exact minimum k-enclosing ball solver and benchmark kit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic dataset file")
    p_gen.add_argument("--kind", required=True, choices=KINDS)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--inner", type=float, default=0.8,
                       help="ring inner radius")
    p_gen.add_argument("--outer", type=float, default=1.2,
                       help="ring outer radius")
    p_gen.add_argument("--b", type=int, default=10,
                       help="outlier count for boutliers")
    p_gen.add_argument("--shell-inner", type=float, default=1.0)
    p_gen.add_argument("--shell-outer", type=float, default=3.0)
    p_gen.set_defaults(func=cmd_gen)

    p_solve = sub.add_parser("solve", help="solve one instance from a file")
    p_solve.add_argument("--in", dest="input", required=True)
    p_solve.add_argument("--k", type=int, default=None)
    p_solve.add_argument("--strategy", default="spherical_ordering",
                         choices=("spherical_ordering", "spherical_peeling",
                                  "random_knn", "none"))
    p_solve.add_argument("--seed", type=int, default=None)
    p_solve.add_argument("--node-budget", type=int, default=None)
    p_solve.add_argument("--time-budget", type=float, default=None)
    p_solve.add_argument("--meb-only", action="store_true",
                         help="solve the plain minimum enclosing ball")
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="run a sweep and write CSVs")
    p_bench.add_argument("--kinds", required=True,
                         help="comma-separated dataset kinds")
    p_bench.add_argument("--ks", required=True,
                         help="comma-separated k values")
    p_bench.add_argument("--m", type=int, required=True)
    p_bench.add_argument("--n", type=int, required=True)
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=0,
                         help="base seed; repetition r uses seed+r")
    p_bench.add_argument("--strategy", default="spherical_ordering",
                         choices=("spherical_ordering", "spherical_peeling",
                                  "random_knn", "none"))
    p_bench.add_argument("--out-prefix", default="bench")
    p_bench.set_defaults(func=cmd_bench)

    p_check = sub.add_parser("check",
                             help="cross-validate against the brute force")
    p_check.add_argument("--in", dest="input", required=True)
    p_check.add_argument("--k", type=int, required=True)
    p_check.add_argument("--tol", type=float, default=1e-9)
    p_check.add_argument("--strategy", default="spherical_ordering",
                         choices=("spherical_ordering", "spherical_peeling",
                                  "random_knn", "none"))
    p_check.add_argument("--inflate-radius", type=float, default=0.0,
                         help=argparse.SUPPRESS)
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return int(exc.code) if exc.code else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
