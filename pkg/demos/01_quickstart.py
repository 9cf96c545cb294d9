"""Quickstart: find the smallest ball covering 990 of 1000 points.

Generates a unit-ball cloud polluted with 10 far outliers, then solves the
minimum 990-enclosing ball exactly. The optimal ball ignores the outliers,
while the plain minimum enclosing ball is dragged far out by them.
"""

import numpy as np

from kball import DatasetSpec, SolveOptions, generate, solve_meb, solve_mkeb

spec = DatasetSpec(kind="boutliers", m=1000, n=3, seed=42, outliers=10)
points = generate(spec)
print(f"dataset: {points.m} points in dimension {points.n}, "
      f"10 outliers at norms in [1, 3]")

plain = solve_meb(points, range(points.m))
print(f"\nplain enclosing ball radius : {plain.ball.radius:.4f} "
      f"(inflated by the outliers)")

report = solve_mkeb(points, 990, SolveOptions(strategy="spherical_ordering"))
print(f"robust 990-enclosing radius : {report.radius:.4f}")
print(f"covered points              : {len(report.covered)}")
print(f"status                      : {report.status}")
print(f"explored nodes              : {report.explored_nodes}")
print(f"dual iterations per node    : {report.dual_iters_per_node:.2f}")
print(f"certified lower bound       : {report.lower_bound:.4f}")
print(f"optimality gap vs bound     : {report.gap:.2%}")
print(f"wall time                   : {report.wall_time_s:.3f}s")

excluded = sorted(set(range(points.m)) - set(report.covered))
norms = np.linalg.norm(points.coords[excluded], axis=1)
print(f"\nexcluded ids (all outliers?): norms of excluded points: "
      f"min {norms.min():.2f}, max {norms.max():.2f}")
