"""Anatomy of the dual ball solver: support sets, warm starts, capped growth.

The solver keeps an affinely independent support set on the ball boundary.
Adding one point warm-starts from the previous support, the radius grows
monotonically, and growth can be abandoned early once it provably exceeds a
cap (the branch-and-bound prunes this way).
"""

import numpy as np

from kball import (PointSet, child_radius_lower, child_radius_upper,
                   solve_meb, warm_add_point)

rng = np.random.default_rng(7)
points = PointSet(rng.standard_normal((40, 3)))

sol = solve_meb(points, range(10))
print("ball of the first 10 points")
print(f"  radius     : {sol.ball.radius:.4f}")
print(f"  support ids: {sol.support.ids} (at most n+1 = 4 of them)")
print(f"  iterations : {sol.iterations}")

print("\nadding points one at a time, warm-started:")
current = sol
for q in range(10, 16):
    lo = child_radius_lower(points, current.points, points.point(q))
    hi = child_radius_upper(current, points.point(q))
    trace = []
    out = warm_add_point(points, current, q, trace=trace)
    if out.is_covered:
        print(f"  +point {q:2d}: already covered, radius stays "
              f"{current.ball.radius:.4f}")
        current = out.solution
        continue
    current = out.solution
    print(f"  +point {q:2d}: radius {current.ball.radius:.4f} "
          f"in {out.iterations} iteration(s), "
          f"bounds said [{lo:.4f}, {hi:.4f}]")

print("\ncapped growth: pretend an incumbent of radius 1.9 exists")
far = PointSet(np.vstack([points.coords[:10], [[50.0, 0.0, 0.0]]]))
base = solve_meb(far, range(10))
out = warm_add_point(far, base, 10, cap=1.9)
print(f"  outcome: {out.kind} after {out.iterations} iteration(s); "
      f"the full solve was skipped")
