"""Inside the branch-and-bound: tree shape, stack depth, and pruning power.

With pruning disabled the search walks every k-subset exactly once and the
live stack tops out at exactly m - k. With pruning on, the node ordering
(far points first into the dense side of the tree) lets the bound discard
almost everything.
"""

from itertools import combinations
from math import comb

import numpy as np

from kball import PointSet, SolveOptions, solve_mkeb

rng = np.random.default_rng(11)
m, k = 10, 4
points = PointSet(rng.standard_normal((m, 2)))

full = solve_mkeb(points, k, SolveOptions(disable_pruning=True,
                                          track_leaves=True))
print(f"m={m}, k={k}: C(m,k) = {comb(m, k)} subsets")
print(f"pruning disabled: leaves evaluated = {len(full.leaf_subsets)}")
assert set(full.leaf_subsets) == set(combinations(range(m), k))
print(f"max live-stack depth = {full.max_stack_len} (theory: m-k = {m - k})")

pruned = solve_mkeb(points, k)
print(f"\npruning enabled : explored nodes {pruned.explored_nodes} "
      f"vs {full.explored_nodes} without")
print(f"pruned subtrees : {pruned.pruned_nodes}")
print(f"same optimum    : {pruned.radius:.6f} == {full.radius:.6f}")

flat = solve_mkeb(points, k, SolveOptions(disable_pruning=True,
                                          disable_min_solution_tree=True,
                                          track_leaves=True))
print(f"\nwithout merged leaf chains the walk still visits every subset "
      f"({len(flat.leaf_subsets)} leaves), but pushes more nodes "
      f"(max stack {flat.max_stack_len})")
