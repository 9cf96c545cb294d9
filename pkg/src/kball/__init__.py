"""kball: exact minimum k-enclosing ball solver.

Find the smallest Euclidean ball covering at least k of m points, by
branch-and-bound over the tree of k-subsets with warm-started dual ball
subproblems. Ships dataset generators, a certified lower bound, seeding
heuristics, and a brute-force reference for verification.
"""

from .bounds import pairwise_kth_lower_bound
from .datasets import KINDS, DatasetSpec, generate
from .dual import (AddOutcome, IterationSnapshot, MebSolution, SupportSet,
                   child_radius_lower, child_radius_upper, solve_meb,
                   solve_meb_warm, solve_support_ball, warm_add_point)
from .errors import (DegeneracyError, DimensionMismatchError,
                     IterationLimitError, SizeGuardError)
from .geometry import (Ball, PointSet, Tolerance, ball_covers, count_covered,
                       covered_ids, euclidean_distance, load_points,
                       save_points)
from .initial import (build_initial_ball, random_knn_start, spherical_ordering,
                      spherical_peeling)
from .oracle import oracle_meb, oracle_mkeb
from .search import (Incumbent, LiveStack, RootChild, SearchNode, SolveOptions,
                     SolveReport, make_root_children, solve_mkeb)

__version__ = "0.1.0"

__all__ = [
    "Ball", "PointSet", "Tolerance",
    "euclidean_distance", "ball_covers", "count_covered", "covered_ids",
    "load_points", "save_points",
    "SupportSet", "MebSolution", "AddOutcome", "IterationSnapshot",
    "solve_support_ball", "solve_meb", "solve_meb_warm", "warm_add_point",
    "child_radius_lower", "child_radius_upper",
    "SolveOptions", "SolveReport", "Incumbent", "SearchNode", "LiveStack",
    "RootChild", "make_root_children", "solve_mkeb",
    "spherical_ordering", "spherical_peeling", "random_knn_start",
    "build_initial_ball",
    "pairwise_kth_lower_bound",
    "DatasetSpec", "generate", "KINDS",
    "oracle_meb", "oracle_mkeb",
    "DimensionMismatchError", "DegeneracyError", "IterationLimitError",
    "SizeGuardError",
    "__version__",
]
