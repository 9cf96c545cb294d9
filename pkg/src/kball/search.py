"""Branch-and-bound search over the tree of k-subsets.

The tree assigns points to nodes so that points far from the current ball
center land on the dense (left) side, where pruning bites hardest. A
last-in-first-out stack drives a depth-first descent through the most
promising children; with the merged-leaf tree variant the stack never holds
more than m - k nodes. Every child evaluation warm-starts the dual ball
solver from its parent's support set and aborts early once the radius
provably reaches the incumbent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .bounds import pairwise_kth_lower_bound
from .dual import (MebSolution, SupportSet, solve_meb, solve_meb_warm,
                   warm_add_point)
from .geometry import Ball, PointSet, Tolerance, covered_ids
from .initial import build_initial_ball

__all__ = [
    "SolveOptions",
    "Incumbent",
    "SolveReport",
    "SearchNode",
    "LiveStack",
    "RootChild",
    "make_root_children",
    "solve_mkeb",
]

_STRATEGIES = ("spherical_ordering", "spherical_peeling", "random_knn", "none")


@dataclass(frozen=True)
class SolveOptions:
    """Knobs for one search run.

    strategy picks the initial-incumbent heuristic ("none" starts from an
    infinite bound). The two disable_* flags are test hooks that switch off
    pruning and the merged-leaf tree variant; track_leaves records every
    evaluated leaf subset in the report.
    """

    strategy: str = "spherical_ordering"
    seed: Optional[int] = None
    node_budget: Optional[int] = None
    time_budget_s: Optional[float] = None
    tolerance: Optional[Tolerance] = None
    disable_pruning: bool = False
    disable_min_solution_tree: bool = False
    track_leaves: bool = False
    lower_bound_max_m: int = 5000

    def __post_init__(self):
        if self.strategy not in _STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; "
                             f"expected one of {_STRATEGIES}")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node budget must be positive")
        if self.time_budget_s is not None and self.time_budget_s <= 0:
            raise ValueError("time budget must be positive")


@dataclass(frozen=True)
class Incumbent:
    """Best k-enclosing ball found so far."""

    ball: Ball
    covered: tuple[int, ...]
    found_at_explored: int


@dataclass(frozen=True)
class SolveReport:
    """Outcome and statistics of one solve.

    status is "optimal" when the search ran to completion (the ball is a
    global optimum within tolerance) and "budget_exhausted" when a node or
    time budget stopped it early, in which case the radius is only an upper
    bound. Dual iterations are counted at search nodes; root setup work is
    excluded.
    """

    ball: Ball
    covered: tuple[int, ...]
    k: int
    m: int
    n: int
    status: str
    explored_nodes: int
    pct_en_at_optimum: float
    dual_iterations: int
    dual_iters_per_node: float
    pruned_nodes: int
    max_stack_len: int
    wall_time_s: float
    lower_bound: Optional[float]
    gap: Optional[float]
    strategy: str
    seed: Optional[int]
    leaf_subsets: Optional[tuple[tuple[int, ...], ...]] = None

    @property
    def radius(self) -> float:
        return self.ball.radius


class RootChild(NamedTuple):
    point_id: int
    eligible: np.ndarray


class SearchNode:
    """A live tree node: path so far, points its subtree may still use,
    and the solved ball of the path."""

    __slots__ = ("level", "path_ids", "eligible", "meb", "radius")

    def __init__(self, level: int, path_ids: tuple[int, ...],
                 eligible: np.ndarray, meb: MebSolution):
        self.level = level
        self.path_ids = path_ids
        self.eligible = eligible
        self.meb = meb
        self.radius = meb.ball.radius


def node_index(m: int, node: SearchNode) -> int:
    """Lexicographic position the node would occupy within its level."""
    return m - len(node.eligible)


def node_child_count(m: int, k: int, node: SearchNode) -> int:
    """Number of branches the node produces when expanded."""
    return len(node.eligible) - (k - node.level) + 1


class LiveStack:
    """LIFO pool of live nodes with a preallocated hard capacity."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._items: list = [None] * capacity
        self._top = 0
        self.max_len = 0

    def __len__(self) -> int:
        return self._top

    def push(self, node: SearchNode) -> None:
        if self._top >= self.capacity:
            raise AssertionError(
                f"live stack exceeded its capacity of {self.capacity}")
        self._items[self._top] = node
        self._top += 1
        if self._top > self.max_len:
            self.max_len = self._top

    def pop(self) -> SearchNode:
        self._top -= 1
        node = self._items[self._top]
        self._items[self._top] = None
        return node


def _trivial_solution(ps: PointSet, pid: int) -> MebSolution:
    support = SupportSet(ids=(pid,), q_basis=np.empty((ps.n, 0)),
                         r_tri=np.empty((0, 0)),
                         multipliers=np.array([1.0]),
                         coords=ps.coords[pid:pid + 1])
    return MebSolution(ball=Ball(ps.point(pid), 0.0), support=support,
                       points=(pid,), iterations=0)


def make_root_children(ps: PointSet, k: int,
                       meb_all: MebSolution) -> list[RootChild]:
    """Order all points by falling distance to the center of the ball of
    everything; the first m-k+1 become root children, each owning the
    points strictly after it as its subtree's eligible set."""
    d = np.linalg.norm(ps.coords - meb_all.ball.center, axis=1)
    order = np.lexsort((np.arange(ps.m), -d))
    return [RootChild(int(order[j]), order[j + 1:])
            for j in range(ps.m - k + 1)]


class _Engine:
    def __init__(self, ps: PointSet, k: int, options: SolveOptions):
        self.ps = ps
        self.k = k
        self.options = options
        self.tol = options.tolerance if options.tolerance is not None \
            else Tolerance.for_points(ps)
        self.pruning = not options.disable_pruning
        self.min_tree = not options.disable_min_solution_tree
        self.incumbent: Optional[Incumbent] = None
        self.explored = 0
        self.dual_iterations = 0
        self.pruned = 0
        self.lower_bound: Optional[float] = None
        self.leaves: Optional[list[tuple[int, ...]]] = \
            [] if options.track_leaves else None
        self.certificate_hit = False
        capacity = ps.m - k + (0 if self.min_tree else 1)
        self.stack = LiveStack(max(capacity, 1))

    # -- incumbent handling -------------------------------------------------

    def _bound(self) -> float:
        return self.incumbent.ball.radius if self.incumbent else np.inf

    def _prune_threshold(self) -> float:
        if not self.pruning:
            return np.inf
        return self._bound() * (1.0 - self.tol.pruning)

    def _offer_incumbent(self, ball: Ball) -> None:
        """Install a candidate bound if it covers at least k points and
        improves the incumbent."""
        if ball.radius >= self._bound():
            return
        ids = covered_ids(ball, self.ps, self.tol)
        if len(ids) < self.k:
            return
        self.incumbent = Incumbent(ball=ball, covered=ids,
                                   found_at_explored=self.explored)
        if (self.lower_bound is not None and self.pruning
                and ball.radius <= self.lower_bound * (1.0 + self.tol.feasibility)
                + self.tol.absolute_floor):
            self.certificate_hit = True

    # -- node machinery -----------------------------------------------------

    def _log_leaf(self, points: tuple[int, ...]) -> None:
        if self.leaves is not None:
            self.leaves.append(tuple(sorted(points)))

    def _eval_leaf(self, parent: Optional[MebSolution],
                   points: tuple[int, ...]) -> None:
        """Evaluate a complete k-subset, warm-started from its parent."""
        cap = self._bound() if self.pruning else None
        cap = None if cap == np.inf else cap
        outcome = solve_meb_warm(self.ps, points, warm=parent, cap=cap,
                                 tol=self.tol)
        self.explored += 1
        self.dual_iterations += outcome.iterations
        if outcome.is_capped:
            self.pruned += 1
            return
        self._log_leaf(points)
        self._offer_incumbent(outcome.solution.ball)

    def _branch(self, node: SearchNode) -> None:
        ps, k = self.ps, self.k
        elig = node.eligible
        center = node.meb.ball.center
        r_node = node.radius
        d = np.linalg.norm(ps.coords[elig] - center, axis=1)
        order = np.lexsort((elig, -d))
        sorted_ids = elig[order]
        sorted_d = d[order]
        b = len(elig) - (k - node.level) + 1
        child_level = node.level + 1
        cover_limit = r_node * (1.0 + self.tol.feasibility) + self.tol.absolute_floor

        for j in range(b):
            qid = int(sorted_ids[j])
            last = j == b - 1
            if last and self.min_tree:
                points = node.path_ids + (qid,) + tuple(
                    int(i) for i in sorted_ids[b:])
                self._eval_leaf(node.meb, points)
                continue

            child_points = node.path_ids + (qid,)
            if sorted_d[j] <= cover_limit:
                # already inside the parent ball; nothing to solve
                self.explored += 1
                child_sol = MebSolution(ball=node.meb.ball,
                                        support=node.meb.support,
                                        points=child_points, iterations=0)
                if child_level == k:
                    self._log_leaf(child_points)
                    self._offer_incumbent(child_sol.ball)
                elif child_sol.ball.radius < self._prune_threshold():
                    self.stack.push(SearchNode(child_level, child_points,
                                               sorted_ids[j + 1:], child_sol))
                continue

            if self.pruning:
                bound = self._bound()
                upper = 0.5 * (sorted_d[j] + r_node)
                if upper > bound * (1.0 - self.tol.pruning):
                    # cheap certain bound: the new point ends on the boundary
                    path_d = np.linalg.norm(
                        ps.coords[list(node.path_ids)] - ps.point(qid), axis=1)
                    if 0.5 * float(path_d.max()) >= bound * (1.0 - self.tol.pruning):
                        self.pruned += 1
                        continue

            cap = self._bound() if self.pruning else None
            cap = None if cap == np.inf else cap
            outcome = warm_add_point(ps, node.meb, qid, cap=cap, tol=self.tol)
            self.explored += 1
            self.dual_iterations += outcome.iterations
            if outcome.is_capped:
                self.pruned += 1
                continue
            child_sol = outcome.solution
            r_child = child_sol.ball.radius
            if child_level == k:
                self._log_leaf(child_points)
                self._offer_incumbent(child_sol.ball)
                continue
            self._offer_incumbent(child_sol.ball)
            if r_child < self._prune_threshold():
                self.stack.push(SearchNode(child_level, child_points,
                                           sorted_ids[j + 1:], child_sol))
            else:
                self.pruned += 1

    # -- top level ------------------------------------------------------------

    def run(self) -> SolveReport:
        ps, k, options = self.ps, self.k, self.options
        t_start = time.perf_counter()

        if k >= 2 and ps.m <= options.lower_bound_max_m:
            self.lower_bound = pairwise_kth_lower_bound(ps, k)
        elif k < 2:
            self.lower_bound = 0.0

        if k == 1:
            ball = Ball(ps.point(0), 0.0)
            return self._report(ball, covered_ids(ball, ps, self.tol),
                                "optimal", t_start)

        meb_all = solve_meb(ps, range(ps.m), tol=self.tol)
        if k == ps.m:
            self._log_leaf(tuple(range(ps.m)))
            return self._report(meb_all.ball,
                                covered_ids(meb_all.ball, ps, self.tol),
                                "optimal", t_start)

        seed_ball = build_initial_ball(ps, k, options.strategy,
                                       seed=options.seed, tol=self.tol,
                                       meb_all=meb_all)
        if seed_ball is not None:
            self._offer_incumbent(seed_ball)

        # Root: the m-k+1 points farthest from the whole-set center become
        # children; each is a trivially solved single-point node. The last
        # one is a merged leaf and is evaluated, not pushed.
        children = make_root_children(ps, k, meb_all)
        status = "optimal"
        if not self.certificate_hit:
            for j, child in enumerate(children):
                last = j == len(children) - 1
                if last and self.min_tree:
                    points = (child.point_id,) + tuple(int(i) for i in child.eligible)
                    self._eval_leaf(None, points)
                    continue
                self.explored += 1
                sol = _trivial_solution(ps, child.point_id)
                if sol.ball.radius < self._prune_threshold():
                    self.stack.push(SearchNode(1, (child.point_id,),
                                               child.eligible, sol))
                else:
                    self.pruned += 1

            deadline = None
            if options.time_budget_s is not None:
                deadline = t_start + options.time_budget_s
            while len(self.stack) > 0:
                if self.certificate_hit:
                    break
                if options.node_budget is not None \
                        and self.explored >= options.node_budget:
                    status = "budget_exhausted"
                    break
                if deadline is not None and time.perf_counter() > deadline:
                    status = "budget_exhausted"
                    break
                node = self.stack.pop()
                if self.pruning and node.radius >= self._prune_threshold():
                    self.pruned += 1
                    continue
                self._branch(node)

        if self.incumbent is None:
            raise AssertionError("search finished without any k-enclosing ball")
        inc = self.incumbent
        return self._report(inc.ball, inc.covered, status, t_start,
                            found_at=inc.found_at_explored)

    def _report(self, ball: Ball, covered: tuple[int, ...], status: str,
                t_start: float, found_at: int = 0) -> SolveReport:
        wall = time.perf_counter() - t_start
        en = self.explored
        pct = 100.0 * found_at / en if en > 0 else 0.0
        ipn = self.dual_iterations / en if en > 0 else 0.0
        lb = self.lower_bound
        gap = None
        if lb is not None:
            gap = 0.0 if ball.radius <= 0.0 else max(
                (ball.radius - lb) / ball.radius, 0.0)
        leaves = tuple(self.leaves) if self.leaves is not None else None
        return SolveReport(
            ball=ball, covered=covered, k=self.k, m=self.ps.m, n=self.ps.n,
            status=status, explored_nodes=en, pct_en_at_optimum=pct,
            dual_iterations=self.dual_iterations, dual_iters_per_node=ipn,
            pruned_nodes=self.pruned, max_stack_len=self.stack.max_len,
            wall_time_s=wall, lower_bound=lb, gap=gap,
            strategy=self.options.strategy, seed=self.options.seed,
            leaf_subsets=leaves)


def solve_mkeb(ps: PointSet, k: int,
               options: SolveOptions = SolveOptions()) -> SolveReport:
    """Find the smallest ball covering at least k of the points, exactly.

    Runs the full branch-and-bound unless a budget in `options` stops it
    early (then the result is an upper bound and status says so). k = 1
    trivially gives a radius-0 ball; k = m reduces to the plain minimum
    enclosing ball.
    """
    if not 1 <= k <= ps.m:
        raise ValueError(f"k must be in [1, {ps.m}], got {k}")
    return _Engine(ps, k, options).run()
