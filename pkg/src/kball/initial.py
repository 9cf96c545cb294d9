"""Heuristics that seed the search with a valid k-enclosing ball.

Each returns a ball guaranteed to cover at least k points; a smaller seed
radius means more aggressive pruning from the first node on. Which heuristic
works best depends on the shape of the data, so the choice is left to the
caller.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .dual import MebSolution, solve_meb
from .geometry import Ball, PointSet, Tolerance

__all__ = [
    "spherical_ordering",
    "spherical_peeling",
    "random_knn_start",
    "build_initial_ball",
]


def _check_k(ps: PointSet, k: int) -> None:
    if not 1 <= k <= ps.m:
        raise ValueError(f"k must be in [1, {ps.m}], got {k}")


def spherical_ordering(ps: PointSet, k: int,
                       tol: Optional[Tolerance] = None,
                       meb_all: Optional[MebSolution] = None) -> Ball:
    """Ball of the k points nearest the center of the ball of everything.

    Good when the data is roughly spherical with density highest near the
    middle. Ties in distance break toward the smaller point id.
    """
    _check_k(ps, k)
    if meb_all is None:
        meb_all = solve_meb(ps, range(ps.m), tol=tol)
    d = np.linalg.norm(ps.coords - meb_all.ball.center, axis=1)
    order = np.lexsort((np.arange(ps.m), d))
    subset = np.sort(order[:k])
    return solve_meb(ps, subset, tol=tol).ball


def spherical_peeling(ps: PointSet, k: int,
                      tol: Optional[Tolerance] = None,
                      meb_all: Optional[MebSolution] = None) -> Ball:
    """Repeatedly drop one boundary point and re-solve until k points remain.

    The dropped point is the boundary (support) point farthest from the
    centroid of whatever would remain, which tends to peel outliers first;
    ties break toward the smaller id. The final ball may well cover more
    than k points of the full set.
    """
    _check_k(ps, k)
    working = list(range(ps.m))
    sol = meb_all if meb_all is not None else solve_meb(ps, working, tol=tol)
    while len(working) > k:
        total = ps.coords[working].sum(axis=0)
        best_id, best_score = -1, -np.inf
        for sid in sorted(sol.support.ids):
            centroid = (total - ps.point(sid)) / (len(working) - 1)
            score = float(np.linalg.norm(ps.point(sid) - centroid))
            if score > best_score:
                best_id, best_score = sid, score
        working.remove(best_id)
        sol = solve_meb(ps, working, tol=tol)
    return sol.ball


def random_knn_start(ps: PointSet, k: int, seed: Optional[int] = None,
                     tol: Optional[Tolerance] = None) -> Ball:
    """Ball of a random point together with its k-1 nearest neighbors.

    Deterministic for a given seed (PCG64). Useful when the data is hollow,
    e.g. concentrated on a shell, where center-based seeds cover thin air.
    """
    _check_k(ps, k)
    rng = np.random.default_rng(seed)
    pid = int(rng.integers(ps.m))
    d = np.linalg.norm(ps.coords - ps.point(pid), axis=1)
    d[pid] = -1.0  # the anchor always comes first
    order = np.lexsort((np.arange(ps.m), d))
    subset = np.sort(order[:k])
    return solve_meb(ps, subset, tol=tol).ball


def build_initial_ball(ps: PointSet, k: int, strategy: str,
                       seed: Optional[int] = None,
                       tol: Optional[Tolerance] = None,
                       meb_all: Optional[MebSolution] = None) -> Optional[Ball]:
    """Dispatch by strategy name; "none" yields no seed (infinite bound)."""
    if strategy == "none":
        return None
    if strategy == "spherical_ordering":
        return spherical_ordering(ps, k, tol=tol, meb_all=meb_all)
    if strategy == "spherical_peeling":
        return spherical_peeling(ps, k, tol=tol, meb_all=meb_all)
    if strategy == "random_knn":
        return random_knn_start(ps, k, seed=seed, tol=tol)
    raise ValueError(f"unknown strategy {strategy!r}")
