"""Brute-force reference solvers for small instances.

These enumerate candidate balls directly from point subsets and share no
iteration machinery with the dual solver, so they can vouch for it. They are
deliberately simple and allowed to be slow.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import SizeGuardError
from .geometry import Ball, PointSet, Tolerance

__all__ = ["oracle_meb", "oracle_mkeb", "MKEB_SUBSET_GUARD"]

# Refuse instances whose k-subset count exceeds this.
MKEB_SUBSET_GUARD = 10 ** 6

# Candidate supports are subsets of size <= n+1; refuse beyond this many.
_CANDIDATE_GUARD = 2 * 10 ** 6


def _circumball(pts: np.ndarray) -> Optional[tuple[np.ndarray, float]]:
    """Center equidistant from all rows of pts within their affine hull,
    or None when they are (numerically) affinely dependent.

    Solves the Gram system of edge vectors directly; no iteration.
    """
    if len(pts) == 1:
        return pts[0].copy(), 0.0
    edges = pts[1:] - pts[0]
    gram = 2.0 * (edges @ edges.T)
    rhs = np.einsum("ij,ij->i", edges, edges)
    try:
        w = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        return None
    center = pts[0] + edges.T @ w
    d = np.linalg.norm(pts - center, axis=1)
    radius = float(d.max())
    if radius > 0.0 and float(d.max() - d.min()) > 1e-8 * radius:
        return None  # ill-conditioned; treat as dependent
    return center, radius


def _candidate_sizes(ps: PointSet, count: int) -> range:
    return range(1, min(ps.n + 1, count) + 1)


def oracle_meb(ps: PointSet, subset: Sequence[int],
               tol: Optional[Tolerance] = None) -> Ball:
    """Exact minimum enclosing ball of an id subset by enumeration.

    Tries the circumscribing ball of every sub-subset of size 1..n+1 and
    keeps the smallest one that covers everything.
    """
    ids = [int(i) for i in subset]
    if not ids:
        raise ValueError("subset must be nonempty")
    tol = tol if tol is not None else Tolerance.for_points(ps)
    coords = ps.coords[ids]
    best: Optional[tuple[np.ndarray, float]] = None
    for size in _candidate_sizes(ps, len(ids)):
        for combo in combinations(range(len(ids)), size):
            cand = _circumball(coords[list(combo)])
            if cand is None:
                continue
            center, radius = cand
            if best is not None and radius >= best[1] * (1.0 - 1e-12):
                continue
            d = np.linalg.norm(coords - center, axis=1)
            if (d <= radius * (1.0 + tol.feasibility) + tol.absolute_floor).all():
                best = (center, radius)
    assert best is not None  # the full-support candidate always covers
    return Ball(best[0], best[1])


def oracle_mkeb(ps: PointSet, k: int,
                tol: Optional[Tolerance] = None) -> Ball:
    """Exact minimum k-enclosing ball by candidate-ball enumeration.

    The optimum is the ball of its own covered set, hence the circumscribing
    ball of at most n+1 of the input points; every such candidate covering
    at least k points is feasible, so the smallest one is the optimum.
    Candidates are scanned in a fixed size-then-lexicographic order, which
    makes tie resolution deterministic.
    """
    if not 1 <= k <= ps.m:
        raise ValueError(f"k must be in [1, {ps.m}], got {k}")
    if comb(ps.m, k) > MKEB_SUBSET_GUARD:
        raise SizeGuardError(
            f"instance too large: C({ps.m}, {k}) k-subsets exceed {MKEB_SUBSET_GUARD}")
    n_candidates = sum(comb(ps.m, j) for j in _candidate_sizes(ps, ps.m))
    if n_candidates > _CANDIDATE_GUARD:
        raise SizeGuardError(
            f"instance too large: {n_candidates} candidate supports exceed "
            f"{_CANDIDATE_GUARD}")
    if k == 1:
        return Ball(ps.point(0), 0.0)
    tol = tol if tol is not None else Tolerance.for_points(ps)
    coords = ps.coords
    best: Optional[tuple[np.ndarray, float]] = None
    for size in _candidate_sizes(ps, ps.m):
        for combo in combinations(range(ps.m), size):
            cand = _circumball(coords[list(combo)])
            if cand is None:
                continue
            center, radius = cand
            if best is not None and radius >= best[1] * (1.0 - 1e-12):
                continue
            d = np.linalg.norm(coords - center, axis=1)
            covered = int((d <= radius * (1.0 + tol.feasibility)
                           + tol.absolute_floor).sum())
            if covered >= k:
                best = (center, radius)
    assert best is not None  # any (n+1)-point enclosing candidate covers >= k
    return Ball(best[0], best[1])
