"""Instance-level certified lower bound on the optimal k-enclosing radius.

Any ball covering k points has diameter at least the k(k-1)/2-th smallest
pairwise distance of the whole set, so half that order statistic can never
exceed the optimal radius.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import pdist

from .geometry import PointSet

__all__ = ["pairwise_kth_lower_bound"]


def pairwise_kth_lower_bound(ps: PointSet, k: int) -> float:
    """Half the (k(k-1)/2)-th smallest pairwise distance (1-indexed).

    Returns 0.0 for k < 2 (the optimum is a radius-0 ball). Monotone
    nondecreasing in k.
    """
    if k > ps.m:
        raise ValueError(f"k must be at most m = {ps.m}, got {k}")
    if k < 2:
        return 0.0
    d = pdist(ps.coords)
    rank = k * (k - 1) // 2  # <= m(m-1)/2 since k <= m
    # order statistic via partial selection; no full sort needed
    kth = np.partition(d, rank - 1)[rank - 1]
    return 0.5 * float(kth)
