"""Deterministic synthetic dataset generators.

Five families: ball (volume-uniform in the unit ball), ring (volume-uniform
in an annulus/shell), normal (iid standard normal coordinates), exponential
(iid mean-1 exponential coordinates), and boutliers (a unit ball plus a few
far shell outliers). All randomness flows through numpy's default PCG64
generator seeded explicitly, so a spec reproduces the same points anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import PointSet

__all__ = ["DatasetSpec", "generate", "KINDS"]

KINDS = ("ball", "ring", "normal", "exponential", "boutliers")


@dataclass(frozen=True)
class DatasetSpec:
    """Parameters of one synthetic dataset."""

    kind: str
    m: int
    n: int
    seed: int = 0
    ring_inner: float = 0.8
    ring_outer: float = 1.2
    outliers: int = 10
    shell_inner: float = 1.0
    shell_outer: float = 3.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown dataset kind {self.kind!r}; "
                             f"expected one of {KINDS}")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.kind == "ring" and not 0.0 <= self.ring_inner < self.ring_outer:
            raise ValueError("ring radii must satisfy 0 <= inner < outer")
        if self.kind == "boutliers":
            if not 0 <= self.outliers < self.m:
                raise ValueError("outlier count must satisfy 0 <= b < m")
            if not 0.0 <= self.shell_inner < self.shell_outer:
                raise ValueError("shell radii must satisfy 0 <= inner < outer")


def _directions(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    g = rng.standard_normal((m, n))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero draw has probability zero but would poison the division
    norms[norms < 1e-300] = 1.0
    return g / norms


def _ball_uniform(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    # radius ~ U^(1/n) makes the density volume-uniform in any dimension
    r = rng.random((m, 1)) ** (1.0 / n)
    return _directions(rng, m, n) * r


def _shell_uniform(rng: np.random.Generator, m: int, n: int,
                   r_in: float, r_out: float) -> np.ndarray:
    u = rng.random((m, 1))
    r = (r_in ** n + u * (r_out ** n - r_in ** n)) ** (1.0 / n)
    return _directions(rng, m, n) * r


def generate(spec: DatasetSpec) -> PointSet:
    """Materialize the dataset; bitwise deterministic for a given spec."""
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "ball":
        pts = _ball_uniform(rng, spec.m, spec.n)
    elif spec.kind == "ring":
        pts = _shell_uniform(rng, spec.m, spec.n,
                             spec.ring_inner, spec.ring_outer)
    elif spec.kind == "normal":
        pts = rng.standard_normal((spec.m, spec.n))
    elif spec.kind == "exponential":
        pts = rng.exponential(1.0, (spec.m, spec.n))
    else:  # boutliers
        inliers = _ball_uniform(rng, spec.m - spec.outliers, spec.n)
        outliers = _shell_uniform(rng, spec.outliers, spec.n,
                                  spec.shell_inner, spec.shell_outer)
        pts = np.vstack([inliers, outliers])
    return PointSet(pts)
