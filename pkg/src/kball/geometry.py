"""Core geometric types and coverage primitives.

Everything here is immutable after construction and safe to share between
threads; all operations are pure functions on numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

__all__ = [
    "PointSet",
    "Ball",
    "Tolerance",
    "euclidean_distance",
    "ball_covers",
    "count_covered",
    "covered_ids",
    "load_points",
    "save_points",
]


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d coordinate vector, got shape {v.shape}")
    return v


class PointSet:
    """An ordered set of m points in n dimensions with stable integer ids.

    The id of a point is its 0-based row position and never changes.
    Duplicate coordinates are allowed and keep distinct ids.
    """

    __slots__ = ("coords", "m", "n", "scale")

    def __init__(self, coords):
        arr = np.array(coords, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"points must form a 2-d array, got shape {arr.shape}")
        m, n = arr.shape
        if m < 1:
            raise ValueError("a point set needs at least one point")
        if n < 1:
            raise ValueError("dimension must be a positive integer")
        if not np.isfinite(arr).all():
            raise ValueError("all coordinates must be finite")
        arr.setflags(write=False)
        self.coords = arr
        self.m = m
        self.n = n
        # Magnitude scale of the instance, used for absolute tolerance floors.
        self.scale = float(np.abs(arr).max())

    def point(self, pid: int) -> np.ndarray:
        return self.coords[pid]

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"PointSet(m={self.m}, n={self.n})"


@dataclass(frozen=True)
class Ball:
    """A Euclidean ball: center vector plus nonnegative radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = _as_vector(self.center)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        if not np.isfinite(c).all():
            raise ValueError("ball center must be finite")
        if not np.isfinite(self.radius) or self.radius < 0.0:
            raise ValueError("ball radius must be finite and nonnegative")


@dataclass(frozen=True)
class Tolerance:
    """Floating-point tolerances used consistently by every module.

    feasibility: relative slack for coverage tests (d <= r * (1 + feasibility)).
    pruning: relative slack protecting the incumbent from being beaten by noise.
    absolute_floor: absolute coverage slack so radius-0 balls behave sanely;
        instance-aware callers should build it via ``Tolerance.for_points``.
    """

    feasibility: float = 1e-9
    pruning: float = 1e-12
    absolute_floor: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.feasibility < 1e-3):
            raise ValueError("feasibility epsilon must lie in (0, 1e-3)")
        if not (0.0 < self.pruning < 1e-3):
            raise ValueError("pruning epsilon must lie in (0, 1e-3)")
        if self.absolute_floor < 0.0:
            raise ValueError("absolute floor must be nonnegative")

    @classmethod
    def for_points(cls, ps: PointSet, feasibility: float = 1e-9,
                   pruning: float = 1e-12) -> "Tolerance":
        """Tolerance whose absolute floor is scaled to the instance magnitude."""
        return cls(feasibility=feasibility, pruning=pruning,
                   absolute_floor=1e-12 * max(ps.scale, 1.0))


def euclidean_distance(a, b) -> float:
    """Euclidean norm of a - b; raises on mismatched dimensions."""
    av, bv = _as_vector(a), _as_vector(b)
    if av.shape != bv.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {av.shape[0]} vs {bv.shape[0]}")
    return float(np.linalg.norm(av - bv))


def ball_covers(ball: Ball, p, tol: Tolerance = Tolerance()) -> bool:
    """Closed-ball membership with relative epsilon scaled by the radius.

    A single consistent rule (relative slack plus an absolute floor) keeps
    feasibility and pruning decisions from ever disagreeing.
    """
    d = euclidean_distance(ball.center, p)
    return d <= ball.radius * (1.0 + tol.feasibility) + tol.absolute_floor


def _coverage_mask(ball: Ball, coords: np.ndarray, tol: Tolerance) -> np.ndarray:
    if coords.shape[1] != ball.center.shape[0]:
        raise DimensionMismatchError(
            f"dimension mismatch: {coords.shape[1]} vs {ball.center.shape[0]}")
    d = np.linalg.norm(coords - ball.center, axis=1)
    return d <= ball.radius * (1.0 + tol.feasibility) + tol.absolute_floor


def count_covered(ball: Ball, ps: PointSet, tol: Tolerance = Tolerance()) -> int:
    """Number of points of ps inside the ball (per ball_covers)."""
    return int(_coverage_mask(ball, ps.coords, tol).sum())


def covered_ids(ball: Ball, ps: PointSet, tol: Tolerance = Tolerance()) -> tuple[int, ...]:
    """Ids of the points of ps inside the ball, ascending."""
    return tuple(int(i) for i in np.nonzero(_coverage_mask(ball, ps.coords, tol))[0])


def save_points(ps: PointSet, path) -> None:
    """Write the shared plain-text point format: header "m n", then one
    line of n space-separated coordinates per point."""
    with open(path, "w") as fh:
        fh.write(f"{ps.m} {ps.n}\n")
        for row in ps.coords:
            fh.write(" ".join("%.17g" % x for x in row))
            fh.write("\n")


def load_points(path) -> PointSet:
    """Read the shared point format; accepts scientific notation."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("point file must start with a line 'm n'")
        m, n = int(header[0]), int(header[1])
        rows = []
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != n:
                raise ValueError(f"line {lineno}: expected {n} coordinates, got {len(parts)}")
            rows.append([float(x) for x in parts])
    if len(rows) != m:
        raise ValueError(f"header promised {m} points, file contains {len(rows)}")
    return PointSet(rows)
