"""Dual support-set algorithm for the minimum enclosing ball.

The solver maintains an affinely independent *support set*: points lying on
the boundary of the current ball, whose circumscribing ball (with center in
their convex hull) is the current solution. The ball is always optimal for
the points it contains; it grows monotonically as uncovered points enter the
support, and the solve terminates when every requested point is covered.

A QR factorization of the support's edge matrix is maintained incrementally,
so re-solving the circumscribing ball after one insertion or removal costs
O(n^2) arithmetic. Solutions are immutable; warm starts copy the state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DegeneracyError, DimensionMismatchError, IterationLimitError
from .geometry import Ball, PointSet, Tolerance, ball_covers

__all__ = [
    "SupportSet",
    "MebSolution",
    "AddOutcome",
    "IterationSnapshot",
    "solve_support_ball",
    "solve_meb",
    "solve_meb_warm",
    "warm_add_point",
    "child_radius_upper",
    "child_radius_lower",
]

# Edges whose component orthogonal to the support span falls below this
# fraction of their length are treated as affinely dependent.
_DEPENDENCE_TOL = 1e-10

# Equidistance defect (relative) above which the factorization is rebuilt.
_REBUILD_TOL = 1e-6


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SupportSet:
    """Affinely independent boundary points plus cached factorization.

    ids[0] is the base point; q_basis/r_tri factor the edge matrix
    E[:, i] = P[ids[i+1]] - P[ids[0]] as E = Q R. multipliers are the
    barycentric coordinates of the solution center over ids (nonnegative,
    summing to one). coords caches the support rows so warm starts avoid
    re-gathering them.
    """

    ids: tuple[int, ...]
    q_basis: np.ndarray
    r_tri: np.ndarray
    multipliers: np.ndarray
    coords: np.ndarray

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class MebSolution:
    """A solved minimum enclosing ball over a specific id subset.

    iterations counts the dual entering events performed by the call that
    produced this solution (not a lifetime total).
    """

    ball: Ball
    support: SupportSet
    points: tuple[int, ...]
    iterations: int


@dataclass(frozen=True)
class AddOutcome:
    """Result of warm-adding one point: covered, updated, or capped."""

    kind: str  # "covered" | "updated" | "capped"
    solution: Optional[MebSolution]
    iterations: int

    @property
    def is_covered(self) -> bool:
        return self.kind == "covered"

    @property
    def is_updated(self) -> bool:
        return self.kind == "updated"

    @property
    def is_capped(self) -> bool:
        return self.kind == "capped"


class IterationSnapshot(NamedTuple):
    """Per-iteration probe used by tests: radius, support size, and the
    worst relative distance-to-boundary defect over support points."""

    radius: float
    support_size: int
    boundary_defect: float


class _Workspace:
    """Mutable solver state; never shared, exported as immutable values."""

    def __init__(self, ps: PointSet, ids: list[int], q_basis: np.ndarray,
                 r_tri: np.ndarray, lam: np.ndarray, center: np.ndarray,
                 radius: float):
        self.ps = ps
        self.ids = ids
        self.sup = ps.coords[ids]   # (s+1, n) support coordinates, owned
        self.Q = q_basis            # (n, s), owned
        self.R = r_tri              # (s, s), owned
        self.lam = lam              # (s+1,), owned
        self.center = center
        self.radius = radius

    # -- construction -----------------------------------------------------

    @classmethod
    def single_point(cls, ps: PointSet, pid: int) -> "_Workspace":
        n = ps.n
        return cls(ps, [pid], np.empty((n, 0)), np.empty((0, 0)),
                   np.array([1.0]), ps.point(pid).copy(), 0.0)

    @classmethod
    def two_points(cls, ps: PointSet, a: int, b: int) -> "_Workspace":
        pa, pb = ps.point(a), ps.point(b)
        e = pb - pa
        norm = float(np.linalg.norm(e))
        if norm <= 0.0:
            raise DegeneracyError("two-point support requires distinct points")
        q = (e / norm).reshape(-1, 1)
        r = np.array([[norm]])
        center = 0.5 * (pa + pb)
        return cls(ps, [a, b], q, r, np.array([0.5, 0.5]), center, 0.5 * norm)

    @classmethod
    def from_solution(cls, ps: PointSet, sol: MebSolution) -> "_Workspace":
        # Arrays are shared with the (immutable, read-only) input solution;
        # every mutating operation below replaces or copies them first.
        sup = sol.support
        ws = cls.__new__(cls)
        ws.ps = ps
        ws.ids = list(sup.ids)
        ws.sup = sup.coords
        ws.Q = sup.q_basis
        ws.R = sup.r_tri
        ws.lam = sup.multipliers.copy()
        ws.center = sol.ball.center
        ws.radius = sol.ball.radius
        return ws

    # -- factorization maintenance ----------------------------------------

    def try_insert(self, pid: int) -> bool:
        """Append pid's edge to the factorization; False if affinely dependent."""
        e = self.ps.point(pid) - self.sup[0]
        norm_e = float(np.linalg.norm(e))
        r_col = self.Q.T @ e
        w = e - self.Q @ r_col
        rho = float(np.linalg.norm(w))
        if rho < 0.7 * norm_e:
            # heavy cancellation: one reorthogonalization pass suffices
            r2 = self.Q.T @ w
            w = w - self.Q @ r2
            r_col = r_col + r2
            rho = float(np.linalg.norm(w))
        if rho <= _DEPENDENCE_TOL * max(norm_e, 1e-300):
            return False
        s = self.R.shape[0]
        n = self.ps.n
        new_r = np.zeros((s + 1, s + 1))
        new_r[:s, :s] = self.R
        new_r[:s, s] = r_col
        new_r[s, s] = rho
        new_q = np.empty((n, s + 1))
        new_q[:, :s] = self.Q
        new_q[:, s] = w / rho
        new_sup = np.empty((s + 2, n))
        new_sup[:-1] = self.sup
        new_sup[-1] = self.ps.coords[pid]
        self.Q = new_q
        self.R = new_r
        self.sup = new_sup
        self.ids.append(pid)
        return True

    def remove(self, idx: int) -> None:
        """Delete support position idx (0 = base), keeping E = Q R."""
        s = self.R.shape[0]
        if idx == 0:
            # Rebase onto ids[1]: new edges are old edges minus the first,
            # which only touches row 0 of R, then drop old column 0.
            if s == 0:
                raise DegeneracyError("cannot remove the only support point")
            new_r = self.R[:, 1:] - self.R[:, :1]
            del self.ids[0]
        else:
            new_r = np.delete(self.R, idx - 1, axis=1)
            del self.ids[idx]
        self.sup = np.delete(self.sup, idx, axis=0)
        self.lam = np.delete(self.lam, idx)
        q = self.Q.copy()  # Q may be shared with an exported solution
        # new_r is upper Hessenberg from the removed column on; restore
        # triangularity with Givens rotations folded into Q.
        start = 0 if idx == 0 else idx - 1
        for j in range(start, new_r.shape[1]):
            a, b = new_r[j, j], new_r[j + 1, j]
            if b == 0.0:
                continue
            h = float(np.hypot(a, b))
            c, sn = a / h, b / h
            rows = np.array([c * new_r[j, :] + sn * new_r[j + 1, :],
                             -sn * new_r[j, :] + c * new_r[j + 1, :]])
            new_r[j, :], new_r[j + 1, :] = rows[0], rows[1]
            cols = np.array([c * q[:, j] + sn * q[:, j + 1],
                             -sn * q[:, j] + c * q[:, j + 1]]).T
            q[:, j], q[:, j + 1] = cols[:, 0], cols[:, 1]
        self.Q = q[:, : s - 1].copy()
        self.R = new_r[: s - 1, :].copy()

    def rebuild(self) -> None:
        """Full refactorization; the drift fallback."""
        edges = (self.sup[1:] - self.sup[0]).T
        if edges.shape[1] == 0:
            self.Q = np.empty((self.ps.n, 0))
            self.R = np.empty((0, 0))
            return
        q, r = np.linalg.qr(edges)
        self.Q, self.R = q, r

    # -- geometry over the factorization ----------------------------------

    def circumcenter(self) -> tuple[np.ndarray, float, np.ndarray]:
        """Center equidistant from all support points within their affine
        hull, its radius, and its barycentric coordinates over ids."""
        for attempt in (0, 1):
            if self.R.shape[0] == 0:
                return self.sup[0].copy(), 0.0, np.array([1.0])
            edges = self.sup[1:] - self.sup[0]
            h = 0.5 * np.einsum("ij,ij->i", edges, edges)
            u = solve_triangular(self.R, h, trans="T", lower=False,
                                 check_finite=False)
            center = self.sup[0] + self.Q @ u
            diff = self.sup - center
            d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
            radius = float(d[0])
            defect = float(d.max() - d.min()) / max(radius, 1e-300)
            if defect <= _REBUILD_TOL or attempt == 1:
                if defect > _REBUILD_TOL:
                    raise DegeneracyError(
                        f"support set numerically degenerate (defect {defect:.2e})")
                gamma_tail = solve_triangular(self.R, u, lower=False,
                                              check_finite=False)
                coords = np.empty(len(self.ids))
                coords[1:] = gamma_tail
                coords[0] = 1.0 - gamma_tail.sum()
                return center, radius, coords
            self.rebuild()
        raise AssertionError("unreachable")

    def affine_coords(self, point: np.ndarray) -> np.ndarray:
        """Coordinates of a point known to lie in the support's affine hull."""
        if self.R.shape[0] == 0:
            return np.array([1.0])
        v = self.Q.T @ (point - self.sup[0])
        tail = solve_triangular(self.R, v, lower=False, check_finite=False)
        coords = np.empty(len(self.ids))
        coords[1:] = tail
        coords[0] = 1.0 - tail.sum()
        return coords

    def boundary_defect(self) -> float:
        diff = self.sup - self.center
        d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        return float(np.abs(d - self.radius).max()) / max(self.radius, 1e-300)

    # -- the entering event ------------------------------------------------

    def enter(self, qid: int, cap: float | None) -> bool:
        """Grow the ball until qid reaches the boundary; True if the radius
        provably reached the cap first (solution left mid-flight)."""
        n = self.ps.n
        pending = 0.0
        # Insertion, with dual multiplier shifts while qid sits inside the
        # support's affine hull: weight moves from a blocking support point
        # (driven exactly to zero) onto qid, the center staying put.
        while not self.try_insert(qid):
            if len(self.ids) == 1:
                # qid coincides with the only support point
                self.lam = np.array([1.0])
                return False
            alpha = self.affine_coords(self.ps.point(qid))
            theta = np.inf
            blocker = -1
            for i, a in enumerate(alpha):
                if a > 1e-14:
                    t = self.lam[i] / a
                    if t < theta - 1e-15 or (t <= theta + 1e-15 and
                                             (blocker < 0 or self.ids[i] < self.ids[blocker])):
                        theta, blocker = t, i
            if blocker < 0:
                raise DegeneracyError("no positive coordinate in dependent insert")
            self.lam = self.lam - theta * alpha
            self.lam[blocker] = 0.0
            np.clip(self.lam, 0.0, None, out=self.lam)
            pending += theta
            self.remove(blocker)
        self.lam = np.append(self.lam, pending)

        # Walk the center toward the circumcenter of support + qid. Support
        # points stay on the boundary; a blocking point whose multiplier
        # hits zero leaves the support and the walk restarts.
        while True:
            assert len(self.ids) <= n + 1, "support exceeded n+1 points"
            target, rad, nu = self.circumcenter()
            t_star = 1.0
            blocker = -1
            for i, v in enumerate(nu):
                if v < 0.0:
                    t = self.lam[i] / (self.lam[i] - v)
                    if t < t_star - 1e-15 or (t <= t_star + 1e-15 and
                                              (blocker < 0 or self.ids[i] < self.ids[blocker])):
                        t_star, blocker = t, i
            if blocker < 0:
                self.center = target
                self.radius = rad
                self.lam = np.clip(nu, 0.0, None)
                return cap is not None and self.radius >= cap
            if self.ids[blocker] == qid:
                # Entering point cannot block; treat the worst support
                # coordinate as degenerate instead.
                cand = [i for i, v in enumerate(nu) if v < 0.0 and self.ids[i] != qid]
                if not cand:
                    raise DegeneracyError("entering point blocked its own walk")
                blocker = min(cand, key=lambda i: (nu[i], self.ids[i]))
                t_star = 0.0
            t_step = min(max(t_star, 0.0), 1.0)
            if t_step > 0.0:
                self.center = self.center + t_step * (target - self.center)
                self.lam = (1.0 - t_step) * self.lam + t_step * nu
                self.radius = float(np.linalg.norm(self.center - self.sup[0]))
            self.lam[blocker] = 0.0
            np.clip(self.lam, 0.0, None, out=self.lam)
            self.remove(blocker)
            if cap is not None and self.radius >= cap:
                return True

    # -- export -------------------------------------------------------------

    def export(self, points: tuple[int, ...], iterations: int) -> MebSolution:
        # The workspace is discarded after export, so its arrays (fresh or
        # shared with an already-immutable solution) are handed over as-is.
        support = SupportSet(
            ids=tuple(self.ids),
            q_basis=_readonly(self.Q),
            r_tri=_readonly(self.R),
            multipliers=_readonly(self.lam),
            coords=_readonly(self.sup),
        )
        ball = Ball(self.center, self.radius)
        return MebSolution(ball=ball, support=support, points=points,
                           iterations=iterations)


# -- internal driver --------------------------------------------------------


def _farthest_uncovered(sub_coords: np.ndarray, points: np.ndarray,
                        center: np.ndarray, radius: float,
                        tol: Tolerance) -> int | None:
    """Farthest point of `points` outside the current ball, or None."""
    diff = sub_coords - center
    d2 = np.einsum("ij,ij->i", diff, diff)
    limit = radius * (1.0 + tol.feasibility) + tol.absolute_floor
    mask = d2 > limit * limit
    if not mask.any():
        return None
    return int(points[int(np.argmax(np.where(mask, d2, -np.inf)))])


def _uncovered_entering(ps: PointSet, points: np.ndarray, center: np.ndarray,
                        radius: float, tol: Tolerance) -> int | None:
    return _farthest_uncovered(ps.coords[points], points, center, radius, tol)


def _run_events(ws: _Workspace, points: tuple[int, ...], first: int,
                cap: float | None, tol: Tolerance,
                trace: list | None, start_radius: float) -> tuple[str, int]:
    """Enter `first`, then keep entering uncovered members of `points`
    until feasible or capped. Returns (status, iterations)."""
    ps = ws.ps
    pts = np.asarray(points, dtype=np.intp)
    sub_coords = ps.coords[pts]
    limit = 10 * (ps.n + 1) * max(len(points), 1)
    iterations = 0
    entering = first
    prev_radius = start_radius
    while True:
        capped = ws.enter(entering, cap)
        iterations += 1
        if trace is not None:
            trace.append(IterationSnapshot(ws.radius, len(ws.ids),
                                           ws.boundary_defect()))
        if capped:
            return "capped", iterations
        if ws.radius < prev_radius - tol.feasibility * max(prev_radius, 1.0):
            raise DegeneracyError("dual radius decreased across iterations")
        prev_radius = ws.radius
        nxt = _farthest_uncovered(sub_coords, pts, ws.center, ws.radius, tol)
        if nxt is None:
            return "done", iterations
        if iterations >= limit:
            raise IterationLimitError(
                f"dual solver exceeded {limit} iterations; numerical trouble")
        entering = nxt


# -- public operations --------------------------------------------------------


def solve_support_ball(ps: PointSet, support: Sequence[int]) -> Ball:
    """Smallest ball having every given point on its boundary.

    The points must be affinely independent (at most n+1 of them); a single
    point yields a radius-0 ball and a pair yields the midpoint ball.
    """
    ids = list(support)
    if not 1 <= len(ids) <= ps.n + 1:
        raise DegeneracyError(f"support size must be in [1, {ps.n + 1}]")
    ws = _Workspace.single_point(ps, ids[0])
    for pid in ids[1:]:
        if not ws.try_insert(pid):
            raise DegeneracyError("support points are affinely dependent")
        ws.lam = np.append(ws.lam, 0.0)
    center, radius, _ = ws.circumcenter()
    return Ball(center, radius)


def solve_meb(ps: PointSet, subset: Sequence[int],
              tol: Tolerance | None = None,
              trace: list | None = None) -> MebSolution:
    """Minimum enclosing ball of the given point ids, solved from scratch.

    Starts from the two-point support {first, farthest-from-first} and
    repeatedly enters the farthest uncovered point.
    """
    subset = tuple(int(i) for i in subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    tol = tol if tol is not None else Tolerance.for_points(ps)
    first = subset[0]
    diffs = ps.coords[list(subset)] - ps.point(first)
    dists = np.linalg.norm(diffs, axis=1)
    far_pos = int(np.argmax(dists))
    if dists[far_pos] <= 0.0:
        # all points coincide
        ws = _Workspace.single_point(ps, first)
        return ws.export(points=subset, iterations=0)
    ws = _Workspace.two_points(ps, first, subset[far_pos])
    entering = _uncovered_entering(ws.ps, np.asarray(subset, dtype=np.intp),
                                   ws.center, ws.radius, tol)
    if entering is None:
        return ws.export(points=subset, iterations=0)
    status, iterations = _run_events(ws, subset, entering, None, tol, trace,
                                     start_radius=0.0)
    assert status == "done"
    return ws.export(points=subset, iterations=iterations)


def solve_meb_warm(ps: PointSet, points: Sequence[int],
                   warm: MebSolution | None = None,
                   cap: float | None = None,
                   tol: Tolerance | None = None,
                   trace: list | None = None) -> AddOutcome:
    """Cover an id subset, warm-starting from an earlier solution.

    Used for merged leaf nodes: several points may need to enter, in
    farthest-first order. Returns covered (warm ball already covers all),
    updated, or capped; never raises for uncovered inputs.
    """
    points = tuple(int(i) for i in points)
    if not points:
        raise ValueError("points must be nonempty")
    tol = tol if tol is not None else Tolerance.for_points(ps)
    if warm is not None:
        ws = _Workspace.from_solution(ps, warm)
        start_radius = warm.ball.radius
    else:
        ws = _Workspace.single_point(ps, points[0])
        start_radius = 0.0
    entering = _uncovered_entering(ps, np.asarray(points, dtype=np.intp),
                                   ws.center, ws.radius, tol)
    if entering is None:
        return AddOutcome(kind="covered",
                          solution=ws.export(points=points, iterations=0),
                          iterations=0)
    cap_threshold = cap * (1.0 - tol.pruning) if cap is not None else None
    status, iterations = _run_events(ws, points, entering, cap_threshold, tol,
                                     trace, start_radius=start_radius)
    if status == "capped":
        return AddOutcome(kind="capped", solution=None, iterations=iterations)
    return AddOutcome(kind="updated",
                      solution=ws.export(points=points, iterations=iterations),
                      iterations=iterations)


def warm_add_point(ps: PointSet, sol: MebSolution, q: int,
                   cap: float | None = None,
                   tol: Tolerance | None = None,
                   trace: list | None = None) -> AddOutcome:
    """Extend a solved ball by one point, reusing its support set.

    Returns Covered (q already inside; ball unchanged), Updated (a new
    solution for points + q, radius strictly larger), or Capped (the radius
    provably reached `cap`, so the caller may prune without finishing).
    """
    if not 0 <= q < ps.m:
        raise ValueError(f"point id {q} out of range [0, {ps.m})")
    tol = tol if tol is not None else Tolerance.for_points(ps)
    new_points = sol.points if q in sol.points else sol.points + (q,)
    if ball_covers(sol.ball, ps.point(q), tol):
        covered_sol = MebSolution(ball=sol.ball, support=sol.support,
                                  points=new_points, iterations=0)
        return AddOutcome(kind="covered", solution=covered_sol, iterations=0)
    cap_threshold = None
    if cap is not None:
        cap_threshold = cap * (1.0 - tol.pruning)
    ws = _Workspace.from_solution(ps, sol)
    status, iterations = _run_events(ws, new_points, q, cap_threshold, tol,
                                     trace, start_radius=sol.ball.radius)
    if status == "capped":
        return AddOutcome(kind="capped", solution=None, iterations=iterations)
    new_sol = ws.export(points=new_points, iterations=iterations)
    return AddOutcome(kind="updated", solution=new_sol, iterations=iterations)


def child_radius_upper(sol: MebSolution, q) -> float:
    """Upper bound on the grown radius after adding point q: half of
    (distance from q to the center plus the current radius)."""
    qv = np.asarray(q, dtype=np.float64)
    if qv.shape != sol.ball.center.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {qv.shape} vs {sol.ball.center.shape}")
    d = float(np.linalg.norm(qv - sol.ball.center))
    return 0.5 * (d + sol.ball.radius)


def child_radius_lower(ps: PointSet, path_ids: Sequence[int], q) -> float:
    """Lower bound on the grown radius when q is uncovered: half the largest
    distance from q to any path point (q must end on the boundary)."""
    ids = list(path_ids)
    if not ids:
        raise ValueError("path must be nonempty")
    qv = np.asarray(q, dtype=np.float64)
    if qv.shape[0] != ps.n:
        raise DimensionMismatchError(f"dimension mismatch: {qv.shape[0]} vs {ps.n}")
    d = np.linalg.norm(ps.coords[ids] - qv, axis=1)
    return 0.5 * float(d.max())
