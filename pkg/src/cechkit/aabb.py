"""Minimal axis-aligned bounding boxes of disk-system intersections."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    NORTH,
    SOUTH,
    Disk,
    DiskSystem,
    DimensionMismatch,
    EmptyIntersection,
    GeometryError,
    PointIntersection,
    SphereIntersection,
    candidate_poles,
    contains,
    contains_all_batch,
    eff_tol,
    intersect_two_spheres,
    poles_codim1,
)


@dataclass(frozen=True)
class Box:
    """Product of per-axis intervals [a_q, b_q].

    Degenerate (a_q = b_q) and inverted (a_q > b_q) intervals are both
    representable; an inverted interval certifies emptiness when produced
    by intersecting boxes.
    """

    intervals: np.ndarray
    degeneracy_warning: bool = field(default=False, compare=False)

    def __post_init__(self):
        iv = np.asarray(self.intervals, dtype=float)
        if iv.ndim != 2 or iv.shape[1] != 2:
            raise GeometryError("intervals must be a d x 2 array")
        object.__setattr__(self, "intervals", iv)

    @property
    def dimension(self) -> int:
        return self.intervals.shape[0]

    @property
    def lower(self) -> np.ndarray:
        return self.intervals[:, 0]

    @property
    def upper(self) -> np.ndarray:
        return self.intervals[:, 1]

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def is_proper(self, tol: float = 0.0) -> bool:
        return bool(np.all(self.upper - self.lower >= -tol))

    def is_inverted(self, tol: float = 0.0) -> bool:
        return bool(np.any(self.lower - self.upper > tol))

    def is_degenerate(self, tol: float = 0.0) -> bool:
        return self.is_proper(tol) and bool(np.any(np.abs(self.widths) <= tol))

    def contains_point(self, p, tol: float = 0.0) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= self.lower - tol) and np.all(p <= self.upper + tol))

    def expand(self, amount: float) -> "Box":
        iv = self.intervals.copy()
        iv[:, 0] -= amount
        iv[:, 1] += amount
        return Box(iv)


def aabb_two_disks(d1: Disk, d2: Disk, tol: float = DEFAULT_TOL) -> Box | None:
    """Minimal AABB of the intersection of two disks, or None when disjoint.

    Per axis: a disk pole c_j -/+ r_j e_i contained in the other disk gives
    the bound directly; otherwise the bound comes from the e_i-pole of the
    boundary sphere of the pair.
    """
    if d1.dimension != d2.dimension:
        raise DimensionMismatch("disk dimensions differ")
    d = d1.dimension
    dist = float(np.linalg.norm(d2.center - d1.center))
    if dist > d1.radius + d2.radius + eff_tol(tol, d1.radius + d2.radius + dist):
        return None
    border = None  # boundary intersection computed lazily

    def border_bound(q: int, orientation: str) -> float:
        nonlocal border
        if border is None:
            border = intersect_two_spheres(d1, d2, tol)
        if isinstance(border, PointIntersection):
            return float(border.point[q])
        if isinstance(border, SphereIntersection):
            south, north = poles_codim1(border.sphere, q, tol)
            pole = south if orientation == SOUTH else north
            return float(pole.point[q])
        raise GeometryError("intersecting disks with no boundary bound")  # pragma: no cover

    intervals = np.empty((d, 2))
    for q in range(d):
        for col, orientation, sign in ((0, SOUTH, -1.0), (1, NORTH, 1.0)):
            offset = np.zeros(d)
            offset[q] = sign
            p1 = d1.center + d1.radius * offset
            p2 = d2.center + d2.radius * offset
            if contains(d2, p1, tol):
                intervals[q, col] = p1[q]
            elif contains(d1, p2, tol):
                intervals[q, col] = p2[q]
            else:
                intervals[q, col] = border_bound(q, orientation)
    return Box(intervals)


def aabb_minimal(M: DiskSystem, tol: float = DEFAULT_TOL) -> Box | None:
    """Minimal AABB of the intersection of all disks of M, or None.

    Enumerates the poles of every i-sphere of the system, retains those
    contained in all m disks (with tolerance), and takes the per-axis
    envelope: lower bound from retained south poles, upper bound from
    retained north poles.  A single-point boundary intersection counts for
    every axis and orientation.
    """
    d = M.dimension
    lows: list[list[float]] = [[] for _ in range(d)]
    highs: list[list[float]] = [[] for _ in range(d)]
    all_points: list[np.ndarray] = []
    warn = False
    for _, entries, degenerate in candidate_poles(M, tol):
        warn = warn or degenerate
        if not entries:
            continue
        points = np.array([p.point for p in entries])
        inside = contains_all_batch(M, points, tol)
        for keep, pole in zip(inside, entries):
            if not keep:
                continue
            all_points.append(pole.point)
            if pole.orientation == SOUTH:
                lows[pole.axis].append(float(pole.point[pole.axis]))
            else:
                highs[pole.axis].append(float(pole.point[pole.axis]))
    if not all_points:
        return None
    stacked = np.array(all_points)
    intervals = np.empty((d, 2))
    for q in range(d):
        # A missing bucket can only happen in near-degenerate float
        # configurations; any retained point still bounds the box.
        intervals[q, 0] = min(lows[q]) if lows[q] else float(np.min(stacked[:, q]))
        intervals[q, 1] = max(highs[q]) if highs[q] else float(np.max(stacked[:, q]))
        if not lows[q] or not highs[q]:
            warn = True
    return Box(intervals, degeneracy_warning=warn)


def box_intersect(boxes: list[Box]) -> Box:
    """Per-axis intersection of boxes: [max of lowers, min of uppers].

    Inverted intervals are returned as data, never raised on.
    """
    if not boxes:
        raise GeometryError("box_intersect needs at least one box")
    d = boxes[0].dimension
    for b in boxes:
        if b.dimension != d:
            raise DimensionMismatch("boxes must share one dimension")
    lower = np.max(np.array([b.lower for b in boxes]), axis=0)
    upper = np.min(np.array([b.upper for b in boxes]), axis=0)
    warn = any(b.degeneracy_warning for b in boxes)
    return Box(np.column_stack([lower, upper]), degeneracy_warning=warn)
