"""Floating-point geometry of disks, sphere intersections and poles.

All operations are pure functions of immutable values; a single tolerance
parameter (absolute + relative, see :func:`eff_tol`) is threaded through
every membership and classification test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

DEFAULT_TOL = 1e-9

SOUTH = "south"
NORTH = "north"


class GeometryError(ValueError):
    """Base class for geometric errors."""


class DimensionMismatch(GeometryError):
    pass


class FullSphereError(GeometryError):
    """Two identical disks: their boundary intersection is the whole sphere.

    The caller must treat the two disks as one (deduplicate, see
    :func:`preprocess`).
    """


class DegenerateConfiguration(GeometryError):
    """Affinely dependent centers: the Gram system is rank deficient."""

    def __init__(self, message: str, rank: int | None = None):
        super().__init__(message)
        self.rank = rank


def eff_tol(tol: float, scale: float) -> float:
    """Absolute + relative tolerance for a quantity of the given scale."""
    return tol * (1.0 + abs(scale))


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    """Closed ball in R^d: center and positive radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if c.ndim != 1 or c.size < 1:
            raise GeometryError("disk center must be a 1-d vector")
        if not np.all(np.isfinite(c)):
            raise GeometryError("disk center must be finite")
        r = float(self.radius)
        if not (r > 0.0) or not math.isfinite(r):
            raise GeometryError(f"disk radius must be positive, got {r}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @property
    def dimension(self) -> int:
        return self.center.size


@dataclass(frozen=True)
class DiskSystem:
    """Finite ordered collection of disks sharing one ambient dimension."""

    disks: tuple[Disk, ...]
    centers: np.ndarray = field(init=False, repr=False, compare=False)
    radii: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        disks = tuple(self.disks)
        if len(disks) < 1:
            raise GeometryError("a disk system needs at least one disk")
        d = disks[0].dimension
        for disk in disks:
            if disk.dimension != d:
                raise DimensionMismatch(
                    f"all disks must share one dimension, got {disk.dimension} != {d}"
                )
        object.__setattr__(self, "disks", disks)
        object.__setattr__(self, "centers", np.array([k.center for k in disks]))
        object.__setattr__(self, "radii", np.array([k.radius for k in disks]))

    @classmethod
    def from_arrays(cls, centers, radii) -> "DiskSystem":
        centers = np.asarray(centers, dtype=float)
        radii = np.asarray(radii, dtype=float)
        return cls(tuple(Disk(c, r) for c, r in zip(centers, radii)))

    @property
    def dimension(self) -> int:
        return self.disks[0].dimension

    def __len__(self) -> int:
        return len(self.disks)

    def __getitem__(self, i: int) -> Disk:
        return self.disks[i]

    def subsystem(self, indices) -> "DiskSystem":
        return DiskSystem(tuple(self.disks[i] for i in indices))


@dataclass(frozen=True)
class ISphere:
    """Sphere intersected with an affine subspace.

    ``normals`` (k x d, linearly independent rows) span the orthogonal
    complement of the affine hull; they are stored unnormalized.  A zero
    radius encodes the single-point case.
    """

    center: np.ndarray
    radius: float
    normals: np.ndarray
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        n = np.asarray(self.normals, dtype=float)
        if n.ndim != 2 or n.shape[1] != c.size:
            raise GeometryError("normals must be a k x d matrix")
        if not (self.radius >= 0.0):
            raise GeometryError("sphere radius must be nonnegative")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "normals", n)
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def dimension(self) -> int:
        return self.center.size

    @property
    def codimension(self) -> int:
        return self.normals.shape[0]

    def tangent_basis(self) -> np.ndarray:
        """Orthonormal basis of the tangent directions (rows)."""
        k, d = self.normals.shape
        _, _, vh = np.linalg.svd(self.normals, full_matrices=True)
        return vh[k:]


# Tagged union for the boundary intersection of a disk subsystem.


@dataclass(frozen=True)
class EmptyIntersection:
    pass


@dataclass(frozen=True)
class PointIntersection:
    point: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))


@dataclass(frozen=True)
class SphereIntersection:
    sphere: ISphere


IntersectionKind = EmptyIntersection | PointIntersection | SphereIntersection


@dataclass(frozen=True)
class Pole:
    """Point of an i-sphere extremal in one coordinate axis (0-based)."""

    point: np.ndarray
    axis: int
    orientation: str  # SOUTH | NORTH
    degenerate_axis: bool = False

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        if self.orientation not in (SOUTH, NORTH):
            raise GeometryError(f"bad orientation {self.orientation!r}")


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


def contains(disk: Disk, p, tol: float = DEFAULT_TOL) -> bool:
    """Closed membership test with tolerance: ||p - c|| <= r + tol."""
    p = np.asarray(p, dtype=float)
    if p.shape != disk.center.shape:
        raise DimensionMismatch(
            f"point dimension {p.size} != disk dimension {disk.dimension}"
        )
    if tol < 0:
        raise GeometryError("tol must be nonnegative")
    return float(np.linalg.norm(p - disk.center)) <= disk.radius + eff_tol(tol, disk.radius)


def contains_all(system: DiskSystem, p, tol: float = DEFAULT_TOL) -> bool:
    """True iff p lies in every disk of the system (with tolerance)."""
    p = np.asarray(p, dtype=float)
    dist = np.linalg.norm(system.centers - p, axis=1)
    return bool(np.all(dist <= system.radii + tol * (1.0 + system.radii)))


def contains_all_batch(system: DiskSystem, points: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized contains_all over an (n, d) array of points."""
    diff = points[:, None, :] - system.centers[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    return np.all(dist <= system.radii + tol * (1.0 + system.radii), axis=1)


# ---------------------------------------------------------------------------
# Boundary intersections
# ---------------------------------------------------------------------------


def intersect_two_spheres(d1: Disk, d2: Disk, tol: float = DEFAULT_TOL) -> IntersectionKind:
    """Intersection of the two boundary spheres of d1 and d2.

    Returns the (d-1)-sphere with center on the segment c1-c2, radius from
    Heron's formula and single normal c2 - c1; tangency collapses to a
    point, separation or strict containment to the empty set.
    """
    c1, r1 = d1.center, d1.radius
    c2, r2 = d2.center, d2.radius
    if c1.size != c2.size:
        raise DimensionMismatch("disk dimensions differ")
    diff = c2 - c1
    dist = float(np.linalg.norm(diff))
    scale = eff_tol(tol, r1 + r2 + dist)
    if dist <= scale:
        if abs(r1 - r2) <= scale:
            raise FullSphereError("identical disks: boundary intersection is the full sphere")
        return EmptyIntersection()
    if dist > r1 + r2 + scale or dist < abs(r1 - r2) - scale:
        return EmptyIntersection()
    t = 0.5 + (r1 * r1 - r2 * r2) / (2.0 * dist * dist)
    center = c1 + t * diff
    if abs(dist - (r1 + r2)) <= scale or abs(dist - abs(r1 - r2)) <= scale:
        return PointIntersection(center)
    s = 0.5 * (dist + r1 + r2)
    radius = 2.0 * math.sqrt(max(s * (s - dist) * (s - r1) * (s - r2), 0.0)) / dist
    return SphereIntersection(ISphere(center, radius, diff[None, :]))


def reduce_sphere_system(M: DiskSystem, tol: float = DEFAULT_TOL) -> IntersectionKind:
    """Common boundary intersection of 2 <= m <= d+1 disk boundaries.

    Solves the Gram system for the center in the affine hull of the
    centers (base point: last disk), recovers the squared radius as
    r^2 = r_k^2 - ||c - c_k||^2, and classifies by the sign of r^2.
    Normals are n_j = c_j - c_m, unnormalized.
    """
    m, d = len(M), M.dimension
    if not 2 <= m <= d + 1:
        raise GeometryError(f"need 2 <= m <= d+1 disks, got m={m}, d={d}")
    base = M.centers[-1]
    N = M.centers[:-1] - base  # (m-1, d)
    gram = N @ N.T
    rhs = 0.5 * (M.radii[-1] ** 2 + np.sum(N * N, axis=1) - M.radii[:-1] ** 2)
    sv = np.linalg.svd(gram, compute_uv=False)
    if sv[0] <= 0.0 or sv[-1] <= 1e-12 * sv[0]:
        rank = int(np.sum(sv > 1e-12 * max(sv[0], 1e-300)))
        raise DegenerateConfiguration(
            f"affinely dependent centers (Gram rank {rank} < {m - 1})", rank=rank
        )
    lam = np.linalg.solve(gram, rhs)
    center = lam @ N + base
    r2_all = M.radii**2 - np.sum((center - M.centers) ** 2, axis=1)
    r2 = float(np.mean(r2_all))
    scale = 1.0 + float(np.max(M.radii))
    tol_sq = tol * scale * scale
    if r2 < -tol_sq:
        return EmptyIntersection()
    if r2 <= tol_sq or m - 1 == d:
        # m-1 = d normals leave a zero-dimensional affine hull: either the
        # base point lies on every sphere (a single point) or nothing does.
        if r2 <= tol_sq:
            return PointIntersection(center)
        return EmptyIntersection()
    return SphereIntersection(ISphere(center, math.sqrt(r2), N))


# ---------------------------------------------------------------------------
# Poles
# ---------------------------------------------------------------------------


def _degenerate_pair(sphere: ISphere, q: int) -> tuple[Pole, Pole]:
    # pi_q is constant on the sphere; report an arbitrary on-sphere sample.
    if sphere.radius == 0.0:
        point = sphere.center
    else:
        tangent = sphere.tangent_basis()
        if tangent.shape[0] == 0:
            point = sphere.center
        else:
            point = sphere.center + sphere.radius * tangent[0]
    return (
        Pole(point, q, SOUTH, degenerate_axis=True),
        Pole(point, q, NORTH, degenerate_axis=True),
    )


def _pole_pair(sphere: ISphere, q: int, direction: np.ndarray, tol: float) -> tuple[Pole, Pole]:
    norm = float(np.linalg.norm(direction))
    if norm <= eff_tol(tol, 1.0):
        return _degenerate_pair(sphere, q)
    unit = direction / norm
    c, r = sphere.center, sphere.radius
    return (
        Pole(c - r * unit, q, SOUTH),
        Pole(c + r * unit, q, NORTH),
    )


def poles_codim1(sphere: ISphere, q: int, tol: float = DEFAULT_TOL) -> tuple[Pole, Pole]:
    """e_q-poles of a sphere with exactly one normal.

    The tangent direction is the projection of e_q onto the hyperplane,
    v = e_q - (pi_q(N)/||N||^2) N; the poles are c +/- r v/||v||.
    """
    d = sphere.dimension
    if not 0 <= q < d:
        raise GeometryError(f"axis {q} out of range for dimension {d}")
    if sphere.codimension != 1:
        raise GeometryError("poles_codim1 requires exactly one normal")
    n = sphere.normals[0]
    v = -(n[q] / float(n @ n)) * n
    v[q] += 1.0
    return _pole_pair(sphere, q, v, tol)


def poles_general(sphere: ISphere, q: int, tol: float = DEFAULT_TOL) -> tuple[Pole, Pole]:
    """e_q-poles of an i-sphere with k linearly independent normals.

    Solves the Gram system A w = -N e_q and moves along
    u = e_q + sum_j w_j n_j, the projection of e_q onto the tangent space;
    the poles are c +/- r u/||u||.  When e_q lies in the span of the
    normals the axis is degenerate and pi_q is constant on the sphere.
    """
    d = sphere.dimension
    if not 0 <= q < d:
        raise GeometryError(f"axis {q} out of range for dimension {d}")
    N = sphere.normals
    gram = N @ N.T
    sv = np.linalg.svd(gram, compute_uv=False)
    if sv[0] <= 0.0 or sv[-1] <= 1e-12 * sv[0]:
        rank = int(np.sum(sv > 1e-12 * max(sv[0], 1e-300)))
        raise DegenerateConfiguration("normals are linearly dependent", rank=rank)
    w = np.linalg.solve(gram, -N[:, q])
    u = w @ N
    u[q] += 1.0
    return _pole_pair(sphere, q, u, tol)


def pole_directions(sphere: ISphere) -> np.ndarray:
    """Tangent projections of all basis vectors at once (d x d matrix).

    Column q is the direction from the center toward the e_q-north pole
    (unnormalized); a near-zero column marks a degenerate axis.
    """
    N = sphere.normals
    gram = N @ N.T
    sv = np.linalg.svd(gram, compute_uv=False)
    if sv[0] <= 0.0 or sv[-1] <= 1e-12 * sv[0]:
        rank = int(np.sum(sv > 1e-12 * max(sv[0], 1e-300)))
        raise DegenerateConfiguration("normals are linearly dependent", rank=rank)
    proj = np.eye(sphere.dimension) - N.T @ np.linalg.solve(gram, N)
    return proj


def boundary_poles(disk: Disk, q: int) -> tuple[Pole, Pole]:
    """e_q-poles of a full disk boundary: c -/+ r e_q."""
    d = disk.dimension
    if not 0 <= q < d:
        raise GeometryError(f"axis {q} out of range for dimension {d}")
    offset = np.zeros(d)
    offset[q] = disk.radius
    return (
        Pole(disk.center - offset, q, SOUTH),
        Pole(disk.center + offset, q, NORTH),
    )


# ---------------------------------------------------------------------------
# Preprocessing (dominance / dedup) and subset enumeration support
# ---------------------------------------------------------------------------


def preprocess(M: DiskSystem, tol: float = DEFAULT_TOL) -> tuple[DiskSystem, tuple[int, ...]]:
    """Drop every disk that entirely contains another disk of the system.

    Identical disks deduplicate (first occurrence kept).  The intersection
    set is unchanged.  Returns the reduced system and the kept indices.
    """
    m = len(M)
    drop = [False] * m
    for i in range(m):
        for j in range(m):
            if i == j or drop[j]:
                continue
            dist = float(np.linalg.norm(M.centers[i] - M.centers[j]))
            scale = eff_tol(tol, M.radii[i] + M.radii[j])
            identical = dist <= scale and abs(M.radii[i] - M.radii[j]) <= scale
            if identical:
                if i < j:
                    drop[j] = True
            elif dist + M.radii[i] <= M.radii[j] + scale:
                # D_i inside D_j: D_j is redundant for the intersection.
                drop[j] = True
    kept = tuple(i for i in range(m) if not drop[i])
    return M.subsystem(kept), kept


def _jittered(M: DiskSystem, seed: int) -> DiskSystem:
    span = float(np.max(np.ptp(M.centers, axis=0))) + float(np.max(M.radii))
    rng = np.random.default_rng(seed)
    centers = M.centers + 1e-7 * span * rng.standard_normal(M.centers.shape)
    return DiskSystem.from_arrays(centers, M.radii)


def subset_boundary(
    M: DiskSystem, indices: tuple[int, ...], tol: float = DEFAULT_TOL
) -> tuple[IntersectionKind, bool]:
    """Boundary intersection of a disk subset with degeneracy fallback.

    On an affinely dependent subset, centers are jittered by 1e-7 of the
    system diameter and the computation retried; the returned flag marks
    that the result came from a perturbed configuration.  Identical disks
    (full-sphere case) are reported as empty here: their sphere is already
    enumerated as a single disk boundary.
    """
    sub = M.subsystem(indices)
    try:
        return reduce_sphere_system(sub, tol), False
    except DegenerateConfiguration:
        pass
    except FullSphereError:
        return EmptyIntersection(), False
    try:
        jit = _jittered(sub, seed=hash(indices) & 0x7FFFFFFF)
        return reduce_sphere_system(jit, tol), True
    except (DegenerateConfiguration, FullSphereError):
        return EmptyIntersection(), True


def candidate_poles(M: DiskSystem, tol: float = DEFAULT_TOL):
    """Enumerate every pole candidate of the i-spheres of a disk system.

    Yields ``(subset, entries, degenerate)`` in canonical order (subset
    size ascending, subsets lexicographic); ``entries`` is a list of
    :class:`Pole`.  A single-point boundary intersection contributes a
    pole for every axis and orientation.  Subset size is capped at
    min(m, d+1): larger boundary intersections are generically empty and
    Helly's theorem covers decision completeness.
    """
    m, d = len(M), M.dimension
    for i in range(m):
        entries = []
        for q in range(d):
            entries.extend(boundary_poles(M[i], q))
        yield (i,), entries, False
    for k in range(2, min(m, d + 1) + 1):
        for subset in combinations(range(m), k):
            kind, degenerate = subset_boundary(M, subset, tol)
            if isinstance(kind, EmptyIntersection):
                continue
            entries = []
            if isinstance(kind, PointIntersection):
                for q in range(d):
                    entries.append(Pole(kind.point, q, SOUTH))
                    entries.append(Pole(kind.point, q, NORTH))
            else:
                sphere = kind.sphere
                try:
                    proj = pole_directions(sphere)
                except DegenerateConfiguration:
                    continue
                for q in range(d):
                    entries.extend(_pole_pair(sphere, q, proj[:, q].copy(), tol))
            yield subset, entries, degenerate
