"""Brute-force ground truth for intersection decisions, scales and AABBs.

Test-suite oracle only: multi-round grid refinement over convex
objectives, never used by the production algorithms.  Intended for d <= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .aabb import Box
from .geometry import DiskSystem


@dataclass(frozen=True)
class OracleConfig:
    initial_grid: int = 64
    refinement_rounds: int = 6
    shrink_factor: float = 4.0

    def __post_init__(self):
        if self.initial_grid < 2 or self.refinement_rounds < 1 or self.shrink_factor <= 1:
            raise ValueError("oracle config values must be positive (grid >= 2, shrink > 1)")


class MinimaxResult(NamedTuple):
    value: float
    point: np.ndarray
    slack: float
    history: tuple[float, ...]


def _grid_refine(
    objective,
    lower,
    upper,
    cfg: OracleConfig,
    lipschitz: float,
    target_step: float | None = None,
    max_rounds: int = 100,
):
    """Minimize a convex Lipschitz objective over a box by grid refinement.

    objective maps an (n, k) array of points to n values.  Each round the
    window shrinks to the bounding box of the grid points whose value is
    within half a Lipschitz cell diagonal of the round minimum; for a convex
    objective that box is certified to contain the true minimizer, so the
    final value is within lipschitz * ||final step|| / 2 of the minimum.
    ``shrink_factor`` caps the per-round shrink.  Returns
    (best value, best point, final per-axis step, per-round best values).

    With ``target_step`` set, refinement continues past the configured
    round count until the largest per-axis step drops below it (bounded by
    ``max_rounds``).
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    k = lower.size
    if k == 0:
        value = float(objective(np.zeros((1, 0)))[0])
        return value, np.zeros(0), np.zeros(0), (value,)
    n = cfg.initial_grid
    best_value = math.inf
    best_point = 0.5 * (lower + upper)
    history = []
    lo, hi = lower.copy(), upper.copy()
    step = (hi - lo) / max(n - 1, 1)
    rounds = 0
    while True:
        axes = [np.linspace(lo[i], hi[i], n) for i in range(k)]
        mesh = np.meshgrid(*axes, indexing="ij")
        points = np.stack([m.ravel() for m in mesh], axis=1)
        values = objective(points)
        idx = int(np.argmin(values))
        if values[idx] < best_value:
            best_value = float(values[idx])
            best_point = points[idx]
        history.append(best_value)
        rounds += 1
        if rounds >= cfg.refinement_rounds and (
            target_step is None
            or float(np.max(step, initial=0.0)) <= target_step
            or rounds >= max_rounds
        ):
            break
        # The true minimizer is within half a cell diagonal of its nearest
        # grid point, so the sublevel set below min + L*halfdiag contains it.
        margin = 0.5 * lipschitz * float(np.linalg.norm(step))
        near = points[values <= float(values[idx]) + margin]
        new_lo = np.maximum(near.min(axis=0) - step, lo)
        new_hi = np.minimum(near.max(axis=0) + step, hi)
        floor = (hi - lo) / cfg.shrink_factor  # cap the per-round shrink
        mid = 0.5 * (new_lo + new_hi)
        new_lo = np.minimum(new_lo, mid - 0.5 * floor)
        new_hi = np.maximum(new_hi, mid + 0.5 * floor)
        lo = np.maximum(new_lo, lower)
        hi = np.minimum(new_hi, upper)
        step = (hi - lo) / max(n - 1, 1)
    return best_value, best_point, step, tuple(history)


def oracle_minimax(M: DiskSystem, cfg: OracleConfig | None = None) -> MinimaxResult:
    """min over x of max_i ||x - c_i|| / r_i by grid refinement.

    The objective is convex and its minimizer lies in the convex hull of
    the centers, so refinement over the centers' bounding box converges.
    ``slack`` bounds |value - true minimum| via the Lipschitz constant
    max_i 1/r_i times the final grid cell diagonal.
    """
    cfg = cfg or OracleConfig()
    centers, radii = M.centers, M.radii

    def objective(points):
        diff = points[:, None, :] - centers[None, :, :]
        return np.max(np.linalg.norm(diff, axis=2) / radii, axis=1)

    lower = centers.min(axis=0)
    upper = centers.max(axis=0)
    if np.all(upper - lower == 0.0):
        point = centers[0].copy()
        value = float(objective(point[None, :])[0])
        return MinimaxResult(value, point, 0.0, (value,))
    lipschitz = float(np.max(1.0 / radii))
    value, point, step, history = _grid_refine(objective, lower, upper, cfg, lipschitz)
    slack = 0.5 * lipschitz * float(np.linalg.norm(step))
    return MinimaxResult(value, point, slack, history)


def oracle_intersects(M: DiskSystem, cfg: OracleConfig | None = None) -> bool:
    """True iff the minimax value is at most 1 + slack.

    The slack absorbs the final grid step so boundary-tight systems are
    not misreported; callers should treat |value - 1| <= slack as
    indeterminate (use :func:`oracle_minimax` directly to read the band).
    """
    result = oracle_minimax(M, cfg)
    return result.value <= 1.0 + result.slack


def _slice_gap(M: DiskSystem, axis: int, cfg: OracleConfig):
    """phi(t) = min over the hyperplane x_axis = t of max_i (||x-c_i|| - r_i).

    Convex in t; nonpositive iff the hyperplane meets the intersection.
    """
    centers, radii = M.centers, M.radii
    others = [i for i in range(M.dimension) if i != axis]
    flat_centers = centers[:, others]
    span = float(np.max(M.radii)) + float(np.max(np.ptp(centers, axis=0), initial=0.0))
    # Deeper refinement than the top-level config: feasibility thresholds
    # near tangency need gap values resolved to ~1e-9 of the system scale.
    target = 1e-10 * (1.0 + span)
    inner = OracleConfig(
        initial_grid=max(cfg.initial_grid // 2, 17),
        refinement_rounds=max(cfg.refinement_rounds, 14),
        shrink_factor=cfg.shrink_factor,
    )

    def phi(t: float) -> float:
        h2 = (t - centers[:, axis]) ** 2

        def objective(points):
            diff = points[:, None, :] - flat_centers[None, :, :]
            dist = np.sqrt(np.sum(diff * diff, axis=2) + h2[None, :])
            return np.max(dist - radii, axis=1)

        if not others:
            return float(objective(np.zeros((1, 0)))[0])
        lower = flat_centers.min(axis=0)
        upper = flat_centers.max(axis=0)
        value, _, _, _ = _grid_refine(
            objective, lower, upper, inner, lipschitz=1.0, target_step=target
        )
        return value

    return phi


def oracle_aabb(M: DiskSystem, cfg: OracleConfig | None = None) -> Box | None:
    """Per-axis extremes of the intersection set by slice bisection.

    For each axis the hyperplane gap phi(t) (see :func:`_slice_gap`) is
    minimized by 1-d grid refinement to locate a feasible slice, then the
    extreme slice positions are bisected to the grid-step tolerance.
    Returns None when no axis admits a feasible slice.
    """
    cfg = cfg or OracleConfig()
    d = M.dimension
    scale = 1.0 + float(np.max(M.radii)) + float(np.max(np.ptp(M.centers, axis=0), initial=0.0))
    feas_eps = 1e-8 * scale
    bisect_tol = 1e-6 * scale
    intervals = np.empty((d, 2))
    for q in range(d):
        phi = _slice_gap(M, q, cfg)
        lo_all = float(np.min(M.centers[:, q] - M.radii))
        hi_all = float(np.max(M.centers[:, q] + M.radii))
        inner_lo = float(np.max(M.centers[:, q] - M.radii))
        inner_hi = float(np.min(M.centers[:, q] + M.radii))
        if inner_hi < inner_lo:
            return None
        value, point, _, _ = _grid_refine(
            lambda ts: np.array([phi(float(t)) for t in ts[:, 0]]),
            [inner_lo], [inner_hi],
            OracleConfig(33, max(cfg.refinement_rounds, 10), cfg.shrink_factor),
            lipschitz=1.0,
            target_step=1e-7 * scale,
        )
        if value > feas_eps:
            return None
        t_feas = float(point[0])
        accept = max(feas_eps, value + feas_eps)

        def support(t_infeasible: float, t_ok: float) -> float:
            lo, hi = t_infeasible, t_ok
            while abs(hi - lo) > bisect_tol:
                mid = 0.5 * (lo + hi)
                if phi(mid) <= accept:
                    hi = mid
                else:
                    lo = mid
            return hi

        intervals[q, 0] = support(lo_all, t_feas) if phi(lo_all) > accept else lo_all
        intervals[q, 1] = support(hi_all, t_feas) if phi(hi_all) > accept else hi_all
    return Box(intervals)
