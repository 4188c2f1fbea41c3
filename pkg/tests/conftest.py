"""Shared fixtures and random-system helpers for the test suite."""

import math

import numpy as np
import pytest

from cechkit import DiskSystem, cech_scale, rescale

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def tangent_point_system() -> DiskSystem:
    """Three 3-d disks whose common intersection is the single point (3,0,0)."""
    return DiskSystem.from_arrays(
        [[4.0, 1.0, 0.0], [4.0, -1.0, 0.0], [0.0, 0.0, 0.0]],
        [SQRT2, SQRT2, 3.0],
    )


@pytest.fixture
def empty_quad_system() -> DiskSystem:
    """Four 3-d disks with pairwise intersections but empty common part."""
    return DiskSystem.from_arrays(
        [[4.0, 1.0, 0.0], [4.0, -1.0, 0.0], [0.0, 1.0, 0.0], [3.0, 0.0, 1.0]],
        [SQRT2, SQRT2, math.sqrt(10.0), 0.9],
    )


@pytest.fixture
def equilateral_system() -> DiskSystem:
    """Three unit disks at the vertices of a unit-side equilateral triangle."""
    return DiskSystem.from_arrays(
        [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]],
        [1.0, 1.0, 1.0],
    )


def random_system(rng: np.random.Generator, d: int, m: int) -> DiskSystem:
    """Random system with centers in [0,1]^d and radii in [0.1, 1]."""
    return DiskSystem.from_arrays(rng.uniform(0.0, 1.0, (m, d)), rng.uniform(0.1, 1.0, m))


def intersecting_simplex_system(
    rng: np.random.Generator, d: int, margin: float = 1.1, eta: float = 1e-8
) -> DiskSystem:
    """Random (d+1)-disk system rescaled so the full intersection is nonempty.

    Rescaling by margin * cech scale guarantees a common point, hence all
    pairs intersect as well.
    """
    M = random_system(rng, d, d + 1)
    mu = cech_scale(M, eta).cech_scale
    return rescale(M, margin * mu)


def _near_regular_simplex(rng: np.random.Generator, d: int) -> DiskSystem:
    """d+1 disks near the vertices of a regular simplex with edge sqrt(2).

    Near-symmetric placement keeps the minimax optimum supported on all
    d+1 disks, so removing any one disk strictly lowers the Cech scale.
    """
    alpha = (1.0 - math.sqrt(d + 1.0)) / d
    vertices = np.vstack([np.eye(d), np.full(d, alpha)])
    centers = vertices + rng.uniform(-0.05, 0.05, (d + 1, d))
    radii = rng.uniform(0.9, 1.1, d + 1)
    return DiskSystem.from_arrays(centers, radii)


def hollow_simplex_system(
    rng: np.random.Generator, d: int, eta: float = 1e-8, max_tries: int = 200
) -> DiskSystem:
    """Random (d+1)-disk system with empty full intersection but every
    leave-one-out subsystem intersecting.

    Draws near-regular simplex systems and rescales to the midpoint
    between the largest leave-one-out Cech scale and the full Cech scale;
    regenerates when that gap is not comfortably wider than the bisection
    precision (the optimum must be supported on all d+1 disks).
    """
    for _ in range(max_tries):
        M = _near_regular_simplex(rng, d)
        mu_full = cech_scale(M, eta).cech_scale
        mu_loo = max(
            cech_scale(M.subsystem([i for i in range(d + 1) if i != j]), eta).cech_scale
            for j in range(d + 1)
        )
        gap = mu_full - mu_loo
        if gap > 1e-3 * mu_full:
            return rescale(M, mu_loo + 0.5 * gap)
    raise RuntimeError("could not build a hollow simplex system")  # pragma: no cover
