"""Disk membership, sphere intersections, poles and preprocessing."""

import math

import numpy as np
import pytest

from cechkit import (
    DegenerateConfiguration,
    DimensionMismatch,
    Disk,
    DiskSystem,
    EmptyIntersection,
    FullSphereError,
    GeometryError,
    ISphere,
    PointIntersection,
    SphereIntersection,
    boundary_poles,
    contains,
    intersect_two_spheres,
    poles_codim1,
    poles_general,
    preprocess,
    reduce_sphere_system,
)

SQRT2 = math.sqrt(2.0)


def random_isphere(rng, d, k):
    """Random i-sphere with k independent normals in R^d."""
    while True:
        normals = rng.standard_normal((k, d))
        sv = np.linalg.svd(normals, compute_uv=False)
        if sv[-1] > 1e-3 * sv[0]:
            break
    center = rng.uniform(-2.0, 2.0, d)
    radius = float(rng.uniform(0.2, 3.0))
    return ISphere(center, radius, normals)


# ---------------------------------------------------------------------------
# contains
# ---------------------------------------------------------------------------


def test_contains_center():
    assert contains(Disk(np.zeros(2), 1.0), [0.0, 0.0], tol=0.0)


def test_contains_boundary_point_closed():
    assert contains(Disk(np.zeros(2), 1.0), [1.0, 0.0], tol=0.0)


def test_contains_tangency_point(tangent_point_system):
    assert contains(tangent_point_system[0], [3.0, 0.0, 0.0], tol=1e-9)


def test_contains_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        contains(Disk(np.zeros(2), 1.0), [0.0, 0.0, 0.0])


# ---------------------------------------------------------------------------
# intersect_two_spheres
# ---------------------------------------------------------------------------


def test_two_spheres_external_tangency():
    kind = intersect_two_spheres(Disk(np.zeros(2), 1.0), Disk(np.array([2.0, 0.0]), 1.0))
    assert isinstance(kind, PointIntersection)
    np.testing.assert_allclose(kind.point, [1.0, 0.0], atol=1e-12)


def test_two_spheres_lens_circle(tangent_point_system):
    kind = intersect_two_spheres(tangent_point_system[0], tangent_point_system[1])
    assert isinstance(kind, SphereIntersection)
    sphere = kind.sphere
    np.testing.assert_allclose(sphere.center, [4.0, 0.0, 0.0], atol=1e-12)
    assert sphere.radius == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(sphere.normals, [[0.0, -2.0, 0.0]], atol=1e-12)


def test_two_spheres_separated():
    kind = intersect_two_spheres(Disk(np.zeros(2), 1.0), Disk(np.array([5.0, 0.0]), 1.0))
    assert isinstance(kind, EmptyIntersection)


def test_two_spheres_internal_tangency():
    kind = intersect_two_spheres(Disk(np.zeros(2), 2.0), Disk(np.array([1.0, 0.0]), 1.0))
    assert isinstance(kind, PointIntersection)
    np.testing.assert_allclose(kind.point, [2.0, 0.0], atol=1e-12)


def test_two_spheres_concentric_identical_is_full_sphere():
    with pytest.raises(FullSphereError):
        intersect_two_spheres(Disk(np.zeros(2), 1.0), Disk(np.zeros(2), 1.0))


def test_two_spheres_concentric_distinct_radii_empty():
    kind = intersect_two_spheres(Disk(np.zeros(2), 1.0), Disk(np.zeros(2), 2.0))
    assert isinstance(kind, EmptyIntersection)


# ---------------------------------------------------------------------------
# poles_codim1
# ---------------------------------------------------------------------------


def test_poles_codim1_axis_orthogonal_to_normal():
    sphere = ISphere(np.array([4.0, 0.0, 0.0]), 1.0, np.array([[0.0, 2.0, 0.0]]))
    south, north = poles_codim1(sphere, 0)
    np.testing.assert_allclose(south.point, [3.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(north.point, [5.0, 0.0, 0.0], atol=1e-12)
    assert not south.degenerate_axis and not north.degenerate_axis


def test_poles_codim1_degenerate_axis():
    sphere = ISphere(np.array([4.0, 0.0, 0.0]), 1.0, np.array([[0.0, 2.0, 0.0]]))
    south, north = poles_codim1(sphere, 1)
    assert south.degenerate_axis and north.degenerate_axis
    assert south.point[1] == pytest.approx(0.0, abs=1e-12)
    assert north.point[1] == pytest.approx(0.0, abs=1e-12)


def test_poles_codim1_mixed_sign_direction():
    sphere = ISphere(np.zeros(2), 2.0, np.array([[1.0, 1.0]]))
    south, north = poles_codim1(sphere, 0)
    np.testing.assert_allclose(south.point, [-SQRT2, SQRT2], atol=1e-12)
    np.testing.assert_allclose(north.point, [SQRT2, -SQRT2], atol=1e-12)


def test_poles_codim1_component_magnitudes():
    # |pi_i(pole - c)| must equal r * sqrt(||N||^2 - N_i^2) / ||N|| for
    # i = q and r * |N_q N_i| / ||N||^2-style magnitudes for the rest.
    rng = np.random.default_rng(3)
    for _ in range(200):
        sphere = random_isphere(rng, int(rng.integers(2, 5)), 1)
        n = sphere.normals[0]
        nn = float(n @ n)
        for q in range(sphere.dimension):
            south, north = poles_codim1(sphere, q)
            if south.degenerate_axis:
                continue
            expected_q = sphere.radius * math.sqrt(max(nn - n[q] ** 2, 0.0) / nn)
            assert abs(north.point[q] - sphere.center[q]) == pytest.approx(
                expected_q, abs=1e-9 * (1 + sphere.radius)
            )
            assert abs(south.point[q] - sphere.center[q]) == pytest.approx(
                expected_q, abs=1e-9 * (1 + sphere.radius)
            )


def test_poles_codim1_axis_out_of_range():
    sphere = ISphere(np.zeros(2), 1.0, np.array([[1.0, 0.0]]))
    with pytest.raises(GeometryError):
        poles_codim1(sphere, 2)


# ---------------------------------------------------------------------------
# reduce_sphere_system
# ---------------------------------------------------------------------------


def test_reduce_single_point(tangent_point_system):
    kind = reduce_sphere_system(tangent_point_system)
    assert isinstance(kind, PointIntersection)
    np.testing.assert_allclose(kind.point, [3.0, 0.0, 0.0], atol=1e-7)


def test_reduce_two_disks_matches_two_spheres():
    M = DiskSystem.from_arrays([[0.0, 0.0], [2.0, 0.0]], [1.0, 1.0])
    kind = reduce_sphere_system(M)
    assert isinstance(kind, PointIntersection)
    np.testing.assert_allclose(kind.point, [1.0, 0.0], atol=1e-12)


def test_reduce_three_disk_circle():
    M = DiskSystem.from_arrays(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 1.0, 0.0]], [1.0, 1.0, 1.0]
    )
    kind = reduce_sphere_system(M)
    assert isinstance(kind, SphereIntersection)
    sphere = kind.sphere
    np.testing.assert_allclose(sphere.center, [0.5, 0.375, 0.0], atol=1e-12)
    assert sphere.radius**2 == pytest.approx(0.609375, abs=1e-12)
    # normals span the same plane as {(-1,0,0), (-0.5,-1,0)}
    reference = np.array([[-1.0, 0.0, 0.0], [-0.5, -1.0, 0.0]])
    stacked = np.vstack([sphere.normals, reference])
    assert np.linalg.matrix_rank(stacked, tol=1e-9) == 2


def test_reduce_collinear_centers_degenerate():
    M = DiskSystem.from_arrays(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]], [1.0, 1.0, 1.0]
    )
    with pytest.raises(DegenerateConfiguration) as exc:
        reduce_sphere_system(M)
    assert exc.value.rank == 1


def test_reduce_disjoint_empty():
    M = DiskSystem.from_arrays([[0.0, 0.0], [5.0, 0.0]], [1.0, 1.0])
    assert isinstance(reduce_sphere_system(M), EmptyIntersection)


def test_reduce_two_path_consistency():
    rng = np.random.default_rng(11)
    for _ in range(300):
        d = int(rng.integers(2, 5))
        c1, c2 = rng.uniform(0, 1, d), rng.uniform(0, 1, d)
        r1, r2 = rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0)
        d1, d2 = Disk(c1, float(r1)), Disk(c2, float(r2))
        try:
            direct = intersect_two_spheres(d1, d2)
        except FullSphereError:  # pragma: no cover - measure-zero event
            continue
        via_gram = reduce_sphere_system(DiskSystem((d1, d2)))
        assert type(direct) is type(via_gram)
        if isinstance(direct, SphereIntersection):
            np.testing.assert_allclose(
                direct.sphere.center, via_gram.sphere.center, atol=1e-9
            )
            assert direct.sphere.radius == pytest.approx(via_gram.sphere.radius, abs=1e-9)
        elif isinstance(direct, PointIntersection):
            np.testing.assert_allclose(direct.point, via_gram.point, atol=1e-9)


def test_reduce_boundary_consistency_and_radius_welldefined():
    rng = np.random.default_rng(13)
    found = 0
    while found < 100:
        d = int(rng.integers(2, 5))
        m = int(rng.integers(2, d + 1))
        M = DiskSystem.from_arrays(
            rng.uniform(0, 1, (m, d)), rng.uniform(0.6, 1.2, m)
        )
        try:
            kind = reduce_sphere_system(M)
        except DegenerateConfiguration:  # pragma: no cover
            continue
        if not isinstance(kind, SphereIntersection):
            continue
        found += 1
        sphere = kind.sphere
        # r^2 = r_k^2 - ||c - c_k||^2 must agree for every generator k
        r2 = M.radii**2 - np.sum((sphere.center - M.centers) ** 2, axis=1)
        assert np.all(np.abs(r2 - sphere.radius**2) <= 1e-8 * (1 + np.abs(r2)))
        # sampled points of the sphere lie on all generating boundaries
        tangent = sphere.tangent_basis()
        coeff = rng.standard_normal((50, tangent.shape[0]))
        coeff /= np.linalg.norm(coeff, axis=1, keepdims=True)
        samples = sphere.center + sphere.radius * coeff @ tangent
        for j in range(m):
            dist = np.linalg.norm(samples - M.centers[j], axis=1)
            assert np.all(np.abs(dist - M.radii[j]) <= 1e-8)


def test_reduce_rejects_bad_sizes():
    M = DiskSystem.from_arrays([[0.0, 0.0]], [1.0])
    with pytest.raises(GeometryError):
        reduce_sphere_system(M)
    M4 = DiskSystem.from_arrays(
        [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [1.0, 1.0, 1.0, 1.0]
    )
    with pytest.raises(GeometryError):
        reduce_sphere_system(M4)


# ---------------------------------------------------------------------------
# poles_general
# ---------------------------------------------------------------------------


def test_poles_general_three_disk_axis():
    M = DiskSystem.from_arrays(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 1.0, 0.0]], [1.0, 1.0, 1.0]
    )
    sphere = reduce_sphere_system(M).sphere
    south, north = poles_general(sphere, 2)
    r = math.sqrt(0.609375)
    np.testing.assert_allclose(south.point, [0.5, 0.375, -r], atol=1e-12)
    np.testing.assert_allclose(north.point, [0.5, 0.375, r], atol=1e-12)


def test_poles_general_matches_codim1_on_circle():
    sphere = ISphere(np.array([4.0, 0.0, 0.0]), 1.0, np.array([[0.0, 2.0, 0.0]]))
    south, north = poles_general(sphere, 0)
    np.testing.assert_allclose(south.point, [3.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(north.point, [5.0, 0.0, 0.0], atol=1e-12)


def test_poles_general_agrees_with_codim1_random():
    rng = np.random.default_rng(17)
    for _ in range(1000):
        sphere = random_isphere(rng, int(rng.integers(2, 5)), 1)
        q = int(rng.integers(0, sphere.dimension))
        s1, n1 = poles_codim1(sphere, q)
        s2, n2 = poles_general(sphere, q)
        assert s1.degenerate_axis == s2.degenerate_axis
        if s1.degenerate_axis:
            assert s1.point[q] == pytest.approx(s2.point[q], abs=1e-9)
        else:
            np.testing.assert_allclose(s1.point, s2.point, atol=1e-9)
            np.testing.assert_allclose(n1.point, n2.point, atol=1e-9)


def test_poles_membership_and_extremality():
    rng = np.random.default_rng(19)
    for _ in range(200):
        d = int(rng.integers(2, 5))
        k = int(rng.integers(1, d))
        sphere = random_isphere(rng, d, k)
        tangent = sphere.tangent_basis()
        coeff = rng.standard_normal((1000, tangent.shape[0]))
        coeff /= np.linalg.norm(coeff, axis=1, keepdims=True)
        samples = sphere.center + sphere.radius * coeff @ tangent
        for q in range(d):
            south, north = poles_general(sphere, q)
            for pole in (south, north):
                radial = float(np.linalg.norm(pole.point - sphere.center))
                assert abs(radial - sphere.radius) <= 1e-9 * (1 + sphere.radius)
                ortho = sphere.normals @ (pole.point - sphere.center)
                norms = np.linalg.norm(sphere.normals, axis=1)
                assert np.all(np.abs(ortho) <= 1e-9 * norms * max(sphere.radius, 1.0))
            if south.degenerate_axis:
                continue
            assert north.point[q] >= np.max(samples[:, q]) - 1e-9
            assert south.point[q] <= np.min(samples[:, q]) + 1e-9


def test_poles_general_dependent_normals():
    sphere = ISphere(np.zeros(3), 1.0, np.array([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]]))
    with pytest.raises(DegenerateConfiguration):
        poles_general(sphere, 1)


# ---------------------------------------------------------------------------
# boundary_poles
# ---------------------------------------------------------------------------


def test_boundary_poles_unit_disk():
    south, north = boundary_poles(Disk(np.zeros(2), 1.0), 0)
    np.testing.assert_allclose(south.point, [-1.0, 0.0])
    np.testing.assert_allclose(north.point, [1.0, 0.0])


def test_boundary_poles_offset_disk():
    south, north = boundary_poles(Disk(np.array([4.0, 1.0, 0.0]), SQRT2), 1)
    np.testing.assert_allclose(south.point, [4.0, 1.0 - SQRT2, 0.0])
    np.testing.assert_allclose(north.point, [4.0, 1.0 + SQRT2, 0.0])


def test_boundary_poles_big_disk():
    south, north = boundary_poles(Disk(np.zeros(3), 3.0), 2)
    np.testing.assert_allclose(south.point, [0.0, 0.0, -3.0])
    np.testing.assert_allclose(north.point, [0.0, 0.0, 3.0])


# ---------------------------------------------------------------------------
# Disk / DiskSystem validation and preprocessing
# ---------------------------------------------------------------------------


def test_disk_rejects_nonpositive_radius():
    with pytest.raises(GeometryError):
        Disk(np.zeros(2), 0.0)
    with pytest.raises(GeometryError):
        Disk(np.zeros(2), -1.0)


def test_disk_system_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatch):
        DiskSystem((Disk(np.zeros(2), 1.0), Disk(np.zeros(3), 1.0)))


def test_preprocess_drops_containing_disk():
    M = DiskSystem.from_arrays([[0.0, 0.0], [0.1, 0.0]], [1.0, 5.0])
    reduced, kept = preprocess(M)
    assert kept == (0,)
    assert len(reduced) == 1


def test_preprocess_dedups_identical():
    M = DiskSystem.from_arrays([[0.0, 0.0], [0.0, 0.0], [2.0, 0.0]], [1.0, 1.0, 1.0])
    reduced, kept = preprocess(M)
    assert kept == (0, 2)
    assert len(reduced) == 2


def test_preprocess_keeps_general_position():
    M = DiskSystem.from_arrays([[0.0, 0.0], [1.0, 0.0]], [1.0, 1.0])
    reduced, kept = preprocess(M)
    assert kept == (0, 1)
