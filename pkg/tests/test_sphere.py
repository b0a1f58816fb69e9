"""Sphere primitives: measure constants, distances, samplers."""

import math

import numpy as np
import pytest

from sphereplanks.sphere import (SphericalCap, cap_area, geodesic_distance,
                                 make_stream, sample_uniform_cap,
                                 sample_uniform_sphere, sphere_area,
                                 substreams)


def test_sphere_area_closed_forms():
    assert sphere_area(1) == pytest.approx(2 * math.pi, abs=1e-12)
    assert sphere_area(2) == pytest.approx(4 * math.pi, abs=1e-12)
    assert sphere_area(3) == pytest.approx(2 * math.pi ** 2, abs=1e-12)


def test_sphere_area_rejects_bad_dimension():
    with pytest.raises(ValueError):
        sphere_area(0)


@pytest.mark.parametrize("n", [2, 3])
def test_sphere_area_matches_surface_integration(n):
    # Full cap of radius pi integrates the surface element over the sphere.
    assert cap_area(n, math.pi) == pytest.approx(sphere_area(n), abs=1e-9)


def test_geodesic_distance_examples():
    x = np.array([1.0, 0.0, 0.0])
    assert geodesic_distance(x, x) == 0.0
    assert geodesic_distance(x, -x) == pytest.approx(math.pi, abs=1e-15)
    y = np.array([0.0, 1.0, 0.0])
    assert geodesic_distance(x, y) == pytest.approx(math.pi / 2, abs=1e-15)


def test_geodesic_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        geodesic_distance(np.array([1.0, 0.0]), np.array([1.0, 0.0, 0.0]))


def test_geodesic_distance_symmetry_and_triangle():
    rng = make_stream(42)
    for _ in range(200):
        x, y, z = sample_uniform_sphere(3, rng, size=3)
        assert geodesic_distance(x, y) == pytest.approx(
            geodesic_distance(y, x), abs=1e-12)
        assert geodesic_distance(x, z) <= \
            geodesic_distance(x, y) + geodesic_distance(y, z) + 1e-12


def test_uniform_sphere_norms_and_symmetry():
    rng = make_stream(0)
    pts = sample_uniform_sphere(2, rng, size=1_000_000)
    assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 1.0)) < 1e-12
    # Fixed hemisphere hit fraction.
    frac = np.mean(pts[:, 0] >= 0.0)
    assert abs(frac - 0.5) <= 3 * 0.5 / 1e3
    # Coordinate means vanish at the CLT scale.
    assert np.max(np.abs(pts.mean(axis=0))) <= 3.0 / 1e3


def test_cap_sampler_zero_radius_is_center():
    cap = SphericalCap(center=np.array([0.0, 0.0, 1.0]), radius=0.0)
    pts = sample_uniform_cap(cap, make_stream(1), size=5)
    assert np.all(pts == cap.center)


def test_cap_sampler_stays_in_cap():
    cap = SphericalCap(center=np.array([0.0, 0.0, 1.0]),
                       radius=math.pi / 2)
    pts = sample_uniform_cap(cap, make_stream(2), size=200_000)
    assert np.all(geodesic_distance(pts, cap.center) <= math.pi / 2 + 1e-12)


def test_cap_sampler_subcap_fraction():
    # Sub-cap of radius pi/4 inside a hemisphere on S^2: area ratio
    # (1 - cos(pi/4)) / 1.
    n_samp = 1_000_000
    cap = SphericalCap(center=np.array([0.0, 0.0, 1.0]),
                       radius=math.pi / 2)
    pts = sample_uniform_cap(cap, make_stream(3), size=n_samp)
    frac = np.mean(geodesic_distance(pts, cap.center) <= math.pi / 4)
    expect = 1.0 - math.cos(math.pi / 4)
    stderr = math.sqrt(expect * (1 - expect) / n_samp)
    assert abs(frac - expect) <= 3 * stderr


@pytest.mark.parametrize("n,radius,test_radius", [
    (2, 2.0, 1.0),
    (3, math.pi, 1.3),
])
def test_cap_sampler_matches_cap_area(n, radius, test_radius):
    n_samp = 400_000
    center = np.zeros(n + 1)
    center[0] = 1.0
    cap = SphericalCap(center=center, radius=radius)
    pts = sample_uniform_cap(cap, make_stream(4), size=n_samp)
    frac = np.mean(geodesic_distance(pts, center) <= test_radius)
    expect = cap_area(n, test_radius) / cap_area(n, radius)
    stderr = math.sqrt(expect * (1 - expect) / n_samp)
    assert abs(frac - expect) <= 3 * stderr


def test_full_cap_equals_sphere_law():
    n_samp = 200_000
    cap = SphericalCap(center=np.array([0.0, 0.0, 1.0]), radius=math.pi)
    pts = sample_uniform_cap(cap, make_stream(5), size=n_samp)
    frac = np.mean(pts[:, 2] >= 0.0)
    assert abs(frac - 0.5) <= 3 * 0.5 / math.sqrt(n_samp)


def test_streams_are_reproducible_and_independent():
    a = sample_uniform_sphere(2, make_stream(7), size=10)
    b = sample_uniform_sphere(2, make_stream(7), size=10)
    assert np.array_equal(a, b)
    s1, s2 = substreams(7, 2)
    x1 = sample_uniform_sphere(2, s1, size=10)
    x2 = sample_uniform_sphere(2, s2, size=10)
    assert not np.array_equal(x1, x2)
