"""Enclosing balls, spherical images, the hemisphere average C(R, f), and
the vertex-average inequality."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from sphereplanks import (check_7_1, constant_C, constant_weight,
                          make_simplex, make_stream, min_uf_search,
                          normal_cone_membership, random_simplex,
                          regular_triangle, sample_uniform_sphere,
                          segment_simplex, smallest_enclosing_ball,
                          spherical_weight, uf, uf_lower_bound)
from sphereplanks.gnomonic import EuclideanPolytope
from sphereplanks.linhart import (random_kb_instance, sample_spherical_image,
                                  uf_via_images)


# ---------------------------------------------------------------------------
# Smallest enclosing ball
# ---------------------------------------------------------------------------

def test_seb_single_point():
    c, r = smallest_enclosing_ball(np.array([[2.0, 3.0]]))
    assert np.allclose(c, [2.0, 3.0]) and r == 0.0


def test_seb_antipodal_pair():
    c, r = smallest_enclosing_ball(np.array([[1.0, 0.0], [-1.0, 0.0]]))
    assert np.allclose(c, 0.0, atol=1e-12)
    assert r == pytest.approx(1.0, abs=1e-12)


def test_seb_equilateral_triangle():
    # Side s: circumradius s / sqrt(3).
    s = 2.0
    pts = np.array([[0.0, 0.0], [s, 0.0], [s / 2.0, s * math.sqrt(3) / 2.0]])
    c, r = smallest_enclosing_ball(pts)
    assert r == pytest.approx(s / math.sqrt(3.0), abs=1e-10)
    assert np.allclose(c, pts.mean(axis=0), atol=1e-10)


def test_seb_obtuse_triangle_uses_diameter():
    pts = np.array([[0.0, 0.0], [4.0, 0.0], [2.0, 0.1]])
    c, r = smallest_enclosing_ball(pts)
    assert r == pytest.approx(2.0, abs=1e-10)
    assert np.allclose(c, [2.0, 0.0], atol=1e-10)


@pytest.mark.parametrize("m,d,seed", [(10, 2, 0), (20, 3, 1), (15, 4, 2),
                                      (30, 2, 3)])
def test_seb_random_against_brute_force(m, d, seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(m, d))
    c, r = smallest_enclosing_ball(pts)
    # Feasibility.
    assert np.max(np.linalg.norm(pts - c, axis=1)) <= r + 1e-8
    # No random candidate center does better.
    for _ in range(200):
        cand = c + rng.normal(scale=0.3, size=d)
        assert np.max(np.linalg.norm(pts - cand, axis=1)) >= r - 1e-8


# ---------------------------------------------------------------------------
# Simplices and spherical images
# ---------------------------------------------------------------------------

def test_make_simplex_validation():
    with pytest.raises(ValueError):
        make_simplex(1.0, [[0.5, 0.0], [-1.0, 0.0]])  # off the sphere
    with pytest.raises(ValueError):
        # On the sphere but the enclosing ball is smaller than B.
        make_simplex(1.0, [[1.0, 0.0],
                           [math.cos(0.3), math.sin(0.3)]])


def test_segment_and_triangle_constructors():
    seg = segment_simplex(2.0, 3)
    assert seg.k == 1 and seg.n == 3 and seg.R == 2.0
    tri = regular_triangle(1.5)
    assert tri.k == 2
    assert np.allclose(np.linalg.norm(tri.vertices, axis=1), 1.5)


def test_random_simplex_valid():
    rng = make_stream(4)
    for n in (2, 3):
        for _ in range(10):
            s = random_simplex(1.0, n, rng)
            c, r = smallest_enclosing_ball(s.vertices)
            assert np.linalg.norm(c) < 1e-8 and abs(r - 1.0) < 1e-8


def test_normal_cones_partition_directions():
    rng = make_stream(5)
    s = random_simplex(1.0, 2, rng, k=2)
    dirs = sample_uniform_sphere(1, rng, size=20_000)
    counts = np.zeros(20_000, dtype=int)
    for j in range(s.k + 1):
        counts += np.asarray(normal_cone_membership(s, j, dirs)).astype(int)
    # Every direction lands in at least one cone; overlaps only on the
    # measure-zero boundaries.
    assert np.all(counts >= 1)
    assert np.mean(counts > 1) < 1e-3


def test_spherical_image_inside_half_sphere():
    rng = make_stream(6)
    s = random_simplex(1.0, 3, rng, k=3)
    for j in range(s.k + 1):
        acc, total = sample_spherical_image(s, j, 20_000, seed=7)
        ej = s.vertices[j] / s.R
        assert np.all(acc @ ej >= -1e-12)
        assert np.all(normal_cone_membership(s, j, acc))


def test_regular_triangle_image_measure():
    # By symmetry each vertex of the regular triangle gets exactly one third
    # of the circle.
    s = regular_triangle(1.0)
    mu_total = 0.0
    for j in range(3):
        acc, total = sample_spherical_image(s, j, 300_000, seed=8 + j)
        mu_total += acc.shape[0] / total  # fraction of the half-circle
        frac = acc.shape[0] / total
        # mu(S_j) = (1/3) * 2pi; half-circle has measure pi.
        assert abs(frac - 2.0 / 3.0) <= 3.0 * math.sqrt(frac * (1 - frac)
                                                        / total)
    assert mu_total == pytest.approx(2.0, abs=0.01)


# ---------------------------------------------------------------------------
# C(R, f) and the inequality
# ---------------------------------------------------------------------------

def test_constant_C_closed_forms():
    # f = 1, n = 2: C = int_0^{pi/2} R cos phi dphi / (pi/2) = 2R/pi.
    assert constant_C(2.0, constant_weight(), 2) == \
        pytest.approx(4.0 / math.pi, abs=1e-9)
    # f = 1, n = 3: C = R int cos sin / int sin = R/2.
    assert constant_C(2.0, constant_weight(), 3) == \
        pytest.approx(1.0, abs=1e-9)


def test_constant_C_spherical_weight_oracle():
    w = spherical_weight(2)
    R = 1.7
    num, _ = quad(lambda p: float(w.F(R * math.cos(p))), 0.0, math.pi / 2,
                  epsabs=1e-12)
    assert constant_C(R, w, 2) == pytest.approx(num / (math.pi / 2), abs=1e-9)
    with pytest.raises(ValueError):
        constant_C(0.0, w, 2)


def test_uf_lower_bound_values():
    # f = 1, n = 2: bound = 2pi * 2R/pi = 4R.
    assert uf_lower_bound(1.0, constant_weight(), 2) == \
        pytest.approx(4.0, abs=1e-9)
    # Spherical weight, R = tan(rho): the bound is 4 rho (the spherical
    # mean width of a geodesic arc of half-length rho).
    rho = 0.6
    got = uf_lower_bound(math.tan(rho), spherical_weight(2), 2)
    assert got == pytest.approx(4.0 * rho, abs=1e-9)


def test_segment_attains_the_bound():
    for R in (0.5, 1.0, 3.0):
        for w in (constant_weight(), spherical_weight(2)):
            seg = segment_simplex(R, 2)
            poly = EuclideanPolytope(n=2, vertices=seg.vertices,
                                     contains_origin=True)
            est = uf(poly, w)
            assert est.value == pytest.approx(uf_lower_bound(R, w, 2),
                                              abs=1e-8)


def test_check_7_1_segment_equality():
    seg = segment_simplex(1.0, 2)
    for j in (0, 1):
        rep = check_7_1(seg, j, spherical_weight(2), samples=200_000, seed=9)
        assert rep.passed
        assert abs(rep.slack) <= rep.tolerance  # equality case


def test_check_7_1_triangle_strict():
    tri = regular_triangle(1.0)
    rep = check_7_1(tri, 0, constant_weight(), samples=200_000, seed=10)
    assert rep.passed
    assert rep.slack > rep.tolerance  # strictly above the average
    assert rep.rhs == pytest.approx(2.0 / math.pi, abs=1e-9)


def test_check_7_1_random_simplices():
    rng = make_stream(11)
    for n in (2, 3):
        s = random_simplex(1.0, n, rng)
        w = spherical_weight(n)
        for j in range(s.k + 1):
            rep = check_7_1(s, j, w, samples=100_000, seed=12 + j)
            assert rep.passed, rep.to_dict()


def test_check_7_1_bad_vertex_index():
    with pytest.raises(IndexError):
        normal_cone_membership(segment_simplex(1.0, 2), 5, np.eye(2)[0])


# ---------------------------------------------------------------------------
# Chain identity and the minimality search
# ---------------------------------------------------------------------------

def test_uf_via_images_matches_uf():
    rng = make_stream(13)
    for n, k in ((2, 2), (3, 3), (3, 1)):
        s = random_simplex(1.0, n, rng, k=k)
        w = spherical_weight(n)
        poly = EuclideanPolytope(n=n, vertices=s.vertices,
                                 contains_origin=True)
        direct = uf(poly, w, samples=300_000, seed=14)
        via = uf_via_images(s, w, samples=300_000, seed=15)
        tol = 3.0 * math.hypot(direct.stderr, via.stderr) + 1e-8
        assert abs(direct.value - via.value) <= tol


def test_random_kb_instances_are_valid():
    rng = make_stream(16)
    for _ in range(20):
        inst = random_kb_instance(1.0, 2, rng)
        c, r = smallest_enclosing_ball(inst.poly.vertices)
        assert np.linalg.norm(c) < 1e-7 and abs(r - 1.0) < 1e-7


def test_min_uf_search_passes():
    rep = min_uf_search(1.0, spherical_weight(2), n=2, trials=20, seed=17)
    assert rep.passed, rep.to_dict()
    assert abs(rep.details["segment_residual"]) < 1e-7
    assert rep.slack >= 0.0


def test_min_uf_search_rejects_zero_trials():
    with pytest.raises(ValueError):
        min_uf_search(1.0, constant_weight(), trials=0)


def test_perturbed_segment_increases_uf():
    """Thickening the segment into a thin lens strictly increases U_f."""
    w = spherical_weight(2)
    seg = segment_simplex(1.0, 2)
    seg_val = uf(EuclideanPolytope(n=2, vertices=seg.vertices,
                                   contains_origin=True), w).value
    lens = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 0.4], [0.0, -0.4]])
    lens_val = uf(EuclideanPolytope(n=2, vertices=lens,
                                    contains_origin=True), w).value
    assert lens_val > seg_val + 1e-3
