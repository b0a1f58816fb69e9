"""Machinery behind the segment-minimizer result for U_f on K(B).

Inscribed simplices with vertices on the boundary of a centered ball B,
their spherical images (normal cones intersected with the direction
sphere), the hemisphere average C(R, f) of g(phi) = F(R cos phi), the
vertex-average inequality that compares the two, and a randomized search
confirming that the diameter segment minimizes U_f over K(B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .cones import min_norm_point
from .gnomonic import EuclideanPolytope, uf
from .measure import Estimate, VerificationReport
from .sphere import make_stream, sample_uniform_sphere, sphere_area

SEB_TOL = 1e-10
QUAD_TOL = 1e-10


# ---------------------------------------------------------------------------
# Smallest enclosing ball (Welzl)
# ---------------------------------------------------------------------------

def smallest_enclosing_ball(points, tol=SEB_TOL):
    """Exact smallest enclosing ball by Welzl's recursive method.

    Returns ``(center, radius)``.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.shape[0] == 0:
        raise ValueError("empty point list")
    d = P.shape[1]
    order = np.arange(P.shape[0])
    np.random.default_rng(1234).shuffle(order)  # deterministic shuffle
    scale = max(1.0, float(np.max(np.abs(P)))) ** 2
    ball = _welzl([P[i] for i in order], [], d, tol * scale)
    c, r2 = ball
    return c, math.sqrt(max(0.0, r2))


def _welzl(P, R, d, tol):
    if not P or len(R) == d + 1:
        return _ball_from(R, d)
    p = P[0]
    ball = _welzl(P[1:], R, d, tol)
    c, r2 = ball
    if c is not None and np.sum((p - c) ** 2) <= r2 + tol:
        return ball
    return _welzl(P[1:], R + [p], d, tol)


def _ball_from(R, d):
    if not R:
        return None, -1.0
    S = np.array(R)
    p0 = S[0]
    if S.shape[0] == 1:
        return p0, 0.0
    A = S[1:] - p0
    b = 0.5 * np.sum(A * A, axis=1)
    # Circumcenter within the affine hull: c = p0 + A^T y.
    M = A @ A.T
    try:
        y = np.linalg.solve(M, b)
    except np.linalg.LinAlgError:
        y, *_ = np.linalg.lstsq(M, b, rcond=None)
    c = p0 + A.T @ y
    return c, float(np.sum((p0 - c) ** 2))


# ---------------------------------------------------------------------------
# Inscribed simplices and spherical images
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplexInBall:
    """k-simplex with vertices on the boundary sphere of the centered ball
    of radius R, whose smallest enclosing ball is that ball."""

    R: float
    vertices: np.ndarray  # (k+1, n)

    @property
    def k(self):
        return self.vertices.shape[0] - 1

    @property
    def n(self):
        return self.vertices.shape[1]


def make_simplex(R, vertices, tol=1e-9):
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    norms = np.linalg.norm(V, axis=1)
    if np.any(np.abs(norms - R) > tol):
        raise ValueError("all vertices must lie on the boundary sphere")
    diffs = V[1:] - V[0]
    if diffs.shape[0] and np.linalg.matrix_rank(diffs, tol=1e-9) != diffs.shape[0]:
        raise ValueError("vertices must be affinely independent")
    c, r = smallest_enclosing_ball(V)
    if np.linalg.norm(c) > tol or abs(r - R) > tol:
        raise ValueError("smallest enclosing ball of the vertices is not B")
    return SimplexInBall(R=float(R), vertices=V)


def segment_simplex(R, n):
    """The diameter segment: the unique minimizer shape."""
    V = np.zeros((2, n))
    V[0, 0] = R
    V[1, 0] = -R
    return make_simplex(R, V)


def regular_triangle(R):
    ang = [0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0]
    V = R * np.array([[math.cos(a), math.sin(a)] for a in ang])
    return make_simplex(R, V)


def random_simplex(R, n, rng, k=None, retries=200):
    """Random inscribed simplex whose enclosing ball is exactly B.

    Half the time an antipodal diameter pair is forced in (which pins the
    enclosing ball); otherwise boundary points are resampled until the
    enclosing-ball check passes.
    """
    k = int(rng.integers(1, n + 1)) if k is None else k
    for _ in range(retries):
        if rng.random() < 0.5 or k == 1:
            p = R * sample_uniform_sphere(n - 1, rng)
            extra = R * sample_uniform_sphere(n - 1, rng, size=k - 1)
            V = np.vstack([p, -p, extra])[: k + 1]
        else:
            V = R * sample_uniform_sphere(n - 1, rng, size=k + 1)
        try:
            return make_simplex(R, V)
        except ValueError:
            continue
    raise RuntimeError("failed to generate a valid inscribed simplex")


def normal_cone_membership(s, j, u, tol=1e-12):
    """True iff u lies in the normal cone of the simplex at vertex j,
    i.e. <u, v_i - v_j> <= tol for all i.  ``u`` may be a batch."""
    if not 0 <= j <= s.k:
        raise IndexError(f"vertex index {j} out of range")
    u = np.asarray(u, dtype=float)
    diffs = s.vertices - s.vertices[j]
    return np.all(u @ diffs.T <= tol, axis=-1)


# ---------------------------------------------------------------------------
# The constant C(R, f) and the vertex-average inequality
# ---------------------------------------------------------------------------

def constant_C(R, w, n):
    """Hemisphere average of g(phi) = F(R cos phi):

        C = int_0^{pi/2} F(R cos phi) sin^{n-2} phi dphi
            / int_0^{pi/2} sin^{n-2} phi dphi
    """
    if R <= 0.0:
        raise ValueError("R must be positive")

    def num(phi):
        return float(w.F(R * math.cos(phi))) * math.sin(phi) ** (n - 2)

    def den(phi):
        return math.sin(phi) ** (n - 2)

    top, _ = quad(num, 0.0, math.pi / 2.0, epsabs=QUAD_TOL)
    bot, _ = quad(den, 0.0, math.pi / 2.0, epsabs=QUAD_TOL)
    return top / bot


def uf_lower_bound(R, w, n):
    """The proven minimum of U_f over K(B): mu(S^{n-1}) * C(R, f)."""
    return sphere_area(n - 1) * constant_C(R, w, n)


def sample_spherical_image(s, j, samples, seed):
    """Directions uniform in S_j, by rejection from the half-sphere D_j.

    Returns ``(accepted, n_halfsphere)``; the acceptance fraction estimates
    mu(S_j) / mu(D_j), and the accepted samples feed the g-average, so both
    estimates share the same draws.
    """
    rng = make_stream(seed)
    n = s.n
    ej = s.vertices[j] / s.R
    dirs = sample_uniform_sphere(n - 1, rng, size=samples)
    # Fold onto D_j; preserves uniformity on the half-sphere.
    sign = np.where(dirs @ ej >= 0.0, 1.0, -1.0)
    dirs = dirs * sign[:, None]
    mask = normal_cone_membership(s, j, dirs)
    return dirs[mask], samples


def check_7_1(s, j, w, samples=200_000, seed=0):
    """Compare the S_j-average of g with the hemisphere average C(R, f).

    The average over the spherical image can only exceed the hemisphere
    average, with equality exactly when S_j is the full half-sphere (the
    segment case).
    """
    accepted, total = sample_spherical_image(s, j, samples, seed)
    if accepted.shape[0] == 0:
        raise ValueError("degenerate simplex: empty spherical image sample")
    ej = s.vertices[j] / s.R
    h = np.clip(s.R * (accepted @ ej), 0.0, None)
    g = np.asarray(w.F(h), dtype=float)
    lhs = float(np.mean(g))
    stderr = float(np.std(g, ddof=1) / math.sqrt(g.shape[0])) if g.shape[0] > 1 else 0.0
    rhs = constant_C(s.R, w, s.n)
    mu_sj = sphere_area(s.n - 1) / 2.0 * accepted.shape[0] / total
    slack = lhs - rhs
    tol = 3.0 * stderr
    return VerificationReport(
        claim="vertex_average_inequality",
        lhs=lhs, rhs=rhs, slack=slack, tolerance=tol,
        tolerance_rule="lhs + 3 stderr >= rhs",
        passed=lhs + tol >= rhs,
        details={"vertex": j, "mu_Sj": mu_sj, "stderr": stderr,
                 "weight": w.kind, "seed": seed, "samples": samples,
                 "accepted": int(accepted.shape[0])},
    )


def uf_via_images(s, w, samples=200_000, seed=0):
    """U_f of the simplex summed over spherical images.

    Independent route for the chain identity: each direction contributes
    F(<v_j, u>) for the vertex whose normal cone it falls in.
    """
    rng = make_stream(seed)
    dirs = sample_uniform_sphere(s.n - 1, rng, size=samples)
    vals = np.zeros(samples)
    for j in range(s.k + 1):
        mask = np.asarray(normal_cone_membership(s, j, dirs))
        h = np.clip(dirs[mask] @ s.vertices[j], 0.0, None)
        vals[mask] = np.asarray(w.F(h), dtype=float)
    mu = sphere_area(s.n - 1)
    mean = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(samples))
    return Estimate(value=mu * mean, stderr=mu * stderr, samples=samples,
                    seed=seed, quantity="uf")


# ---------------------------------------------------------------------------
# K(B) instances and the minimality search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KBInstance:
    """Compact convex set (as a polytope) whose smallest enclosing ball is
    the centered ball of radius R."""

    R: float
    poly: EuclideanPolytope


def make_kb_instance(R, vertices, tol=1e-8):
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    c, r = smallest_enclosing_ball(V)
    if np.linalg.norm(c) > tol or abs(r - R) > tol:
        raise ValueError("smallest enclosing ball of the vertices is not B")
    origin = np.linalg.norm(min_norm_point(V)) <= 1e-9
    return KBInstance(R=float(R),
                      poly=EuclideanPolytope(n=V.shape[1], vertices=V,
                                             contains_origin=origin))


def random_kb_instance(R, n, rng, max_points=8, retries=100):
    """Random member of K(B): boundary/interior points re-centered and
    re-scaled until the enclosing-ball check passes."""
    for _ in range(retries):
        m = int(rng.integers(3, max_points + 1))
        if rng.random() < 0.5:
            p = R * sample_uniform_sphere(n - 1, rng)
            pts = np.vstack([p, -p,
                             R * rng.uniform(0.2, 1.0, size=(m - 2, 1))
                             * sample_uniform_sphere(n - 1, rng, size=m - 2)])
        else:
            pts = R * sample_uniform_sphere(n - 1, rng, size=m)
            c, r = smallest_enclosing_ball(pts)
            if r <= 0.0:
                continue
            pts = (pts - c) * (R / r)
        try:
            return make_kb_instance(R, pts)
        except ValueError:
            continue
    raise RuntimeError("failed to generate a K(B) instance")


def min_uf_search(R, w, n=2, trials=50, samples=None, seed=0):
    """Randomized minimality check: no K(B) instance may fall below the
    diameter segment, and the segment must match the closed-form bound."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seg = segment_simplex(R, n)
    seg_poly = EuclideanPolytope(n=n, vertices=seg.vertices,
                                 contains_origin=True)
    seg_est = uf(seg_poly, w, samples=samples, seed=seed)
    bound = uf_lower_bound(R, w, n)

    values = []
    min_gap = math.inf
    rng = make_stream(seed, (1,))
    for t in range(trials):
        inst = random_kb_instance(R, n, rng)
        est = uf(inst.poly, w, samples=samples, seed=seed + 2 + t)
        values.append(est.value)
        gap = est.value - (seg_est.value
                           - 3.0 * math.hypot(est.stderr, seg_est.stderr))
        min_gap = min(min_gap, gap)

    seg_tol = 3.0 * seg_est.stderr + 1e-8
    seg_ok = abs(seg_est.value - bound) <= seg_tol
    passed = (min_gap >= 0.0) and seg_ok
    return VerificationReport(
        claim="segment_minimizes_uf",
        lhs=float(min(values)), rhs=seg_est.value,
        slack=min_gap, tolerance=seg_tol,
        tolerance_rule=("every U_f(K) >= U_f(segment) - 3 combined sigma; "
                        "segment matches mu(S^{n-1}) C(R,f)"),
        passed=passed,
        details={"bound": bound, "segment_value": seg_est.value,
                 "segment_residual": seg_est.value - bound,
                 "trials": trials, "weight": w.kind, "seed": seed,
                 "R": R},
    )
