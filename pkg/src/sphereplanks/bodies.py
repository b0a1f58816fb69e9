"""Spherically convex bodies as sphere-cone intersections.

A body is S^n intersected with a closed convex cone of R^(n+1), carried in
dual representations:

* H-rep: facet poles ``u_i`` with body = {x in S^n : <u_i, x> <= 0};
* V-rep: generators ``v_j`` with body = S^n  intersect  pos-hull{v_j}.

The sign convention makes polarity a pure representation swap.  Sets
without interior points (e.g. polars of full-dimensional bodies) are
representable but flagged ``is_body=False``; volume and inradius refuse
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cones import cone_generators, dedup_rows, max_min_inner
from .sphere import SphericalCap, geodesic_distance, unit_vector

CONTAIN_TOL = 1e-12
CROSS_TOL = 1e-9
SOLVER_TOL = 1e-9


class BodyError(ValueError):
    """Invalid or degenerate spherical body for the requested operation."""


@dataclass(frozen=True)
class Lune:
    """Two-halfspace body; the equality case of both main theorems.

    ``angle`` is the interior dihedral angle in (0, pi]; the inradius of a
    lune is exactly ``angle / 2``.  The ridge basis spans an (n-1)-subspace
    of u1-perp intersect u2-perp (any such subspace when u1 == u2).
    """

    u1: np.ndarray
    u2: np.ndarray
    angle: float
    ridge_basis: np.ndarray

    @property
    def inradius(self):
        return self.angle / 2.0


@dataclass(frozen=True)
class ConvexBody:
    n: int
    h_normals: np.ndarray | None = None
    v_generators: np.ndarray | None = None
    is_body: bool = True
    lune: Lune | None = None
    tag: str = ""

    @property
    def dim(self):
        return self.n + 1


@dataclass(frozen=True)
class BodyMetrics:
    """Solver output; only the fields the producing operation fills are set."""

    inradius: float | None = None
    incenter: np.ndarray | None = None
    circumradius: float | None = None
    circumcenter: np.ndarray | None = None
    hemisphere_flagged: bool = False
    solver_tolerance: float = SOLVER_TOL


def _as_unit_rows(vectors, d):
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    if V.shape[1] != d:
        raise BodyError(f"vectors have length {V.shape[1]}, expected {d}")
    norms = np.linalg.norm(V, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise BodyError("all H/V vectors must be unit vectors")
    return dedup_rows(V / norms[:, None])


def make_body(n, h_normals=None, v_generators=None, lune=None, tag=""):
    """Build a validated body from one or both representations.

    Missing representations are computed by cone conversion (ambient
    dimension <= 5).  Raises ``BodyError`` when the set is not contained in
    a closed hemisphere or the representations are inconsistent.  A set
    with empty interior is accepted but flagged ``is_body=False``.
    """
    d = n + 1
    if h_normals is None and v_generators is None:
        raise BodyError("need at least one representation")
    H = _as_unit_rows(h_normals, d) if h_normals is not None else None
    V = _as_unit_rows(v_generators, d) if v_generators is not None else None

    if H is not None and V is None:
        V = cone_generators(H)
    elif V is not None and H is None:
        # Facet normals of cone(V) generate its polar cone {u : Vu <= 0}.
        H = cone_generators(V)

    if H.shape[0] == 0:
        raise BodyError("set is not contained in a closed hemisphere")
    if V.shape[0] == 0:
        raise BodyError("empty body (cone reduces to the origin)")
    cross = H @ V.T
    if np.max(cross) > CROSS_TOL:
        raise BodyError(
            f"inconsistent dual representations: max <u_i, v_j> = {np.max(cross):.3e}"
        )

    # Interior nonempty iff 0 not in conv(h_normals) (Gordan).
    slack, _ = max_min_inner(-H)
    is_body = slack > SOLVER_TOL
    return ConvexBody(n=n, h_normals=H, v_generators=V, is_body=is_body,
                      lune=lune, tag=tag)


def convert_rep(body):
    """Return the body with both representations populated and checked."""
    return make_body(body.n, h_normals=body.h_normals,
                     v_generators=body.v_generators, lune=body.lune,
                     tag=body.tag)


def contains(body, x, tol=CONTAIN_TOL):
    """Membership test <u_i, x> <= tol for all facet poles.

    ``x`` may be a single vector or an (m, n+1) batch.
    """
    if body.h_normals is None:
        raise BodyError("H-representation required")
    x = np.asarray(x, dtype=float)
    vals = x @ body.h_normals.T
    return np.all(vals <= tol, axis=-1)


def hyperplane_meets(body, u):
    """True iff the great subsphere u-perp meets the body.

    Sign test on the generators: misses iff all generators lie strictly on
    one side of u-perp.  ``u`` may be a batch.
    """
    if body.v_generators is None:
        raise BodyError("V-representation required")
    if not body.is_body:
        raise BodyError("hyperplane_meets requires a body with interior")
    u = np.asarray(u, dtype=float)
    vals = u @ body.v_generators.T
    pos = np.all(vals > 0.0, axis=-1)
    neg = np.all(vals < 0.0, axis=-1)
    return ~(pos | neg)


def polar(body):
    """Polar body K* = {u : <u, v> <= 0 for all v in K}.

    Pure representation swap; the result may be flagged non-body.
    """
    H = body.v_generators
    V = body.h_normals
    slack, _ = max_min_inner(-H)
    return ConvexBody(n=body.n, h_normals=H, v_generators=V,
                      is_body=slack > SOLVER_TOL, tag=f"polar({body.tag})")


def inradius(body):
    """Largest cap inside the body: r = arcsin of the max-min slack.

    Solves max s s.t. <u_i, x> <= -s, |x| <= 1, which is the min-norm-point
    problem for conv{-u_i}; the optimizer has |x| = 1.
    """
    if body.h_normals is None:
        raise BodyError("H-representation required")
    if not body.is_body:
        raise BodyError("inradius is undefined for a set without interior")
    s, x = max_min_inner(-body.h_normals)
    if x is None:
        raise BodyError("infeasible interior (degenerate body)")
    r = math.asin(min(1.0, s))
    return BodyMetrics(inradius=r, incenter=x)


def circumradius(body):
    """Smallest cap containing the body: R = arccos of the max-min support.

    Valid because caps of radius <= pi/2 are spherically convex, so the
    smallest cap containing the generators contains the body.  Bodies not
    contained in an open hemisphere get R = pi/2 with a flag.
    """
    if body.v_generators is None:
        raise BodyError("V-representation required")
    c, e = max_min_inner(body.v_generators)
    if e is None:
        return BodyMetrics(circumradius=math.pi / 2.0, circumcenter=None,
                           hemisphere_flagged=True)
    return BodyMetrics(circumradius=math.acos(max(-1.0, min(1.0, c))),
                       circumcenter=e)


def _ridge_basis(u1, u2, n):
    d = n + 1
    if np.linalg.norm(u1 - u2) <= 1e-12:
        # Any (n-1)-subspace of u1-perp: deterministic Gram-Schmidt choice.
        M = np.vstack([u1])
    else:
        M = np.vstack([u1, u2])
    _, s, Vt = np.linalg.svd(M, full_matrices=True)
    perp = Vt[M.shape[0]:]
    return perp[: n - 1]


def make_lune(n, u1, u2=None, tag="lune", angle=None):
    """Lune with facet poles u1, u2 (u2 = u1 gives a hemisphere).

    Records the interior angle alpha = pi - dist(u1, u2) and the ridge
    basis.  Callers that construct the poles from a known angle may pass
    ``angle`` to keep it exact instead of recovering it through arccos.
    Antipodal poles (empty interior) are rejected.
    """
    u1 = unit_vector(u1, tol=1e-9)
    u2 = u1.copy() if u2 is None else unit_vector(u2, tol=1e-9)
    dist = float(geodesic_distance(u1, u2))
    if dist >= math.pi - 1e-12:
        raise BodyError("antipodal lune poles give an empty interior")
    if angle is None:
        angle = math.pi - dist
    elif abs(angle - (math.pi - dist)) > 1e-7:
        raise BodyError("stated lune angle disagrees with the poles")
    lune = Lune(u1=u1, u2=u2, angle=angle, ridge_basis=_ridge_basis(u1, u2, n))
    return make_body(n, h_normals=np.vstack([u1, u2]), lune=lune, tag=tag)


def make_lune_from_angle(n, angle, plane_basis, theta0=0.0, tag="lune"):
    """Lune of interior angle ``angle`` as an angular sector in a 2-plane.

    ``plane_basis`` is an orthonormal pair (p, q) spanning the complement
    of the ridge; the lune covers sector directions [theta0, theta0+angle].
    """
    if not 0.0 < angle <= math.pi:
        raise BodyError(f"lune angle must lie in (0, pi], got {angle}")
    p, q = (unit_vector(v, tol=1e-9) for v in plane_basis)

    def direction(t):
        return math.cos(t) * p + math.sin(t) * q

    u1 = -direction(theta0 + math.pi / 2.0)
    u2 = -direction(theta0 + angle - math.pi / 2.0)
    if angle == math.pi:
        return make_lune(n, u1, u1, tag=tag, angle=angle)
    return make_lune(n, u1, u2, tag=tag, angle=angle)


def intersect_with_hemisphere(body, cap):
    """Intersect with a closed hemisphere (cap of radius pi/2).

    Appends the constraint <-center, x> <= 0 and reconverts; an
    empty-interior result is flagged, not rejected.
    """
    if not isinstance(cap, SphericalCap) or abs(cap.radius - math.pi / 2.0) > 1e-12:
        raise BodyError("expected a cap of radius pi/2")
    if body.v_generators is not None and np.max(
            body.v_generators @ -cap.center) <= CONTAIN_TOL:
        # Constraint is redundant: the body already lies in the hemisphere.
        return body
    H = np.vstack([body.h_normals, -cap.center])
    return make_body(body.n, h_normals=H, tag=f"{body.tag}&hemi")
