"""Polyhedral cone machinery in low ambient dimension (d <= 5).

Two primitives drive everything else:

* ``min_norm_point``: the point of smallest norm in the convex hull of
  finitely many points (Wolfe's algorithm).  Inradius and circumradius of a
  spherical body are both a max-min inner product, whose value is exactly
  this norm.
* ``cone_generators``: generators of the cone {x : <a_i, x> <= 0} by
  subset enumeration of active constraints (double-description style, with
  explicit lineality handling).  Conversion V -> H is the same primitive
  applied to the generators, since the facet normals of a cone generate its
  polar cone.
"""

from __future__ import annotations

import itertools

import numpy as np

DEDUP_TOL = 1e-9
FEAS_TOL = 1e-9


def min_norm_point(points, tol=1e-12, max_iter=1000):
    """Minimum-norm point of conv(points), by Wolfe's algorithm.

    Parameters
    ----------
    points : (m, d) array
    tol : float
        Termination tolerance on the Wolfe criterion
        min_j <x, p_j> >= |x|^2 - tol.

    Returns
    -------
    x : (d,) array
        The minimum-norm point.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    m, d = P.shape
    if m == 0:
        raise ValueError("empty point set")
    scale = max(1.0, float(np.max(np.sum(P * P, axis=1))))

    idx = [int(np.argmin(np.sum(P * P, axis=1)))]
    lam = np.array([1.0])

    for _ in range(max_iter):
        x = lam @ P[idx]
        dots = P @ x
        j = int(np.argmin(dots))
        if dots[j] >= x @ x - tol * scale:
            return x
        if j in idx:
            return x
        idx.append(j)
        lam = np.append(lam, 0.0)
        # Minor cycle: pull lam toward the affine minimizer until it is a
        # proper convex combination.
        for _ in range(max_iter):
            alpha = _affine_min_weights(P[idx])
            if alpha is None:
                idx.pop()
                lam = lam[:-1]
                return lam @ P[idx]
            if np.min(alpha) > 1e-14:
                lam = alpha
                break
            mask = alpha < 1e-14
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = lam[mask] / (lam[mask] - alpha[mask])
            theta = float(np.min(ratios[np.isfinite(ratios)], initial=1.0))
            lam = (1.0 - theta) * lam + theta * alpha
            lam[lam < 1e-14] = 0.0
            keep = lam > 0.0
            if not np.any(keep):
                keep[int(np.argmax(alpha))] = True
                lam[keep] = 1.0
            idx = [i for i, k in zip(idx, keep) if k]
            lam = lam[keep]
            lam = lam / lam.sum()
    return lam @ P[idx]


def _affine_min_weights(S):
    """Weights of the min-norm point of the affine hull of rows of S."""
    k = S.shape[0]
    M = np.empty((k + 1, k + 1))
    M[:k, :k] = S @ S.T
    M[k, :k] = 1.0
    M[:k, k] = 1.0
    M[k, k] = 0.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(sol)):
        return None
    return sol[:k]


def max_min_inner(points, tol=FEAS_TOL):
    """Solve max_{|e| <= 1} min_j <p_j, e>.

    Returns ``(value, e)``.  The value equals the norm of the min-norm point
    of conv(points); when it is ~0 (origin in the hull) no strictly positive
    witness exists and ``e`` is None.
    """
    p = min_norm_point(points)
    v = float(np.linalg.norm(p))
    if v <= tol:
        return 0.0, None
    return v, p / v


def dedup_rows(rows, tol=DEDUP_TOL):
    """Drop rows that duplicate an earlier row within ``tol``."""
    out = []
    for r in np.atleast_2d(np.asarray(rows, dtype=float)):
        if all(np.linalg.norm(r - q) > tol for q in out):
            out.append(r)
    return np.array(out)


def cone_generators(normals, tol=FEAS_TOL):
    """Generators of the cone C = {x : <a_i, x> <= 0 for all rows a_i}.

    Returns an array of unit vectors: a basis of the lineality space of C
    with both signs, plus the extreme rays of the pointed part.  Empty when
    C = {0}.  Supports ambient dimension d <= 5.
    """
    A = np.atleast_2d(np.asarray(normals, dtype=float))
    d = A.shape[1]
    if d > 5:
        raise ValueError(f"ambient dimension {d} > 5 not supported")
    if A.shape[0] == 0:
        eye = np.eye(d)
        return np.vstack([eye, -eye])
    A = dedup_rows(A)

    # Lineality space L = null(A); the pointed part lives in L-perp.
    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    L = Vt[rank:]
    Q = Vt[:rank].T  # d x d' basis of the row space
    Ap = A @ Q

    rays = _extreme_rays_pointed(Ap, tol)
    gens = [Q @ r for r in rays]
    for ell in L:
        gens.append(ell)
        gens.append(-ell)
    if not gens:
        return np.empty((0, d))
    G = np.array(gens)
    G = G / np.linalg.norm(G, axis=1, keepdims=True)
    return dedup_rows(G, tol=1e-7)


def _extreme_rays_pointed(A, tol):
    """Extreme rays of the pointed cone {y : Ay <= 0} in R^d'."""
    m, d = A.shape
    if d == 0:
        return []
    rays = []
    for subset in itertools.combinations(range(m), d - 1):
        B = A[list(subset)]
        null = _null_space(B, d, tol)
        if null.shape[0] != 1:
            continue
        for r in (null[0], -null[0]):
            vals = A @ r
            if np.max(vals) > tol:
                continue
            active = A[np.abs(vals) <= tol]
            if _rank(active, tol) != d - 1:
                continue
            if all(np.linalg.norm(r - q) > 1e-7 for q in rays):
                rays.append(r)
    return rays


def _null_space(B, d, tol):
    if B.shape[0] == 0:
        return np.eye(d) if d == 1 else np.empty((0, d))
    _, s, Vt = np.linalg.svd(B, full_matrices=True)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return Vt[rank:]


def _rank(M, tol):
    if M.shape[0] == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))
