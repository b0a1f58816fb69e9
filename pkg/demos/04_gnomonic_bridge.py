"""The gnomonic bridge: spherical mean width equals a weighted Euclidean
hyperplane measure of the projected body.

Project a body from the open hemisphere around its circumcenter onto the
tangent hyperplane.  Counting great subspheres that meet the body
(sphere side) and integrating the weight (1+t^2)^(-(n+1)/2) over
hyperplanes that meet the projection (flat side) give the same number.
"""

import math

from sphereplanks import (constant_weight, make_stream, mean_width_mc,
                          random_body, spherical_weight, uf)
from sphereplanks.gnomonic import circumcenter_frame, project_body
from sphereplanks.randgen import cap_polytope


def compare(name, body, seed):
    frame = circumcenter_frame(body)
    poly = project_body(frame, body)
    sphere_side = mean_width_mc(body, seed=seed)
    flat_side = uf(poly, spherical_weight(body.n), seed=seed + 1)
    print(f"  {name:<16} U(K) = {sphere_side.value:.5f} "
          f"+- {sphere_side.stderr:.5f}   U_f(proj K) = {flat_side.value:.5f} "
          f"+- {flat_side.stderr:.2e}")
    return sphere_side, flat_side


def main():
    rng = make_stream(3)

    print("=== polytopal cap, rho = 0.7: exact value 2 pi sin(0.7) ===")
    cap = cap_polytope(2, [0.0, 0.0, 1.0], 0.7, n_vertices=512)
    compare("cap(0.7)", cap, seed=10)
    print(f"  exact:           {2 * math.pi * math.sin(0.7):.5f}")

    print("\n=== random bodies, S^2 (quadrature) and S^3 (Monte Carlo) ===")
    for n in (2, 3):
        compare(f"random in S^{n}", random_body(n, rng), seed=20 + n)

    print("\n=== the weight matters: constant weight disagrees ===")
    body = random_body(2, rng)
    frame = circumcenter_frame(body)
    poly = project_body(frame, body)
    sphere_side = mean_width_mc(body, seed=30)
    wrong = uf(poly, constant_weight(), seed=31)
    print(f"  U(K) = {sphere_side.value:.5f}   "
          f"U_1(proj K) = {wrong.value:.5f}  (no reason to match)")


if __name__ == "__main__":
    main()
