"""The sharp volume bound sigma(K) <= (sigma_n / pi) r(K).

Lunes achieve equality; everything else has strictly positive slack.  The
octant's slack has a closed form, which the Monte Carlo estimate hits
within its reported standard error.
"""

import math

from sphereplanks import (make_stream, octant_body, random_body, random_lune,
                          verify_thm2)


def show(name, rep):
    status = "PASS" if rep.passed else "FAIL"
    print(f"  {name:<18} volume = {rep.lhs:8.5f}  bound = {rep.rhs:8.5f}  "
          f"slack = {rep.slack:+9.5f} +- {rep.tolerance / 3:.5f}  [{status}]")


def main():
    rng = make_stream(42)
    print("=== S^2, 10^6 samples each ===")
    show("octant", verify_thm2(octant_body(2), seed=1))
    exact = 4.0 * math.asin(1.0 / math.sqrt(3.0)) - math.pi / 2.0
    print(f"  (octant closed-form slack: {exact:.5f})")

    for i in range(3):
        body = random_body(2, rng)
        show(f"random body #{i}", verify_thm2(body, seed=10 + i))

    print("\n=== lunes: the equality case ===")
    for angle in (0.5, 1.5, 3.0):
        lune = random_lune(2, rng, angle=angle)
        show(f"lune({angle})", verify_thm2(lune, seed=20 + int(10 * angle)))

    print("\n=== S^3 ===")
    show("random body", verify_thm2(random_body(3, rng), seed=30))
    show("lune(2.0)", verify_thm2(random_lune(3, rng, angle=2.0), seed=31))


if __name__ == "__main__":
    main()
