"""Show how much of the law of cosines lives in the soul.

For a few random supertriangles, compare the full residual of
cosh A = cosh B cosh C - sinh B sinh C cos a with the residual obtained
when cos a is replaced by its body.
"""

import argparse

from superhyp import Algebra
from superhyp.trig import random_triangle, triangle_report
from superhyp.grassmann import Supernumber


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--gens", type=int, default=4)
    ap.add_argument("--fermionic-scale", type=float, default=0.5)
    args = ap.parse_args()
    alg = Algebra(args.gens, "float")
    print(f"{'seed':>4}  {'full residual':>14}  {'body-only residual':>18}  soul of cos a")
    for seed in range(args.count):
        T = random_triangle(seed, args.fermionic_scale, alg)
        rep = triangle_report(T)
        chA, chB, chC = rep.cosh_sides
        shB, shC = ((c * c - 1).sqrt() for c in (chB, chC))
        ca = rep.cos_angles[0]
        full = chA - (chB * chC - shB * shC * ca)
        body_only = chA - (chB * chC - shB * shC * Supernumber.lift(alg, ca.body))
        print(f"{seed:>4}  {full.max_abs():>14.2e}  {body_only.max_abs():>18.2e}  {ca.soul.max_abs():.3f}")


if __name__ == "__main__":
    main()
