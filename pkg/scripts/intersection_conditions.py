"""Compare the two forms of the odd intersection conditions on crossing pairs.

Geodesics are drawn through a common random point.  The conditions
J alpha + I xi = 0 and J beta + I eta = 0 hold at every crossing; the
variant with the (A-B)J + (C-D)I phi term on the right fails once phi and
psi are nonzero.
"""

import argparse
import random

from superhyp import Algebra
from superhyp.pairs import intersection_conditions, pair_coefficients
from superhyp.sampling import crossing_pair


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    alg = Algebra(4, "float")
    rng = random.Random(args.seed)
    print(f"{'pair':>4}  {'c4':>9}  {'c5':>9}  {'c4 variant':>10}  {'c5 variant':>10}")
    for k in range(args.count):
        L, Lp, _ = crossing_pair(rng, alg)
        r = intersection_conditions(pair_coefficients(L, Lp))
        print(f"{k:>4}  {r['c4']:>9.1e}  {r['c5']:>9.1e}  {r['c4_variant']:>10.1e}  {r['c5_variant']:>10.1e}")


if __name__ == "__main__":
    main()
