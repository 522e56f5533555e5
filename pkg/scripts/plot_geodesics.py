"""Write Poincare-disk CSV samples of several geodesic bodies.

Each output file has the header t,px,py and can be drawn with any plotting
tool.  Optionally draws them with matplotlib if it is installed.
"""

import argparse
import csv
import random
from pathlib import Path

from superhyp import Algebra
from superhyp.cli import plot_body
from superhyp.sampling import random_geodesic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--samples", type=int, default=201)
    ap.add_argument("--out", type=Path, default=Path("geodesics"))
    ap.add_argument("--show", action="store_true", help="draw with matplotlib")
    args = ap.parse_args()
    alg = Algebra(4, "float")
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    curves = []
    for k in range(args.count):
        rows = plot_body(random_geodesic(rng, alg), args.samples, -6.0, 6.0)
        path = args.out / f"geodesic_{k}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("t", "px", "py"))
            w.writerows(rows)
        curves.append(rows)
        print(path)
    if args.show:
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 5))
        ax.add_patch(plt.Circle((0, 0), 1, fill=False))
        for rows in curves:
            ax.plot([r[1] for r in rows], [r[2] for r in rows])
        ax.set_aspect("equal")
        ax.set_xlim(-1.05, 1.05)
        ax.set_ylim(-1.05, 1.05)
        plt.show()


if __name__ == "__main__":
    main()
