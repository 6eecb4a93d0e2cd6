"""Chord-intersection envelope vs. closed-form CSS on each non-asymptotic stretch.

Prints one row per stretch and sample count, so the first-order convergence
of the envelope oracle is visible directly.

    python3 scripts/envelope_convergence.py two_rosette --n 5000 10000 20000 40000
"""

import argparse

from centresym.curve import build_curve
from centresym.fixtures import NAMED
from centresym.parallel import decompose
from centresym.pipeline import envelope_comparison


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("fixture", choices=sorted(NAMED))
    ap.add_argument("--n", type=int, nargs="+", default=[5000, 10000, 20000])
    ap.add_argument("--window", type=float, default=1.0, help="stretch radius in curve diameters")
    args = ap.parse_args()

    structure = decompose(build_curve(NAMED[args.fixture]()))
    print(f"{'arcs':>8} {'stretch':>22} {'n':>7} {'hausdorff/diam':>15} {'ratio':>6}")
    for n in args.n:
        rows, diam = envelope_comparison(structure, n=n, window=args.window)
        for r in rows:
            lo, hi = r["stretch"]
            print(f"{str(tuple(r['arcs'])):>8} {f'[{lo:.4f}, {hi:.4f}]':>22} {n:>7} {r['relative']:>15.3e} {r['ratio']:>6.2f}")


if __name__ == "__main__":
    main()
