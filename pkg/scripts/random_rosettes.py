"""Run the rosette verdict pack on random generic n-rosettes.

Draws that fail the genericity report are redrawn; the redraw count is logged.

    python3 scripts/random_rosettes.py --n 2 3 4 --seeds 10
"""

import argparse
import json
import logging
import time

from centresym.pipeline import generic_random_rosette

log = logging.getLogger("random_rosettes")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--out", default=None, help="optional JSON summary path")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    rows = []
    for n in args.n:
        for seed in range(args.seeds):
            t0 = time.perf_counter()
            report, _, redraws = generic_random_rosette(n, seed)
            bad = [v.name for v in report.verdicts if v.passed is False]
            rows.append({"n": n, "seed": seed, "redraws": redraws, "failed": bad, "seconds": time.perf_counter() - t0})
            log.info("n=%d seed=%d redraws=%d failed=%s %.1fs", n, seed, redraws, bad, rows[-1]["seconds"])
    total = sum(r["redraws"] for r in rows)
    log.info("total redraws: %d; draws with failures: %d", total, sum(1 for r in rows if r["failed"]))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
