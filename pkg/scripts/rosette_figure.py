"""Write the overview figure and CSV files for a built-in fixture or a spec file.

    python3 scripts/rosette_figure.py @two_rosette --out figures/rosette --lambda 0.5
"""

import argparse

from centresym.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("spec", nargs="?", default="@two_rosette")
    ap.add_argument("--out", default="figures/rosette")
    ap.add_argument("--lambda", dest="lam", type=float, default=None, help="also draw this affine equidistant")
    args = ap.parse_args()
    argv = ["analyze", args.spec, "--out", args.out, "--svg", "--no-timing"]
    if args.lam is not None:
        argv += ["--lambdas", str(args.lam)]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
