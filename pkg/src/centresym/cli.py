"""Command line: analyze, oracle and verify subcommands."""

import argparse
import json
import logging
import sys

from . import __version__
from .emit import emit_outputs
from .errors import CentreSymError, ParseError
from .fixtures import NAMED
from .pipeline import KINDS, THEOREM_GROUPS, AnalysisConfig, envelope_comparison, run_analysis
from .specio import parse_curve_file

log = logging.getLogger("centresym")


def _csv_list(text):
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _load_spec(source):
    """A spec file, inline JSON, or a built-in fixture name prefixed with '@'."""
    if source.startswith("@"):
        name = source[1:]
        if name not in NAMED:
            raise ParseError(f"unknown fixture {name!r}; choose from {sorted(NAMED)}")
        return NAMED[name]()
    return parse_curve_file(source)


def _config(args, kinds=None):
    return AnalysisConfig(
        samples_per_period=args.samples,
        root_tol=args.tol,
        kinds=kinds if kinds is not None else ("css", "wigner", "secant"),
        lambdas=getattr(args, "lambdas", ()) or (),
    )


def cmd_analyze(args):
    kinds = _csv_list(args.kinds)
    lambdas = tuple(float(x) for x in _csv_list(args.lambdas)) if args.lambdas else ()
    if lambdas and "equidistant" not in kinds:
        kinds = kinds + ("equidistant",)
    args.lambdas = lambdas
    report, geo = run_analysis(_load_spec(args.spec), _config(args, kinds))
    paths = emit_outputs(report, geo, args.out, svg=args.svg, timing=not args.no_timing)
    for p in paths:
        print(p)
    for f in report.failures:
        print(f"stage {f['stage']} failed: {f['error']}: {f['message']}", file=sys.stderr)
    return 1 if report.failures else 0


def cmd_oracle(args):
    cfg = AnalysisConfig(root_tol=args.tol, kinds=("css",), genericity=False)
    report, geo = run_analysis(_load_spec(args.spec), cfg)
    if geo.structure is None:
        print(json.dumps(report.failures, indent=2), file=sys.stderr)
        return 1
    rows, diam = envelope_comparison(geo.structure, n=args.samples)
    worst = max((r["relative"] for r in rows), default=0.0)
    slowest = min((r["ratio"] for r in rows), default=float("inf"))
    print(json.dumps({"diameter": diam, "n": args.samples, "stretches": rows, "max_relative": worst, "min_ratio": slowest}, indent=2))
    return 0 if worst < 1e-3 and slowest >= 1.8 else 1


def cmd_verify(args):
    groups = _csv_list(args.theorems)
    bad = set(groups) - set(THEOREM_GROUPS)
    if bad:
        raise ParseError(f"unknown theorem groups {sorted(bad)}")
    report, _ = run_analysis(_load_spec(args.spec), _config(args))
    for v in report.verdicts_in(groups):
        status = {True: "PASS", False: "FAIL", None: "N/A "}[v.passed]
        print(f"{status} {v.group:8s} {v.name}  {json.dumps(v.witness, default=str)}")
    if report.genericity is not None:
        failed = [e["id"] for e in report.genericity["entries"] if e["status"] == "fail"]
        print(f"genericity: {'ok' if not failed else 'fails ' + ','.join(failed)}")
    for f in report.failures:
        print(f"stage {f['stage']} failed: {f['error']}: {f['message']}")
    return 0 if report.passed(groups) else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="centresym", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, samples=True):
        p.add_argument("spec", help="curve-spec JSON file, inline JSON, or @fixture")
        if samples:
            p.add_argument("--samples", type=int, default=4096, help="samples per period")
        p.add_argument("--tol", type=float, default=1e-12, help="root tolerance")

    p = sub.add_parser("analyze", help="compute branches and write report, CSVs and figure")
    common(p)
    p.add_argument("--out", default="out")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--kinds", default="css,wigner,secant", help=f"comma list from {','.join(KINDS)}")
    p.add_argument("--lambdas", default="", help="comma list of equidistant parameters")
    p.add_argument("--no-timing", action="store_true", help="omit timing from report.json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oracle", help="compare CSS formula with the chord-intersection envelope")
    common(p, samples=False)
    p.add_argument("--samples", type=int, default=20000, help="chords per stretch for the oracle")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="print theorem verdicts; exit 0 iff all pass")
    common(p)
    p.add_argument("--theorems", default=",".join(THEOREM_GROUPS))
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CentreSymError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
