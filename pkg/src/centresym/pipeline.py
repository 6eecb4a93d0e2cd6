"""End-to-end analysis of one curve: decomposition, branches, verdicts, report."""

import logging
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.spatial import cKDTree

from . import __version__
from .branches import (
    SamplingConfig,
    Verdict,
    assemble_all,
    classify_and_count,
    enumerate_maximal_schemes,
    merge_semibranches,
    rolle_interlacing,
)
from .caustics import css_points, envelope_oracle, pair_sample
from .certificates import check_genericity
from .curve import build_curve, find_inflexions
from .errors import CentreSymError, ValidationError
from .fixtures import random_rosette, rng_for
from .parallel import decompose
from .roots import root_tolerance

log = logging.getLogger(__name__)

KINDS = ("css", "wigner", "secant", "equidistant")
THEOREM_GROUPS = ("rosette", "parity", "arcs", "shell")

GROUP_OF = {
    "inflexion_branch_count": "shell",
    "inflexion_endpoint_unique": "shell",
    "shell_inflexions_even": "shell",
    "css_cusp_parity": "parity",
    "wigner_cusp_parity": "parity",
    "rotation_matches_scheme": "parity",
    "secant_cusps_vs_asymptotes": "parity",
    "asymptote_secant_coincidence": "parity",
}


@dataclass
class AnalysisConfig:
    samples_per_period: int = 4096
    root_tol: float = 1e-12
    event_refine_factor: int = 8
    asymptote_band: float = 1e-7
    samples_per_cell: int = 512
    kinds: tuple = ("css", "wigner", "secant")
    lambdas: tuple = ()
    seed: int = 0
    genericity: bool = True

    def __post_init__(self):
        self.kinds = tuple(self.kinds)
        self.lambdas = tuple(float(x) for x in self.lambdas)
        if self.samples_per_period < 64 or self.samples_per_cell < 64:
            raise ValidationError("sample counts must be at least 64")
        if not (self.root_tol > 0 and self.asymptote_band > 0):
            raise ValidationError("tolerances must be positive")
        if self.event_refine_factor < 1:
            raise ValidationError("event_refine_factor must be at least 1")
        bad = set(self.kinds) - set(KINDS)
        if bad:
            raise ValidationError(f"unknown branch kinds {sorted(bad)}")
        if "equidistant" in self.kinds and not self.lambdas:
            raise ValidationError("equidistant branches need at least one lambda")

    def sampling(self):
        return SamplingConfig(
            samples_per_cell=self.samples_per_cell,
            refine_factor=self.event_refine_factor,
            asymptote_band=self.asymptote_band,
        )


@dataclass
class BranchRecord:
    kind: str
    scheme: int
    endpoints: str
    cusps: int
    asymptotes: int
    double_tangents: int
    rotation_number: str = None
    is_closed: bool = True
    connects_inflexions: list = None
    lam: float = None
    samples: int = 0
    spread: float = None
    degenerate_families: list = field(default_factory=list)
    asymptote_pairs: list = field(default_factory=list)
    double_tangent_pairs: list = field(default_factory=list)
    file: str = None


@dataclass
class AnalysisReport:
    curve: dict
    branches: list
    verdicts: list
    genericity: dict = None
    merge: dict = None
    timing: dict = None
    failures: list = field(default_factory=list)

    def verdicts_in(self, groups=THEOREM_GROUPS):
        return [v for v in self.verdicts if v.group in groups]

    def passed(self, groups=THEOREM_GROUPS):
        return all(v.passed is not False for v in self.verdicts_in(groups)) and not self.failures

    def branches_of(self, kind):
        return [b for b in self.branches if b.kind == kind]

    def to_dict(self, timing=True):
        out = {
            "schema": 1,
            "version": __version__,
            "curve": self.curve,
            "branches": [_clean(vars(b)) for b in self.branches],
            "verdicts": [
                {"name": v.name, "group": v.group, "passed": v.passed, "witness": _clean(v.witness)}
                for v in self.verdicts
            ],
            "genericity": _clean(self.genericity),
            "merge": _clean(self.merge),
            "failures": self.failures,
        }
        if timing and self.timing is not None:
            out["timing"] = self.timing
        return out


@dataclass
class AnalysisGeometry:
    curve: object = None
    structure: object = None
    schemes: list = None
    branches: dict = field(default_factory=dict)  # kind -> list of CausticBranch


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None, tuples to lists."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if np.isfinite(f) else None
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def branch_key(branch):
    if branch.kind == "equidistant":
        return f"equidistant_{branch.lam:g}_{branch.scheme.index:02d}"
    return f"{branch.kind}_{branch.scheme.index:02d}"


def _spread(points):
    """Largest distance of a finite branch point from the branch's mean point."""
    pts = points[np.all(np.isfinite(points), axis=1)]
    if len(pts) == 0:
        return None
    return float(np.max(np.hypot(*(pts - pts.mean(axis=0)).T)))


def _record(branch):
    return BranchRecord(
        kind=branch.kind,
        scheme=branch.scheme.index,
        endpoints=branch.scheme.endpoints,
        cusps=len(branch.cusps),
        asymptotes=len(branch.asymptotes),
        double_tangents=len(branch.double_tangents),
        rotation_number=None if branch.rotation_number is None else str(branch.rotation_number),
        is_closed=branch.is_closed,
        connects_inflexions=None if branch.connects_inflexions is None else [float(x) for x in branch.connects_inflexions],
        lam=branch.lam,
        samples=int(np.count_nonzero(np.isfinite(branch.s1))),
        spread=_spread(branch.points),
        degenerate_families=list(branch.degenerate_families),
        asymptote_pairs=[[e.s1, e.s2] for e in branch.asymptotes],
        double_tangent_pairs=[[e.s1, e.s2] for e in branch.double_tangents],
        file=branch_key(branch) + ".csv",
    )


# -- verdicts -----------------------------------------------------------------


def arc_verdicts(structure, schemes):
    out = []
    n_div = len(structure.division)
    out.append(Verdict("division_points_even", n_div % 2 == 0, {"count": n_div}, "arcs"))
    expected = sum(comb(len(p.arcs), 2) for p in structure.sets)
    got = sum(len(s) for s in schemes)
    out.append(Verdict("scheme_coverage", got == expected, {"cells": got, "expected": expected}, "arcs"))
    kinds = sorted({s.endpoints for s in schemes})
    ok = all(k in ("inflexion_to_inflexion", "closed_same_pair", "closed_swapped_pair") for k in kinds)
    out.append(Verdict("scheme_endpoint_law", ok, {"kinds": kinds}, "arcs"))
    return out


def asymptote_secant_verdict(css, secant, tol=1e-6):
    """Every asymptote parameter coincides with a zero of the secant speed."""
    zeros = [(e.s1, e.s2) for b in secant for e in b.cusps]
    misses = []
    for b in css:
        for e in b.asymptotes:
            hit = any(
                (abs(e.s1 - a) < tol and abs(e.s2 - c) < tol) or (abs(e.s1 - c) < tol and abs(e.s2 - a) < tol)
                for a, c in zeros
            )
            if not hit:
                misses.append((e.s1, e.s2))
    n = sum(len(b.asymptotes) for b in css)
    return Verdict("asymptote_secant_coincidence", not misses, {"asymptotes": n, "unmatched": misses}, "parity")


def rosette_verdicts(structure, schemes, css, wigner):
    """Branch counts, parities and asymptote counts for an n-rosette."""
    if structure.inflexions:
        return [Verdict("rosette", None, {"reason": "curve has inflexions"}, "rosette")]
    n = structure.curve.rotation
    out = []
    out.append(Verdict("rosette_branch_count", len(css) == n, {"n": n, "branches": len(css)}, "rosette"))
    odd = [b.scheme.index for b in css if len(b.cusps) % 2 == 1]
    out.append(Verdict("rosette_single_odd_branch", len(odd) == 1, {"odd_branches": odd}, "rosette"))
    half = [b.scheme.index for b in css if b.rotation_number is not None and b.rotation_number.denominator == 2]
    out.append(
        Verdict("rosette_rotation_classes", len(half) == 1 and len(css) - len(half) == n - 1, {"half_integer": half}, "rosette")
    )
    with_asym = [b.scheme.index for b in css if b.asymptotes]
    T = structure.period
    witness = {
        "expected": n // 2,
        "branches": with_asym,
        "asymptote_pairs": sorted({tuple(sorted((e.s1 % T, e.s2 % T))) for b in css for e in b.asymptotes}),
        "double_tangent_pairs": sorted({tuple(sorted((e.s1 % T, e.s2 % T))) for b in css for e in b.double_tangents}),
    }
    out.append(Verdict("rosette_asymptote_branches", len(with_asym) == n // 2, witness, "rosette"))
    if wigner:
        w_by = {b.scheme.index: b for b in wigner}
        rows, ok = [], True
        for b in css:
            if b.asymptotes or b.scheme.index not in w_by:
                continue
            nc, nw = len(b.cusps), len(w_by[b.scheme.index].cusps)
            rows.append((b.scheme.index, nc, nw))
            ok &= nc >= nw
        out.append(Verdict("rosette_css_cusps_vs_wigner", ok, {"schemes": rows}, "rosette"))
        w_odd = [b.scheme.index for b in wigner if len(b.cusps) % 2 == 1]
        total_w = sum(len(b.cusps) for b in wigner)
        ok = not w_odd if n % 2 == 0 else len(w_odd) == 1
        out.append(Verdict("rosette_wigner_parity", ok, {"odd_branches": w_odd, "total_cusps": total_w}, "rosette"))
    total_c = sum(len(b.cusps) for b in css)
    out.append(Verdict("rosette_css_total_odd", total_c % 2 == 1, {"total_cusps": total_c}, "rosette"))
    rolle = []
    for b in css:
        if b.asymptotes:
            continue
        ok, w = rolle_interlacing(structure, b.scheme)
        rolle.append((b.scheme.index, ok, w["gaps_without_cusp"]))
    out.append(Verdict("rosette_rolle_interlacing", all(r[1] for r in rolle), {"schemes": rolle}, "rosette"))
    return out


# -- envelope oracle comparison -------------------------------------------------


def curve_diameter(curve, n=1024):
    pts = curve.position(curve.grid(n))
    d = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", d, d))))


def hausdorff(a, b):
    a = a[np.all(np.isfinite(a), axis=1)]
    b = b[np.all(np.isfinite(b), axis=1)]
    if len(a) == 0 or len(b) == 0:
        return float("nan")
    da, _ = cKDTree(b).query(a)
    db, _ = cKDTree(a).query(b)
    return float(max(da.max(), db.max()))


def non_asymptotic_stretches(corr, radius, shell=1e-3, n=4096):
    """Parameter intervals of the source arc where the CSS stays within ``radius``
    of the curve's centroid and the chord endpoints stay apart.

    Near an asymptote the CSS point runs off to infinity and consecutive chords
    become parallel, so the chord-intersection oracle is dominated by rounding
    there; those stretches are excluded by the radius window.
    """
    curve = corr.curve
    centre = curve.position(curve.grid(1024)).mean(axis=0)
    s = np.linspace(corr.src.start, corr.src.end, n + 1)
    p = pair_sample(curve, s, corr.solve(s), sigma=np.full(s.shape, float(corr.sigma)))
    pts = css_points(p)
    with np.errstate(invalid="ignore"):
        near = np.hypot(*(pts - centre).T) <= radius
    gap = np.hypot(*(p.a - p.b).T)
    ok = near & (gap >= shell * curve.scale)
    out = []
    i = 0
    while i <= n:
        if not ok[i]:
            i += 1
            continue
        j = i
        while j + 1 <= n and ok[j + 1]:
            j += 1
        if j > i:
            out.append((float(s[i]), float(s[j])))
        i = j + 1
    return out


def envelope_comparison(structure, n=20000, window=1.0):
    """Hausdorff distance between chord intersections and CSS formula samples.

    Computed on every non-asymptotic stretch of every correspondence, at n
    and 2n samples. Returns (rows, diameter).
    """
    curve = structure.curve
    diam = curve_diameter(curve)
    rows = []
    for phi in structure.sets:
        members = [a for a, _ in phi.arcs]
        for ii, i in enumerate(members):
            for j in members[ii + 1:]:
                corr = structure.correspondence(i, j)
                for lo, hi in non_asymptotic_stretches(corr, window * diam):
                    errs = []
                    for m in (n, 2 * n):
                        env, _ = envelope_oracle(corr, m, s_range=(lo, hi))
                        s = np.linspace(lo, hi, m)
                        p = pair_sample(curve, s, corr.solve(s), sigma=np.full(m, float(corr.sigma)))
                        errs.append(hausdorff(env, css_points(p)))
                    ratio = errs[0] / errs[1] if errs[1] > 0 else float("inf")
                    rows.append(
                        {
                            "arcs": [i, j],
                            "stretch": [lo, hi],
                            "hausdorff": errs[0],
                            "hausdorff_doubled": errs[1],
                            "relative": errs[0] / diam,
                            "ratio": ratio,
                        }
                    )
    return rows, diam


# -- orchestration ----------------------------------------------------------------


def _summary(curve, structure):
    return {
        "name": curve.spec.name,
        "kind": curve.spec.kind,
        "period": curve.period,
        "rotation_number": curve.rotation,
        "scale": curve.scale,
        "inflexions": len(structure.inflexions) if structure else None,
        "division_points": len(structure.division) if structure else None,
        "phi_set_sizes": [len(p.arcs) for p in structure.sets] if structure else None,
    }


def run_analysis(spec, config: AnalysisConfig = None):
    """Analyse one curve. Returns (AnalysisReport, AnalysisGeometry).

    A failing stage is recorded in ``report.failures`` and later stages that
    depend on it are skipped, so a partial report is always produced.
    """
    cfg = config or AnalysisConfig()
    geo = AnalysisGeometry()
    timing = {}
    failures = []
    verdicts = []
    records = []
    genericity = None
    merge = None

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        except CentreSymError as exc:
            failures.append({"stage": name, "error": type(exc).__name__, "message": str(exc)})
            return None
        finally:
            timing[name] = round(time.perf_counter() - t0, 6)

    with root_tolerance(cfg.root_tol):
        geo.curve = stage("curve", lambda: build_curve(spec, samples=cfg.samples_per_period))
        if geo.curve is not None:
            geo.structure = stage("decomposition", lambda: decompose(geo.curve, samples=cfg.samples_per_period))
        if geo.structure is not None:
            geo.schemes = stage("schemes", lambda: enumerate_maximal_schemes(geo.structure))
        if geo.schemes is not None:
            sampling = cfg.sampling()
            for kind in cfg.kinds:
                lams = cfg.lambdas if kind == "equidistant" else (None,)
                for lam in lams:
                    res = stage(
                        f"branches_{kind}" + ("" if lam is None else f"_{lam:g}"),
                        lambda kind=kind, lam=lam: assemble_all(geo.structure, kind, lam, sampling, geo.schemes),
                    )
                    if res is not None:
                        geo.branches.setdefault(kind, []).extend(res)
            for kind in KINDS:
                records.extend(_record(b) for b in geo.branches.get(kind, []))
            css = geo.branches.get("css", [])
            wig = geo.branches.get("wigner", [])
            sec = geo.branches.get("secant", [])
            verdicts.extend(arc_verdicts(geo.structure, geo.schemes))
            if css:
                for v in classify_and_count(geo.structure, css, wig, sec):
                    v.group = GROUP_OF.get(v.name, "parity")
                    verdicts.append(v)
                if sec:
                    verdicts.append(asymptote_secant_verdict(css, sec))
                verdicts.extend(stage("rosette_verdicts", lambda: rosette_verdicts(geo.structure, geo.schemes, css, wig)) or [])
                m = stage("merge", lambda: merge_semibranches(css, geo.curve.scale))
                if m is not None:
                    merge = {
                        "branches": len(m.branches),
                        "asymptote_lines": len(m.lines),
                        "approaches": [
                            {"scheme": b.scheme.index, "opposite_sides": a.opposite_sides, "opposite_ends": a.opposite_ends}
                            for b in css
                            for a in b.approaches
                            if a is not None
                        ],
                    }
            if cfg.genericity:
                rep = stage("genericity", lambda: check_genericity(geo.curve, geo.structure, css or None))
                if rep is not None:
                    genericity = {
                        "overall": rep.overall,
                        "entries": [
                            {"id": e.id, "status": e.status, "min_margin": e.min_margin, "witness": e.witness, "note": e.note}
                            for e in rep.entries
                        ],
                    }
        elif geo.curve is not None and geo.structure is None and cfg.genericity:
            # decomposition refused the curve; still report the inflexion structure
            infl = find_inflexions(geo.curve, strict=False)
            genericity = {
                "overall": False,
                "entries": [{"id": "i", "status": "fail", "witness": {"inflexions": [(r.t, r.kind) for r in infl]}}],
            }

    summary = _summary(geo.curve, geo.structure) if geo.curve is not None else {"name": spec.name}
    report = AnalysisReport(summary, records, verdicts, genericity, merge, timing, failures)
    return report, geo


def generic_random_rosette(n, seed, config: AnalysisConfig = None, max_redraws=20):
    """First draw in the (n, seed) stream of random n-rosettes that passes the genericity report.

    Returns (report, geometry, redraws). Draws rejected at construction
    (p + p'' <= 0 somewhere) count as redraws too.
    """
    rng = rng_for([n, seed])
    for redraw in range(max_redraws + 1):
        spec = random_rosette(n, rng)
        report, geo = run_analysis(spec, config)
        if report.genericity and report.genericity["overall"] and not report.failures:
            return report, geo, redraw
        log.info("n=%d seed=%d draw %d rejected: %s", n, seed, redraw, [f["error"] for f in report.failures] or "not generic")
    raise CentreSymError(f"no generic {n}-rosette for seed {seed} within {max_redraws} redraws")
