"""Writers for report.json, per-branch CSV files and the SVG overview figure."""

import csv
import json
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np

from .pipeline import branch_key

CSV_COLUMNS = ("s1", "s2", "x", "y", "event")
VIEW = 1000.0
MARGIN = 0.05

STYLE = {
    "curve": {"stroke": "#000000", "stroke-width": "2", "fill": "none"},
    "css": {"stroke": "#c0392b", "stroke-width": "2", "fill": "none"},
    "wigner": {"stroke": "#1f5fa8", "stroke-width": "1.5", "fill": "none", "stroke-dasharray": "8 5"},
    "secant": {"stroke": "#7f8c8d", "stroke-width": "1", "fill": "none", "stroke-dasharray": "2 3 8 3"},
    "equidistant": {"stroke": "#27ae60", "stroke-width": "1.2", "fill": "none", "stroke-dasharray": "12 4"},
    "asymptote": {"stroke": "#555555", "stroke-width": "1", "fill": "none", "stroke-dasharray": "1 4"},
}
CUSP_FILL = {"css": "#c0392b", "wigner": "#1f5fa8", "secant": "#7f8c8d", "equidistant": "#27ae60"}


def write_report(report, path, timing=True):
    """Deterministic JSON: sorted keys, NaN/inf as null, shortest round-trip floats."""
    text = json.dumps(report.to_dict(timing=timing), indent=2, sort_keys=True, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")
    return path


def _num(x):
    return "" if x is None or not np.isfinite(x) else f"{x:.12g}"


def branch_rows(branch):
    """CSV rows for one branch: samples, one extra row per event, asymptote rows at the gaps."""
    s1, s2, pts = branch.s1, branch.s2, branch.points
    finite = np.isfinite(s1)
    gap_rows = np.nonzero(~finite)[0]
    asym = [e for e in branch.events if e.kind == "asymptote"]
    others = [e for e in branch.events if e.kind != "asymptote"]
    extra = {}  # row index -> event rows emitted after that sample row
    fidx = np.nonzero(finite)[0]
    for e in others:
        k = fidx[np.argmin(np.abs(s1[fidx] - e.s1))]
        loc = np.asarray(e.location, dtype=float) if e.location is not None else np.array([np.nan, np.nan])
        extra.setdefault(int(k), []).append((e.s1, e.s2, loc[0], loc[1], e.kind))
    gaps = dict(zip(gap_rows.tolist(), asym))
    rows = []
    for i in range(len(s1)):
        if i in gaps:
            e = gaps[i]
            rows.append((_num(e.s1), _num(e.s2), "", "", "asymptote"))
        elif finite[i]:
            rows.append((_num(s1[i]), _num(s2[i]), _num(pts[i, 0]), _num(pts[i, 1]), ""))
        for r in extra.get(i, ()):
            rows.append((_num(r[0]), _num(r[1]), _num(r[2]), _num(r[3]), r[4]))
    # asymptotes without a gap row (none expected) still get a row so counts match
    for e in asym[len(gap_rows):]:
        rows.append((_num(e.s1), _num(e.s2), "", "", "asymptote"))
    return rows


def write_branch_csv(branch, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        if len(branch.s1):
            w.writerows(branch_rows(branch))
    return path


def read_event_counts(path):
    """Event-column tallies of a branch CSV, used to cross-check report counts."""
    counts = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["event"]:
                counts[row["event"]] = counts.get(row["event"], 0) + 1
    return counts


# -- SVG ------------------------------------------------------------------------


class _Frame:
    """Affine map from curve coordinates to the 1000x1000 viewBox (y flipped)."""

    def __init__(self, pts):
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = float(max(hi - lo)) or 1.0
        self.k = VIEW * (1 - 2 * MARGIN) / span
        self.centre = 0.5 * (lo + hi)
        self.radius = span  # points further than this from the frame centre are cut

    def __call__(self, p):
        q = (np.asarray(p, dtype=float) - self.centre) * self.k
        return np.column_stack([VIEW / 2 + q[:, 0], VIEW / 2 - q[:, 1]])

    def runs(self, pts):
        """Split a polyline at NaN rows and far-away points."""
        ok = np.all(np.isfinite(pts), axis=1)
        ok[ok] = np.hypot(*(pts[ok] - self.centre).T) <= 3 * self.radius
        out, cur = [], []
        for i, good in enumerate(ok):
            if good:
                cur.append(i)
            elif cur:
                out.append(cur)
                cur = []
        if cur:
            out.append(cur)
        return [pts[idx] for idx in out if len(idx) > 1]


def _polyline(parent, pts, style, closed=False):
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
    ET.SubElement(parent, "polygon" if closed else "polyline", {"points": coords, **style})


def render_svg(geometry, path, kinds=None):
    curve = geometry.curve
    cpts = curve.position(curve.grid(2048))
    frame = _Frame(cpts)
    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "viewBox": f"0 0 {VIEW:g} {VIEW:g}",
            "width": f"{VIEW:g}",
            "height": f"{VIEW:g}",
        },
    )
    ET.SubElement(svg, "title").text = curve.spec.name or "curve"
    defs = ET.SubElement(svg, "defs")
    clip = ET.SubElement(defs, "clipPath", {"id": "view"})
    ET.SubElement(clip, "rect", {"x": "0", "y": "0", "width": f"{VIEW:g}", "height": f"{VIEW:g}"})
    root = ET.SubElement(svg, "g", {"clip-path": "url(#view)"})
    ET.SubElement(root, "rect", {"x": "0", "y": "0", "width": f"{VIEW:g}", "height": f"{VIEW:g}", "fill": "#ffffff"})

    layer = ET.SubElement(root, "g", {"id": "curve"})
    _polyline(layer, frame(cpts), STYLE["curve"], closed=True)

    order = [k for k in ("secant", "equidistant", "wigner", "css") if kinds is None or k in kinds]
    for kind in order:
        layer = ET.SubElement(root, "g", {"id": kind})
        for b in geometry.branches.get(kind, []):
            for run in frame.runs(b.points):
                _polyline(layer, frame(run), STYLE[kind])
            for e in b.cusps:
                if e.location is None:
                    continue
                loc = np.asarray(e.location, dtype=float)
                if not np.all(np.isfinite(loc)) or np.hypot(*(loc - frame.centre)) > 3 * frame.radius:
                    continue
                x, y = frame(loc[None, :])[0]
                ET.SubElement(layer, "circle", {"cx": f"{x:.2f}", "cy": f"{y:.2f}", "r": "4", "fill": CUSP_FILL[kind]})

    layer = ET.SubElement(root, "g", {"id": "asymptotes"})
    reach = 4 * frame.radius
    for b in geometry.branches.get("css", []):
        for e in b.asymptotes:
            p, d = (np.asarray(v, dtype=float) for v in e.location)
            d = d / np.hypot(*d)
            ends = np.array([p - reach * d, p + reach * d])
            _polyline(layer, frame(ends), STYLE["asymptote"])

    ET.indent(svg)
    ET.ElementTree(svg).write(path, encoding="utf-8", xml_declaration=True)
    return path


def emit_outputs(report, geometry, out_dir, svg=False, timing=True):
    """Write report.json, one CSV per branch and optionally figure.svg; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [write_report(report, out / "report.json", timing=timing)]
    for kind in ("css", "wigner", "secant", "equidistant"):
        for b in geometry.branches.get(kind, []):
            written.append(write_branch_csv(b, out / f"{branch_key(b)}.csv"))
    if svg and geometry.curve is not None:
        written.append(render_svg(geometry, out / "figure.svg"))
    return written
