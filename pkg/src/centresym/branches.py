"""Glueing schemes, caustic branches, semi-branch merging and branch-level verdicts.

A cell is an ordered pair of arcs from one parallel-arc set, each with a
traversal direction. Both sides sweep the common angle interval the same
way, so with e = sign(kappa) on an arc the directions satisfy
e_top * d_top == e_bottom * d_bottom. A glueing scheme is the chain of cells
obtained by prolonging across division points.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .caustics import (
    DEFECT_REL,
    SingularEvent,
    css_points,
    equidistant_point,
    pair_sample,
    scan_events,
    secant_point,
)
from .curve import det2, dot2
from .errors import DoubleAsymptote, OpenBranch, ProlongationAmbiguous

ENDPOINT_KINDS = ("inflexion_to_inflexion", "closed_same_pair", "closed_swapped_pair")


@dataclass(frozen=True)
class Cell:
    top: int
    top_dir: int
    bottom: int
    bottom_dir: int

    def swapped(self):
        return Cell(self.bottom, self.bottom_dir, self.top, self.top_dir)

    @property
    def pair(self):
        return frozenset((self.top, self.bottom))


@dataclass
class GlueingScheme:
    index: int
    cells: tuple
    endpoints: str
    phi_set: int
    inflexions: tuple = None  # division-point indices of the two end inflexions
    maximal: bool = True

    @property
    def closed(self):
        return self.endpoints != "inflexion_to_inflexion"

    def __len__(self):
        return len(self.cells)


def _end_point(arc, direction):
    return arc.end_point if direction > 0 else arc.start_point


def _advance(structure, arc_idx, direction):
    m = len(structure.arcs)
    return (arc_idx + direction) % m


def _next_cell(structure, cell):
    arcs = structure.arcs
    tags = structure.division.tags
    ka = _end_point(arcs[cell.top], cell.top_dir)
    kb = _end_point(arcs[cell.bottom], cell.bottom_dir)
    if ka == kb:
        return None  # both sides meet at an inflexion: end of an inflexion scheme
    top_infl = tags[ka] == "inflexion"
    bot_infl = tags[kb] == "inflexion"
    if top_infl and bot_infl:
        raise ProlongationAmbiguous(f"both ends of cell {cell} are distinct inflexions")
    if top_infl:
        nxt = Cell(_advance(structure, cell.top, cell.top_dir), cell.top_dir, cell.bottom, -cell.bottom_dir)
    elif bot_infl:
        nxt = Cell(cell.top, -cell.top_dir, _advance(structure, cell.bottom, cell.bottom_dir), cell.bottom_dir)
    else:
        nxt = Cell(
            _advance(structure, cell.top, cell.top_dir),
            cell.top_dir,
            _advance(structure, cell.bottom, cell.bottom_dir),
            cell.bottom_dir,
        )
    a, b = arcs[nxt.top], arcs[nxt.bottom]
    if nxt.top == nxt.bottom or a.phi_set != b.phi_set:
        raise ProlongationAmbiguous(f"cell {cell} does not continue inside one parallel-arc set")
    if a.sign * nxt.top_dir != b.sign * nxt.bottom_dir:
        raise ProlongationAmbiguous(f"cell {nxt} sweeps the angle interval inconsistently")
    return nxt


def _consistent_cell(structure, top, bottom, top_dir=1):
    a, b = structure.arcs[top], structure.arcs[bottom]
    return Cell(top, top_dir, bottom, top_dir * a.sign * b.sign)


def enumerate_maximal_schemes(structure):
    """Every maximal glueing scheme; each unordered arc pair lands in exactly one."""
    arcs = structure.arcs
    tags = structure.division.tags
    visited = set()
    schemes = []

    def run(start, allow_inflexion_end):
        cells = [start]
        seen = {start.pair}
        cur = start
        while True:
            nxt = _next_cell(structure, cur)
            if nxt is None:
                if not allow_inflexion_end:
                    raise ProlongationAmbiguous(f"closed prolongation from {start} reached an inflexion")
                return cells, "inflexion_to_inflexion"
            if nxt == start:
                return cells, "closed_same_pair"
            if nxt == start.swapped():
                return cells, "closed_swapped_pair"
            if nxt.pair in seen or nxt.pair in visited:
                raise ProlongationAmbiguous(f"arc pair {sorted(nxt.pair)} repeats in a scheme")
            seen.add(nxt.pair)
            cells.append(nxt)
            cur = nxt

    for k, tag in enumerate(tags):
        if tag != "inflexion":
            continue
        m = len(arcs)
        start = Cell(k, 1, (k - 1) % m, -1)
        if start.pair in visited:
            continue
        cells, kind = run(start, True)
        if kind != "inflexion_to_inflexion":
            raise ProlongationAmbiguous(f"scheme from inflexion point {k} closes on itself")
        last = cells[-1]
        end = _end_point(arcs[last.top], last.top_dir)
        visited.update(c.pair for c in cells)
        schemes.append(
            GlueingScheme(len(schemes), tuple(cells), kind, arcs[k].phi_set, inflexions=(k, end))
        )

    for phi in structure.sets:
        members = [a for a, _ in phi.arcs]
        for i, j in ((i, j) for ii, i in enumerate(members) for j in members[ii + 1:]):
            if frozenset((i, j)) in visited:
                continue
            start = _consistent_cell(structure, i, j)
            cells, kind = run(start, False)
            visited.update(c.pair for c in cells)
            schemes.append(GlueingScheme(len(schemes), tuple(cells), kind, phi.index))

    expected = sum(comb(len(p.arcs), 2) for p in structure.sets)
    got = sum(len(s) for s in schemes)
    if got != expected:
        raise ProlongationAmbiguous(f"schemes cover {got} arc pairs, expected {expected}")
    return schemes


# -- branches -----------------------------------------------------------------


@dataclass
class SamplingConfig:
    samples_per_cell: int = 512
    refine_factor: int = 8
    refine_radius: float = 1e-2
    asymptote_band: float = 1e-7
    shell_tol: float = 1e-6


@dataclass
class Approach:
    """How the two ends of a branch meet an asymptote line."""

    line_point: np.ndarray
    line_dir: np.ndarray
    sides: tuple  # sign of det(dir, X - P) for the ends before and after the gap
    ends: tuple  # sign of <X - P, dir>

    @property
    def opposite_sides(self):
        return self.sides[0] * self.sides[1] < 0

    @property
    def opposite_ends(self):
        return self.ends[0] * self.ends[1] < 0


@dataclass
class CausticBranch:
    kind: str  # css | wigner | secant | equidistant
    scheme: GlueingScheme
    s1: np.ndarray
    s2: np.ndarray
    points: np.ndarray  # NaN rows mark gaps at asymptotes
    events: list
    rotation_number: Fraction = None
    is_closed: bool = True
    connects_inflexions: tuple = None
    lam: float = None
    doubled: bool = False
    degenerate_families: tuple = ()
    approaches: list = field(default_factory=list)
    merged_from: tuple = ()

    def count(self, kind):
        return sum(1 for e in self.events if e.kind == kind)

    @property
    def cusps(self):
        key = {"css": "cusp", "wigner": "wigner_cusp", "secant": "secant_cusp"}.get(self.kind, "equidistant_cusp")
        return [e for e in self.events if e.kind == key]

    @property
    def asymptotes(self):
        return [e for e in self.events if e.kind == "asymptote"]

    @property
    def double_tangents(self):
        return [e for e in self.events if e.kind == "double_tangent"]


EVENT_KINDS = {
    "css": ("cusp", "asymptote", "double_tangent"),
    "wigner": ("wigner_cusp",),
    "secant": ("secant_cusp",),
    "equidistant": ("equidistant_cusp",),
}


def _cell_grid(arc, direction, n):
    s = np.linspace(arc.start, arc.end, n + 1)
    return s if direction > 0 else s[::-1]


def _refine(grid, centres, radius, factor):
    if not centres:
        return grid
    h = abs(grid[1] - grid[0]) / factor
    lo, hi = min(grid[0], grid[-1]), max(grid[0], grid[-1])
    extra = [np.arange(max(lo, c - radius), min(hi, c + radius), h) for c in centres]
    out = np.unique(np.concatenate([grid] + extra))
    return out if grid[-1] >= grid[0] else out[::-1]


def _map_points(kind, p, lam, band, shell):
    if kind == "css":
        pts = css_points(p, band=band)
        # both parameters at one inflexion: snap to the inflexion point
        ab = p.a - p.b
        snap = np.sqrt(dot2(ab, ab)) < shell
        pts[snap] = 0.5 * (p.a[snap] + p.b[snap])
        return pts
    if kind == "wigner":
        return equidistant_point(p, 0.5)
    if kind == "secant":
        return secant_point(p)
    return equidistant_point(p, lam)


def _line_direction(kind, p):
    """Direction of the tangent line of the branch at each sample."""
    if kind == "css":
        return p.a - p.b
    return p.j1.d1


def _sample_cell(structure, cell, kind, lam, cfg):
    arcs = structure.arcs
    corr = structure.correspondence(cell.top, cell.bottom)
    grid = _cell_grid(arcs[cell.top], cell.top_dir, cfg.samples_per_cell)
    events = []
    degenerate = []
    for ek in EVENT_KINDS[kind]:
        found = scan_events(corr, ek, s=grid, shell_tol=cfg.shell_tol, lam=lam)
        if found.degenerate_family:
            degenerate.append(ek)
        events.extend(found)
    centres = [e.s1 for e in events]
    grid = _refine(grid, centres, cfg.refine_radius, cfg.refine_factor)
    t = corr.solve(grid)
    return grid, t, corr.sigma, events, degenerate


def _assemble_samples(structure, cells, kind, lam, cfg):
    s1, s2, sig, events, degenerate = [], [], [], [], set()
    for i, cell in enumerate(cells):
        g, t, sigma, ev, deg = _sample_cell(structure, cell, kind, lam, cfg)
        if i > 0:
            g, t = g[1:], t[1:]
        s1.append(g)
        s2.append(t)
        sig.append(np.full(g.shape, float(sigma)))
        events.extend(ev)
        degenerate.update(deg)
    return np.concatenate(s1), np.concatenate(s2), np.concatenate(sig), events, degenerate


def _insert_gaps(s1, pts, events):
    """Put a NaN row between the two samples that straddle each asymptote parameter."""
    out_pts = [pts]
    order = np.arange(len(s1), dtype=float)
    rows = []
    for e in events:
        if e.kind != "asymptote":
            continue
        hit = np.nonzero((s1[:-1] - e.s1) * (s1[1:] - e.s1) <= 0)[0]
        if hit.size:
            rows.append(hit[0] + 0.5)
    if not rows:
        return s1, pts, np.zeros(len(s1), dtype=bool)
    key = np.concatenate([order, rows])
    idx = np.argsort(key, kind="stable")
    s_all = np.concatenate([s1, np.array([np.nan] * len(rows))])[idx]
    p_all = np.concatenate(out_pts + [np.full((len(rows), 2), np.nan)])[idx]
    gap = np.concatenate([np.zeros(len(s1), bool), np.ones(len(rows), bool)])[idx]
    return s_all, p_all, gap


def _swap_event(e: SingularEvent):
    loc = e.location
    if e.kind == "secant_cusp" and loc is not None:
        loc = -np.asarray(loc)
    return SingularEvent(e.kind, e.s2, e.s1, loc, dict(e.witnesses), e.degenerate)


def line_rotation(directions):
    """Total turning of a line field along samples, in half turns (units of pi)."""
    d = np.asarray(directions, dtype=float)
    ang = np.arctan2(d[:, 1], d[:, 0])
    lifted = np.unwrap(2.0 * ang) / 2.0
    return (lifted[-1] - lifted[0]) / np.pi


def assemble_branch(structure, scheme: GlueingScheme, kind="css", lam=None, config: SamplingConfig = None):
    """Sample the image of a maximal scheme under one of the pair maps."""
    cfg = config or SamplingConfig()
    if kind not in EVENT_KINDS:
        raise ValueError(f"unknown branch kind {kind!r}")
    if kind == "equidistant" and lam is None:
        raise ValueError("equidistant branches need lam")
    curve = structure.curve
    s1, s2, sig, events, degenerate = _assemble_samples(structure, scheme.cells, kind, lam, cfg)
    doubled = kind == "secant" and scheme.endpoints != "closed_same_pair"
    if doubled:
        if scheme.closed:
            s1, s2 = np.concatenate([s1, s2[1:]]), np.concatenate([s2, s1[1:]])
            sig = np.concatenate([sig, sig[1:]])
            events = events + [_swap_event(e) for e in events]
        else:
            r1, r2 = s2[::-1], s1[::-1]
            s1, s2 = np.concatenate([s1, r1[1:]]), np.concatenate([s2, r2[1:]])
            sig = np.concatenate([sig, sig[::-1][1:]])
            events = events + [_swap_event(e) for e in events[::-1]]
    p = pair_sample(curve, s1, s2, sigma=sig)
    pts = _map_points(kind, p, lam, cfg.asymptote_band, cfg.shell_tol * curve.scale)
    rot = None
    if scheme.closed:
        rot = Fraction(int(round(line_rotation(_line_direction(kind, p)))), 2)
    s1g, ptsg, gap = _insert_gaps(s1, pts, events)
    if gap.any():
        s2g = np.full(len(s1g), np.nan)
        s2g[~gap] = s2
    else:
        s2g = s2
    branch = CausticBranch(
        kind=kind,
        scheme=scheme,
        s1=s1g,
        s2=s2g,
        points=ptsg,
        events=sorted(events, key=lambda e: _event_order(s1, e)),
        rotation_number=rot,
        is_closed=scheme.closed,
        connects_inflexions=None if scheme.closed else tuple(structure.division.params[list(scheme.inflexions)]),
        lam=lam,
        doubled=doubled,
        degenerate_families=tuple(sorted(degenerate)),
    )
    if kind == "css":
        branch.approaches = [approach_geometry(branch, e) for e in branch.asymptotes]
    return branch


def _event_order(s1, e):
    hit = np.nonzero(np.isclose(s1, e.s1, rtol=0, atol=1e-9))[0]
    return int(hit[0]) if hit.size else int(np.argmin(np.abs(s1 - e.s1)))


def assemble_all(structure, kind="css", lam=None, config=None, schemes=None):
    schemes = schemes if schemes is not None else enumerate_maximal_schemes(structure)
    return [assemble_branch(structure, s, kind, lam, config) for s in schemes]


def branch_rotation_number(branch: CausticBranch):
    if not branch.is_closed:
        raise OpenBranch("a branch joining two inflexions has no rotation number")
    return branch.rotation_number


# -- asymptotes and semi-branches ---------------------------------------------


def approach_geometry(branch, event):
    """Side and end of the asymptote line from which each branch end arrives."""
    P, d = (np.asarray(x, dtype=float) for x in event.location)
    d = d / np.hypot(*d)
    gaps = np.nonzero(np.isnan(branch.s1))[0]
    s = branch.s1
    best = None
    for g in gaps:
        lo = s[g - 1] if g > 0 else np.nan
        hi = s[g + 1] if g + 1 < len(s) else np.nan
        if min(lo, hi) <= event.s1 <= max(lo, hi):
            best = g
            break
    if best is None:
        return None
    before = branch.points[best - 1] - P
    after = branch.points[best + 1] - P
    sides = (int(np.sign(det2(d, before))), int(np.sign(det2(d, after))))
    ends = (int(np.sign(dot2(before, d))), int(np.sign(dot2(after, d))))
    return Approach(P, d, sides, ends)


def _same_line(e, f, scale, tol=1e-8):
    P, d = (np.asarray(x, dtype=float) for x in e.location)
    Q, g = (np.asarray(x, dtype=float) for x in f.location)
    d = d / np.hypot(*d)
    g = g / np.hypot(*g)
    if abs(det2(d, g)) > tol:
        return False
    return abs(det2(d, Q - P)) <= tol * scale


def _same_pair(e, f, tol=1e-7):
    direct = abs(e.s1 - f.s1) < tol and abs(e.s2 - f.s2) < tol
    swapped = abs(e.s1 - f.s2) < tol and abs(e.s2 - f.s1) < tol
    return direct or swapped


@dataclass
class SemiBranch:
    branch: int
    piece: int
    start_line: int = None  # asymptote ids at each end (None for a free end)
    end_line: int = None


def split_semibranches(branch, index=0):
    """Pieces of a branch between consecutive asymptote gaps."""
    gaps = np.nonzero(np.isnan(branch.s1))[0]
    k = len(gaps)
    if k == 0:
        return []
    pieces = []
    for i in range(k):
        # closed branches: the last piece wraps round to the first gap
        pieces.append(SemiBranch(index, i, start_line=i, end_line=(i + 1) % k))
    if not branch.is_closed:
        pieces = [SemiBranch(index, 0, None, 0)] + [
            SemiBranch(index, i + 1, i, i + 1 if i + 1 < k else None) for i in range(k)
        ]
    return pieces


@dataclass
class MergeResult:
    branches: list
    tree: list  # (semi-branch a, semi-branch b, asymptote line id)
    lines: list  # asymptote events, one per distinct line


def merge_semibranches(branches, scale=1.0):
    """Identify semi-branches that share an asymptote line.

    Each CSS branch is cut at its asymptote gaps; pieces meeting the same
    line are joined (union-find). Returns the merged branches together with
    the merge tree. Two distinct parallel pairs producing one line raise
    DoubleAsymptote.
    """
    lines = []  # (event, branch index)
    line_ids = {}
    for bi, br in enumerate(branches):
        for ai, e in enumerate(br.asymptotes):
            found = None
            for li, (f, _) in enumerate(lines):
                if _same_line(e, f, scale):
                    if not _same_pair(e, f):
                        raise DoubleAsymptote(
                            f"pairs ({e.s1}, {e.s2}) and ({f.s1}, {f.s2}) share one asymptote line"
                        )
                    found = li
                    break
            if found is None:
                lines.append((e, bi))
                found = len(lines) - 1
            line_ids[(bi, ai)] = found

    pieces = []
    for bi, br in enumerate(branches):
        for sb in split_semibranches(br, bi):
            gid = lambda j: None if j is None else line_ids[(bi, j)]  # noqa: E731
            pieces.append(SemiBranch(bi, sb.piece, gid(sb.start_line), gid(sb.end_line)))

    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    tree = []
    for li in range(len(lines)):
        touching = [i for i, p in enumerate(pieces) if li in (p.start_line, p.end_line)]
        for a, b in zip(touching, touching[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
            tree.append((pieces[a], pieces[b], li))

    groups = {}
    for i, p in enumerate(pieces):
        groups.setdefault(find(i), set()).add(p.branch)
    merged_sources = {frozenset(v) for v in groups.values()}
    out = []
    used = set()
    for bi, br in enumerate(branches):
        if bi in used:
            continue
        group = next((g for g in merged_sources if bi in g), frozenset([bi]))
        used |= group
        if len(group) == 1:
            out.append(br)
            continue
        members = [branches[j] for j in sorted(group)]
        nan = np.full((1, 2), np.nan)
        out.append(
            CausticBranch(
                kind=br.kind,
                scheme=br.scheme,
                s1=np.concatenate([np.append(m.s1, np.nan) for m in members]),
                s2=np.concatenate([np.append(m.s2, np.nan) for m in members]),
                points=np.concatenate([np.vstack([m.points, nan]) for m in members]),
                events=[e for m in members for e in m.events],
                rotation_number=None,
                is_closed=all(m.is_closed for m in members),
                approaches=[a for m in members for a in m.approaches],
                merged_from=tuple(sorted(group)),
            )
        )
    return MergeResult(out, tree, [e for e, _ in lines])


# -- verdicts -----------------------------------------------------------------


@dataclass
class Verdict:
    name: str
    passed: bool  # None when the claim does not apply to the input
    witness: dict = field(default_factory=dict)
    group: str = ""


def _inflexions_between(structure, t1, t2):
    """Inflexion count strictly inside the parameter interval (t1, t2) taken along the curve."""
    T = structure.period
    lo, hi = sorted((t1, t2))
    n = 0
    for r in structure.inflexions:
        x = lo + (r.t - lo) % T
        if lo + 1e-9 < x < hi - 1e-9:
            n += 1
    return n


def cusp_parity_ok(branch):
    if branch.rotation_number is None:
        return None
    half = branch.rotation_number.denominator == 2
    return (len(branch.cusps) % 2 == 1) == half


def classify_and_count(structure, css, wigner=(), secant=()):
    """Branch-level verdicts for assembled CSS, Wigner and secant branches."""
    out = []
    infl = [i for i, t in enumerate(structure.division.tags) if t == "inflexion"]
    infl_branches = [b for b in css if not b.is_closed]
    out.append(
        Verdict(
            "inflexion_branch_count",
            len(infl_branches) * 2 == len(infl),
            {"branches": len(infl_branches), "inflexions": len(infl)},
        )
    )
    ends = [p for b in infl_branches for p in b.scheme.inflexions]
    out.append(
        Verdict(
            "inflexion_endpoint_unique",
            sorted(ends) == sorted(infl),
            {"endpoints": sorted(ends), "inflexions": infl},
        )
    )
    params = structure.division.params
    counts = []
    for b in infl_branches:
        i, j = b.scheme.inflexions
        counts.append(_inflexions_between(structure, params[i], params[j]))
    out.append(Verdict("shell_inflexions_even", all(c % 2 == 0 for c in counts), {"counts": counts}))

    parity = [(b.scheme.index, str(b.rotation_number), len(b.cusps), cusp_parity_ok(b)) for b in css if b.is_closed]
    out.append(Verdict("css_cusp_parity", all(p[3] for p in parity), {"branches": parity}))
    expected_rot = [
        (b.scheme.index, b.scheme.endpoints, str(b.rotation_number))
        for b in css
        if b.is_closed and (b.rotation_number.denominator == 2) != (b.scheme.endpoints == "closed_swapped_pair")
    ]
    out.append(Verdict("rotation_matches_scheme", not expected_rot, {"mismatches": expected_rot}))

    if secant:
        by_scheme = {b.scheme.index: b for b in secant}
        rows = []
        ok = True
        for b in css:
            if not b.is_closed or b.scheme.index not in by_scheme:
                continue
            sc = by_scheme[b.scheme.index]
            na, nc = len(b.asymptotes), len(sc.cusps)
            good = nc == na if b.scheme.endpoints == "closed_same_pair" else nc == 2 * na
            ok &= good
            rows.append((b.scheme.index, b.scheme.endpoints, na, nc))
        out.append(Verdict("secant_cusps_vs_asymptotes", ok, {"schemes": rows}))
    if wigner:
        rows = [(b.scheme.index, str(b.rotation_number), len(b.cusps), cusp_parity_ok(b)) for b in wigner if b.is_closed]
        out.append(Verdict("wigner_cusp_parity", all(r[3] for r in rows), {"branches": rows}))
    return out


def rolle_interlacing(structure, scheme, samples=4096):
    """Between consecutive zeros of kappa1**2 - kappa2**2 along a scheme there is a zero of C.

    Returns (ok, witness). Zeros are counted on the concatenated cell grids.
    """
    s1, s2, sig = [], [], []
    for cell in scheme.cells:
        g = _cell_grid(structure.arcs[cell.top], cell.top_dir, samples)
        corr = structure.correspondence(cell.top, cell.bottom)
        s1.append(g)
        s2.append(corr.solve(g))
    s1, s2 = np.concatenate(s1), np.concatenate(s2)
    p = pair_sample(structure.curve, s1, s2)
    w = p.k1**2 - p.k2**2
    c = p.j1.kappa_s * p.k2**2 - p.k1**2 * p.j2.kappa_s
    if scheme.endpoints == "closed_swapped_pair":
        # the swapped half repeats the pairs in reverse order, negating both functions
        s1 = np.concatenate([s1, s2[1:]])
        w = np.concatenate([w, -w[1:]])
        c = np.concatenate([c, -c[1:]])
    zw = np.nonzero(np.sign(w[:-1]) * np.sign(w[1:]) < 0)[0]
    zc = np.nonzero(np.sign(c[:-1]) * np.sign(c[1:]) < 0)[0]
    bad = []
    for a, b in zip(zw, zw[1:]):
        if not np.any((zc >= a) & (zc <= b)):
            bad.append((float(s1[a]), float(s1[b])))
    if scheme.closed and len(zw) >= 2:
        a, b = zw[-1], zw[0]
        if not (np.any(zc >= a) or np.any(zc <= b)):
            bad.append((float(s1[a]), float(s1[b])))
    return not bad, {"wigner_zeros": len(zw), "cusp_zeros": len(zc), "gaps_without_cusp": bad}


__all__ = [
    "Cell",
    "GlueingScheme",
    "SamplingConfig",
    "CausticBranch",
    "Approach",
    "Verdict",
    "DEFECT_REL",
    "enumerate_maximal_schemes",
    "assemble_branch",
    "assemble_all",
    "branch_rotation_number",
    "approach_geometry",
    "split_semibranches",
    "merge_semibranches",
    "classify_and_count",
    "rolle_interlacing",
    "line_rotation",
]
