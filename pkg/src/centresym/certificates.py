"""Genericity report, the same-side predicate and two asymptote certificates.

Equality conditions count as violated when the relevant defect is at most
DEFECT_REL times its natural scale. Everything is checked at sampling
resolution: a "pass" means no violation was seen, not a proof.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import pi

import numpy as np

from .branches import assemble_all, enumerate_maximal_schemes
from .caustics import (
    DEFECT_REL,
    cusp_defect,
    cusp_second_defect,
    double_tangent_defect,
    natural_scale,
    pair_sample,
    scan_events,
)
from .curve import det2, dot2
from .errors import (
    CentreSymError,
    DegenerateConstruction,
    HypothesesUnmet,
    InflexionAtPair,
)

CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


@dataclass
class ConditionEntry:
    id: str
    status: str  # pass | fail | not_checkable
    witness: dict = field(default_factory=dict)
    min_margin: float = None  # smallest defect-to-scale ratio seen at the checked events
    note: str = ""


@dataclass
class GenericityReport:
    entries: list

    @property
    def overall(self):
        return all(e.status != "fail" for e in self.entries)

    def __getitem__(self, cid):
        for e in self.entries:
            if e.id == cid:
                return e
        raise KeyError(cid)

    @property
    def failed(self):
        return [e.id for e in self.entries if e.status == "fail"]


def _entry(cid, violations, margins, note="", extra=None):
    witness = dict(extra or {})
    if violations:
        witness["violations"] = violations[:5]
    m = min(margins) if margins else None
    return ConditionEntry(cid, "fail" if violations else "pass", witness, m, note)


def _pair(curve, s1, s2):
    return pair_sample(curve, np.array([s1]), np.array([s2]))


def self_crossings(points, closed=True, skip=2):
    """Transversal and tangential crossings of a polyline: (i, j, u, w, sin_angle).

    Segments i and j (non-adjacent) intersect at P[i] + u dP[i] = P[j] + w dP[j].
    """
    P = np.asarray(points, dtype=float)
    if closed:
        P = np.vstack([P, P[:1]])
    A = P[:-1]
    D = P[1:] - P[:-1]
    n = len(A)
    ok_seg = np.all(np.isfinite(A), axis=1) & np.all(np.isfinite(D), axis=1)
    lo = np.minimum(P[:-1], P[1:])
    hi = np.maximum(P[:-1], P[1:])
    out = []
    chunk = 256
    j = np.arange(n)
    for i0 in range(0, n, chunk):
        i = np.arange(i0, min(n, i0 + chunk))[:, None]
        js = j[None, i0:]
        sep = np.abs(i - js)
        if closed:
            sep = np.minimum(sep, n - sep)
        cand = (js > i) & (sep >= skip) & ok_seg[i] & ok_seg[js]
        for axis in (0, 1):
            cand &= lo[i, axis] <= hi[js, axis]
            cand &= lo[js, axis] <= hi[i, axis]
        ii, jj = np.nonzero(cand)
        if ii.size == 0:
            continue
        jj = jj + i0
        ii = ii + i0
        den = det2(D[ii], D[jj])
        with np.errstate(divide="ignore", invalid="ignore"):
            u = det2(A[jj] - A[ii], D[jj]) / den
            w = det2(A[jj] - A[ii], D[ii]) / den
        hit = (den != 0) & (u >= 0) & (u < 1) & (w >= 0) & (w < 1)
        norms = np.sqrt(dot2(D[ii], D[ii]) * dot2(D[jj], D[jj]))
        for a, b, uu, ww, s in zip(ii[hit], jj[hit], u[hit], w[hit], (den / norms)[hit]):
            out.append((int(a), int(b), float(uu), float(ww), float(s)))
    return out


def _all_events(structure):
    """Defect roots over every unordered pair of arcs of every parallel-arc set."""
    found = {"cusp": [], "asymptote": [], "double_tangent": []}
    degenerate = {}
    for phi in structure.sets:
        members = [a for a, _ in phi.arcs]
        for i, j in combinations(members, 2):
            corr = structure.correspondence(i, j)
            for kind in found:
                ev = scan_events(corr, kind, n=512)
                if ev.degenerate_family:
                    degenerate.setdefault(kind, []).append((i, j, ev.max_defect, ev.scale))
                found[kind].extend(ev)
    return found, degenerate


def check_genericity(curve, structure, css_branches=None, crossing_samples=2048):
    """Numerical check of conditions (i)-(viii) for a decomposed curve."""
    entries = []
    scale = curve.scale

    # (i) transversal self-crossings, non-degenerate inflexions, no undulation
    t = curve.grid(crossing_samples)
    pts = curve.position(t)
    cross = self_crossings(pts)
    tangential = [c for c in cross if abs(c[4]) <= 1e-6]
    bad_infl = [(r.t, r.kind) for r in structure.inflexions if r.kind != "nondegenerate_inflexion"]
    from .curve import find_inflexions

    und = [(r.t, r.kind) for r in find_inflexions(curve, strict=False) if r.kind != "nondegenerate_inflexion"]
    viol = [("tangential_crossing", c[:2]) for c in tangential] + [("inflexion", x) for x in bad_infl + und]
    margins = [abs(c[4]) / 1e-6 for c in cross]
    entries.append(_entry("i", viol, margins, extra={"self_crossings": len(cross)}))

    # (ii) two inflexions never parallel
    viol, margins = [], []
    th = curve.tangent_angle(np.array([r.t for r in structure.inflexions])) if structure.inflexions else []
    for a, b in combinations(range(len(structure.inflexions)), 2):
        gap = (th[a] - th[b]) / pi
        d = abs(gap - round(gap))
        margins.append(d / 1e-9)
        if d <= 1e-9:
            viol.append((structure.inflexions[a].t, structure.inflexions[b].t))
    entries.append(_entry("ii", viol, margins, note="checked over all inflexion pairs"))

    events, degenerate = _all_events(structure)

    # (iii) double tangents avoid inflexions
    viol, margins = [], []
    for e in events["double_tangent"]:
        p = _pair(curve, e.s1, e.s2)
        k = float(abs(p.k1[0] * p.k2[0]))
        ref = 1.0 / scale**2
        margins.append(k / (DEFECT_REL * ref))
        if k <= DEFECT_REL * ref:
            viol.append((e.s1, e.s2, k))
    extra = {"double_tangents": len(events["double_tangent"])}
    if "double_tangent" in degenerate:
        viol.append(("identically_zero_double_tangent_defect", degenerate["double_tangent"][0]))
    entries.append(_entry("iii", viol, margins, extra=extra))

    # (iv) cusps are ordinary
    viol, margins = [], []
    for e in events["cusp"]:
        p = _pair(curve, e.s1, e.s2)
        e2 = float(abs(cusp_second_defect(p)[0]))
        ref = natural_scale("second", p, curve)
        margins.append(e2 / (DEFECT_REL * ref))
        if e2 <= DEFECT_REL * ref:
            viol.append((e.s1, e.s2, e2))
    if "cusp" in degenerate:
        i, j, mx, sc = degenerate["cusp"][0]
        viol.append({"identically_zero_cusp_defect": (i, j), "max_defect": mx, "scale": sc})
    entries.append(_entry("iv", viol, margins, extra={"cusps": len(events["cusp"])}))

    # (v) asymptotes are not cusps
    viol, margins = [], []
    for e in events["asymptote"]:
        p = _pair(curve, e.s1, e.s2)
        c = float(abs(cusp_defect(p)[0]))
        ref = natural_scale("cusp", p, curve)
        margins.append(c / (DEFECT_REL * ref))
        if c <= DEFECT_REL * ref:
            viol.append((e.s1, e.s2, c))
    if "asymptote" in degenerate:
        viol.append(("identically_zero_asymptote_defect", degenerate["asymptote"][0]))
    entries.append(_entry("v", viol, margins, extra={"asymptotes": len(events["asymptote"])}))

    # (vi) a cusp never sits on a double tangent
    viol, margins = [], []
    for e in events["cusp"]:
        p = _pair(curve, e.s1, e.s2)
        d = float(abs(double_tangent_defect(p)[0]))
        margins.append(d / (DEFECT_REL * scale))
        if d <= DEFECT_REL * scale:
            viol.append((e.s1, e.s2, d))
    entries.append(_entry("vi", viol, margins))

    # (vii) no two asymptotic pairs share a chord
    viol, margins = [], []
    lines = []
    for e in events["asymptote"]:
        P, d = (np.asarray(x, dtype=float) for x in e.location)
        d = d / np.hypot(*d)
        lines.append((e, P, d))
    for (e, P, d), (f, Q, g) in combinations(lines, 2):
        if _same_unordered_pair((e.s1, e.s2), (f.s1, f.s2), curve.period):
            continue
        ang = abs(det2(d, g))
        off = abs(det2(d, Q - P)) / scale
        margins.append(max(ang, off) / 1e-8)
        if ang <= 1e-8 and off <= 1e-8:
            viol.append(((e.s1, e.s2), (f.s1, f.s2)))
    entries.append(
        _entry("vii", viol, margins, note="no violation found at the sampling resolution" if not viol else "")
    )

    # (viii) CSS self-crossings are transversal and avoid cusps
    if css_branches is None:
        try:
            css_branches = assemble_all(structure, "css", schemes=enumerate_maximal_schemes(structure))
        except CentreSymError as exc:
            entries.append(ConditionEntry("viii", "not_checkable", {}, None, f"branches unavailable: {exc}"))
            css_branches = None
    if css_branches is not None:
        entries.append(_css_crossings(curve, css_branches))
    return GenericityReport(entries)


def _same_unordered_pair(x, y, period, tol=1e-6):
    def close(u, v):
        d = (u - v) % period
        return min(d, period - d) < tol

    return (close(x[0], y[0]) and close(x[1], y[1])) or (close(x[0], y[1]) and close(x[1], y[0]))


def _css_crossings(curve, branches):
    pts, s1, s2, owner = [], [], [], []
    for bi, b in enumerate(branches):
        if "cusp" in b.degenerate_families:
            continue
        pts.append(b.points)
        s1.append(b.s1)
        s2.append(b.s2)
        owner.append(np.full(len(b.s1), bi))
        pts.append(np.full((1, 2), np.nan))
        s1.append([np.nan])
        s2.append([np.nan])
        owner.append([-1])
    if not pts:
        return ConditionEntry("viii", "not_checkable", {}, None, "CSS is degenerate")
    P = np.vstack(pts)
    S1 = np.concatenate(s1)
    S2 = np.concatenate(s2)
    viol, margins = [], []
    crossings = self_crossings(P, closed=False, skip=3)
    for i, j, u, w, _ in crossings:
        a1 = S1[i] + u * (S1[i + 1] - S1[i])
        a2 = S2[i] + u * (S2[i + 1] - S2[i])
        b1 = S1[j] + w * (S1[j + 1] - S1[j])
        b2 = S2[j] + w * (S2[j + 1] - S2[j])
        if not np.all(np.isfinite([a1, a2, b1, b2])):
            continue
        p = _pair(curve, a1, a2)
        q = _pair(curve, b1, b2)
        if _same_unordered_pair((a1, a2), (b1, b2), curve.period):
            continue
        d1 = (p.b - p.a)[0]
        d2 = (q.b - q.a)[0]
        sin = abs(det2(d1, d2)) / np.sqrt(dot2(d1, d1) * dot2(d2, d2))
        cp = abs(cusp_defect(p)[0]) / natural_scale("cusp", p, curve)
        cq = abs(cusp_defect(q)[0]) / natural_scale("cusp", q, curve)
        m = min(sin, cp, cq)
        margins.append(m / DEFECT_REL)
        if m <= DEFECT_REL:
            viol.append(((a1, a2), (b1, b2), m))
    return _entry("viii", viol, margins, note="checked at polyline self-crossings", extra={"crossings": len(crossings)})


# -- same side -----------------------------------------------------------------


def curved_same_side(pair, tol=1e-10):
    """Whether the curve bends to the same side of the common tangent direction at a and b.

    The translated germ at b lies on the same side as the germ at a exactly
    when sign(kappa(s1)) == sigma * sign(kappa(s2)).
    """
    k1 = float(np.asarray(pair.k1).reshape(-1)[0])
    k2 = float(np.asarray(pair.k2).reshape(-1)[0])
    sigma = float(np.asarray(pair.sigma).reshape(-1)[0])
    if abs(k1) < tol or abs(k2) < tol:
        raise InflexionAtPair("curvature vanishes at one point of the pair")
    return np.sign(k1) == sigma * np.sign(k2)


# -- certificates --------------------------------------------------------------


@dataclass
class ArcEndpointData:
    """Endpoint data of two arcs P and Q in a standard (opposite-direction) pairing.

    Curvatures are the local ones: Q is traversed in its own direction and P
    the opposite way, so an asymptote appears where kappa_Q + kappa_P = 0.
    Tangents are oriented and used for the parallelism test and for the
    parallelogram construction. Optional interior curvature samples let the
    sign hypotheses be checked beyond the endpoints; ``turning_P`` and
    ``turning_Q`` are total tangent turnings in radians.
    """

    p0: np.ndarray
    p1: np.ndarray
    q0: np.ndarray
    q1: np.ndarray
    tp0: np.ndarray
    tp1: np.ndarray
    tq0: np.ndarray
    tq1: np.ndarray
    kappa_p0: float
    kappa_p1: float
    kappa_q0: float
    kappa_q1: float
    kappa_p_samples: np.ndarray = None
    kappa_q_samples: np.ndarray = None
    turning_P: float = None
    turning_Q: float = None

    def __post_init__(self):
        for name in ("p0", "p1", "q0", "q1", "tp0", "tp1", "tq0", "tq1"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))


def endpoint_data_from_correspondence(corr):
    """ArcEndpointData for Q = source arc (own direction) and P = target arc."""
    curve = corr.curve
    s = np.array([corr.src.start, corr.src.end])
    t = corr.solve(s)
    jq = curve.jet(s)
    jp = curve.jet(t)
    sig = corr.sigma
    grid = np.linspace(corr.src.start, corr.src.end, 257)
    kq = curve.kappa(grid)
    kp = -sig * curve.kappa(corr.solve(grid))
    th_q = curve.tangent_angle(s)
    th_p = curve.tangent_angle(t)
    return ArcEndpointData(
        p0=jp.position[0],
        p1=jp.position[1],
        q0=jq.position[0],
        q1=jq.position[1],
        tp0=jp.tangent_unit[0],
        tp1=jp.tangent_unit[1],
        tq0=jq.tangent_unit[0],
        tq1=jq.tangent_unit[1],
        kappa_p0=float(-sig * jp.kappa[0]),
        kappa_p1=float(-sig * jp.kappa[1]),
        kappa_q0=float(jq.kappa[0]),
        kappa_q1=float(jq.kappa[1]),
        kappa_p_samples=kp,
        kappa_q_samples=kq,
        turning_P=float(th_p[1] - th_p[0]),
        turning_Q=float(th_q[1] - th_q[0]),
    )


def _parallel(u, v, tol=1e-9):
    return abs(det2(u, v)) <= tol * np.sqrt(dot2(u, u) * dot2(v, v))


def mirrored(data: ArcEndpointData):
    """Reflection x -> -x of the configuration; every curvature changes sign."""
    flip = np.array([-1.0, 1.0])
    neg = lambda v: None if v is None else -np.asarray(v, dtype=float)  # noqa: E731
    return ArcEndpointData(
        p0=data.p0 * flip,
        p1=data.p1 * flip,
        q0=data.q0 * flip,
        q1=data.q1 * flip,
        tp0=data.tp0 * flip,
        tp1=data.tp1 * flip,
        tq0=data.tq0 * flip,
        tq1=data.tq1 * flip,
        kappa_p0=-data.kappa_p0,
        kappa_p1=-data.kappa_p1,
        kappa_q0=-data.kappa_q0,
        kappa_q1=-data.kappa_q1,
        kappa_p_samples=neg(data.kappa_p_samples),
        kappa_q_samples=neg(data.kappa_q_samples),
        turning_P=data.turning_P,
        turning_Q=data.turning_Q,
    )


def _either_orientation(check, data):
    """Run ``check`` on the data, or on its mirror image when only that meets the hypotheses."""
    failed = check(data)
    if not failed:
        return data
    other = mirrored(data)
    if not check(other):
        return other
    raise HypothesesUnmet(failed)


def _curvature_sign_hypotheses(data, tol):
    failed = []
    if not (_parallel(data.tp0, data.tq0) and _parallel(data.tp1, data.tq1)):
        failed.append("i")
    if data.kappa_q_samples is not None and data.kappa_p_samples is not None:
        if len(data.kappa_q_samples) < 2 or len(data.kappa_p_samples) < 2:
            failed.append("ii")
    kp_inner = data.kappa_p_samples[1:] if data.kappa_p_samples is not None else np.array([data.kappa_p1])
    if not (np.all(kp_inner < 0) and data.kappa_q0 > 0 and data.kappa_q1 <= 0):
        failed.append("iii")
    # same side near (p0, q0): opposite local curvature signs; a vanishing
    # kappa_P(p0) takes the sign it has just inside the arc
    sp0 = np.sign(data.kappa_p0) if abs(data.kappa_p0) > tol else np.sign(kp_inner[0])
    if not (sp0 * np.sign(data.kappa_q0) < 0):
        failed.append("iv")
    return failed


def certificate_curvature_sign(data: ArcEndpointData, tol=1e-12):
    """'asymptote_certified' when (kQ0 + kP0)(kQ1 + kP1) < 0, else 'inconclusive'.

    The sign hypotheses are stated for one orientation; a configuration whose
    mirror image meets them is accepted too, since reflection keeps asymptotes.
    """
    data = _either_orientation(lambda d: _curvature_sign_hypotheses(d, tol), data)
    prod = (data.kappa_q0 + data.kappa_p0) * (data.kappa_q1 + data.kappa_p1)
    return "asymptote_certified" if prod < 0 else "inconclusive"


def _line_meet(p, u, q, v):
    den = det2(u, v)
    if abs(den) <= 1e-12 * np.sqrt(dot2(u, u) * dot2(v, v)):
        raise DegenerateConstruction("lines meet at infinity")
    return p + det2(q - p, v) / den * u


def _ratio(x, y):
    """Signed ratio of collinear vectors x / y."""
    yy = dot2(y, y)
    if yy == 0:
        raise DegenerateConstruction("zero reference segment")
    return float(dot2(x, y) / yy)


@dataclass
class ParallelogramConstruction:
    shifted_p1: np.ndarray
    c: np.ndarray
    b0: np.ndarray
    b1: np.ndarray
    rho: tuple

    @property
    def rho_max(self):
        return max(self.rho)

    @property
    def rho_min(self):
        return min(self.rho)


def parallelogram_construction(data: ArcEndpointData):
    tp1 = data.p1 + (data.q0 - data.p0)
    c = _line_meet(tp1, data.tq0, data.q1, data.tq1)
    b0 = _line_meet(data.q0, data.tq1, tp1, data.tq0)
    b1 = _line_meet(data.q0, data.tq0, data.q1, data.tq1)
    rho = (_ratio(c - b1, data.q1 - b1), _ratio(c - b0, tp1 - b0))
    return ParallelogramConstruction(tp1, c, b0, b1, rho)


def _unsigned_turn(t0, t1):
    return float(np.arccos(np.clip(dot2(t0, t1) / np.sqrt(dot2(t0, t0) * dot2(t1, t1)), -1.0, 1.0)))


def _with_samples(ends, samples):
    extra = np.ravel(samples) if samples is not None else np.empty(0)
    return np.concatenate([np.asarray(ends, dtype=float), extra])


def _parallelogram_hypotheses(data, tol):
    failed = []
    if not (_parallel(data.tp0, data.tq0) and _parallel(data.tp1, data.tq1)):
        failed.append("i")
    kp = _with_samples([data.kappa_p0, data.kappa_p1], data.kappa_p_samples)
    kq = _with_samples([data.kappa_q0, data.kappa_q1], data.kappa_q_samples)
    if not (np.all(kp > 0) and np.all(kq < 0)):
        failed.append("ii")
    turn_p = abs(data.turning_P) if data.turning_P is not None else _unsigned_turn(data.tp0, data.tp1)
    turn_q = abs(data.turning_Q) if data.turning_Q is not None else _unsigned_turn(data.tq0, data.tq1)
    if not (abs(turn_p - turn_q) <= tol * max(1.0, turn_p) and turn_p < pi):
        failed.append("iii")
    # definite curvature plus equal turning is what makes every point paired
    if "ii" in failed or "iii" in failed:
        failed.append("iv")
    if not (data.kappa_p0 * data.kappa_q0 < 0 and data.kappa_p1 * data.kappa_q1 < 0):
        failed.append("v")
    return failed


def certificate_parallelogram(data: ArcEndpointData, tol=1e-9):
    """'asymptote_certified' when both ratios lie on one side of 1, else 'inconclusive'.

    Curvatures follow the same local convention as certificate_curvature_sign,
    under which the same-side condition reads kappa_P * kappa_Q < 0. Mirror
    images are accepted as there; the ratios are affine invariants.
    """
    data = _either_orientation(lambda d: _parallelogram_hypotheses(d, tol), data)
    con = parallelogram_construction(data)
    ok = con.rho_max < 1 or con.rho_min > 1
    return "asymptote_certified" if ok else "inconclusive"
