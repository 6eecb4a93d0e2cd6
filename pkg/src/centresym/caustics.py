"""Point maps of parallel pairs and singular-event detection.

Sign convention. The formulas in the literature use local arc-length
parameterisations traversed in opposite directions at a and b. With one
global parameter and sigma = sign<f'(s1), f'(s2)>, the local curvature at b
is -sigma*kappa(s2), its first arc-length derivative is +kappa_s(s2) and the
second is -sigma*kappa_ss(s2). Hence

    CSS point     (k1 a - sigma k2 b) / (k1 - sigma k2)
    asymptote     A = k1 - sigma k2
    cusp          C = kappa_s(s1) k2**2 - k1**2 kappa_s(s2)       (sigma-free)
    cusp order 2  E = kappa_ss(s1) k2**3 - k1**3 kappa_ss(s2)     (sigma-free)
    Wigner cusp   W = k1 + sigma k2
    double tangent D = det(a - b, unit tangent at s1)
"""

from dataclasses import dataclass, field

import numpy as np

from .curve import det2, dot2
from .errors import (
    AsymptoticPair,
    DegenerateChord,
    ParallelConsecutiveChords,
    SingularPoint,
)
from .roots import bisect, sign_change_brackets

# equality defects count as zero below this fraction of their natural scale
DEFECT_REL = 1e-7


@dataclass
class PairSample:
    s1: np.ndarray
    s2: np.ndarray
    j1: object
    j2: object
    sigma: np.ndarray

    @property
    def a(self):
        return self.j1.position

    @property
    def b(self):
        return self.j2.position

    @property
    def k1(self):
        return self.j1.kappa

    @property
    def k2(self):
        return self.j2.kappa

    @property
    def standard(self):
        return (self.sigma < 0) & (self.j2.kappa != 0)

    @property
    def chord(self):
        """(point, direction) of the line through a and b."""
        return self.a, self.b - self.a


def pair_sample(curve, s1, s2, sigma=None) -> PairSample:
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    j1 = curve.jet(s1)
    j2 = curve.jet(s2)
    if sigma is None:
        sigma = np.sign(dot2(j1.d1, j2.d1))
    return PairSample(s1, s2, j1, j2, np.asarray(sigma, dtype=float))


# -- defects ----------------------------------------------------------------


def asymptote_defect(p: PairSample):
    return p.k1 - p.sigma * p.k2


def wigner_defect(p: PairSample):
    return p.k1 + p.sigma * p.k2


def cusp_defect(p: PairSample):
    return p.j1.kappa_s * p.k2**2 - p.k1**2 * p.j2.kappa_s


def cusp_second_defect(p: PairSample):
    return p.j1.kappa_ss * p.k2**3 - p.k1**3 * p.j2.kappa_ss


def equidistant_defect(p: PairSample, lam):
    """Vanishes where the lam-equidistant map is singular; lam = 1/2 gives the Wigner defect up to a factor."""
    return (1.0 - lam) * p.k1 + lam * p.sigma * p.k2


def double_tangent_defect(p: PairSample):
    return det2(p.a - p.b, p.j1.tangent_unit)


def secant_speed(p: PairSample):
    """Signed speed of s -> a - b(s) along the tangent at a, times det(f'(s1), f''(s2)).

    Uses dt/ds = -det(f''(s1), f'(s2)) / det(f'(s1), f''(s2)) from
    differentiating the parallelism condition; the common factor keeps it
    finite where kappa(s2) vanishes.
    """
    u = p.j1.tangent_unit
    den = det2(p.j1.d1, p.j2.d2)
    num = det2(p.j1.d2, p.j2.d1)
    return dot2(p.j1.d1, u) * den + dot2(p.j2.d1, u) * num


# -- point maps ---------------------------------------------------------------


def css_point(p: PairSample, tol=1e-12):
    """Centre-symmetry-set point of a pair; AsymptoticPair when the denominator vanishes."""
    den = asymptote_defect(p)
    bound = tol * np.maximum(np.abs(p.k1), np.abs(p.k2))
    if np.any(np.abs(den) <= bound):
        raise AsymptoticPair("kappa1 - sigma*kappa2 vanishes; the chord is an asymptote")
    num = p.k1[..., None] * p.a - (p.sigma * p.k2)[..., None] * p.b
    return num / den[..., None]


def css_points(p: PairSample, band=0.0):
    """Vectorised css_point; NaN where |A| <= band * max|kappa| or both curvatures vanish."""
    den = asymptote_defect(p)
    kmax = np.maximum(np.abs(p.k1), np.abs(p.k2))
    with np.errstate(divide="ignore", invalid="ignore"):
        num = p.k1[..., None] * p.a - (p.sigma * p.k2)[..., None] * p.b
        out = num / den[..., None]
    bad = (np.abs(den) <= band * np.max(kmax, initial=0.0)) | (kmax == 0)
    out[bad] = np.nan
    return out


def equidistant_point(p: PairSample, lam):
    return lam * p.a + (1.0 - lam) * p.b


def wigner_point(p: PairSample):
    return equidistant_point(p, 0.5)


def secant_point(p: PairSample):
    return p.a - p.b


def css_curvature(p: PairSample, chord_tol=1e-12):
    """Signed curvature of the CSS at the image of a standard pair.

    Evaluated with local opposite-direction curvatures k_a = kappa(s1),
    k_b = -sigma kappa(s2) and derivatives kappa_s(s1), kappa_s(s2).
    """
    ka = p.k1
    kb = -p.sigma * p.k2
    c = cusp_defect(p)
    ab = p.a - p.b
    r = np.sqrt(dot2(ab, ab))
    scale = np.abs(p.j1.kappa_s) * ka**2 + np.abs(p.j2.kappa_s) * kb**2
    if np.any(np.abs(c) <= 1e-14 * np.maximum(scale, 1e-300)):
        raise SingularPoint("cusp defect vanishes")
    if np.any(r <= chord_tol * np.maximum(np.sqrt(dot2(p.a, p.a)), 1.0)):
        raise DegenerateChord("a and b coincide")
    return np.sign(kb) * (ka + kb) ** 3 / np.abs(c) * det2(ab, p.j1.tangent_unit) / r**3


# -- events -------------------------------------------------------------------


@dataclass
class SingularEvent:
    kind: str  # cusp | asymptote | double_tangent | wigner_cusp | secant_cusp
    s1: float
    s2: float
    location: object  # point, or (point, direction) for an asymptote
    witnesses: dict = field(default_factory=dict)
    degenerate: bool = False


class EventList(list):
    """List of events; ``degenerate_family`` flags a defect vanishing identically."""

    def __init__(self, items=(), degenerate_family=False, max_defect=0.0, scale=0.0):
        super().__init__(items)
        self.degenerate_family = degenerate_family
        self.max_defect = max_defect
        self.scale = scale


DEFECTS = {
    "cusp": cusp_defect,
    "asymptote": asymptote_defect,
    "double_tangent": double_tangent_defect,
    "wigner_cusp": wigner_defect,
    "secant_cusp": secant_speed,
}


def natural_scale(kind, p: PairSample, curve):
    """Magnitude against which a defect of this kind is judged zero."""
    kref = 1.0 / curve.scale
    if kind == "cusp":
        s = np.abs(p.j1.kappa_s) * p.k2**2 + p.k1**2 * np.abs(p.j2.kappa_s)
        return max(float(np.max(s, initial=0.0)), kref**4)
    if kind in ("asymptote", "wigner_cusp", "equidistant_cusp"):
        return max(float(np.max(np.abs(p.k1) + np.abs(p.k2), initial=0.0)), kref)
    if kind == "double_tangent":
        ab = p.a - p.b
        return max(float(np.max(np.sqrt(dot2(ab, ab)), initial=0.0)), curve.scale * 1e-12)
    if kind == "second":
        s = np.abs(p.j1.kappa_ss) * np.abs(p.k2) ** 3 + np.abs(p.k1) ** 3 * np.abs(p.j2.kappa_ss)
        return max(float(np.max(s, initial=0.0)), kref**5)
    if kind == "secant_cusp":
        s = np.abs(det2(p.j1.d1, p.j2.d2)) * p.j1.speed + np.abs(det2(p.j1.d2, p.j2.d1)) * p.j2.speed
        return max(float(np.max(s, initial=0.0)), 1e-300)
    raise KeyError(kind)


def _pairs_along(corr, s):
    t = corr.solve(s)
    return pair_sample(corr.curve, s, t, sigma=np.full(np.shape(s), float(corr.sigma)))


def scan_events(corr, kind, s=None, n=512, shell_tol=1e-6, lam=None):
    """Simple roots of one defect along a correspondence.

    ``s`` is the sampling grid on the source arc (default: n+1 uniform
    points). Roots where a and b nearly coincide (inflexion shells) are not
    events and are dropped.
    """
    curve = corr.curve
    if s is None:
        s = np.linspace(corr.src.start, corr.src.end, n + 1)
    s = np.asarray(s, dtype=float)
    if kind == "equidistant_cusp":
        if lam is None:
            raise ValueError("equidistant_cusp needs lam")

        def fun(q):
            return equidistant_defect(q, lam)

    else:
        fun = DEFECTS[kind]
    p = _pairs_along(corr, s)
    vals = fun(p)
    scale = natural_scale(kind, p, curve)
    vmax = float(np.max(np.abs(vals), initial=0.0))
    degenerate_family = vmax <= DEFECT_REL * scale
    if degenerate_family:
        return EventList([], degenerate_family=True, max_defect=vmax, scale=scale)
    idx = sign_change_brackets(vals)
    events = []
    if idx:
        idx = np.asarray(idx)
        lo, hi = s[idx], s[idx + 1]

        def g(x):
            return fun(_pairs_along(corr, x))

        roots = bisect(g, lo, hi)
        pr = _pairs_along(corr, roots)
        ab = pr.a - pr.b
        gap = np.sqrt(dot2(ab, ab))
        for i, r in enumerate(roots):
            if gap[i] < shell_tol * curve.scale:
                continue
            events.append(_make_event(kind, corr, pr, i, float(r), lam))
    return EventList(events, degenerate_family=False, max_defect=vmax, scale=scale)


def _take(p: PairSample, i):
    from .curve import Jet

    def sub(j):
        return Jet(
            t=j.t[i],
            position=j.position[i],
            d1=j.d1[i],
            d2=j.d2[i],
            d3=j.d3[i],
            speed=j.speed[i],
            tangent_unit=j.tangent_unit[i],
            kappa=j.kappa[i],
            kappa_s=j.kappa_s[i],
            kappa_ss=j.kappa_ss[i],
            d4=j.d4[i],
        )

    return PairSample(p.s1[i], p.s2[i], sub(p.j1), sub(p.j2), p.sigma[i])


def _make_event(kind, corr, pr, i, s, lam=None):
    p = _take(pr, i)
    curve = corr.curve
    w = {}
    degenerate = False
    if kind == "cusp":
        e2 = float(cusp_second_defect(p))
        d = float(double_tangent_defect(p))
        w = {"second_order": e2, "double_tangent": d}
        degenerate = abs(e2) <= DEFECT_REL * natural_scale("second", p, curve) or abs(d) <= DEFECT_REL * curve.scale
        try:
            loc = css_point(p)
        except AsymptoticPair:
            loc = None
            degenerate = True
    elif kind == "asymptote":
        loc = (np.array(p.a, dtype=float), np.array(p.b - p.a, dtype=float))
        w = {
            "cusp_defect": float(cusp_defect(p)),
            "secant_speed": float(secant_speed(p)) / natural_scale("secant_cusp", p, curve),
        }
        degenerate = abs(w["cusp_defect"]) <= DEFECT_REL * natural_scale("cusp", p, curve)
    elif kind == "double_tangent":
        w = {"kappa1": float(p.k1), "kappa2": float(p.k2)}
        try:
            loc = css_point(p)
        except AsymptoticPair:
            loc = None
            degenerate = True
    elif kind == "wigner_cusp":
        loc = wigner_point(p)
    elif kind == "equidistant_cusp":
        loc = equidistant_point(p, lam)
    else:
        loc = secant_point(p)
    return SingularEvent(kind, s, float(p.s2), loc, w, degenerate)


def detect_cusps(corr, **kw):
    return scan_events(corr, "cusp", **kw)


def detect_asymptotes(corr, **kw):
    return scan_events(corr, "asymptote", **kw)


def detect_double_tangents(corr, **kw):
    return scan_events(corr, "double_tangent", **kw)


def envelope_oracle(corr, n_samples, s_range=None):
    """Brute-force envelope: intersections of consecutive chords.

    Returns (points, s_mid). Rows where consecutive chords are parallel are
    NaN (a gap, expected next to asymptotes).
    """
    if n_samples < 3:
        raise ValueError("n_samples must be at least 3")
    lo, hi = s_range if s_range is not None else (corr.src.start, corr.src.end)
    s = np.linspace(lo, hi, n_samples)
    t = corr.solve(s)
    a = corr.curve.position(s)
    d = corr.curve.position(t) - a
    return chord_intersections(a, d), 0.5 * (s[1:] + s[:-1])


def chord_intersections(a, d, rel_tol=1e-14):
    """Intersection of the lines a[i] + u d[i] and a[i+1] + w d[i+1]."""
    d0, d1 = d[:-1], d[1:]
    den = det2(d0, d1)
    norm = np.sqrt(dot2(d0, d0) * dot2(d1, d1))
    with np.errstate(divide="ignore", invalid="ignore"):
        u = det2(a[1:] - a[:-1], d1) / den
    pts = a[:-1] + u[:, None] * d0
    pts[np.abs(den) <= rel_tol * norm] = np.nan
    return pts


def intersect_consecutive_chords(a0, d0, a1, d1):
    """Scalar version raising ParallelConsecutiveChords."""
    den = det2(np.asarray(d0), np.asarray(d1))
    if abs(den) <= 1e-14 * np.sqrt(dot2(np.asarray(d0), np.asarray(d0)) * dot2(np.asarray(d1), np.asarray(d1))):
        raise ParallelConsecutiveChords("consecutive chords are parallel")
    u = det2(np.asarray(a1) - np.asarray(a0), np.asarray(d1)) / den
    return np.asarray(a0) + u * np.asarray(d0)
