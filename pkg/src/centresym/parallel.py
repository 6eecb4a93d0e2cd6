"""Angle function, division points and sets of parallel arcs.

All mod-pi comparisons go through the continuous tangent-angle lift, never
through wrapped values. Preimages of an angle level are found as roots of
det(f'(t), u), u the unit vector at that level, which is smooth and needs no
lift at all.
"""

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .curve import CurveGeometry, det2, dot2, find_inflexions
from .errors import BasePointIsInflexion, DegenerateRoot, NotSameFamily, TangentialPreimage
from .roots import refine_brackets, safeguarded_newton, sign_change_brackets


@dataclass(frozen=True)
class AngleFunction:
    curve: CurveGeometry
    base_t: float
    theta_base: float

    def lift(self, t):
        return self.curve.tangent_angle(t)

    def __call__(self, t):
        return np.mod(self.lift(t) - self.theta_base, pi)


@dataclass(frozen=True)
class Extremum:
    t: float
    phi: float
    kind: str  # "max" | "min"


@dataclass(frozen=True)
class Arc:
    index: int
    start: float
    end: float  # may exceed the period for the wrapping arc
    sign: int  # sign of kappa on the arc (+1: angle increases with t)
    phi_set: int
    start_point: int  # division-point indices of the ends
    end_point: int

    def contains(self, t, period):
        x = self.start + np.mod(t - self.start, period)
        return x <= self.end

    def lift_param(self, t, period):
        return self.start + np.mod(np.asarray(t) - self.start, period)


@dataclass(frozen=True)
class ParallelArcSet:
    index: int
    interval: tuple  # (lo, hi) angle values mod pi relative to the base
    arcs: tuple  # (arc index, direction flag) pairs


@dataclass
class DivisionPoints:
    params: np.ndarray
    tags: list
    levels: list  # extremal-level index per point (0 for convex curves)
    period: float

    def __len__(self):
        return len(self.params)

    @property
    def arc_list(self):
        p = list(self.params)
        return [(p[j], p[j + 1] if j + 1 < len(p) else p[0] + self.period) for j in range(len(p))]


@dataclass
class ParallelStructure:
    curve: CurveGeometry
    angle: AngleFunction
    inflexions: list
    extrema: list
    division: DivisionPoints
    level_values: np.ndarray  # extremal values in [0, pi), sorted
    arcs: list
    sets: list
    _corr_cache: dict = field(default_factory=dict, repr=False)

    @property
    def period(self):
        return self.curve.period

    def is_convex(self):
        return not self.inflexions

    def inflexion_points(self):
        """Division-point indices tagged as inflexions."""
        return [i for i, tag in enumerate(self.division.tags) if tag == "inflexion"]

    def correspondence(self, a: int, b: int):
        key = (a, b)
        if key not in self._corr_cache:
            self._corr_cache[key] = solve_correspondence(self, self.arcs[a], self.arcs[b])
        return self._corr_cache[key]

    def arc_at(self, t):
        for arc in self.arcs:
            x = arc.lift_param(t, self.period)
            if arc.start < x < arc.end:
                return arc
        return None

    def partners(self, s):
        """All parameters t != s with f'(t) parallel to f'(s), via the Phi-sets."""
        arc = self.arc_at(s)
        if arc is None:
            raise ValueError("parameter sits on a division point")
        x = arc.lift_param(s, self.period)
        out = []
        for j, _ in self.sets[arc.phi_set].arcs:
            if j == arc.index:
                continue
            t = self.correspondence(arc.index, j).solve(np.array([x]))[0]
            out.append(float(t % self.period))
        return sorted(out)


def default_base(curve: CurveGeometry) -> float:
    """argmax |f(t)| on the sampling grid; the smallest t wins ties."""
    t = curve.grid()
    pos = curve.position(t)
    r2 = dot2(pos, pos)
    return float(t[int(np.argmax(r2))])


def angle_function(curve: CurveGeometry, base_t=None) -> AngleFunction:
    if base_t is None:
        base_t = default_base(curve)
    k = float(curve.kappa(np.array([base_t]))[0])
    if abs(k) * curve.scale < 1e-8:
        raise BasePointIsInflexion(f"curvature vanishes at base point t={base_t!r}")
    return AngleFunction(curve, float(base_t), float(curve.tangent_angle(np.array([base_t]))[0]))


def local_extrema(angle_fn: AngleFunction, inflexions=None):
    """Local extrema of the angle function, one per inflexion, sorted by t."""
    curve = angle_fn.curve
    if inflexions is None:
        inflexions = find_inflexions(curve)
    out = []
    for rec in inflexions:
        if rec.kind != "nondegenerate_inflexion":
            raise DegenerateRoot(f"{rec.kind} at t={rec.t!r}; angle extremum is not simple")
        j = curve.jet(rec.t)
        # phi'' = d(kappa v)/dt = kappa_t v at a zero of kappa
        kind = "max" if j.kappa_s < 0 else "min"
        out.append(Extremum(rec.t, float(angle_fn(np.array([rec.t]))[0]), kind))
    return out


def _level_preimages(curve, theta, start, n):
    """Simple roots of det(f'(t), u(theta)) on [start, start + T)."""
    T = curve.period
    u = np.array([np.cos(theta), np.sin(theta)])
    h = T / n

    def fun(x):
        return det2(curve.velocity(x), u)

    def dfun(x):
        return det2(curve.derivatives(x, order=2)[2], u)

    x = start - 0.5 * h + h * np.arange(n + 1)
    idx = sign_change_brackets(fun(x))
    if not idx:
        return np.empty(0)
    idx = np.asarray(idx)
    r = refine_brackets(fun, x[idx], x[idx + 1], dfun=dfun)
    return start + np.mod(r - start, T)


def division_points(curve: CurveGeometry, angle_fn: AngleFunction, inflexions=None, samples=None):
    """Sequence of division points, sorted along the curve from the base point.

    With inflexions: every preimage of every extremal angle level. Without:
    the preimages of the base level.
    """
    if inflexions is None:
        inflexions = find_inflexions(curve)
    n = samples or curve.samples
    T = curve.period
    start = angle_fn.base_t
    entries = []  # (t, tag, level)
    if not inflexions:
        roots = _level_preimages(curve, angle_fn.theta_base, start, n)
        for r in roots:
            d = min(abs(r - start), abs(r - start - T))
            if d < 1e-9:
                continue
            entries.append((float(r), "parallel_to_base", 0))
        entries.append((start, "base_fixed", 0))
    else:
        extrema = local_extrema(angle_fn, inflexions)
        thetas = [float(curve.tangent_angle(np.array([e.t]))[0]) for e in extrema]
        for a in range(len(thetas)):
            for b in range(a + 1, len(thetas)):
                gap = (thetas[a] - thetas[b]) / pi
                if abs(gap - round(gap)) < 1e-9:
                    raise TangentialPreimage(
                        f"inflexions at t={extrema[a].t!r} and t={extrema[b].t!r} are parallel"
                    )
        for lvl, (ext, th) in enumerate(zip(extrema, thetas)):
            own = start + (ext.t - start) % T
            entries.append((own, "inflexion", lvl))
            for r in _level_preimages(curve, th, start, n):
                d = abs(r - own) % T
                if min(d, T - d) < 1e-6:
                    continue
                entries.append((float(r), "parallel_to_inflexion", lvl))
    entries.sort(key=lambda e: e[0])
    return DivisionPoints(
        params=np.array([e[0] for e in entries]),
        tags=[e[1] for e in entries],
        levels=[e[2] for e in entries],
        period=T,
    )


def parallel_arc_sets(curve: CurveGeometry, division: DivisionPoints, angle_fn: AngleFunction, inflexions=()):
    """Arcs between consecutive division points grouped by their angle interval."""
    if inflexions:
        values = np.sort(
            np.mod(curve.tangent_angle(np.array([r.t for r in inflexions])) - angle_fn.theta_base, pi)
        )
    else:
        values = np.array([0.0])
    m = len(division)
    arcs_raw = []
    for j, (a, b) in enumerate(division.arc_list):
        mid = 0.5 * (a + b)
        phi = float(angle_fn(np.array([mid]))[0])
        sgn = int(np.sign(curve.kappa(np.array([mid]))[0]))
        if len(values) == 1:
            i = 0
        else:
            below = np.nonzero(values < phi)[0]
            i = int(below[-1]) if below.size else len(values) - 1
        arcs_raw.append((j, a, b, sgn, i))
    arcs = [
        Arc(index=j, start=a, end=b, sign=s, phi_set=i, start_point=j, end_point=(j + 1) % m)
        for j, a, b, s, i in arcs_raw
    ]
    sets = []
    for i in range(len(values)):
        members = tuple((a.index, a.sign) for a in arcs if a.phi_set == i)
        hi = values[(i + 1) % len(values)] if len(values) > 1 else values[0] + pi
        sets.append(ParallelArcSet(index=i, interval=(float(values[i]), float(hi)), arcs=members))
    return arcs, sets, values


def decompose(curve: CurveGeometry, base_t=None, samples=None) -> ParallelStructure:
    """Full parallel-arc decomposition of a closed regular curve."""
    infl = find_inflexions(curve, samples=samples)
    for r in infl:
        if r.kind != "nondegenerate_inflexion":
            raise DegenerateRoot(f"{r.kind} curvature root at t={r.t!r}")
    ang = angle_function(curve, base_t)
    div = division_points(curve, ang, infl, samples=samples)
    arcs, sets, values = parallel_arc_sets(curve, div, ang, infl)
    extrema = local_extrema(ang, infl) if infl else []
    return ParallelStructure(curve, ang, infl, extrema, div, values, arcs, sets)


class Correspondence:
    """Monotone map s -> t(s) between two arcs of the same Phi-set.

    t(s) is the unique point of the target arc whose tangent is parallel to
    the tangent at s; it is found by bracketed Newton iteration on the lifted
    tangent angle of the target, which is monotone there. After construction a
    coarse cache of the map supplies tight brackets and starting guesses.
    """

    def __init__(self, structure: ParallelStructure, src: Arc, dst: Arc, n_cache=257):
        if src.index == dst.index or src.phi_set != dst.phi_set:
            raise NotSameFamily(f"arcs {src.index} and {dst.index} are not in one Phi-set")
        self.structure = structure
        self.curve = structure.curve
        self.src = src
        self.dst = dst
        # start <-> start iff both arcs sweep the angle interval the same way
        self.start_to_start = src.sign == dst.sign
        th = self.curve.tangent_angle(np.array([src.start, dst.start, dst.end]))
        match = th[1] if self.start_to_start else th[2]
        self._offset = pi * round((match - th[0]) / pi)
        self._dst_theta = (float(th[1]), float(th[2]))
        self.s_cache = None
        mid = 0.5 * (src.start + src.end)
        tm = self.solve(np.array([mid]))[0]
        self.sigma = int(np.sign(dot2(self.curve.velocity(mid), self.curve.velocity(tm))))
        s_cache = np.linspace(src.start, src.end, n_cache)
        self.t_cache = self.solve(s_cache)
        self.s_cache = s_cache

    def solve(self, s):
        s = np.asarray(s, dtype=float)
        curve = self.curve
        target = curve.tangent_angle(s) + self._offset
        a, b = self.dst.start, self.dst.end
        ta, tb = self._dst_theta
        sgn = 1.0 if tb >= ta else -1.0
        at_a = (target - ta) * sgn <= 0
        at_b = (target - tb) * sgn >= 0
        lo = np.full(s.shape, a)
        hi = np.full(s.shape, b)
        inner = ~(at_a | at_b)
        out = np.where(at_a, a, b).astype(float)
        if np.any(inner):
            tg = target[inner]

            def g(x, idx=slice(None)):
                return curve.tangent_angle(x) - tg[idx]

            lo_i, hi_i, guess = lo[inner], hi[inner], None
            if self.s_cache is not None:
                # the map is monotone, so neighbouring cache values bracket the root
                si = s[inner]
                k = np.clip(np.searchsorted(self.s_cache, si) - 1, 0, len(self.s_cache) - 2)
                inside = (si >= self.s_cache[0]) & (si <= self.s_cache[-1])
                lo_i = np.where(inside, self.t_cache[k], lo_i)
                hi_i = np.where(inside, self.t_cache[k + 1], hi_i)
                guess = np.interp(si, self.s_cache, self.t_cache) if np.all(np.diff(self.s_cache) > 0) else None
                # guard against a stale bracket (root exactly at a cache node)
                bad = np.sign(g(lo_i)) * np.sign(g(hi_i)) > 0
                lo_i = np.where(bad, lo[inner], lo_i)
                hi_i = np.where(bad, hi[inner], hi_i)
            x = safeguarded_newton(g, curve.angular_speed, lo_i, hi_i, x0=guess)
            out[inner] = x
        return out

    def dt_ds_arc(self, s):
        """Arc-length derivative of the map in the global orientation: kappa(s)/kappa(t)."""
        t = self.solve(s)
        return self.curve.kappa(s) / self.curve.kappa(t)

    def residual(self, s):
        """|sin| of the angle between the tangents at s and t(s)."""
        t = self.solve(s)
        u = self.curve.velocity(s)
        w = self.curve.velocity(t)
        return np.abs(det2(u, w)) / np.sqrt(dot2(u, u) * dot2(w, w))


def solve_correspondence(structure: ParallelStructure, arc_a: Arc, arc_b: Arc) -> Correspondence:
    return Correspondence(structure, arc_a, arc_b)
