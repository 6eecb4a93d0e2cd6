"""Closed planar curves given by trigonometric series.

Two spec kinds are supported. A ``fourier_parametric`` curve gives x(t) and
y(t) directly as finite trigonometric sums. A ``support_rosette`` curve is
given by a support function p(t) and traced as

    g(t) = (p cos t - p' sin t, p sin t + p' cos t),

which we expand by product-to-sum into an ordinary trigonometric series in
x and y. After that both kinds share one evaluator and all derivatives are
exact differentiations of the series.

Arc-length quantities use the chain rule in the original parameter:
with v = |f'|, kappa = det(f', f'') / v**3, kappa_s = (d kappa / dt) / v and
kappa_ss = (d kappa_s / dt) / v. No arc-length reparameterisation is built.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm, pi

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegenerateRoot, NonRegular, ValidationError, VanishingRosetteCurvature
from .roots import refine_brackets, sign_change_brackets

TWO_PI = 2.0 * pi

FOURIER = "fourier_parametric"
SUPPORT = "support_rosette"


@dataclass(frozen=True)
class TrigTerm:
    """c cos(freq t) + s sin(freq t)."""

    freq: Fraction
    cos: float = 0.0
    sin: float = 0.0


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    x_terms: tuple = ()
    y_terms: tuple = ()
    support_terms: tuple = ()
    constant: float = 0.0
    period: float | None = None
    name: str = ""

    @classmethod
    def fourier(cls, x_terms, y_terms, period=None, name=""):
        return cls(
            FOURIER,
            x_terms=tuple(_as_term(t) for t in x_terms),
            y_terms=tuple(_as_term(t) for t in y_terms),
            period=period,
            name=name,
        )

    @classmethod
    def support(cls, constant, terms, period=None, name=""):
        return cls(
            SUPPORT,
            support_terms=tuple(_as_term(t) for t in terms),
            constant=float(constant),
            period=period,
            name=name,
        )


def _as_term(t):
    if isinstance(t, TrigTerm):
        return TrigTerm(Fraction(t.freq), float(t.cos), float(t.sin))
    freq, c, s = t
    return TrigTerm(Fraction(freq), float(c), float(s))


@dataclass
class Jet:
    """Jet of the curve at t. Fields are floats/points for scalar t and
    arrays (leading axes of t) for array t."""

    t: np.ndarray
    position: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    speed: np.ndarray
    tangent_unit: np.ndarray
    kappa: np.ndarray
    kappa_s: np.ndarray
    kappa_ss: np.ndarray
    d4: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class InflexionRecord:
    t: float
    kind: str  # nondegenerate_inflexion | undulation | degenerate
    witness: float


def det2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def dot2(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1]


def rational_period(freqs):
    """Least T > 0 with freq*T/(2 pi) an integer for every nonzero freq."""
    fr = [abs(Fraction(f)) for f in freqs if Fraction(f) != 0]
    if not fr:
        raise ValidationError("curve has no non-constant terms")
    den = reduce(lcm, (f.denominator for f in fr))
    nums = [int(f * den) for f in fr]
    g = reduce(gcd, nums)
    # gcd of the rationals is g/den; the period is 2 pi / gcd
    return TWO_PI * den / g


def _support_to_xy(constant, terms):
    """Product-to-sum expansion of g(t) for the support parameterisation."""
    x, y = {}, {}

    def add(d, w, c, s):
        cc, ss = d.get(w, (0.0, 0.0))
        d[w] = (cc + c, ss + s)

    for term in [TrigTerm(Fraction(0), constant, 0.0), *terms]:
        w = Fraction(term.freq)
        a, b = term.cos, term.sin
        wf = float(w)
        lo, hi = w - 1, w + 1
        # a cos(wt)
        add(x, lo, 0.5 * a * (1 + wf), 0.0)
        add(x, hi, 0.5 * a * (1 - wf), 0.0)
        add(y, hi, 0.0, 0.5 * a * (1 - wf))
        add(y, lo, 0.0, -0.5 * a * (1 + wf))
        # b sin(wt)
        add(x, hi, 0.0, 0.5 * b * (1 - wf))
        add(x, lo, 0.0, 0.5 * b * (1 + wf))
        add(y, lo, 0.5 * b * (1 + wf), 0.0)
        add(y, hi, 0.5 * b * (wf - 1), 0.0)

    def fold(d):
        # cos(-wt) = cos(wt), sin(-wt) = -sin(wt)
        out = {}
        for w, (c, s) in d.items():
            if w < 0:
                w, s = -w, -s
            if w == 0:
                s = 0.0
            cc, ss = out.get(w, (0.0, 0.0))
            out[w] = (cc + c, ss + s)
        return tuple(TrigTerm(w, c, s) for w, (c, s) in sorted(out.items()) if c != 0.0 or s != 0.0)

    return fold(x), fold(y)


class CurveGeometry:
    """Immutable analytic evaluator for a closed trigonometric curve."""

    def __init__(self, spec: CurveSpec, samples: int = 4096):
        self.spec = spec
        if spec.kind == SUPPORT:
            x_terms, y_terms = _support_to_xy(spec.constant, spec.support_terms)
        elif spec.kind == FOURIER:
            x_terms, y_terms = spec.x_terms, spec.y_terms
        else:
            raise ValidationError(f"unknown curve kind {spec.kind!r}")
        self.x_terms, self.y_terms = x_terms, y_terms
        freqs = sorted({Fraction(t.freq) for t in (*x_terms, *y_terms)})
        nonconst = [f for f in freqs if f != 0]
        least = rational_period(nonconst)
        if spec.period is not None:
            if spec.period <= 0:
                raise ValidationError("period must be positive")
            if abs(spec.period - least) > 1e-9 * least:
                raise ValidationError(
                    f"declared period {spec.period!r} is not the least common period {least!r} of the frequencies"
                )
        self.period = least
        self._w = np.array([float(f) for f in freqs])
        index = {f: i for i, f in enumerate(freqs)}
        self._coef = np.zeros((4, len(freqs)))  # cx, sx, cy, sy
        for t in x_terms:
            self._coef[0, index[Fraction(t.freq)]] += t.cos
            self._coef[1, index[Fraction(t.freq)]] += t.sin
        for t in y_terms:
            self._coef[2, index[Fraction(t.freq)]] += t.cos
            self._coef[3, index[Fraction(t.freq)]] += t.sin
        self.samples = int(samples)
        self._validate()
        self._build_lift()

    # -- evaluation ---------------------------------------------------------

    def derivatives(self, t, order=4):
        """List [f, f', ..., f^(order)] of arrays with trailing axis 2."""
        t = np.asarray(t, dtype=float)
        wt = np.multiply.outer(t, self._w)
        c, s = np.cos(wt), np.sin(wt)
        cx, sx, cy, sy = self._coef
        out = []
        for k in range(order + 1):
            wk = self._w**k
            # d^k/dt^k [a cos + b sin]: cycle through the four phases
            m = k % 4
            if m == 0:
                bx, by = cx * c + sx * s, cy * c + sy * s
            elif m == 1:
                bx, by = -cx * s + sx * c, -cy * s + sy * c
            elif m == 2:
                bx, by = -(cx * c + sx * s), -(cy * c + sy * s)
            else:
                bx, by = cx * s - sx * c, cy * s - sy * c
            out.append(np.stack([bx @ wk, by @ wk], axis=-1))
        return out

    def position(self, t):
        return self.derivatives(t, order=0)[0]

    def velocity(self, t):
        return self.derivatives(t, order=1)[1]

    def jet(self, t) -> Jet:
        f0, f1, f2, f3, f4 = self.derivatives(t, order=4)
        q = dot2(f1, f1)
        v = np.sqrt(q)
        dq = 2.0 * dot2(f1, f2)
        ddq = 2.0 * (dot2(f2, f2) + dot2(f1, f3))
        D = det2(f1, f2)
        dD = det2(f1, f3)
        ddD = det2(f2, f3) + det2(f1, f4)
        kappa = D / (v * q)
        k_t = dD / (v * q) - 1.5 * D * dq / (v * q * q)
        k_tt = (
            ddD / (v * q)
            - 3.0 * dD * dq / (v * q * q)
            - 1.5 * D * ddq / (v * q * q)
            + 3.75 * D * dq * dq / (v * q * q * q)
        )
        v_t = 0.5 * dq / v
        kappa_s = k_t / v
        kappa_ss = (k_tt / v - k_t * v_t / q) / v
        return Jet(
            t=t,
            position=f0,
            d1=f1,
            d2=f2,
            d3=f3,
            speed=v,
            tangent_unit=f1 / v[..., None],
            kappa=kappa,
            kappa_s=kappa_s,
            kappa_ss=kappa_ss,
            d4=f4,
        )

    def kappa(self, t):
        _, f1, f2 = self.derivatives(t, order=2)
        return det2(f1, f2) / dot2(f1, f1) ** 1.5

    def grid(self, n=None, start=0.0):
        n = self.samples if n is None else n
        return start + self.period * np.arange(n) / n

    # -- support-function helpers -----------------------------------------

    def support_value(self, t, order=0):
        """p^(order)(t) for support curves."""
        if self.spec.kind != SUPPORT:
            raise ValidationError("not a support curve")
        t = np.asarray(t, dtype=float)
        val = np.full(t.shape, self.spec.constant if order == 0 else 0.0)
        for term in self.spec.support_terms:
            w = float(term.freq)
            m = order % 4
            c, s = np.cos(w * t), np.sin(w * t)
            if m == 0:
                b = term.cos * c + term.sin * s
            elif m == 1:
                b = -term.cos * s + term.sin * c
            elif m == 2:
                b = -(term.cos * c + term.sin * s)
            else:
                b = term.cos * s - term.sin * c
            val = val + w**order * b
        return val

    def radius_of_curvature(self, t):
        """p + p'' for support curves."""
        return self.support_value(t, 0) + self.support_value(t, 2)

    # -- construction checks ------------------------------------------------

    def _validate(self):
        n = max(self.samples, 64 * int(np.ceil(self._w.max() * self.period / TWO_PI)))
        t = self.grid(n)
        pos = self.position(t)
        self.scale = float(np.max(np.hypot(pos[:, 0], pos[:, 1])))
        if self.scale == 0.0:
            raise NonRegular("curve is a single point")
        if self.spec.kind == SUPPORT:
            r = self.radius_of_curvature(t)
            rmin = _refined_min(self.radius_of_curvature, t, r)
            if rmin <= 1e-9 * abs(self.spec.constant or 1.0):
                raise VanishingRosetteCurvature(f"p + p'' reaches {rmin:.3g} <= 0; not a rosette")
        sp = np.hypot(*self.velocity(t).T)

        def speed(x):
            return np.hypot(*np.moveaxis(self.velocity(x), -1, 0))

        smin = _refined_min(speed, t, sp)
        if smin <= 1e-9 * self.scale:
            raise NonRegular(f"speed vanishes (min {smin:.3g})")

    def _build_lift(self):
        n = self.samples
        while True:
            t = np.linspace(0.0, self.period, n + 1)
            d1 = self.velocity(t)
            raw = np.arctan2(d1[:, 1], d1[:, 0])
            lift = np.unwrap(raw)
            if np.max(np.abs(np.diff(lift))) < pi / 8 or n >= 1 << 20:
                break
            n *= 2
        self._lift_t = t
        self._lift = lift
        turn = lift[-1] - lift[0]
        self._rotation = int(round(turn / TWO_PI))
        if abs(turn - TWO_PI * self._rotation) > 1e-6:
            raise ValidationError("curve does not close up smoothly over its period")

    # -- angle lift -----------------------------------------------------------

    @property
    def rotation(self) -> int:
        return self._rotation

    def tangent_angle(self, t):
        """Continuous lift of the tangent angle, exact at any t."""
        t = np.asarray(t, dtype=float)
        k = np.floor(t / self.period)
        tr = t - k * self.period
        ref = np.interp(tr, self._lift_t, self._lift) + k * TWO_PI * self._rotation
        d1 = self.velocity(t)
        raw = np.arctan2(d1[..., 1], d1[..., 0])
        return raw + TWO_PI * np.round((ref - raw) / TWO_PI)

    def angular_speed(self, t):
        """d(theta)/dt = kappa * speed."""
        _, f1, f2 = self.derivatives(t, order=2)
        return det2(f1, f2) / dot2(f1, f1)


def _refined_min(fun, t, values):
    """Minimum of ``fun`` refined around the smallest sampled values."""
    order = np.argsort(values)[:8]
    h = t[1] - t[0]
    best = float(values.min())
    for i in order:
        res = minimize_scalar(
            lambda x: float(fun(np.array([x]))[0]),
            bounds=(t[i] - h, t[i] + h),
            method="bounded",
            options={"xatol": 1e-13},
        )
        best = min(best, float(res.fun))
    return best


def build_curve(spec: CurveSpec, samples: int = 4096) -> CurveGeometry:
    return CurveGeometry(spec, samples=samples)


def eval_jet(curve: CurveGeometry, t: float) -> Jet:
    return curve.jet(float(t))


def rotation_number(curve: CurveGeometry) -> int:
    return curve.rotation


# tolerances for classifying roots of the curvature
KAPPA_ZERO = 1e-9
WITNESS_REL = 1e-8


def find_inflexions(curve: CurveGeometry, samples=None, strict=False):
    """Roots of the curvature in [0, period), classified and sorted.

    Sign changes of kappa become inflexions (nondegenerate when
    |det(f', f''')| exceeds 1e-8 scale**2, degenerate otherwise). Local minima
    of |kappa| that touch zero without a sign change become undulations.
    With ``strict`` any degenerate record raises DegenerateRoot.
    """
    n = samples or curve.samples
    t = curve.grid(n)
    T = curve.period
    scale = curve.scale
    k = curve.kappa(t) * scale
    k_clean = np.where(np.abs(k) < 1e-13, 0.0, k)
    tt = np.append(t, T)
    kk = np.append(k_clean, k_clean[0])
    records = []
    seen = []

    def kfun(x):
        return curve.kappa(x)

    def dk(x):
        return curve.jet(x).kappa_s * curve.jet(x).speed

    brackets = sign_change_brackets(kk)
    if brackets:
        b = np.asarray(brackets)
        # the bracket may end on a run of zeros; extend the right end past it
        right = []
        for i in brackets:
            j = i + 1
            while j < len(kk) - 1 and kk[j] == 0.0:
                j += 1
            right.append(tt[j])
        roots = refine_brackets(kfun, tt[b], np.asarray(right), dfun=dk)
        for r in roots:
            r = float(r % T)
            j = curve.jet(r)
            w = float(det2(j.d1, j.d3))
            delta = 1e-4 * T
            side = np.sign(curve.kappa(np.array([r - delta, r + delta])))
            if abs(w) > WITNESS_REL * scale**2:
                kind = "nondegenerate_inflexion"
            elif side[0] == side[1]:
                kind = "undulation"
            else:
                kind = "degenerate"
            records.append(InflexionRecord(r, kind, w))
            seen.append(r)

    # touching zeros: local minima of |kappa| without a sign change
    a = np.abs(kk[:-1])
    prev = np.roll(a, 1)
    nxt = np.roll(a, -1)
    cand = np.where((a <= prev) & (a <= nxt) & (a < 1e-2))[0]
    h = T / n
    for i in cand:
        if any(_cyc_dist(t[i], s, T) < 2 * h for s in seen):
            continue
        res = minimize_scalar(
            lambda x: abs(float(curve.kappa(np.array([x]))[0])) * scale,
            bounds=(t[i] - h, t[i] + h),
            method="bounded",
            options={"xatol": 1e-14},
        )
        if res.fun < KAPPA_ZERO:
            r = float(res.x % T)
            if any(_cyc_dist(r, s, T) < 1e-6 for s in seen):
                continue
            j = curve.jet(r)
            records.append(InflexionRecord(r, "undulation", float(det2(j.d1, j.d3))))
            seen.append(r)

    records.sort(key=lambda r: r.t)
    if strict:
        bad = [r for r in records if r.kind == "degenerate"]
        if bad:
            raise DegenerateRoot(f"ambiguous curvature root at t={bad[0].t!r}")
    return records


def _cyc_dist(a, b, T):
    d = abs(a - b) % T
    return min(d, T - d)
