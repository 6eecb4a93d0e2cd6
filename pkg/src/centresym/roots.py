"""Scalar root finding: uniform bracketing scan, bisection, one Newton polish.

Every solver in the package goes through these helpers so the convention
(scan, bisect to 1e-12, polish) is applied the same way everywhere.
"""

from contextlib import contextmanager
from contextvars import ContextVar

import numpy as np

ROOT_TOL = 1e-12
_tol = ContextVar("root_tol", default=ROOT_TOL)


def current_tolerance():
    return _tol.get()


@contextmanager
def root_tolerance(tol):
    """Temporarily change the default bisection width for the current context."""
    if not tol > 0:
        raise ValueError("root tolerance must be positive")
    token = _tol.set(float(tol))
    try:
        yield
    finally:
        _tol.reset(token)


def sign_change_brackets(values):
    """Indices i with values[i], values[i+1] of strictly opposite sign.

    An exact zero at an interior sample is reported once, as the bracket
    ending on it, provided the signs on either side differ.
    """
    v = np.asarray(values, dtype=float)
    s = np.sign(v)
    out = []
    n = len(v)
    i = 0
    while i < n - 1:
        if s[i] != 0 and s[i + 1] != 0:
            if s[i] != s[i + 1]:
                out.append(i)
            i += 1
            continue
        if s[i] == 0:
            i += 1
            continue
        # s[i] != 0, s[i+1] == 0: skip over the run of zeros
        j = i + 1
        while j < n and s[j] == 0:
            j += 1
        if j < n and s[j] != s[i]:
            out.append(i)
        i = j
    return out


def bisect(fun, lo, hi, tol=None, maxiter=200):
    """Vectorised bisection.

    ``fun`` maps an array of abscissae to values; ``lo`` and ``hi`` are
    arrays (or scalars) with ``fun(lo)`` and ``fun(hi)`` of opposite sign or
    zero. Returns the midpoints once every bracket is narrower than ``tol``
    (default: the context tolerance, see ``root_tolerance``).
    """
    if tol is None:
        tol = _tol.get()
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    scalar = lo.ndim == 0
    lo = np.atleast_1d(lo)
    hi = np.atleast_1d(hi)
    flo = np.asarray(fun(lo), dtype=float)
    for _ in range(maxiter):
        if np.all(np.abs(hi - lo) <= tol):
            break
        mid = 0.5 * (lo + hi)
        fmid = np.asarray(fun(mid), dtype=float)
        left = np.sign(fmid) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fmid, flo)
        hi = np.where(left, hi, mid)
    out = 0.5 * (lo + hi)
    return out[0] if scalar else out


def newton_polish(fun, dfun, x, lo, hi):
    """One Newton step, kept only if it stays in [lo, hi] and lowers |f|."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    f0 = np.asarray(fun(x), dtype=float)
    d = np.asarray(dfun(x), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(d != 0, f0 / d, 0.0)
    cand = x - step
    a = np.minimum(lo, hi)
    b = np.maximum(lo, hi)
    inside = (cand >= a) & (cand <= b) & np.isfinite(cand)
    f1 = np.asarray(fun(np.where(inside, cand, x)), dtype=float)
    better = inside & (np.abs(f1) <= np.abs(f0))
    return np.where(better, cand, x)


def safeguarded_newton(fun, dfun, lo, hi, x0=None, tol=None, maxiter=100):
    """Vectorised Newton iteration kept inside shrinking sign-change brackets.

    Steps that leave the bracket fall back to bisection, so convergence is
    never worse than ``bisect``; near a simple root it is quadratic.
    Converged entries drop out, so ``fun(x, idx)`` receives the indices of
    the entries still iterating alongside their abscissae.
    """
    if tol is None:
        tol = _tol.get()
    lo = np.atleast_1d(np.array(lo, dtype=float, copy=True))
    hi = np.atleast_1d(np.array(hi, dtype=float, copy=True))
    x = 0.5 * (lo + hi) if x0 is None else np.clip(np.atleast_1d(np.asarray(x0, dtype=float)), np.minimum(lo, hi), np.maximum(lo, hi))
    flo = np.asarray(fun(lo, np.arange(lo.size)), dtype=float)
    active = np.ones(x.shape, dtype=bool)
    for _ in range(maxiter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        xi = x[idx]
        f = np.asarray(fun(xi, idx), dtype=float)
        d = np.asarray(dfun(xi), dtype=float)
        # shrink the bracket around the root
        left = np.sign(f) == np.sign(flo[idx])
        lo[idx] = np.where(left, xi, lo[idx])
        flo[idx] = np.where(left, f, flo[idx])
        hi[idx] = np.where(left, hi[idx], xi)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = xi - f / d
        a, b = np.minimum(lo[idx], hi[idx]), np.maximum(lo[idx], hi[idx])
        ok = np.isfinite(cand) & (cand > a) & (cand < b)
        new = np.where(ok, cand, 0.5 * (a + b))
        done = (f == 0) | (np.abs(new - xi) <= tol) | (b - a <= tol)
        x[idx] = np.where(f == 0, xi, new)
        active[idx[done]] = False
    return x


def refine_brackets(fun, lo, hi, dfun=None, tol=None):
    """Bisect every bracket [lo_i, hi_i] then polish once with ``dfun``."""
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    if lo.size == 0:
        return lo.copy()
    x = bisect(fun, lo, hi, tol=tol)
    if dfun is not None:
        x = newton_polish(fun, dfun, x, lo, hi)
    return x


def find_roots(fun, a, b, n, dfun=None, tol=None):
    """All sign-change roots of ``fun`` on [a, b] seen by an n-interval scan."""
    x = np.linspace(a, b, n + 1)
    idx = sign_change_brackets(fun(x))
    if not idx:
        return np.empty(0)
    idx = np.asarray(idx)
    return refine_brackets(fun, x[idx], x[idx + 1], dfun=dfun, tol=tol)
