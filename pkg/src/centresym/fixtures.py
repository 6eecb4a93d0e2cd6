"""Named test curves and random rosettes."""

from fractions import Fraction
from math import pi

import numpy as np

from .curve import CurveSpec

ROSETTE_T0 = 5.38207  # asymptote pair parameter of the 2-rosette below
ROSETTE_T1 = 5.26053  # double-tangent pair parameter


def circle():
    return CurveSpec.fourier([(1, 1, 0)], [(1, 0, 1)], period=2 * pi, name="circle")


def ellipse(a=2.0, b=1.0):
    return CurveSpec.fourier([(1, a, 0)], [(1, 0, b)], period=2 * pi, name="ellipse")


def two_rosette():
    """Support function 14 + 3 cos(3t/2) + 0.2 sin(5t/2) on [0, 4 pi)."""
    return CurveSpec.support(
        14, [("3/2", 3, 0), ("5/2", 0, 0.2)], period=4 * pi, name="two_rosette"
    )


def trefoil_oval(eps=0.1):
    """Support function 1 + eps cos(3 theta); an oval only while eps < 1/8."""
    return CurveSpec.support(1, [(3, eps, 0)], period=2 * pi, name=f"oval_{eps:g}")


def two_inflexions():
    """Non-convex curve with two non-degenerate inflexions."""
    return CurveSpec.fourier(
        [(1, 1, 0), (2, 0.5, 0.04)],
        [(1, 0, 1), (2, 0, 0.05), (3, 0.03, 0)],
        period=2 * pi,
        name="two_inflexions",
    )


def four_inflexions():
    """Non-convex curve with four non-degenerate inflexions."""
    return CurveSpec.fourier(
        [(1, 1, 0), (2, 0.02, 0.01)],
        [(1, 0, 1), (2, 0, 0.45), (3, 0.02, 0)],
        period=2 * pi,
        name="four_inflexions",
    )


def undulation():
    """Curvature vanishes at t = 0 without changing sign."""
    return CurveSpec.fourier([(1, 1, 0), (2, -0.25, 0)], [(1, 0, 1)], period=2 * pi, name="undulation")


def random_rosette(n, rng, amplitude=0.3, constant=14.0):
    """Support function constant + sum over k/n, k = 1..2n+1 (k != n), of random terms.

    Frequency 1 is skipped because it only translates the curve. Coefficients
    are uniform in [-amplitude, amplitude].
    """
    terms = []
    for k in range(1, 2 * n + 2):
        if k == n:
            continue
        c, s = rng.uniform(-amplitude, amplitude, size=2)
        terms.append((Fraction(k, n), float(c), float(s)))
    return CurveSpec.support(constant, terms, period=2 * n * pi, name=f"random_{n}_rosette")


NAMED = {
    "circle": circle,
    "ellipse": ellipse,
    "two_rosette": two_rosette,
    "oval": trefoil_oval,
    "two_inflexions": two_inflexions,
    "four_inflexions": four_inflexions,
}


def rng_for(seed):
    return np.random.default_rng(seed)
