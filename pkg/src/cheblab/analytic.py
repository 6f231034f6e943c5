"""Main-term evaluation: the offset logarithmic integral and its asymptote.

Normalization: li(x) is the integral of dt/log(t) from 2 to x, so
li(2) = 0.  This differs from the 0-based principal-value convention by
the constant li(2) ~ 1.045; divergence conclusions are insensitive to the
offset, but tables compared against other sources must account for it.
All logarithms are natural.
"""

from __future__ import annotations

import math

import numpy as np

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def li(x: float) -> float:
    """Integral of 1/log(t) over [2, x], relative error well below 1e-10.

    Substituting t = exp(u) turns the integrand into exp(u)/u, which is
    analytic on [log 2, log x]; composite 20-node Gauss-Legendre over
    panels of length <= 1 then converges to machine precision.
    """
    if x < 2:
        raise ValueError(f"li is defined for x >= 2, got {x}")
    a = math.log(2.0)
    b = math.log(x)
    if b == a:
        return 0.0
    panels = max(1, math.ceil(b - a))
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        half = (right - left) / 2.0
        mid = (right + left) / 2.0
        u = mid + half * _GL_NODES
        total += half * float(np.sum(np.exp(u) / u * _GL_WEIGHTS))
    return total


def li_ratio_to_asymptote(n: int) -> float:
    """li(n^2) divided by its asymptote n^2 / (2 log n); tends to 1."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return li(float(n) * n) * 2.0 * math.log(n) / (float(n) * n)
