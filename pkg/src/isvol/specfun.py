"""Special functions and one-dimensional numerics.

The Lobachevsky function is evaluated through its rapidly convergent
expansion around the origin,

    L(t) = t - t log(2|t|) + t * sum_{n>=1} zeta(2n) / (n (2n+1)) * (t/pi)^(2n),

valid for ``|t| <= pi/2`` after reduction by oddness and pi-periodicity.  The
Fourier series ``1/2 sum sin(2kt)/k^2`` is kept as :func:`lobachevsky_series`;
it converges too slowly for routine use but serves as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import zeta

from .errors import MaxSubdivisions, NoSignChange, OutOfDomain

DEFAULT_QUAD_TOL = 1e-9
DEFAULT_ROOT_TOL = 1e-12
MAX_PANELS = 10**6

_ZETA_COEFFS = np.array([zeta(2 * n) / (n * (2 * n + 1)) for n in range(1, 40)])


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    subdivisions: int


def _reduce(theta: float) -> float:
    # representative in [-pi/2, pi/2)
    return theta - math.pi * math.floor(theta / math.pi + 0.5)


def lobachevsky(theta: float) -> float:
    """Lobachevsky function ``-int_0^theta log|2 sin t| dt``."""
    t = _reduce(float(theta))
    if t == 0.0:
        return 0.0
    x2 = (t / math.pi) ** 2
    s = 0.0
    power = 1.0
    for c in _ZETA_COEFFS:
        power *= x2
        term = c * power
        s += term
        if term < 1e-18:
            break
    return float(t - t * math.log(2.0 * abs(t)) + t * s)


def lobachevsky_series(theta: float, terms: int = 200_000) -> float:
    """Truncated Fourier series of the Lobachevsky function (slow reference)."""
    k = np.arange(1, terms + 1, dtype=float)
    return 0.5 * float(np.sum(np.sin(2.0 * k * theta) / k**2))


def v8() -> float:
    """Volume of the regular ideal octahedron, ``8 L(pi/4)``."""
    return 8.0 * lobachevsky(math.pi / 4)


def v3() -> float:
    """Volume of the regular ideal tetrahedron, ``3 L(pi/3) = 2 L(pi/6)``."""
    return 3.0 * lobachevsky(math.pi / 3)


def edge_integrand(t: float) -> float:
    """``arccosh(cos t / (2 cos t - 1))`` for ``0 <= t < pi/3``.

    This is the internal edge length of the regular truncated tetrahedron
    whose dihedral angles all equal ``t``.
    """
    if not 0.0 <= t < math.pi / 3:
        raise OutOfDomain(f"edge_integrand needs 0 <= t < pi/3, got {t}")
    c = math.cos(t)
    denom = 2.0 * c - 1.0
    if denom <= 0.0:
        raise OutOfDomain(f"edge_integrand is infinite at t = {t}")
    return math.acosh(max(1.0, c / denom))


def integrate(
    f: Callable[[float], float], a: float, b: float, tol: float = DEFAULT_QUAD_TOL
) -> QuadratureResult:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    Each accepted panel satisfies ``|S2 - S1| <= 15 * tol_panel`` where the
    panel tolerance is halved at every bisection; the reported error is the
    sum of the Richardson estimates ``|S2 - S1| / 15``.
    """
    if b < a:
        raise ValueError("integrate requires a <= b")
    if a == b:
        return QuadratureResult(0.0, 0.0, 1)

    def simpson(fa, fm, fb, h):
        return h * (fa + 4.0 * fm + fb) / 6.0

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    stack = [(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)]
    total = 0.0
    err = 0.0
    panels = 0
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps or depth >= 60:
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
            panels += 1
            continue
        if panels + len(stack) >= MAX_PANELS:
            raise MaxSubdivisions(f"adaptive Simpson exceeded {MAX_PANELS} panels")
        stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
    return QuadratureResult(total, err, panels)


def find_root(
    f: Callable[[float], float], lo: float, hi: float, tol: float = DEFAULT_ROOT_TOL
) -> float:
    """Bisection on a sign-changing bracket until ``hi - lo <= tol``."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoSignChange(f"f({lo}) and f({hi}) have the same sign")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
