r"""Minkowski-space linear algebra and the Klein (projective) chart of H^3.

Points of hyperbolic space and hyperideal points are both handled through the
affine chart ``x0 = 1``: a Klein point ``p`` with ``|p| < 1`` lifts to the
hyperboloid ``<x, x> = -1``, a point with ``|p| > 1`` lifts to the de Sitter
space ``<x, x> = +1``.  In both cases the lift has ``x0 > 0``.

Minkowski vectors are plain ``numpy`` arrays of shape ``(4,)`` ordered as
``(x0, x1, x2, x3)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateEdge,
    IdealPoint,
    IntersectingTruncationPlanes,
    NotHyperideal,
    SegmentMissesBall,
)

#: Width of the rejection band around the sphere at infinity.
EPS_IDEAL = 1e-9


class Kind(enum.Enum):
    FINITE = "finite"
    HYPERIDEAL = "hyperideal"


@dataclass(frozen=True, eq=False)
class KleinPoint:
    """A point of the affine chart together with its classification."""

    p: np.ndarray
    kind: Kind

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.p))

    @property
    def is_hyperideal(self) -> bool:
        return self.kind is Kind.HYPERIDEAL

    def __repr__(self):
        coords = ", ".join(f"{c:.6g}" for c in self.p)
        return f"KleinPoint(({coords}), {self.kind.value})"


@dataclass(frozen=True, eq=False)
class HalfSpace3:
    """The closed half-space ``{x : normal . x <= offset}`` of R^3."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        if not np.any(self.normal):
            raise ValueError("half-space normal must be non-zero")

    def contains(self, x, tol: float = 0.0) -> bool:
        return float(np.dot(self.normal, x)) <= self.offset + tol

    def residual(self, x):
        """Signed amount ``normal . x - offset`` (positive means outside)."""
        return np.asarray(x) @ self.normal - self.offset

    def normalized(self) -> "HalfSpace3":
        n = float(np.linalg.norm(self.normal))
        return HalfSpace3(self.normal / n, self.offset / n)


def mink_dot(u, v) -> float:
    """Minkowski product of signature (-,+,+,+)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3])


def klein_point(p, eps: float = EPS_IDEAL) -> KleinPoint:
    """Classify a chart point as finite or hyperideal.

    Raises :class:`IdealPoint` when ``| |p| - 1 | <= eps``.
    """
    p = np.array(p, dtype=float).reshape(3)
    r = float(np.linalg.norm(p))
    if abs(r - 1.0) <= eps:
        raise IdealPoint(f"point {p} lies within {eps} of the sphere at infinity")
    return KleinPoint(p, Kind.FINITE if r < 1.0 else Kind.HYPERIDEAL)


def _as_klein(p) -> KleinPoint:
    return p if isinstance(p, KleinPoint) else klein_point(p)


def lift(p) -> np.ndarray:
    """Lift a Klein point to the hyperboloid (finite) or to de Sitter space (hyperideal)."""
    p = _as_klein(p)
    r2 = float(p.p @ p.p)
    if abs(math.sqrt(r2) - 1.0) <= EPS_IDEAL:
        raise IdealPoint(f"point {p.p} is ideal")
    scale = 1.0 / math.sqrt(1.0 - r2) if p.kind is Kind.FINITE else 1.0 / math.sqrt(r2 - 1.0)
    return scale * np.concatenate(([1.0], p.p))


def dual_halfspace(p) -> HalfSpace3:
    """Klein-chart trace of the half-space ``{y : <y, p_hat> <= 0}`` dual to a hyperideal point.

    Polarity gives ``<(1, x), (1, p)> = -1 + x . p``, so the half-space is
    ``x . p <= 1``, which always contains the origin.
    """
    p = _as_klein(p)
    if p.kind is not Kind.HYPERIDEAL:
        raise NotHyperideal(f"{p} has no dual hyperplane")
    return HalfSpace3(p.p.copy(), 1.0)


def edge_length(a, b) -> float:
    """Hyperbolic length of the internal edge joining two Klein points.

    * finite/finite: ``cosh d = -<a, b>``
    * finite/hyperideal: ``sinh d = |<a, b>|``, distance from the point to the
      dual plane; the segment through a hyperideal point is orthogonal to its
      dual plane, so this is the length of the truncated edge.
    * hyperideal/hyperideal: ``cosh d = |<a, b>|``, the common perpendicular.
      Requires ``<a, b> < -1``: the dual planes are ultraparallel and the
      segment crosses the ball.
    """
    a = _as_klein(a)
    b = _as_klein(b)
    if np.allclose(a.p, b.p, rtol=0.0, atol=1e-15):
        raise DegenerateEdge("edge endpoints coincide")
    d = mink_dot(lift(a), lift(b))
    if a.kind is Kind.FINITE and b.kind is Kind.FINITE:
        return math.acosh(max(1.0, -d))
    if a.kind is not b.kind:
        return math.asinh(abs(d))
    if abs(d) <= 1.0:
        raise IntersectingTruncationPlanes(
            f"dual planes of {a.p} and {b.p} intersect (<a,b> = {d:.6g})"
        )
    if d > 1.0:
        raise SegmentMissesBall(
            f"dual planes of {a.p} and {b.p} are nested; the segment misses the ball"
        )
    return math.acosh(-d)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation of R^3 (used to move configurations by isometries fixing the origin)."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]])
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)
