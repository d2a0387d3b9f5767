"""Bounds and exact values of the ideal simplicial volume, and mapping-degree bounds."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import trunc
from .errors import BadGenus, MissingField
from .specfun import v3, v8

FLOOR_GUARD = 1e-9


class Kind(enum.Enum):
    CUSPED_HYPERBOLIC = "cusped"
    GEODESIC_BOUNDARY = "geodesic"
    MG = "mg"
    GENERIC = "generic"


@dataclass(frozen=True)
class ManifoldDescriptor:
    kind: Kind
    volume: float | None = None
    g: int | None = None
    return_length: float | None = None
    complexity_upper: int | None = None
    amenable_boundary: bool = False

    def __post_init__(self):
        if self.kind is Kind.MG and (self.g is None or self.g < 2):
            raise BadGenus(f"M_g needs g >= 2, got {self.g}")
        if self.return_length is not None and not self.return_length > 0:
            raise ValueError("return_length must be positive")
        if self.volume is not None and not self.volume >= 0:
            raise ValueError("volume must be non-negative")


@dataclass(frozen=True)
class BoundReport:
    lower: float
    upper: float | None = None
    exact: float | None = None
    provenance: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()
    heuristic_lower: float | None = None

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper + 1e-12:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


GENUS_TWO_FLAG = "boundary must be genus 2"


def certified_Vl(ell: float) -> tuple[float, str]:
    """Volume bound ``V_ell`` for truncated tetrahedra with all edges at least ``ell``.

    Up to ``ell_2`` the regular truncated tetrahedron is extremal; beyond it
    only the monotone fallback ``v8`` is certified.
    """
    if ell <= trunc.ell_g(2):
        return float(trunc.regular_volume(ell)), "regular truncated tetrahedron is extremal for ell <= ell_2"
    return v8(), "v8 fallback (ell > ell_2, regular extremality not established)"


def _genus_flags(kind: Kind, best_upper: float | None) -> tuple[str, ...]:
    geodesic = kind in (Kind.GEODESIC_BOUNDARY, Kind.MG)
    if geodesic and best_upper is not None and best_upper <= 2 + 1e-12:
        return (GENUS_TWO_FLAG,)
    return ()


def isv_bounds(d: ManifoldDescriptor, heuristic_restarts: int = 0, seed: int = 0) -> BoundReport:
    """Assemble what is known about the ideal simplicial volume of ``d``.

    ``heuristic_restarts > 0`` additionally runs the extremal search when
    the return length exceeds ``ell_2`` and reports ``vol / V_est`` as a
    heuristic (uncertified) lower bound.
    """
    if d.kind is Kind.MG:
        g = float(d.g)
        return BoundReport(
            g, g, g,
            provenance=("isv = g exactly on M_g",),
            flags=_genus_flags(d.kind, g),
        )

    if d.kind is Kind.CUSPED_HYPERBOLIC:
        if d.volume is None:
            raise MissingField("cusped hyperbolic descriptor needs a volume")
        value = float(d.volume) / v3()
        notes = ()
        if d.complexity_upper is not None and d.complexity_upper < value - 1e-9:
            notes = (f"complexity {d.complexity_upper} is below vol/v3 = {value:.12g}; inconsistent input",)
        return BoundReport(
            value, value, value,
            provenance=("cusped hyperbolic: isv = ||M|| = vol / v3",),
            notes=notes,
        )

    if d.kind is Kind.GEODESIC_BOUNDARY:
        if d.volume is None:
            raise MissingField("geodesic-boundary descriptor needs a volume")
        if d.return_length is None:
            V, why = v8(), "no return length given: vol / v8"
        else:
            V, why = certified_Vl(d.return_length)
        lower = float(d.volume) / V
        provenance = ["lower bound vol / V_ell(M)", why]
        upper = None
        if d.complexity_upper is not None:
            upper = float(d.complexity_upper)
            provenance.append("upper bound by triangulation complexity")
        heuristic = None
        notes = []
        if heuristic_restarts > 0 and d.return_length is not None and d.return_length > trunc.ell_g(2):
            from .extremal import SearchConfig, estimate_Vl

            est = estimate_Vl(SearchConfig(d.return_length, restarts=heuristic_restarts, seed=seed))
            heuristic = d.volume / est.best_volume
            notes.append(f"heuristic V_ell estimate {est.best_volume:.12g} (not a certified bound)")
        return BoundReport(
            lower, upper, None,
            provenance=tuple(provenance),
            notes=tuple(notes),
            flags=_genus_flags(d.kind, upper),
            heuristic_lower=heuristic,
        )

    if d.complexity_upper is None:
        raise MissingField("generic descriptor needs complexity_upper")
    return BoundReport(
        0.0, float(d.complexity_upper), None,
        provenance=("upper bound by triangulation complexity",),
        notes=("||M|| <= K_n isv(M) with a constant K_n that exists but is not effective",),
    )


@dataclass(frozen=True)
class DegreeBounds:
    g: int
    g_prime: int
    ideal: int
    double: int
    boundary: int
    ideal_ratio: float
    double_ratio: float
    boundary_ratio: float


def _guarded_floor(x: float) -> int:
    return math.floor(x + FLOOR_GUARD)


def degree_bounds(g: int, g_prime: int) -> DegreeBounds:
    """Three upper bounds on the degree of a map ``M_g -> M_g'``.

    * ideal: ``g / g'`` from the ideal simplicial volume
    * double: the volume ratio ``g vol(D_g) / (g' vol(D_g'))``, with
      ``D_g`` the regular truncated tetrahedron of edge length ``ell_g``
    * boundary: ``(g - 1) / (g' - 1)`` from the Euler characteristic of the boundary
    """
    if not (isinstance(g, int) and isinstance(g_prime, int)) or not g >= g_prime >= 2:
        raise BadGenus(f"need integers g >= g' >= 2, got ({g}, {g_prime})")
    ideal = Fraction(g, g_prime)
    boundary = Fraction(g - 1, g_prime - 1)
    double = float(
        (g * trunc.regular_volume(trunc.ell_g(g)))
        / (g_prime * trunc.regular_volume(trunc.ell_g(g_prime)))
    )
    return DegreeBounds(
        g,
        g_prime,
        math.floor(ideal),
        _guarded_floor(double),
        math.floor(boundary),
        float(ideal),
        double,
        float(boundary),
    )


def amenable_equality(d: ManifoldDescriptor) -> str:
    """How the ideal simplicial volume relates to the ordinary one for ``d``.

    Cusps of finite-volume hyperbolic manifolds are tori, so cusped
    descriptors count as amenable regardless of the flag.
    """
    if not (d.amenable_boundary or d.kind is Kind.CUSPED_HYPERBOLIC):
        return "isv(M) <= ||M|| (boundary not known to be amenable; equality not claimed)"
    if d.kind is Kind.CUSPED_HYPERBOLIC and d.volume is not None:
        value = d.volume / v3()
        return f"isv(M) = ||M|| = vol/v3 = {value:.12g} (amenable boundary)"
    try:
        report = isv_bounds(d)
    except MissingField:
        report = None
    if report is not None and report.exact is not None:
        return f"isv(M) = ||M|| = {report.exact:.12g} (amenable boundary)"
    return "isv(M) = ||M|| (amenable boundary)"
