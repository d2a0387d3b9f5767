"""Ideal simplicial volume of manifolds with boundary: hyperbolic geometry of
truncated tetrahedra, ideal triangulations and the resulting bounds."""

from . import bounds, errors, extremal, hyperlin, idtri, specfun, trunc
from .specfun import v3, v8
from .trunc import ell_g, regular_volume

__version__ = "0.1.0"

__all__ = [
    "bounds",
    "ell_g",
    "errors",
    "extremal",
    "hyperlin",
    "idtri",
    "regular_volume",
    "specfun",
    "trunc",
    "v3",
    "v8",
]
