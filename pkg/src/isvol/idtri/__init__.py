"""Combinatorics of ideal triangulations."""

from .cells import (
    CellQuotient,
    LinkSurface,
    MgDetection,
    components,
    detect_Mg,
    euler_characteristic_M,
    orientability,
    quotient_cells,
    vertex_links,
)
from .cycles import (
    MarkedCycle,
    alternated_fundamental_cycle,
    boundary,
    local_degrees,
    naive_sum,
    verify_marked_cycle,
)
from .homology import boundary_matrices, marked_homology_ranks
from .triangulation import (
    FIXTURES,
    Gluing,
    IdealTriangulation,
    load_fixture,
    parse,
    perm_sign,
    serialize,
)

__all__ = [
    "CellQuotient",
    "FIXTURES",
    "Gluing",
    "IdealTriangulation",
    "LinkSurface",
    "MarkedCycle",
    "MgDetection",
    "alternated_fundamental_cycle",
    "boundary",
    "boundary_matrices",
    "components",
    "detect_Mg",
    "euler_characteristic_M",
    "load_fixture",
    "local_degrees",
    "marked_homology_ranks",
    "naive_sum",
    "orientability",
    "parse",
    "perm_sign",
    "quotient_cells",
    "serialize",
    "verify_marked_cycle",
    "vertex_links",
]
