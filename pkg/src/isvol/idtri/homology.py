"""Rational homology of the quotient complex relative to its vertex classes."""

from __future__ import annotations

import sympy

from .cells import quotient_cells
from .triangulation import IdealTriangulation, perm_sign


def _rank(rows: list[list[int]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return int(sympy.Matrix(rows).rank())


def boundary_matrices(T: IdealTriangulation):
    """Integer matrices of ``d3: C3 -> C2`` and ``d2: C2 -> C1`` (rows are cells).

    Generators: tetrahedra with their label order; face classes oriented by
    the sorted labels of their lower slot; edge classes oriented by their
    representative instance, with self-reversed classes dropped (they are
    zero over the rationals).  ``C0`` is zero because vertices are quotiented out.
    """
    Q = quotient_cells(T)
    face_index = {}
    for k, (lo, hi) in enumerate(Q.face_classes):
        face_index[lo] = (k, 1)
        t, f = lo
        gl = T.partner(t, f)
        labels = [x for x in range(4) if x != f]
        image = [gl.perm[x] for x in labels]
        face_index[hi] = (k, perm_sign(sorted(range(3), key=lambda i: image[i])))

    live = [k for k, rev in enumerate(Q.edge_reversed) if not rev]
    col_of_edge = {k: i for i, k in enumerate(live)}

    d3 = []
    for t in range(T.g):
        row = [0] * len(Q.face_classes)
        for f in range(4):
            k, s = face_index[(t, f)]
            row[k] += (-1) ** f * s
        d3.append(row)

    d2 = []
    for t, f in (lo for lo, _ in Q.face_classes):
        row = [0] * len(live)
        a, b, c = (x for x in range(4) if x != f)
        for (x, y), sgn in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            k = Q.edge_of[(t, (x, y))]
            if k in col_of_edge:
                row[col_of_edge[k]] += sgn * Q.edge_sign[(t, (x, y))]
        d2.append(row)
    return d3, d2, len(Q.face_classes), len(live)


def marked_homology_ranks(T: IdealTriangulation) -> tuple[int, int, int, int]:
    """Ranks of ``H_0..H_3`` of the triangulation relative to its vertices, over Q."""
    d3, d2, n2, n1 = boundary_matrices(T)
    r3 = _rank(d3, n2)
    r2 = _rank(d2, n1)
    return 0, n1 - r2, n2 - r2 - r3, T.g - r3

