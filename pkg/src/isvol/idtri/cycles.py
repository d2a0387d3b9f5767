"""Exact rational chains on ideal triangulations: the alternated fundamental cycle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..errors import NotOrientable
from .cells import orientability
from .triangulation import ALL_PERMS, IdealTriangulation, perm_sign


@dataclass(frozen=True)
class MarkedCycle:
    """Formal sum of ordered tetrahedra ``(tet, vertex ordering, coefficient)``.

    The ordering ``tau`` names the singular simplex whose ``i``-th vertex is
    vertex ``tau[i]`` of the tetrahedron.
    """

    terms: tuple[tuple[int, tuple[int, ...], Fraction], ...]

    def combined(self) -> dict:
        out: dict = {}
        for t, tau, c in self.terms:
            key = (t, tuple(tau))
            out[key] = out.get(key, Fraction(0)) + Fraction(c)
        return {k: v for k, v in out.items() if v != 0}

    @property
    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self.combined().values()), Fraction(0))

    def scaled(self, k) -> "MarkedCycle":
        return MarkedCycle(tuple((t, tau, Fraction(k) * c) for t, tau, c in self.terms))

    def without_tet(self, j: int) -> "MarkedCycle":
        return MarkedCycle(tuple(term for term in self.terms if term[0] != j))

    def __len__(self):
        return len(self.terms)


def alternated_fundamental_cycle(T: IdealTriangulation, signs=None) -> MarkedCycle:
    """``(1/4!) sum_j sum_tau eps(tau) s_j (tet j ordered by tau)``.

    ``signs`` defaults to the orientation signs from :func:`orientability`;
    passing the negated signs reverses the global orientation.
    """
    ok, default = orientability(T)
    if not ok:
        raise NotOrientable("the triangulation admits no consistent orientation")
    signs = default if signs is None else tuple(signs)
    w = Fraction(1, factorial(4))
    terms = tuple(
        (j, tau, perm_sign(tau) * signs[j] * w) for j in range(T.g) for tau in ALL_PERMS
    )
    return MarkedCycle(terms)


def naive_sum(T: IdealTriangulation) -> MarkedCycle:
    """``sum_j sigma_j`` with the identity vertex ordering (not a cycle in general)."""
    return MarkedCycle(tuple((j, (0, 1, 2, 3), Fraction(1)) for j in range(T.g)))


def _canonical_triangle(T: IdealTriangulation, t: int, labels: tuple[int, int, int]):
    """Triangle ``labels`` of tet ``t``, expressed on the lower slot of its face pair."""
    f = ({0, 1, 2, 3} - set(labels)).pop()
    gl = T.partner(t, f)
    if 4 * t + f <= 4 * gl.tet + gl.face:
        return (t, f, labels)
    return (gl.tet, gl.face, tuple(gl.perm[x] for x in labels))


def boundary(T: IdealTriangulation, z: MarkedCycle) -> dict:
    """``dz`` as a dict from canonical ordered triangles to exact coefficients.

    Degenerate terms (repeated vertex labels) are dropped: they lie in the
    chains of the vertex set and vanish in the marked quotient.
    """
    out: dict = {}
    for (t, tau), c in z.combined().items():
        if len(set(tau)) < 4:
            continue
        for i in range(4):
            face = tuple(x for k, x in enumerate(tau) if k != i)
            key = _canonical_triangle(T, t, face)
            out[key] = out.get(key, Fraction(0)) + (-1) ** i * c
    return {k: v for k, v in out.items() if v != 0}


def verify_marked_cycle(T: IdealTriangulation, z: MarkedCycle) -> bool:
    """True iff every boundary term cancels exactly after the face identifications.

    Ordered triangles on the same face that differ by a permutation are
    distinct singular simplices, so cancellation is checked term by term.
    """
    return not boundary(T, z)


def local_degrees(T: IdealTriangulation, z: MarkedCycle, signs=None) -> list[Fraction]:
    """Per tetrahedron, ``s_j sum_tau eps(tau) c(j, tau)``."""
    if signs is None:
        ok, signs = orientability(T)
        if not ok:
            signs = (1,) * T.g
    out = [Fraction(0)] * T.g
    for (t, tau), c in z.combined().items():
        if len(set(tau)) == 4:
            out[t] += signs[t] * perm_sign(tau) * c
    return out
