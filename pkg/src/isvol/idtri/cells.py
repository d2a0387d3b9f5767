"""Cell quotients, vertex links, Euler characteristics and orientability."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..errors import NonIntegral, NonManifoldLink
from .triangulation import IdealTriangulation, perm_sign

TET_EDGES = tuple(itertools.combinations(range(4), 2))


class _ParityUnionFind:
    """Union-find whose elements carry a Z/2 offset relative to their root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n
        self.bad_roots: set[int] = set()

    def find(self, x: int) -> tuple[int, int]:
        path = []
        root = x
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        for y in reversed(path):  # nearest-to-root first, so parents are already final
            up = self.parent[y]
            if up != root:
                self.parity[y] ^= self.parity[up]
            self.parent[y] = root
        return root, (self.parity[x] if x != root else 0)

    def union(self, a: int, b: int, rel: int = 0) -> None:
        """Declare ``parity(a) + parity(b) = rel``."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != rel:
                self.bad_roots.add(ra)
            return
        bad = ra in self.bad_roots or rb in self.bad_roots
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ rel
        self.bad_roots.discard(rb)
        if bad:
            self.bad_roots.add(ra)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x)[0], []).append(x)
        return out

    def is_bad(self, x: int) -> bool:
        return self.find(x)[0] in self.bad_roots


def edge_index(t: int, a: int, b: int) -> int:
    return 6 * t + TET_EDGES.index((min(a, b), max(a, b)))


@dataclass(frozen=True)
class CellQuotient:
    """Classes of vertex, edge and face instances under the gluings.

    ``vertex_of[(t, v)]`` and ``edge_of[(t, (a, b))]`` give class indices;
    ``edge_sign[(t, (a, b))]`` is +1 when the instance oriented ``a -> b``
    (``a < b``) agrees with its class representative.  ``edge_reversed[k]``
    flags edge classes identified with themselves backwards.
    """

    vertex_classes: tuple[tuple[tuple[int, int], ...], ...]
    edge_classes: tuple[tuple[tuple[int, tuple[int, int]], ...], ...]
    face_classes: tuple[tuple[tuple[int, int], ...], ...]
    vertex_of: dict
    edge_of: dict
    edge_sign: dict
    edge_reversed: tuple[bool, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertex_classes), len(self.edge_classes), len(self.face_classes)


def quotient_cells(T: IdealTriangulation) -> CellQuotient:
    g = T.g
    verts = _ParityUnionFind(4 * g)
    edges = _ParityUnionFind(6 * g)
    for t in range(g):
        for f in range(4):
            gl = T.partner(t, f)
            p = gl.perm
            others = [v for v in range(4) if v != f]
            for v in others:
                verts.union(4 * t + v, 4 * gl.tet + p[v])
            for a, b in itertools.combinations(others, 2):
                flip = 1 if p[a] > p[b] else 0
                edges.union(edge_index(t, a, b), edge_index(gl.tet, p[a], p[b]), flip)

    vclasses = sorted(verts.classes().values())
    vertex_of = {}
    vertex_classes = []
    for k, members in enumerate(vclasses):
        inst = tuple((x // 4, x % 4) for x in members)
        vertex_classes.append(inst)
        for key in inst:
            vertex_of[key] = k

    eclasses = sorted(edges.classes().values())
    edge_of, edge_sign = {}, {}
    edge_classes, reversed_flags = [], []
    for k, members in enumerate(eclasses):
        inst = []
        for x in members:
            key = (x // 6, TET_EDGES[x % 6])
            inst.append(key)
            edge_of[key] = k
            edge_sign[key] = -1 if edges.find(x)[1] else 1
        edge_classes.append(tuple(inst))
        reversed_flags.append(edges.is_bad(members[0]))

    faces = []
    for s, gl in enumerate(T.slots):
        other = 4 * gl.tet + gl.face
        if s < other:
            faces.append(((s // 4, s % 4), (gl.tet, gl.face)))
    return CellQuotient(
        tuple(vertex_classes),
        tuple(edge_classes),
        tuple(faces),
        vertex_of,
        edge_of,
        edge_sign,
        tuple(reversed_flags),
    )


def components(T: IdealTriangulation) -> list[list[int]]:
    uf = _ParityUnionFind(T.g)
    for t in range(T.g):
        for f in range(4):
            uf.union(t, T.partner(t, f).tet)
    return sorted(sorted(c) for c in uf.classes().values())


def orientability(T: IdealTriangulation) -> tuple[bool, tuple[int, ...] | None]:
    """Whether consistent tetrahedron orientations exist, and the signs if so.

    Gluing face ``f`` of ``t`` to ``t'`` by ``p`` reverses the induced face
    orientations exactly when ``s(t') = -sign(p) s(t)``.  Signs are
    normalised so that the lowest tetrahedron of each component is +1.
    """
    uf = _ParityUnionFind(T.g)
    for t in range(T.g):
        for f in range(4):
            gl = T.partner(t, f)
            uf.union(t, gl.tet, 0 if perm_sign(gl.perm) == -1 else 1)
    if uf.bad_roots:
        return False, None
    first: dict[int, int] = {}
    signs = []
    for t in range(T.g):
        root, par = uf.find(t)
        first.setdefault(root, par)
        signs.append(1 if par == first[root] else -1)
    return True, tuple(signs)


@dataclass(frozen=True)
class LinkSurface:
    vertex_class: int
    euler_char: int
    orientable: bool
    genus_or_crosscaps: int
    n_vertices: int
    n_edges: int
    n_triangles: int


def vertex_links(T: IdealTriangulation) -> list[LinkSurface]:
    """Link of each vertex class, triangulated by the tetrahedron corners.

    The corner at vertex ``v`` of ``t`` is a triangle whose vertices are the
    edge ends ``(t, v, w)``; its side opposite ``w`` lies in face ``w`` of
    ``t`` and is glued across that face.
    """
    Q = quotient_cells(T)
    g = T.g

    def end_index(t, v, w):
        return 12 * t + 3 * v + (w if w < v else w - 1)

    ends = _ParityUnionFind(12 * g)
    corners = _ParityUnionFind(4 * g)  # orientation propagation on link triangles
    side_count: dict[tuple, int] = {}
    for t in range(g):
        for v in range(4):
            labels = [w for w in range(4) if w != v]
            for f in labels:
                gl = T.partner(t, f)
                p = gl.perm
                t2, v2 = gl.tet, p[v]
                labels2 = [w for w in range(4) if w != v2]
                for w in labels:
                    if w != f:
                        ends.union(end_index(t, v, w), end_index(t2, v2, p[w]))
                phi = [labels2.index(p[w]) for w in labels]
                corners.union(4 * t + v, 4 * t2 + v2, 0 if perm_sign(phi) == -1 else 1)
                key = tuple(sorted([(t, v, f), (t2, v2, gl.face)]))
                side_count[key] = side_count.get(key, 0) + 1

    for key, n in side_count.items():
        a, b = key
        expected = 1 if a == b else 2
        if n != expected:
            raise NonManifoldLink(f"link edge {key} has {n} incident triangle sides")

    end_classes = ends.classes()
    out = []
    for k, members in enumerate(Q.vertex_classes):
        member_set = set(members)
        n_tri = len(members)
        n_edge = 3 * n_tri // 2
        n_vert = sum(
            1 for root, xs in end_classes.items()
            if ((xs[0] // 12), (xs[0] % 12) // 3) in member_set
        )
        chi = n_vert - n_edge + n_tri
        orientable = not any(corners.is_bad(4 * t + v) for t, v in members)
        top = (2 - chi) // 2 if orientable else 2 - chi
        out.append(LinkSurface(k, chi, orientable, top, n_vert, n_edge, n_tri))
    return out


def euler_characteristic_M(T: IdealTriangulation) -> Fraction:
    """``chi(M) = (1/2) sum chi(link)``; the links form the boundary of the compact core."""
    total = sum(link.euler_char for link in vertex_links(T))
    if total % 2:
        raise NonIntegral(f"sum of link Euler characteristics {total} is odd")
    return Fraction(total, 2)


@dataclass(frozen=True)
class MgDetection:
    is_Mg: bool
    g: int | None


def detect_Mg(T: IdealTriangulation) -> MgDetection:
    """One-edge test: orientable, connected, one vertex and one edge class, ``chi(M) = 1 - g``."""
    ok, _ = orientability(T)
    if not ok or len(components(T)) != 1 or T.g < 2:
        return MgDetection(False, None)
    nv, ne, _ = quotient_cells(T).counts
    if nv != 1 or ne != 1:
        return MgDetection(False, None)
    if euler_characteristic_M(T) != 1 - T.g:
        return MgDetection(False, None)
    return MgDetection(True, T.g)
