r"""Partially truncated tetrahedra in the Klein model.

A configuration is four labelled chart points.  Hyperideal vertices are cut
off by their dual half-spaces ``x . p <= 1``; what remains of the Euclidean
simplex is a convex polytope strictly inside the unit ball, whose hyperbolic
volume is ``int (1 - |x|^2)^-2 dx``.

Two quadratures are provided:

``method="cone"`` (default)
    Cone the polytope from the origin over its facets.  Along each ray the
    radial integral is elementary,
    ``int_0^1 t^2 (1 - t^2 s^2)^-2 dt = G(s)`` with ``s G(s) = d/ds A(s)``
    and ``A(s) = artanh(s) / (2 s)``, so each cone reduces to
    ``h * int [A(s(phi)) - A(h)] dphi`` in polar coordinates about the foot of
    the perpendicular on the facet plane.  The remaining angular integrals are
    done with vectorised adaptive Gauss-Legendre.

``method="cells"``
    Fan the polytope into tetrahedra from the vertex centroid and integrate
    each with a collapsed (Duffy) 3x3x3 Gauss product rule, refining cells
    1-to-8 where the two-level estimate disagrees.  Much slower near the
    sphere; kept as an independent check.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import (
    InvalidConfig,
    MaxSubdivisions,
    NumericallyDegenerate,
    OutOfDomain,
    TouchesSphere,
)
from .hyperlin import HalfSpace3, KleinPoint, Kind, edge_length, klein_point, lift, mink_dot

COPLANAR_TOL = 1e-12
VERTEX_TOL = 1e-9
SPHERE_MARGIN = 1e-9
MAX_CELLS = 200_000

EDGES = tuple(itertools.combinations(range(4), 2))

# regular-tetrahedron directions, pairwise cosine -1/3
TETRA_DIRECTIONS = np.array(
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
) / math.sqrt(3.0)


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True, eq=False)
class TruncTetConfig:
    """Four labelled Klein points spanning a (possibly truncated) tetrahedron."""

    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) != 4:
            raise ValueError("a tetrahedron needs exactly four vertices")

    @classmethod
    def from_points(cls, points) -> "TruncTetConfig":
        pts = np.asarray(points, dtype=float).reshape(4, 3)
        return cls(tuple(klein_point(p) for p in pts))

    @property
    def points(self) -> np.ndarray:
        return np.array([v.p for v in self.vertices])

    @property
    def hyperideal(self) -> frozenset:
        return frozenset(i for i, v in enumerate(self.vertices) if v.kind is Kind.HYPERIDEAL)

    @property
    def fully_truncated(self) -> bool:
        return len(self.hyperideal) == 4

    def edge_lengths(self) -> np.ndarray:
        """Lengths of the six internal edges, ordered as :data:`EDGES`."""
        return np.array([edge_length(self.vertices[i], self.vertices[j]) for i, j in EDGES])

    def transformed(self, matrix) -> "TruncTetConfig":
        return TruncTetConfig.from_points(self.points @ np.asarray(matrix).T)


class Status(enum.Enum):
    VALID = "valid"
    DEGENERATE = "degenerate"
    INVALID = "invalid"


@dataclass(frozen=True)
class Validation:
    status: Status
    condition: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.status is Status.VALID


def affine_determinant(points) -> float:
    pts = np.asarray(points, dtype=float)
    return float(np.linalg.det(pts[1:] - pts[0]))


def validate(cfg: TruncTetConfig) -> Validation:
    """Check the two admissibility conditions of a partially truncated tetrahedron.

    Condition 1: every segment ``[v_i, v_j]`` meets the open ball.  Segments
    with a finite endpoint always do; for two hyperideal endpoints it is
    equivalent to ``<v_i, v_j> < -1`` for the normalised lifts.
    Condition 2: every finite vertex lies in the dual half-space of every
    hyperideal vertex.
    """
    pts = cfg.points
    if abs(affine_determinant(pts)) < COPLANAR_TOL:
        return Validation(Status.DEGENERATE, None, "vertices are affinely dependent")
    lifts = [lift(v) for v in cfg.vertices]
    hyp = cfg.hyperideal
    for i, j in EDGES:
        if i in hyp and j in hyp:
            d = mink_dot(lifts[i], lifts[j])
            if d >= -1.0:
                return Validation(
                    Status.INVALID, 1, f"segment {i}{j} misses the ball (<v{i},v{j}> = {d:.6g})"
                )
    for i in hyp:
        for j in range(4):
            if j not in hyp and float(pts[j] @ pts[i]) > 1.0:
                return Validation(
                    Status.INVALID, 2, f"finite vertex {j} lies beyond the dual plane of {i}"
                )
    return Validation(Status.VALID)


# ---------------------------------------------------------------------------
# polytope


@dataclass(frozen=True, eq=False)
class Facet:
    halfspace: HalfSpace3  # unit normal, pointing outward
    cycle: tuple  # vertex indices, counter-clockwise seen from outside
    origin: tuple  # ("face", f) or ("trunc", i)


@dataclass(frozen=True, eq=False)
class ConvexPolytope3:
    vertices: np.ndarray
    facets: list = field(default_factory=list)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return sum(len(f.cycle) for f in self.facets) // 2

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def combinatorics(self) -> tuple:
        return self.n_vertices, self.n_edges, self.n_facets

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_facets

    def max_radius(self) -> float:
        return float(np.max(np.linalg.norm(self.vertices, axis=1)))


def _cross(u, v):
    # np.cross carries heavy per-call overhead; works on the last axis
    u = np.asarray(u)
    v = np.asarray(v)
    return np.stack(
        [
            u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1],
            u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2],
            u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0],
        ],
        axis=-1,
    )


def _planes(cfg: TruncTetConfig):
    pts = cfg.points
    normals, offsets, origins = [], [], []
    for f in range(4):
        a, b, c = pts[[i for i in range(4) if i != f]]
        n = _cross(b - a, c - a)
        off = float(n @ a)
        if n @ pts[f] > off:
            n, off = -n, -off
        scale = np.linalg.norm(n)
        normals.append(n / scale)
        offsets.append(off / scale)
        origins.append(("face", f))
    for i in sorted(cfg.hyperideal):
        r = np.linalg.norm(pts[i])
        normals.append(pts[i] / r)
        offsets.append(1.0 / r)
        origins.append(("trunc", i))
    return np.array(normals), np.array(offsets), origins


def _plane_basis(n):
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    a = _cross(n, helper)
    a /= math.sqrt(a @ a)
    return a, _cross(n, a)


def truncation_polytope(cfg: TruncTetConfig) -> ConvexPolytope3:
    """Intersect the simplex with the dual half-spaces of its hyperideal vertices."""
    normals, offsets, origins = _planes(cfg)
    triples = np.array(list(itertools.combinations(range(len(normals)), 3)))
    mats = normals[triples]
    good = np.abs(np.linalg.det(mats)) > COPLANAR_TOL
    sols = np.linalg.solve(mats[good], offsets[triples[good]][..., None])[..., 0]
    inside = np.all(sols @ normals.T <= offsets + VERTEX_TOL, axis=1)
    verts = sols[inside]
    if len(verts) > 1:
        gaps = np.linalg.norm(verts[:, None, :] - verts[None, :, :], axis=-1)
        gaps[np.diag_indices(len(verts))] = np.inf
        if np.min(gaps) <= VERTEX_TOL:
            raise NumericallyDegenerate("two polytope vertices coincide")

    facets = []
    resid = np.abs(verts @ normals.T - offsets)
    for j, n in enumerate(normals):
        on = np.flatnonzero(resid[:, j] <= VERTEX_TOL)
        if len(on) < 3:
            continue
        a, b = _plane_basis(n)
        rel = verts[on] - verts[on].mean(axis=0)
        ang = np.arctan2(rel @ b, rel @ a)
        cycle = tuple(int(k) for k in on[np.argsort(ang)])
        facets.append(Facet(HalfSpace3(n, float(offsets[j])), cycle, origins[j]))
    return ConvexPolytope3(verts, facets)


# ---------------------------------------------------------------------------
# volume

GAUSS_LOW, GAUSS_HIGH = 7, 15
MAX_SECTORS = 200_000
_EPS = float(np.finfo(float).eps)


def _radial_primitive(s):
    # A(s) = artanh(s) / (2 s), analytic in s^2
    s = np.asarray(s, dtype=float)
    small = s < 1e-3
    if not small.any():
        return np.arctanh(s) / (2.0 * s)
    out = np.empty_like(s)
    u = s[small] ** 2
    out[small] = 0.5 * (1.0 + u / 3.0 + u * u / 5.0 + u**3 / 7.0)
    big = ~small
    out[big] = np.arctanh(s[big]) / (2.0 * s[big])
    return out


def _edge_sectors(xy, nxt):
    """Triangle (foot, x_k, x_{k+1}) data in edge coordinates.

    Returns the distance ``d`` from the foot of the height to the edge line
    and the signed positions ``u0, u1`` of the endpoints along the line,
    swapped when the triangle is clockwise so that every sector integrates
    from ``u0`` to ``u1``.
    """
    e = nxt - xy
    e_hat = e / np.sqrt(np.sum(e * e, axis=-1))[..., None]
    u0 = np.sum(xy * e_hat, axis=-1)
    u1 = np.sum(nxt * e_hat, axis=-1)
    d = np.abs(xy[..., 0] * e_hat[..., 1] - xy[..., 1] * e_hat[..., 0])
    cw = xy[..., 0] * nxt[..., 1] - xy[..., 1] * nxt[..., 0] < 0
    return d, np.where(cw, u1, u0), np.where(cw, u0, u1)


def _cone_sectors(poly: ConvexPolytope3):
    """One sector per (facet, edge): height, edge distance, edge-coordinate range."""
    heights, dists, lo, hi = [], [], [], []
    V = poly.vertices
    for facet in poly.facets:
        n, h = facet.halfspace.normal, facet.halfspace.offset
        if abs(h) < 1e-15:
            continue
        a, b = _plane_basis(n)
        rel = V[list(facet.cycle)] - h * n
        xy = np.stack([rel @ a, rel @ b], axis=1)
        d, u0, u1 = _edge_sectors(xy, np.roll(xy, -1, axis=0))
        keep = d > 1e-14
        heights.append(np.full(keep.sum(), h))
        dists.append(d[keep])
        lo.append(u0[keep])
        hi.append(u1[keep])
    if not heights:
        return (np.zeros(0),) * 4
    return tuple(np.concatenate(x) for x in (heights, dists, lo, hi))


def _gauss_pair(n_low: int, n_high: int):
    xl, wl = np.polynomial.legendre.leggauss(n_low)
    xh, wh = np.polynomial.legendre.leggauss(n_high)
    nodes = np.concatenate([xl, xh])
    low = np.concatenate([wl, np.zeros(n_high)])
    high = np.concatenate([np.zeros(n_low), wh])
    return nodes, np.stack([low, high], axis=1)


_PAIR_NODES, _PAIR_WEIGHTS = _gauss_pair(GAUSS_LOW, GAUSS_HIGH)


def _sector_gauss(h, d, lo, hi):
    """Embedded Gauss estimates of ``int d (A(s) - A(|h|)) / (d^2 + u^2) du`` per interval.

    Here ``s^2 = h^2 + d^2 + u^2``.  Returns the high-order value, the
    low-order value and a rounding-noise level: ``artanh`` near 1 amplifies
    the error in ``s`` by ``1 / (1 - s)``, and the difference of primitives
    loses digits when ``d^2 + u^2`` is small.
    """
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    u = mid[:, None] + half[:, None] * _PAIR_NODES
    r2 = d[:, None] ** 2 + u * u
    s = np.sqrt(h[:, None] ** 2 + r2)
    a_s = _radial_primitive(s)
    a_h = _radial_primitive(np.abs(h))[:, None]
    kernel = d[:, None] / r2
    both = half[:, None] * (((a_s - a_h) * kernel) @ _PAIR_WEIGHTS)
    cond = 1.0 / np.maximum(1.0 - s, 1e-300)
    noise = 64.0 * _EPS * np.abs(half) * np.max((cond * a_s + a_h) * kernel, axis=1)
    return both[:, 1], both[:, 0], noise


def _integrate_sectors(h, d, lo, hi, tol: float) -> float:
    """Sum of the sector integrals weighted by their facet heights.

    Intervals are bisected until the embedded Gauss estimates agree to their
    share (by length) of ``tol`` times the total, or to rounding noise.
    """
    if len(h) == 0:
        return 0.0
    span = float(np.sum(np.abs(hi - lo)))
    idx = np.arange(len(h))
    total = 0.0
    scale = None
    for _ in range(60):
        high, low, noise = _sector_gauss(h[idx], d[idx], lo, hi)
        if scale is None:
            scale = abs(float(np.sum(h * high)))
            if scale == 0.0:
                return 0.0
        budget = tol * scale * np.abs(hi - lo) / span + np.abs(h[idx]) * noise
        done = np.abs(h[idx] * (high - low)) <= budget
        total += float(np.sum((h[idx] * high)[done]))
        todo = ~done
        if not todo.any():
            return total
        if 2 * int(todo.sum()) > MAX_SECTORS:
            break
        mid = 0.5 * (lo + hi)
        idx = np.concatenate([idx[todo], idx[todo]])
        lo, hi = np.concatenate([lo[todo], mid[todo]]), np.concatenate([mid[todo], hi[todo]])
    raise MaxSubdivisions("cone quadrature did not converge")


def _volume_cone(poly: ConvexPolytope3, tol: float) -> float:
    return _integrate_sectors(*_cone_sectors(poly), tol)


def _polygon_sectors(cycles, normals, offsets):
    """Vectorised sectors for a stack of same-size polygons ``cycles[F, m, 3]``.

    Cycle orientation is arbitrary; sectors of clockwise polygons are reversed.
    """
    helper = np.where(np.abs(normals[:, :1]) < 0.9, [[1.0, 0.0, 0.0]], [[0.0, 1.0, 0.0]])
    a = _cross(normals, helper)
    a /= np.sqrt(np.sum(a * a, axis=1))[:, None]
    b = _cross(normals, a)
    rel = cycles - (offsets[:, None] * normals)[:, None, :]
    xy = np.stack([np.einsum("fmk,fk->fm", rel, a), np.einsum("fmk,fk->fm", rel, b)], axis=-1)
    m = cycles.shape[1]
    nxt = xy[:, (np.arange(m) + 1) % m]
    orient = np.sum(xy[..., 0] * nxt[..., 1] - xy[..., 1] * nxt[..., 0], axis=1)
    d, u0, u1 = _edge_sectors(xy, nxt)
    flip = orient[:, None] < 0
    lo = np.where(flip, u1, u0)
    hi = np.where(flip, u0, u1)
    h = np.broadcast_to(offsets[:, None], d.shape)
    keep = (d > 1e-14) & (np.abs(h) > 1e-15)
    return h[keep], d[keep], lo[keep], hi[keep]


# hexagon opposite vertex f with face vertices i < j < k:
# corners x(i->j), x(j->i), x(j->k), x(k->j), x(k->i), x(i->k)
_OPPOSITE = np.array([[i for i in range(4) if i != f] for f in range(4)])
_HEX_CORNERS = np.array(
    [[(i, j), (j, i), (j, k), (k, j), (k, i), (i, k)] for i, j, k in _OPPOSITE]
)
_TRI_CORNERS = np.array([[(a, b) for b in range(4) if b != a] for a in range(4)])


def fully_truncated_volume(points, tol: float = 1e-9) -> float:
    """Volume of a valid fully truncated tetrahedron given by its four hyperideal vertices.

    Uses the fixed combinatorics of such polytopes (four truncation triangles
    and four hexagons; the corner cut from edge ``ab`` near ``a`` sits at
    parameter ``(|a|^2 - 1) / (|a|^2 - a.b)``) instead of plane enumeration.
    Validity is the caller's responsibility.
    """
    P = np.asarray(points, dtype=float).reshape(4, 3)
    gram = P @ P.T
    sq = np.diag(gram).copy()
    t = (sq[:, None] - 1.0) / (sq[:, None] - gram + np.eye(4))
    corner = P[:, None, :] + t[..., None] * (P[None, :, :] - P[:, None, :])

    # triangles padded to hexagons by edge midpoints (same sectors, split in two)
    tri = corner[_TRI_CORNERS[..., 0], _TRI_CORNERS[..., 1]]
    tri6 = np.empty((4, 6, 3))
    tri6[:, 0::2] = tri
    tri6[:, 1::2] = 0.5 * (tri + tri[:, [1, 2, 0]])
    hexa = corner[_HEX_CORNERS[..., 0], _HEX_CORNERS[..., 1]]

    norms = np.sqrt(sq)
    base = P[_OPPOSITE]
    hex_n = _cross(base[:, 1] - base[:, 0], base[:, 2] - base[:, 0])
    hex_n /= np.sqrt(np.sum(hex_n * hex_n, axis=1))[:, None]
    hex_h = np.sum(hex_n * base[:, 0], axis=1)
    outward = np.where(np.sum(hex_n * P, axis=1) > hex_h, -1.0, 1.0)

    cycles = np.concatenate([tri6, hexa])
    normals = np.concatenate([P / norms[:, None], hex_n * outward[:, None]])
    offsets = np.concatenate([1.0 / norms, hex_h * outward])
    return _integrate_sectors(*_polygon_sectors(cycles, normals, offsets), tol)


def _duffy_rule():
    g, w = np.polynomial.legendre.leggauss(3)
    g = 0.5 * (g + 1.0)
    w = 0.5 * w
    nodes, weights = [], []
    for (u, wu), (v, wv), (t, wt) in itertools.product(zip(g, w), repeat=3):
        x, y, z = u, v * (1.0 - u), t * (1.0 - u) * (1.0 - v)
        nodes.append((1.0 - x - y - z, x, y, z))
        weights.append(6.0 * wu * wv * wt * (1.0 - u) ** 2 * (1.0 - v))
    return np.array(nodes), np.array(weights)


_DUFFY_B, _DUFFY_W = _duffy_rule()
# children of the red 1-to-8 refinement over the nodes (v0..v3, m01, m02, m03, m12, m13, m23)
_RED_CHILDREN = np.array(
    [[0, 4, 5, 6], [4, 1, 7, 8], [5, 7, 2, 9], [6, 8, 9, 3],
     [4, 5, 6, 8], [4, 5, 7, 8], [5, 6, 8, 9], [5, 7, 8, 9]]
)
_MIDPOINTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _cell_estimates(cells):
    x = np.einsum("qk,mkd->mqd", _DUFFY_B, cells)
    dens = 1.0 / (1.0 - np.sum(x * x, axis=-1)) ** 2
    vol = np.abs(np.linalg.det(cells[:, 1:] - cells[:, :1])) / 6.0
    return vol * (dens @ _DUFFY_W)


def _red_refine(cells):
    mids = [0.5 * (cells[:, a] + cells[:, b])[:, None] for a, b in _MIDPOINTS]
    nodes = np.concatenate([cells, *mids], axis=1)
    return nodes[:, _RED_CHILDREN].reshape(-1, 4, 3)


def fan_tetrahedra(poly: ConvexPolytope3) -> np.ndarray:
    centre = poly.vertices.mean(axis=0)
    tets = []
    for facet in poly.facets:
        c = facet.cycle
        for k in range(1, len(c) - 1):
            tets.append([centre, poly.vertices[c[0]], poly.vertices[c[k]], poly.vertices[c[k + 1]]])
    return np.array(tets)


def _volume_cells(poly: ConvexPolytope3, tol: float) -> float:
    cells = fan_tetrahedra(poly)
    coarse = _cell_estimates(cells)
    while True:
        children = _red_refine(cells)
        child_est = _cell_estimates(children).reshape(-1, 8)
        fine = child_est.sum(axis=1)
        err = np.abs(fine - coarse)
        total = float(fine.sum())
        if err.sum() <= tol * abs(total):
            return total
        # refine the cells carrying the largest half of the error budget
        order = np.argsort(err)[::-1]
        cut = int(np.searchsorted(np.cumsum(err[order]), 0.5 * err.sum())) + 1
        split = np.zeros(len(cells), dtype=bool)
        split[order[:cut]] = True
        n_new = len(cells) + 7 * cut
        if n_new > MAX_CELLS:
            raise MaxSubdivisions(f"cell quadrature would exceed {MAX_CELLS} cells")
        kids = children.reshape(-1, 8, 4, 3)[split].reshape(-1, 4, 3)
        cells = np.concatenate([cells[~split], kids])
        coarse = np.concatenate([coarse[~split], child_est[split].ravel()])


def volume(poly: ConvexPolytope3, tol: float = 1e-9, method: str = "cone") -> float:
    """Hyperbolic volume of a convex polytope lying strictly inside the Klein ball.

    ``tol`` is a relative tolerance on the total.
    """
    if poly.n_vertices == 0:
        return 0.0
    if poly.max_radius() >= 1.0 - SPHERE_MARGIN:
        raise TouchesSphere(f"polytope reaches radius {poly.max_radius():.12g}")
    if method == "cone":
        return _volume_cone(poly, tol)
    if method == "cells":
        return _volume_cells(poly, tol)
    raise ValueError(f"unknown volume method {method!r}")


def config_volume(cfg: TruncTetConfig, tol: float = 1e-9, method: str = "cone") -> float:
    """Volume of a valid configuration, with the vertex order canonicalised."""
    pts = cfg.points
    order = np.lexsort(pts.T[::-1])
    canon = TruncTetConfig(tuple(cfg.vertices[i] for i in order))
    return volume(truncation_polytope(canon), tol, method)


def algvol(*ys, tol: float = 1e-9) -> float:
    """Signed volume of the truncated simplex spanned by four points.

    Zero when the points are affinely dependent; otherwise the volume times
    the orientation sign of the barycentric parametrisation.
    """
    if len(ys) == 1:
        ys = tuple(ys[0])
    if len(ys) != 4:
        raise ValueError("algvol takes exactly four points")
    kp = tuple(y if isinstance(y, KleinPoint) else klein_point(y) for y in ys)
    cfg = TruncTetConfig(kp)
    det = affine_determinant(cfg.points)
    if abs(det) < COPLANAR_TOL:
        return 0.0
    check = validate(cfg)
    if check.status is Status.DEGENERATE:
        return 0.0
    if not check:
        raise InvalidConfig(check.reason, check.condition)
    return math.copysign(config_volume(cfg, tol), det)


# ---------------------------------------------------------------------------
# regular family


@dataclass(frozen=True)
class RegularTruncTet:
    ell: float
    theta: float
    volume: float


def regular_theta_of_ell(ell: float) -> float:
    """Dihedral angle of the regular truncated tetrahedron with edge length ``ell``."""
    if not ell > 0.0:
        raise OutOfDomain(f"edge length must be positive, got {ell}")
    sech = 1.0 / math.cosh(ell) if ell < 710.0 else 0.0
    return math.acos(1.0 / (2.0 - sech))


def regular_ell_of_theta(theta: float) -> float:
    if not 0.0 < theta < math.pi / 3:
        raise OutOfDomain(f"dihedral angle must lie in (0, pi/3), got {theta}")
    return specfun.edge_integrand(theta)


def ell_g(g: int) -> float:
    """Edge length of the regular truncated tetrahedron with dihedral angle ``pi/(3g)``."""
    if int(g) != g or g < 2:
        raise OutOfDomain(f"genus must be an integer >= 2, got {g}")
    return regular_ell_of_theta(math.pi / (3 * int(g)))


_SPLIT_ANGLE = math.pi / 4


def regular_volume(ell: float, tol: float = specfun.DEFAULT_QUAD_TOL) -> float:
    """``v8 - 3 int_0^theta(ell) edge_integrand(t) dt``.

    Beyond ``pi/4`` the integrand blows up logarithmically at ``pi/3``, so that
    part is integrated by parts in the edge-length variable instead:
    ``int_a^theta l(t) dt = theta*ell - a*l(a) - int_{l(a)}^{ell} theta(s) ds``.
    """
    theta = regular_theta_of_ell(ell)
    if theta <= _SPLIT_ANGLE:
        integral = specfun.integrate(specfun.edge_integrand, 0.0, theta, tol).value
    else:
        ell_a = specfun.edge_integrand(_SPLIT_ANGLE)
        head = specfun.integrate(specfun.edge_integrand, 0.0, _SPLIT_ANGLE, tol).value
        tail = specfun.integrate(regular_theta_of_ell, ell_a, ell, tol).value
        integral = head + theta * ell - _SPLIT_ANGLE * ell_a - tail
    return specfun.v8() - 3.0 * integral


def regular_tet(ell: float | None = None, theta: float | None = None) -> RegularTruncTet:
    if (ell is None) == (theta is None):
        raise ValueError("give exactly one of ell, theta")
    if ell is None:
        ell = regular_ell_of_theta(theta)
    else:
        theta = regular_theta_of_ell(ell)
    return RegularTruncTet(ell, theta, regular_volume(ell))


def regular_radius(ell: float) -> float:
    """Klein radius of the vertices of the regular configuration with edge length ``ell``.

    From ``-cosh(ell) = <v_i, v_j> = (-1 - r^2/3) / (r^2 - 1)``.
    """
    c = math.cosh(ell)
    return math.sqrt((c + 1.0) / (c - 1.0 / 3.0))


def build_regular_config(theta: float) -> TruncTetConfig:
    """Regular fully truncated tetrahedron with dihedral angle ``theta``."""
    ell = regular_ell_of_theta(theta)
    return TruncTetConfig.from_points(regular_radius(ell) * TETRA_DIRECTIONS)
