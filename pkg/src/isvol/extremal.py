"""Extremal volume search over fully truncated tetrahedra with an edge-length floor.

``estimate_Vl`` maximises the volume of a fully truncated tetrahedron over
the 12 Klein coordinates of its four hyperideal vertices, subject to every
internal edge having length at least ``ell_min``.  The constraint is handled
by a quadratic penalty.  Each restart runs Nelder-Mead (scipy, adaptive
parameters) in chunks, re-seeding the simplex around the current best point
whenever progress stalls.  The most promising restarts are then polished
with a stiffer penalty, and every candidate is made exactly feasible by
pulling its vertices radially toward the sphere.

For long edge floors the optimum crowds the sphere, where Klein coordinates
are badly scaled; above ``ell_2`` the search therefore runs in the
log-radial chart ``p = (y / |y|) (1 + exp(|y| - K))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import trunc
from .errors import IsvolError, NoFeasiblePoint
from .specfun import v8

_V8 = v8()
RADIUS_RANGE = (1.1, 3.0)
#: Smallest vertex radius the search accepts; keeps lifts well conditioned.
MIN_RADIUS = 1.0 + 1e-7
#: Volume tolerance used inside the optimiser; the winner is re-evaluated at ``tol``.
SEARCH_TOL = 1e-6
CHUNK_ITERS = 300
POLISH_FACTOR = 100.0
POLISH_ITERS = 600
POLISH_TOP = 5
FEASIBILITY_SLACK = 1e-6
_CHART_K = 15.0


@dataclass(frozen=True)
class SearchConfig:
    ell_min: float
    restarts: int = 50
    seed: int = 0
    penalty_weight: float = field(default_factory=lambda: 100.0 * _V8)
    tol: float = 1e-9
    max_iters: int = 2000

    def __post_init__(self):
        if not self.ell_min > 0:
            raise ValueError("ell_min must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if not self.penalty_weight > 0:
            raise ValueError("penalty_weight must be positive")


@dataclass(frozen=True)
class SearchResult:
    best_volume: float
    best_config: trunc.TruncTetConfig
    restart_index: int
    feasible: bool
    restart_volumes: tuple = ()


def _pair_products(P):
    """Minkowski products ``<p_i, p_j>`` of the de Sitter lifts, i < j."""
    r2 = np.sum(P * P, axis=1)
    scale = 1.0 / np.sqrt(r2 - 1.0)
    G = (P @ P.T - 1.0) * np.outer(scale, scale)
    return G[np.triu_indices(4, 1)]


def _violation(P) -> float:
    """Zero for a valid fully truncated configuration, positive otherwise."""
    r = np.sqrt(np.sum(P * P, axis=1))
    short = np.maximum(0.0, MIN_RADIUS - r)
    if short.any():
        return 1.0 + float(np.sum(short))
    d = _pair_products(P)
    bad = np.maximum(0.0, d + 1.0 + 1e-12)
    if bad.any():
        return 1.0 + float(np.sum(bad))
    if abs(trunc.affine_determinant(P)) <= trunc.COPLANAR_TOL * max(1.0, float(np.max(r))) ** 3:
        return 1.0
    return 0.0


def edge_lengths(P) -> np.ndarray:
    """Six internal edge lengths of a valid fully truncated configuration (pairs i < j)."""
    return np.arccosh(-_pair_products(np.asarray(P, dtype=float).reshape(4, 3)))


def _objective(x, ell_min: float, weight: float, tol: float) -> float:
    P = x.reshape(4, 3)
    bad = _violation(P)
    if bad:
        return weight * bad
    short = np.maximum(0.0, ell_min - edge_lengths(P))
    try:
        vol = trunc.fully_truncated_volume(P, tol)
    except IsvolError:
        return weight
    if not math.isfinite(vol):
        return weight
    return -vol + weight * float(np.sum(short * short))


def _feasible(P, ell_min: float, slack: float = 0.0) -> bool:
    return not _violation(P) and bool(np.all(edge_lengths(P) >= ell_min - slack))


def _pull_in(P, lam: float):
    """Move each vertex radially so that ``|p| - 1`` scales by ``lam``."""
    r = np.sqrt(np.sum(P * P, axis=1))
    return P * ((1.0 + lam * (r - 1.0)) / r)[:, None]


def repair(P, ell_min: float, max_steps: int = 200):
    """Make a configuration valid and feasible, or return ``None``.

    Vertices closer than the lower sampling radius are pushed out to it;
    then all vertices are pulled toward the sphere (``|p| - 1`` shrinks by
    20% per step) until every edge is long enough.  Pulling in moves the
    truncation planes apart, lengthening every edge.
    """
    P = np.array(P, dtype=float).reshape(4, 3)
    r = np.sqrt(np.sum(P * P, axis=1))
    P = P * (np.maximum(r, RADIUS_RANGE[0]) / r)[:, None]
    for _ in range(max_steps):
        if _feasible(P, ell_min):
            return P
        P = _pull_in(P, 0.8)
    return None


def _tighten(P, ell_min: float):
    """Mildest radial pull-in that makes ``P`` exactly feasible, or ``None``.

    The factor is first shrunk geometrically until feasible, then bisected
    against the last infeasible factor.
    """
    if _feasible(P, ell_min):
        return P
    hi, lo = 1.0, 0.8
    while not _feasible(_pull_in(P, lo), ell_min):
        hi, lo = lo, 0.8 * lo
        if lo < 1e-6:
            return None
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if _feasible(_pull_in(P, mid), ell_min):
            lo = mid
        else:
            hi = mid
    return _pull_in(P, lo)


def _start(rng) -> np.ndarray:
    dirs = rng.normal(size=(4, 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return dirs * rng.uniform(*RADIUS_RANGE, size=4)[:, None]


class _Coords:
    """Map between optimiser coordinates and Klein points."""

    def __init__(self, log_radial: bool):
        self.log_radial = log_radial

    def to_klein(self, y):
        Y = np.asarray(y, dtype=float).reshape(4, 3)
        if not self.log_radial:
            return Y
        n = np.sqrt(np.sum(Y * Y, axis=1))
        return Y * ((1.0 + np.exp(n - _CHART_K)) / n)[:, None]

    def from_klein(self, P):
        P = np.asarray(P, dtype=float).reshape(4, 3)
        if not self.log_radial:
            return P.ravel().copy()
        r = np.sqrt(np.sum(P * P, axis=1))
        return (P * ((np.log(r - 1.0) + _CHART_K) / r)[:, None]).ravel()

    def steps(self, y, scale: float):
        # Klein steps shrink with |p| - 1 so that near-sphere vertices stay valid
        if self.log_radial:
            return np.full(12, 5.0 * scale)
        r = np.sqrt(np.sum(np.asarray(y).reshape(4, 3) ** 2, axis=1))
        return scale * np.repeat(np.minimum(r - 1.0, 1.0), 3)


def _chunked_nelder_mead(coords, y, ell_min, weight, max_iters, step):
    """Nelder-Mead restarted from its best vertex until the budget is spent or progress stops."""

    def f(z):
        return _objective(coords.to_klein(z).ravel(), ell_min, weight, SEARCH_TOL)

    value = f(y)
    used = 0
    while used < max_iters:
        simplex = np.tile(y, (13, 1))
        simplex[1:] += np.diag(coords.steps(y, step))
        res = minimize(
            f,
            y,
            method="Nelder-Mead",
            options=dict(
                maxiter=min(CHUNK_ITERS, max_iters - used),
                adaptive=True,
                xatol=1e-10,
                fatol=1e-12,
                initial_simplex=simplex,
            ),
        )
        used += max(int(res.nit), 1)
        gain = value - res.fun
        if res.fun <= value:
            y, value = res.x, float(res.fun)
        if gain < 1e-10:
            if step < 1e-3:
                break
            step *= 0.3
    return y, value


def _stage_one(cfg: SearchConfig, index: int, coords: _Coords):
    rng = np.random.default_rng(cfg.seed + index)
    P = repair(_start(rng), cfg.ell_min)
    if P is None:
        return None
    return _chunked_nelder_mead(
        coords, coords.from_klein(P), cfg.ell_min, cfg.penalty_weight, cfg.max_iters, 0.1
    )


def estimate_Vl(cfg: SearchConfig) -> SearchResult:
    """Best feasible volume over ``cfg.restarts`` independent restarts.

    Restart ``r`` draws its start from ``seed + r``.  After the first stage
    the ``POLISH_TOP`` restarts with the lowest penalised objective are
    re-run with a stiffer penalty.  Ties go to the lowest restart index, so
    results are reproducible bit for bit.
    """
    coords = _Coords(log_radial=cfg.ell_min > trunc.ell_g(2))
    stage = [_stage_one(cfg, r, coords) for r in range(cfg.restarts)]
    ranked = sorted((v[1], r) for r, v in enumerate(stage) if v is not None)
    polish = {r for _, r in ranked[:POLISH_TOP]}

    best = None
    volumes = []
    for r, out in enumerate(stage):
        if out is None:
            volumes.append(math.nan)
            continue
        y = out[0]
        if r in polish:
            y, _ = _chunked_nelder_mead(
                coords, y, cfg.ell_min, cfg.penalty_weight * POLISH_FACTOR, POLISH_ITERS, 0.005
            )
        P = coords.to_klein(y)
        P = None if _violation(P) else _tighten(P, cfg.ell_min)
        if P is None:
            volumes.append(math.nan)
            continue
        c = trunc.TruncTetConfig.from_points(P)
        try:
            vol = trunc.config_volume(c, tol=cfg.tol)
        except IsvolError:
            volumes.append(math.nan)
            continue
        volumes.append(vol)
        if best is None or vol > best[0]:
            best = (vol, c, r)
    if best is None:
        raise NoFeasiblePoint(f"no restart ended feasible for ell_min = {cfg.ell_min}")
    vol, c, r = best
    feasible = bool(trunc.validate(c)) and bool(
        np.all(np.asarray(c.edge_lengths()) >= cfg.ell_min - FEASIBILITY_SLACK)
    )
    return SearchResult(vol, c, r, feasible, tuple(volumes))


def perturbation_check(
    c: trunc.TruncTetConfig,
    ell_min: float,
    n_samples: int = 500,
    radius: float = 0.01,
    seed: int = 0,
) -> bool:
    """True when no random feasible perturbation of size at most ``radius`` gains more than 1e-6.

    Each sample moves the 12 coordinates by a uniformly random vector of
    norm at most ``radius``; infeasible samples are pulled back onto the
    feasible set by the minimal radial pull-in before comparing volumes.
    """
    if n_samples <= 0:
        return True
    P0 = np.asarray(c.points, dtype=float)
    base = trunc.fully_truncated_volume(P0, 1e-10)
    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        step = rng.normal(size=12)
        step *= radius * rng.uniform() ** (1.0 / 12) / np.linalg.norm(step)
        P = P0 + step.reshape(4, 3)
        if _violation(P):
            continue
        P = _tighten(P, ell_min)
        if P is None:
            continue
        if trunc.fully_truncated_volume(P, 1e-10) > base + 1e-6:
            return False
    return True
