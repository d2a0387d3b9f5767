import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ELL_2, ELL_3, REGULAR_VOL, V3, V8, VOL_ELL_005, VOL_ELL_10, random_rotation
from isvol import trunc
from isvol.errors import InvalidConfig, OutOfDomain, TouchesSphere
from isvol.extremal import repair
from isvol.idtri import perm_sign
from isvol.trunc import (
    TETRA_DIRECTIONS,
    Status,
    TruncTetConfig,
    algvol,
    build_regular_config,
    config_volume,
    ell_g,
    fully_truncated_volume,
    regular_ell_of_theta,
    regular_radius,
    regular_theta_of_ell,
    regular_volume,
    truncation_polytope,
    validate,
    volume,
)

THETAS = (math.pi / 6, math.pi / 9, math.pi / 12)


def _random_valid(rng, ell=0.2):
    while True:
        dirs = rng.normal(size=(4, 3))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        P = repair(dirs * rng.uniform(1.1, 3.0, size=4)[:, None], ell)
        if P is not None:
            return P


# validation and polytope combinatorics

def test_validate_examples():
    cfg = TruncTetConfig.from_points(1.6029 * TETRA_DIRECTIONS)
    assert validate(cfg).status is Status.VALID
    flat = TruncTetConfig.from_points([[0, 0, 0], [0.5, 0, 0], [0, 0.5, 0], [0.3, 0.3, 0]])
    assert validate(flat).status is Status.DEGENERATE
    close = TruncTetConfig.from_points([[1.5, 0, 0], [1.5, 0.3, 0], [0, 0, 0], [0, 0, 0.5]])
    v = validate(close)
    assert v.status is Status.INVALID and v.condition == 1
    beyond = TruncTetConfig.from_points([[1.5, 0, 0], [0.9, 0, 0], [0, 0.1, 0], [0, 0, 0.1]])
    v = validate(beyond)
    assert v.status is Status.INVALID and v.condition == 2


def test_polytope_combinatorics():
    finite = TruncTetConfig.from_points(0.5 * TETRA_DIRECTIONS)
    poly = truncation_polytope(finite)
    assert poly.combinatorics == (4, 6, 4)
    poly = truncation_polytope(build_regular_config(math.pi / 6))
    assert poly.combinatorics == (12, 18, 8)
    sizes = sorted(len(f.cycle) for f in poly.facets)
    assert sizes == [3, 3, 3, 3, 6, 6, 6, 6]
    one = TruncTetConfig.from_points(np.vstack([[1.4, 0, 0], 0.3 * TETRA_DIRECTIONS[1:]]))
    poly = truncation_polytope(one)
    assert poly.combinatorics == (6, 9, 5)
    assert poly.euler_characteristic() == 2


@pytest.mark.parametrize("seed", range(5))
def test_truncation_facets_lie_on_dual_planes(seed):
    P = _random_valid(np.random.default_rng(seed))
    cfg = TruncTetConfig.from_points(P)
    poly = truncation_polytope(cfg)
    for facet in poly.facets:
        kind, i = facet.origin
        if kind == "trunc":
            x = poly.vertices[list(facet.cycle)]
            assert np.all(np.abs(x @ P[i] - 1.0) <= 1e-9)


# regular family

def test_regular_family_examples():
    assert ell_g(2) == pytest.approx(ELL_2, abs=1e-12)
    assert ell_g(3) == pytest.approx(ELL_3, abs=1e-12)
    assert regular_volume(ELL_2) == pytest.approx(REGULAR_VOL[math.pi / 6], abs=1e-9)
    assert regular_volume(0.05) == pytest.approx(VOL_ELL_005, abs=1e-8)
    assert regular_volume(10.0) == pytest.approx(VOL_ELL_10, abs=1e-8)
    assert regular_volume(1e-4) == pytest.approx(V8, abs=1e-3)
    assert regular_volume(30.0) == pytest.approx(V3, abs=1e-6)
    with pytest.raises(OutOfDomain):
        ell_g(1)
    with pytest.raises(OutOfDomain):
        regular_theta_of_ell(0.0)


@pytest.mark.parametrize("theta", THETAS)
def test_regular_volume_closed_form(theta):
    assert regular_volume(regular_ell_of_theta(theta)) == pytest.approx(REGULAR_VOL[theta], abs=1e-9)


def test_theta_ell_roundtrip():
    for ell in np.geomspace(1e-3, 15, 50):
        assert regular_ell_of_theta(regular_theta_of_ell(ell)) == pytest.approx(ell, rel=1e-8)


def test_build_regular_config():
    cfg = build_regular_config(math.pi / 6)
    assert np.linalg.norm(cfg.points, axis=1) == pytest.approx([1.6029] * 4, abs=1e-4)
    assert cfg.edge_lengths() == pytest.approx([ELL_2] * 6, abs=1e-9)
    for theta in THETAS:
        assert validate(build_regular_config(theta))
    thetas = np.linspace(0.05, math.pi / 3 - 0.01, 100)
    radii = [regular_radius(regular_ell_of_theta(t)) for t in thetas]
    assert np.all(np.diff(radii) < 0)


@pytest.mark.parametrize("theta", THETAS)
def test_quadrature_matches_closed_form(theta):
    vol = volume(truncation_polytope(build_regular_config(theta)))
    assert abs(vol - REGULAR_VOL[theta]) <= 1e-8


def test_regular_volume_decreasing_in_theta():
    thetas = np.linspace(0.05, 1.0, 12)
    vols = [config_volume(build_regular_config(t), tol=1e-10) for t in thetas]
    assert np.all(np.diff(vols) < 0)


# volume engine

def test_cone_and_cells_agree():
    # the cell method is slow near the sphere, so stay close to a regular config
    rng = np.random.default_rng(7)
    base = build_regular_config(math.pi / 6).points
    for _ in range(3):
        cfg = TruncTetConfig.from_points(base + rng.uniform(-0.1, 0.1, size=(4, 3)))
        assert validate(cfg)
        poly = truncation_polytope(cfg)
        assert volume(poly, 1e-10) == pytest.approx(volume(poly, 1e-5, method="cells"), rel=5e-6)
    one = TruncTetConfig.from_points(np.vstack([[1.4, 0, 0], 0.3 * TETRA_DIRECTIONS[1:]]))
    poly = truncation_polytope(one)
    assert volume(poly, 1e-10) == pytest.approx(volume(poly, 1e-8, method="cells"), rel=1e-6)


def test_fast_path_matches_general_path():
    rng = np.random.default_rng(3)
    for _ in range(30):
        P = _random_valid(rng)
        general = config_volume(TruncTetConfig.from_points(P), tol=1e-12)
        assert fully_truncated_volume(P, 1e-12) == pytest.approx(general, abs=1e-11)


def test_small_simplex_is_nearly_euclidean():
    base = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float) - 0.25
    for s in (1e-1, 1e-2, 1e-3):
        cfg = TruncTetConfig.from_points(s * base)
        euclid = abs(np.linalg.det(cfg.points[1:] - cfg.points[0])) / 6
        ratio = config_volume(cfg) / euclid
        assert ratio == pytest.approx(1.0, abs=5 * s * s)


def test_touching_sphere_rejected():
    unit = TETRA_DIRECTIONS / np.linalg.norm(TETRA_DIRECTIONS, axis=1)[:, None]
    poly = trunc.ConvexPolytope3((1.0 - 1e-10) * unit)
    with pytest.raises(TouchesSphere):
        volume(poly)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_volume_rotation_invariant(seed):
    rng = np.random.default_rng(seed)
    cfg = TruncTetConfig.from_points(_random_valid(rng))
    R = random_rotation(rng)
    v0 = config_volume(cfg)
    assert config_volume(cfg.transformed(R)) == pytest.approx(v0, rel=1e-6)


def test_algvol_alternating():
    P = _random_valid(np.random.default_rng(11))
    v = algvol(*P)
    for perm in itertools.permutations(range(4)):
        w = algvol(*P[list(perm)])
        assert math.copysign(1, w) == perm_sign(perm) * math.copysign(1, v)
        assert abs(w) == pytest.approx(abs(v), abs=1e-12)


def test_algvol_degenerate_and_invalid():
    P = _random_valid(np.random.default_rng(12))
    assert algvol(P[0], P[0], P[2], P[3]) == 0.0
    with pytest.raises(InvalidConfig):
        algvol([1.5, 0, 0], [1.5, 0.3, 0], [0, 0, 0], [0, 0, 0.5])
