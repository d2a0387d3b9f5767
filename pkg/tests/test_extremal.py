import math

import numpy as np
import pytest

from conftest import V8, VOL_ELL_10
from isvol import trunc
from isvol.errors import NoFeasiblePoint
from isvol.extremal import (
    SearchConfig,
    _pull_in,
    edge_lengths,
    estimate_Vl,
    perturbation_check,
    repair,
)

ELL_2 = trunc.ell_g(2)


def test_search_config_validation():
    cfg = SearchConfig(0.5)
    assert cfg.restarts == 50 and cfg.seed == 0 and cfg.max_iters == 2000
    assert cfg.penalty_weight == pytest.approx(100 * V8)
    for bad in (dict(ell_min=0.0), dict(ell_min=0.5, restarts=0), dict(ell_min=0.5, penalty_weight=-1)):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


def test_edge_lengths_match_config():
    cfg = trunc.build_regular_config(math.pi / 9)
    assert edge_lengths(cfg.points) == pytest.approx(cfg.edge_lengths(), abs=1e-12)


def test_repair_reaches_feasibility():
    rng = np.random.default_rng(1)
    for _ in range(20):
        P = rng.normal(size=(4, 3))
        Q = repair(P, 0.8)
        if Q is None:
            continue
        cfg = trunc.TruncTetConfig.from_points(Q)
        assert trunc.validate(cfg)
        assert np.all(cfg.edge_lengths() >= 0.8)


def test_perturbation_check_examples():
    reg = trunc.build_regular_config(math.pi / 6)
    assert perturbation_check(reg, ELL_2, n_samples=0)
    assert perturbation_check(reg, ELL_2, n_samples=60)
    # pulled toward the sphere: longer edges, less volume, so moving back gains
    shrunk = trunc.TruncTetConfig.from_points(_pull_in(reg.points, 0.8))
    assert not perturbation_check(shrunk, ELL_2, n_samples=100, radius=0.005)


@pytest.fixture(scope="module")
def small_runs():
    kw = dict(restarts=3, max_iters=600)
    return {ell: estimate_Vl(SearchConfig(ell, **kw)) for ell in (0.3, 0.6)}


def test_estimate_is_monotone_and_bounded(small_runs):
    a, b = small_runs[0.3], small_runs[0.6]
    assert a.best_volume >= b.best_volume - 2e-3
    for res in small_runs.values():
        assert res.feasible
        assert res.best_volume <= V8 + 1e-6


def test_best_config_reevaluates(small_runs):
    for ell, res in small_runs.items():
        vol = trunc.volume(trunc.truncation_polytope(res.best_config))
        assert vol == pytest.approx(res.best_volume, rel=1e-8)
        assert np.all(res.best_config.edge_lengths() >= ell - 1e-6)
        assert res.restart_volumes[res.restart_index] == res.best_volume


def test_same_seed_is_bit_identical():
    cfg = SearchConfig(0.4, restarts=2, max_iters=300, seed=5)
    a, b = estimate_Vl(cfg), estimate_Vl(cfg)
    assert a.best_volume == b.best_volume
    assert np.array_equal(a.best_config.points, b.best_config.points)
    assert a.restart_volumes == b.restart_volumes


def test_large_ell_near_regular():
    res = estimate_Vl(SearchConfig(10.0, restarts=2))
    assert res.feasible
    assert abs(res.best_volume - VOL_ELL_10) <= 0.05


def test_no_feasible_point(monkeypatch):
    import isvol.extremal as ex

    monkeypatch.setattr(ex, "repair", lambda P, ell: None)
    with pytest.raises(NoFeasiblePoint):
        estimate_Vl(SearchConfig(0.5, restarts=2))
