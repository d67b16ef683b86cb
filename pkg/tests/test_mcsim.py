import math

import numpy as np
import pytest

from dunklwedge import ConfigError, DomainError, LiftingError, StartPoint, WedgeModel
from dunklwedge.hittime import tail_z2z2
from dunklwedge.mcsim import (
    McConfig,
    backend_name,
    estimate_cf,
    estimate_tail,
    estimate_wp_indicator,
    estimate_wp_mean,
    simulate_bm_winding,
    simulate_hitting,
)
from dunklwedge.mcsim import api
from dunklwedge.mcsim.rng import mix64, normal_pair, path_keys, uniforms
from dunklwedge.planarbm import bm_tail_bessel, spitzer_cf

P2 = WedgeModel.equal(2, 0.75)
BISECT = StartPoint(1.0, math.pi / 8)


# --- configuration ----------------------------------------------------------------


@pytest.mark.parametrize(
    "kw", [dict(n_paths=0), dict(n_paths=2.5), dict(dt0=0.0), dict(eps_boundary=-1.0), dict(t_max=math.inf),
           dict(master_seed=-1)]
)
def test_config_rejects(kw):
    with pytest.raises(ConfigError):
        McConfig(**kw)


def test_config_eps_against_wedge():
    with pytest.raises(ConfigError):
        simulate_hitting(P2, BISECT, McConfig(n_paths=10, eps_boundary=0.01))
    with pytest.raises(ConfigError):
        simulate_hitting(P2, StartPoint(1.0, 1e-9), McConfig(n_paths=10))


def test_backend_flag(monkeypatch):
    monkeypatch.setenv("DUNKLWEDGE_NO_NUMBA", "1")
    assert backend_name() == "numpy"
    monkeypatch.setenv("DUNKLWEDGE_NO_NUMBA", "0")
    assert backend_name() == "numba"
    with pytest.raises(ValueError):
        backend_name("cuda")


# --- random streams ------------------------------------------------------------------


def test_streams_are_addressable_and_uniform():
    keys = path_keys(7, np.arange(50_000, dtype=np.uint64))
    assert len(np.unique(keys)) == keys.size
    u = uniforms(keys, 3)
    assert np.all((u > 0) & (u <= 1))
    assert abs(u.mean() - 0.5) < 4 * math.sqrt(1 / 12 / u.size)
    z1, z2 = normal_pair(keys, 0)
    assert abs(np.mean(z1 * z2)) < 0.02 and abs(np.var(z1) - 1) < 0.03
    # a single key reproduces the same draw
    assert uniforms(keys[123:124], 3)[0] == u[123]
    assert mix64(np.uint64(0)) == mix64(np.uint64(0))


def test_path_depends_only_on_seed_and_index():
    a = simulate_hitting(P2, BISECT, McConfig(n_paths=300, t_max=0.5))
    b = simulate_hitting(P2, BISECT, McConfig(n_paths=100, t_max=0.5))
    assert np.array_equal(a.t0[:100], b.t0)
    c = simulate_hitting(P2, BISECT, McConfig(n_paths=100, t_max=0.5, master_seed=1))
    assert not np.array_equal(b.t0, c.t0)


# --- backends ----------------------------------------------------------------------------


def test_hitting_backends_agree():
    cfg = McConfig(n_paths=200, t_max=0.5)
    a = simulate_hitting(WedgeModel(2, 0.6, 0.9), BISECT, cfg, backend="numba")
    b = simulate_hitting(WedgeModel(2, 0.6, 0.9), BISECT, cfg, backend="numpy")
    assert np.array_equal(a.status, b.status)
    assert np.allclose(a.t0, b.t0, rtol=1e-12)


def test_winding_backends_agree():
    cfg = McConfig(n_paths=100)
    a = simulate_bm_winding(BISECT, 0.1, 2, cfg, backend="numba")
    b = simulate_bm_winding(BISECT, 0.1, 2, cfg, backend="numpy")
    assert np.array_equal(a.exited_before_t, b.exited_before_t)
    assert np.allclose(a.theta_t, b.theta_t, rtol=1e-9, atol=1e-9)


# --- estimators ---------------------------------------------------------------------------


def test_estimate_tail_shape_and_errors():
    s = simulate_hitting(P2, BISECT, McConfig(n_paths=2000, t_max=0.6))
    curve = estimate_tail(s, [0.0, 0.1, 0.5])
    assert curve.values[0] == 1.0 and curve.std_errors[0] == 0.0
    p = curve.values[1]
    assert curve.std_errors[1] == pytest.approx(math.sqrt(p * (1 - p) / 2000))
    assert np.all(np.diff(curve.values) <= 0)
    with pytest.raises(DomainError):
        estimate_tail(s, [0.6])
    assert len(s) == 2000 and s[0].path_index == 0


def test_sample_records():
    s = simulate_bm_winding(BISECT, 0.05, 2, McConfig(n_paths=20))
    rec = s[3]
    assert rec.path_index == 3 and rec.theta_t == s.theta_t[3]
    assert sum(1 for _ in s) == 20
    with pytest.raises(DomainError):
        estimate_tail(s, [0.1])
    with pytest.raises(DomainError):
        estimate_wp_indicator(s, 2, 0.2)


def test_winding_from_outside_wedge_counts_as_exited():
    s = simulate_bm_winding(StartPoint(1.0, 0.0), 0.1, 2, McConfig(n_paths=50))
    assert np.all(s.exited_before_t)
    assert np.all(s.t0 == 0.0)


def test_lifting_error_when_refinement_exhausted(monkeypatch):
    monkeypatch.setattr(api, "LIFT_LIMIT", 1e-9)
    monkeypatch.setattr(api, "MAX_HALVINGS", 0)
    with pytest.raises(LiftingError):
        simulate_bm_winding(BISECT, 0.05, 2, McConfig(n_paths=20), backend="numpy")


def test_winding_domain():
    with pytest.raises(DomainError):
        simulate_bm_winding(BISECT, 0.0, 2, McConfig(n_paths=5))
    with pytest.raises(DomainError):
        simulate_bm_winding(BISECT, 0.1, 0, McConfig(n_paths=5))


# --- statistical agreement (slow) -------------------------------------------------------------


@pytest.mark.slow
def test_quadrant_hitting_matches_closed_form():
    m = WedgeModel.equal(1, 0.75)
    start = StartPoint(1.0, math.pi / 4)
    times = np.array([0.1, 0.3, 0.8])
    s = simulate_hitting(m, start, McConfig(n_paths=20_000, t_max=1.0))
    curve = estimate_tail(s, times)
    exact = tail_z2z2(1.0 / (2 * times), m.nu0, m.nu1, start.phi)
    assert np.all(np.abs(curve.values - exact) < 3.5 * curve.std_errors)


@pytest.mark.slow
def test_step_halving_consistent():
    times = np.array([0.1, 0.3])
    cfg = McConfig(n_paths=20_000, t_max=0.35)
    a = estimate_tail(simulate_hitting(P2, BISECT, cfg), times)
    b = estimate_tail(simulate_hitting(P2, BISECT, McConfig(n_paths=20_000, t_max=0.35, dt0=5e-4)), times)
    assert np.all(np.abs(a.values - b.values) < 2 * np.hypot(a.std_errors, b.std_errors))


@pytest.mark.slow
def test_standard_error_scales_like_clt():
    se = [estimate_tail(simulate_bm_winding(BISECT, 0.1, 2, McConfig(n_paths=n)), [0.1]).std_errors[0]
          for n in (2_500, 10_000)]
    assert se[0] / se[1] == pytest.approx(2.0, rel=0.1)


@pytest.mark.slow
def test_winding_law_and_exit_identity():
    t = 0.25
    s = simulate_bm_winding(BISECT, t, 2, McConfig(n_paths=20_000))
    c, c_se, sn, sn_se = estimate_cf(s, 2.0)
    assert abs(c - spitzer_cf(2.0, 1.0, t)) < 3.5 * c_se
    assert abs(sn) < 3.5 * sn_se
    tail = bm_tail_bessel(t, 2, 1.0, math.pi / 8)
    m, m_se = estimate_wp_mean(s, 2)
    assert abs(m - tail) < 3.5 * m_se
    # reflection at the first exit makes the post-exit contribution vanish
    ind, ind_se = estimate_wp_indicator(s, 2, math.pi / 8)
    assert abs(ind) < 3.5 * ind_se
    surv = estimate_tail(s, [t])
    assert abs(surv.values[0] - tail) < 3.5 * surv.std_errors[0]
