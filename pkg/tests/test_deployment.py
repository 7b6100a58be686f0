import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irs_rank import geometry as geo
from irs_rank.channel import build_channels, compose
from irs_rank.deployment import (
    angle_terms,
    deployment_rate,
    ue_linesearch,
    upsilon_from_terms,
)
from irs_rank.errors import ModelValidityError
from irs_rank.phase_control import optimal_phases
from irs_rank.spectral import analyze

from conftest import scene


def test_upsilon_extremes():
    assert upsilon_from_terms(0.0, 0.3) == 0.0
    assert upsilon_from_terms(0.5, 0.5) == pytest.approx(4.0, rel=1e-15)


def test_zero_upsilon_gives_minus_inf(monkeypatch, table_one):
    import irs_rank.deployment as dep

    monkeypatch.setattr(dep, "angle_terms", lambda cfg: (0.0, 0.25))
    out = dep.deployment_rate(table_one)
    assert out.upsilon == 0.0 and out.rate_high_snr == -np.inf


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0, np.pi), st.floats(-np.pi, np.pi), st.floats(0, np.pi), st.floats(-np.pi, np.pi),
    st.floats(-20, 20), st.floats(0.5, 30),
)
def test_angle_terms_match_per_index_slopes(theta_t, phi_t, theta_r, phi_r, y_u, z_u):
    cfg = scene(
        theta_t=theta_t, phi_t=phi_t, theta_r=theta_r, phi_r=phi_r,
        ue_position=(5.0, y_u, z_u), n_y=3, n_z=2,
    )
    bs_sum, ue_diff = angle_terms(cfg)
    for i in range(1, cfg.n_elements + 1):
        br = geo.omega_br(i, 2, cfg) - geo.omega_br(i, 1, cfg)
        ru = geo.omega_ru(2, i, cfg) - geo.omega_ru(1, i, cfg)
        assert bs_sum == pytest.approx(br + geo.omega_bs(cfg), abs=1e-12)
        assert ue_diff == pytest.approx(ru - geo.omega_ue(cfg), abs=1e-12)
    ups = deployment_rate(cfg).upsilon
    assert 0 <= ups <= 4
    assert ups == pytest.approx(upsilon_from_terms(bs_sum, ue_diff), abs=1e-12)


@pytest.mark.parametrize("n_y", [2, 5, 20])
def test_determinant_identity(n_y):
    cfg = scene(n_y=n_y)
    chs = build_channels(cfg)
    spec = analyze(compose(chs, optimal_phases(cfg)))
    ups = deployment_rate(cfg).upsilon
    n = cfg.n_elements
    expect = 4 * n**2 * chs.beta_c * chs.beta_bu * ups
    assert spec.lambda1_sq * spec.lambda2_sq == pytest.approx(expect, rel=1e-6)


def test_upsilon_independent_of_element_count():
    ups = {deployment_rate(scene(n_y=a, n_z=b)).upsilon for a, b in [(1, 1), (10, 5), (5, 10), (40, 2)]}
    assert np.ptp(list(ups)) < 1e-15
    # swapping n_y and n_z only moves beta_c through the product a*b
    r1, r2 = deployment_rate(scene(n_y=10, n_z=5)), deployment_rate(scene(n_y=5, n_z=10))
    assert r1.rate_high_snr == pytest.approx(r2.rate_high_snr, rel=1e-13)


def test_doubling_elements_adds_two_bits(table_one):
    gain = deployment_rate(table_one).beta_c
    r50 = deployment_rate(table_one, beta_c_override=gain).rate_high_snr
    r100 = deployment_rate(dataclasses.replace(table_one, n_y=20), beta_c_override=gain).rate_high_snr
    assert r100 - r50 == pytest.approx(2.0, abs=1e-12)


def test_linesearch_recovers_reported_optimum(table_one):
    cfg = dataclasses.replace(table_one, n_y=20)
    res = ue_linesearch(cfg, "y", -5.0, 2.0, 0.01)
    assert abs(res.position - (-0.94)) <= 0.05
    assert res.rate >= np.nanmax(res.rates)
    assert res.grid.size == 701 and not res.skipped


def test_linesearch_constant_objective_returns_lo(table_one):
    res = ue_linesearch(table_one, "y", -3.0, 1.0, 0.5, objective=lambda c: 1.0)
    assert res.position == -3.0


def test_linesearch_refinement_monotone(table_one):
    cfg = dataclasses.replace(table_one, n_y=20)
    coarse = ue_linesearch(cfg, "y", -5.0, 2.0, 0.02, refine=False)
    fine = ue_linesearch(cfg, "y", -5.0, 2.0, 0.01, refine=False)
    assert fine.rate >= coarse.rate
    assert ue_linesearch(cfg, "y", -5.0, 2.0, 0.01).rate >= ue_linesearch(cfg, "y", -5.0, 2.0, 0.02).rate


def test_linesearch_skips_invalid_points():
    cfg = scene(ue_position=(115.0, 0.0, 12.0))
    with pytest.warns(RuntimeWarning):
        res = ue_linesearch(cfg, "y", 100.0, 130.0, 1.0, refine=False)
    assert res.skipped and all(np.isnan(res.rates[np.isin(res.grid, res.skipped)]))
    assert res.position not in res.skipped


def test_linesearch_empty_feasible_set():
    cfg = scene(ue_position=(118.0, 0.0, 12.0))
    with pytest.warns(RuntimeWarning), pytest.raises(ModelValidityError):
        ue_linesearch(cfg, "y", 118.0, 122.0, 1.0)


def test_linesearch_bad_args(table_one):
    with pytest.raises(ValueError):
        ue_linesearch(table_one, "y", 1.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        ue_linesearch(table_one, "y", 0.0, 1.0, 0.0)
