import dataclasses

import numpy as np
import pytest

from irs_rank import geometry as geo
from irs_rank.channel import PhaseProfile, build_channels, compose
from irs_rank.errors import BudgetExceededError
from irs_rank.pathloss import PathlossPair, beta_bu, beta_c
from irs_rank.phase_control import (
    PhasePolicy,
    PolicyKind,
    alignment_sum,
    coordinate_search,
    exact_rate,
    optimal_phases,
    phase_objective,
    random_phases,
)

from conftest import scene


def irs_only(cfg):
    """Modeled IRS gain with the direct link switched off."""
    return PathlossPair(beta_bu=0.0, beta_c=beta_c(cfg))


def test_phases_reduced_into_range(table_one):
    ph = optimal_phases(table_one).phases
    assert ph.shape == (50,) and np.all((ph >= 0) & (ph < 2 * np.pi))


def test_zero_slopes_give_zero_phases():
    # d_irs -> tiny and arrays broadside to the links: every slope vanishes
    cfg = scene(
        bs_position=(100.0, 0.0, 2.0), ue_position=(50.0, 0.0, 2.0),
        theta_t=0.0, theta_r=0.0, n_y=1, n_z=1,
    )
    assert np.allclose(alignment_sum(cfg), 0.0)
    np.testing.assert_allclose(optimal_phases(cfg).phases, 0.0, atol=1e-12)


def test_cosine_term_maximized(table_one):
    ph = optimal_phases(table_one).phases
    np.testing.assert_allclose(np.cos(2 * ph + 2 * np.pi * alignment_sum(table_one)), 1.0, atol=1e-12)


def test_aligned_compound_is_rank_one(table_one):
    chs = build_channels(table_one)
    hc = compose(chs, optimal_phases(table_one)) - chs.h_bu
    full = table_one.n_elements * np.sqrt(chs.beta_c)
    np.testing.assert_allclose(np.abs(hc), full, rtol=1e-9)
    assert abs(np.linalg.det(hc)) < 1e-9 * full**2


def test_summand_phases_index_free(table_one):
    ph = optimal_phases(table_one).phases
    br = geo.omega_br_matrix(table_one)
    ru = geo.omega_ru_matrix(table_one)
    for l in (0, 1):  # noqa: E741
        for s in (0, 1):
            total = ph + 2 * np.pi * (ru[l] + br[:, s])
            wrapped = np.angle(np.exp(1j * (total - total[0])))
            assert np.max(np.abs(wrapped)) < 1e-10


def test_objective_without_irs_is_constant(table_one):
    gains = PathlossPair(beta_bu=beta_bu(table_one), beta_c=0.0)
    draws = np.random.default_rng(0).uniform(0, 2 * np.pi, (10, 50))
    vals = phase_objective(table_one, draws, gains)
    assert np.ptp(vals) == 0.0
    # rank-one direct channel: |H11 H22|^2 = |H12 H21|^2 = (beta_bu)^2
    assert vals[0] == pytest.approx(2 * gains.beta_bu**2, rel=1e-12)


def test_objective_is_two_cross_products(table_one):
    # the objective equals |H11 H22|^2 + |H12 H21|^2 of the composed channel
    chs = build_channels(table_one)
    rng = np.random.default_rng(1)
    for _ in range(5):
        prof = PhaseProfile(rng.uniform(0, 2 * np.pi, 50))
        h = compose(chs, prof)
        ref = abs(h[0, 0] * h[1, 1]) ** 2 + abs(h[0, 1] * h[1, 0]) ** 2
        assert phase_objective(table_one, prof) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("n_z", [1, 2, 4, 8])
def test_optimal_dominates_random_when_irs_dominates(n_z):
    cfg = scene(n_y=1, n_z=n_z)
    best = phase_objective(cfg, optimal_phases(cfg), irs_only(cfg))
    rng = np.random.default_rng(n_z)
    draws = phase_objective(cfg, rng.uniform(0, 2 * np.pi, (1000, cfg.n_elements)), irs_only(cfg))
    assert np.all(draws <= best * (1 + 1e-12))


def test_coordinatewise_optimal_when_irs_dominates():
    cfg = scene(n_y=2, n_z=3)
    prof = optimal_phases(cfg)
    best = phase_objective(cfg, prof, irs_only(cfg))
    grid = np.linspace(0, 2 * np.pi, 360, endpoint=False)
    for i in range(cfg.n_elements):
        trial = np.tile(prof.phases, (360, 1))
        trial[:, i] = grid
        assert np.max(phase_objective(cfg, trial, irs_only(cfg))) <= best * (1 + 1e-9)


def test_objective_with_strong_direct_path_not_dominated(table_one):
    # with the running-example direct link the cosine rule is only a heuristic
    cfg = dataclasses.replace(table_one, n_y=1, n_z=8)
    best = phase_objective(cfg, optimal_phases(cfg))
    draws = phase_objective(cfg, np.random.default_rng(0).uniform(0, 2 * np.pi, (200, 8)))
    assert np.any(draws > best)


def test_exhaustive_argmax_agreement():
    cfg = scene(n_y=1, n_z=2)
    chs = dataclasses.replace(build_channels(cfg), h_bu=np.zeros((2, 2)))
    grid = 2 * np.pi * np.arange(16) / 16
    g1, g2 = np.meshgrid(grid, grid, indexing="ij")
    trial = np.stack([g1.ravel(), g2.ravel()], axis=1)
    obj = phase_objective(cfg, trial, irs_only(cfg))
    # high-SNR rate is monotone in the objective once the direct path is negligible
    p, s2 = cfg.p_tot_w, cfg.noise_w
    rates = exact_rate(chs, trial, p, s2)
    assert int(np.argmax(obj)) == int(np.argmax(rates))


def test_two_pi_shift_invariance(table_one):
    chs = build_channels(table_one)
    prof = random_phases(50, 9)
    shifted = prof.phases.copy()
    shifted[7] += 2 * np.pi
    np.testing.assert_allclose(compose(chs, PhaseProfile(shifted)), compose(chs, prof), rtol=1e-12)
    assert phase_objective(table_one, shifted) == pytest.approx(phase_objective(table_one, prof), rel=1e-12)
    p, s2 = table_one.p_tot_w, table_one.noise_w
    assert exact_rate(chs, shifted, p, s2) == pytest.approx(exact_rate(chs, prof.phases, p, s2), rel=1e-12)


def test_random_phases_reproducible():
    a, b = random_phases(20, 123), random_phases(20, 123)
    np.testing.assert_array_equal(a.phases, b.phases)
    assert not np.array_equal(a.phases, random_phases(20, 124).phases)
    assert not np.array_equal(a.phases, random_phases(20, 123, draw=1).phases)
    assert np.all((a.phases >= 0) & (a.phases < 2 * np.pi))
    with pytest.raises(ValueError):
        random_phases(0, 1)


def test_random_phases_uniform():
    ph = random_phases(1_000_000, 2024).phases
    assert abs(np.mean(np.exp(1j * ph))) < 0.01


def test_coordinate_search_single_element():
    cfg = scene(n_y=1, n_z=1)
    chs = build_channels(cfg)
    grid = 2 * np.pi * np.arange(64) / 64
    rates = exact_rate(chs, grid[:, None], cfg.p_tot_w, cfg.noise_w)
    got = coordinate_search(cfg, 64, 1)
    assert got.phases[0] == grid[int(np.argmax(rates))]


def test_coordinate_search_close_to_closed_form():
    cfg = scene(n_y=1, n_z=4)
    chs = build_channels(cfg)
    p, s2 = cfg.p_tot_w, cfg.noise_w
    oracle = exact_rate(chs, coordinate_search(cfg, 64, 3).phases, p, s2)
    closed = exact_rate(chs, optimal_phases(cfg).phases, p, s2)
    assert oracle - closed < 0.05


def test_coordinate_search_refinement():
    cfg = scene(n_y=1, n_z=1)
    chs = build_channels(cfg)
    p, s2 = cfg.p_tot_w, cfg.noise_w
    coarse = exact_rate(chs, coordinate_search(cfg, 32, 2).phases, p, s2)
    fine = exact_rate(chs, coordinate_search(cfg, 64, 2).phases, p, s2)
    assert fine >= coarse
    cfg4 = scene(n_y=1, n_z=4)
    chs4 = build_channels(cfg4)
    r = [exact_rate(chs4, coordinate_search(cfg4, g, 3).phases, p, s2) for g in (16, 32, 64)]
    assert r[0] <= r[1] <= r[2]


def test_coordinate_search_budget():
    with pytest.raises(BudgetExceededError):
        coordinate_search(scene(), 1024, 100, max_evaluations=10_000)


def test_policies(table_one):
    np.testing.assert_array_equal(
        PhasePolicy(PolicyKind.OPTIMAL).profile(table_one).phases, optimal_phases(table_one).phases
    )
    np.testing.assert_array_equal(
        PhasePolicy(PolicyKind.RANDOM, seed=5).profile(table_one, draw=3).phases,
        random_phases(50, 5, 3).phases,
    )
    assert np.all(PhasePolicy(PolicyKind.FIXED_ZERO).profile(table_one).phases == 0)
    small = scene(n_y=1, n_z=2)
    assert len(PhasePolicy(PolicyKind.ORACLE, grid_points=8, sweeps=1).profile(small)) == 2
    with pytest.raises(ValueError):
        PhasePolicy(PolicyKind.ORACLE, grid_points=4)
    with pytest.raises(ValueError):
        PhasePolicy(seed=2**64)
