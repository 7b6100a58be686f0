"""Runners for the four reproduction experiments and single-point runs.

Each runner returns a list of :class:`SweepRecord`. Rows come out sorted by
(sweep value, draw index) whatever the worker count, because tasks are
submitted in that order and collected with an order-preserving map.
"""

from __future__ import annotations

import dataclasses
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..allocator import rate_direct, waterfill
from ..channel import build_channels, compose
from ..deployment import deployment_rate
from ..errors import ModelValidityError
from ..geometry import SceneConfig
from ..phase_control import optimal_phases, random_phases
from ..spectral import analyze
from .config import ExperimentSpec, Scenario, Sweep


@dataclass
class SweepRecord:
    sweep_value: float | None = None
    policy: str = ""
    n: int | None = None
    n_y: int | None = None
    n_z: int | None = None
    draw: int | None = None
    rate: float | None = None
    condition_number: float | None = None
    lambda1_sq: float | None = None
    lambda2_sq: float | None = None
    p1: float | None = None
    p2: float | None = None
    mu: float | None = None
    beta_c: float | None = None
    beta_bu: float | None = None
    beta_product: float | None = None
    upsilon: float | None = None
    rate_high_snr: float | None = None
    cdf: float | None = None
    valid: int | None = None


COLUMNS = {
    Scenario.COND_VS_N: (
        "n", "n_y", "n_z", "policy", "condition_number", "lambda1_sq", "lambda2_sq",
        "beta_c", "beta_bu",
    ),
    Scenario.RATE_VS_N: (
        "n", "n_y", "n_z", "policy", "rate", "p1", "p2", "lambda1_sq", "lambda2_sq",
        "beta_c", "beta_bu",
    ),
    Scenario.RATE_CDF: ("n", "policy", "draw", "rate", "cdf"),
    Scenario.RATE_VS_UE_Y: (
        "y_u", "valid", "policy", "rate", "rate_high_snr", "upsilon", "beta_c", "beta_bu",
        "beta_product", "lambda1_sq", "lambda2_sq", "p1", "p2",
    ),
    Scenario.SINGLE: (
        "n", "policy", "rate", "condition_number", "lambda1_sq", "lambda2_sq", "p1", "p2",
        "mu", "beta_c", "beta_bu", "upsilon", "rate_high_snr",
    ),
}
# CSV header name of SweepRecord.sweep_value, per scenario
SWEEP_COLUMN = {Scenario.RATE_VS_UE_Y: "y_u"}


def _map(fn, items, workers: int):
    items = list(items)
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def with_elements(cfg: SceneConfig, n: int) -> SceneConfig:
    """Same scene with ``n`` elements, keeping ``n_z`` and growing ``n_y``."""
    if n % cfg.n_z:
        raise ValueError(f"N={n} is not a multiple of n_z={cfg.n_z}")
    return dataclasses.replace(cfg, n_y=n // cfg.n_z)


def _optimal_point(cfg: SceneConfig) -> SweepRecord:
    chs = build_channels(cfg)
    spec = analyze(compose(chs, optimal_phases(cfg)))
    rep = waterfill(spec, cfg.p_tot_w, cfg.noise_w)
    return SweepRecord(
        policy="optimal",
        n=cfg.n_elements,
        n_y=cfg.n_y,
        n_z=cfg.n_z,
        rate=rep.rate_bps_hz,
        condition_number=spec.condition_number,
        lambda1_sq=spec.lambda1_sq,
        lambda2_sq=spec.lambda2_sq,
        p1=rep.p1,
        p2=rep.p2,
        mu=rep.mu,
        beta_c=chs.beta_c,
        beta_bu=chs.beta_bu,
    )


def _direct_point(cfg: SceneConfig) -> SweepRecord:
    chs = build_channels(cfg)
    spec = analyze(chs.h_bu)
    rep = rate_direct(cfg)
    return SweepRecord(
        policy="direct",
        n=cfg.n_elements,
        n_y=cfg.n_y,
        n_z=cfg.n_z,
        rate=rep.rate_bps_hz,
        condition_number=spec.condition_number,
        lambda1_sq=spec.lambda1_sq,
        lambda2_sq=spec.lambda2_sq,
        p1=rep.p1,
        p2=rep.p2,
        mu=rep.mu,
        beta_c=0.0,
        beta_bu=chs.beta_bu,
    )


def _n_y_values(sweep: Sweep) -> list[int]:
    out = []
    for v in sweep.values:
        if v != int(v) or v < 1:
            raise ValueError(f"n_y sweep values must be positive integers, got {v}")
        out.append(int(v))
    return out


def run_cond_vs_n(cfg: SceneConfig, n_y_list, workers: int = 1) -> list[SweepRecord]:
    """Condition number under optimal phases for each ``n_y``, after a no-IRS row."""
    base = _direct_point(cfg)
    base.policy, base.n, base.n_y = "none", 0, 0
    base.sweep_value = 0.0
    cfgs = [dataclasses.replace(cfg, n_y=int(n_y)) for n_y in n_y_list]
    rows = _map(_optimal_point, cfgs, workers)
    for row in rows:
        row.sweep_value = float(row.n_y)
    return [base] + rows


def run_rate_vs_n(cfg: SceneConfig, n_y_list, workers: int = 1) -> list[SweepRecord]:
    """Optimal-phase IRS rate and the direct baseline for each ``n_y``."""
    out = []
    cfgs = [dataclasses.replace(cfg, n_y=int(n_y)) for n_y in n_y_list]
    for opt, direct in zip(_map(_optimal_point, cfgs, workers), _map(_direct_point, cfgs, workers)):
        opt.sweep_value = direct.sweep_value = float(opt.n_y)
        out += [opt, direct]
    return out


def run_rate_cdf(
    cfg: SceneConfig, n: int = 50, mc_draws: int = 1000, seed: int = 0, workers: int = 1
) -> list[SweepRecord]:
    """Empirical rate CDF over random phase profiles at fixed geometry.

    The optimal-phase and direct rates are deterministic, so each contributes
    one row with ``cdf = 1``.
    """
    cfg = with_elements(cfg, n)
    chs = build_channels(cfg)
    p_tot, sigma_sq = cfg.p_tot_w, cfg.noise_w

    def draw_rate(draw: int) -> float:
        prof = random_phases(cfg.n_elements, seed, draw)
        return waterfill(analyze(compose(chs, prof)), p_tot, sigma_sq).rate_bps_hz

    rates = np.array(_map(draw_rate, range(mc_draws), workers))
    order = np.argsort(rates, kind="stable")
    rows = []
    for rank, draw in enumerate(order, start=1):
        rows.append(
            SweepRecord(
                sweep_value=float(n), policy="random", n=n, draw=int(draw),
                rate=float(rates[draw]), cdf=rank / mc_draws,
            )
        )
    opt = _optimal_point(cfg)
    direct = rate_direct(cfg)
    rows.append(SweepRecord(sweep_value=float(n), policy="optimal", n=n, draw=0, rate=opt.rate, cdf=1.0))
    rows.append(
        SweepRecord(sweep_value=float(n), policy="direct", n=n, draw=0, rate=direct.rate_bps_hz, cdf=1.0)
    )
    return rows


def _ue_point(cfg: SceneConfig) -> SweepRecord:
    y = cfg.ue_position[1]
    try:
        row = _optimal_point(cfg)
        dep = deployment_rate(cfg)
    except ModelValidityError:
        return SweepRecord(sweep_value=y, valid=0, policy="optimal")
    row.sweep_value = y
    row.valid = 1
    row.upsilon = dep.upsilon
    row.rate_high_snr = dep.rate_high_snr
    row.beta_product = dep.beta_c * dep.beta_bu
    return row


def run_rate_vs_ue_y(
    cfg: SceneConfig, n: int = 100, y_values=None, workers: int = 1
) -> list[SweepRecord]:
    """Exact and high-SNR rates as the UE moves along y at fixed x and z."""
    cfg = with_elements(cfg, n)
    if y_values is None:
        y_values = Sweep.from_range("y_u", -5.0, 2.0, 0.01).values
    x, _, z = cfg.ue_position
    cfgs = [dataclasses.replace(cfg, ue_position=(x, float(y), z)) for y in y_values]
    rows = _map(_ue_point, cfgs, workers)
    bad = sum(1 for r in rows if not r.valid)
    if bad:
        warnings.warn(f"{bad} UE positions violate the direct-path model range", RuntimeWarning)
    return rows


def run_single(cfg: SceneConfig, seed: int = 0) -> list[SweepRecord]:
    """Direct, optimal-phase and one random-phase evaluation of ``cfg``."""
    chs = build_channels(cfg)
    dep = deployment_rate(cfg)
    opt = _optimal_point(cfg)
    opt.upsilon, opt.rate_high_snr = dep.upsilon, dep.rate_high_snr
    rnd_spec = analyze(compose(chs, random_phases(cfg.n_elements, seed, 0)))
    rnd = waterfill(rnd_spec, cfg.p_tot_w, cfg.noise_w)
    random_row = SweepRecord(
        policy="random", n=cfg.n_elements, rate=rnd.rate_bps_hz,
        condition_number=rnd_spec.condition_number, lambda1_sq=rnd_spec.lambda1_sq,
        lambda2_sq=rnd_spec.lambda2_sq, p1=rnd.p1, p2=rnd.p2, mu=rnd.mu,
        beta_c=chs.beta_c, beta_bu=chs.beta_bu,
    )
    return [_direct_point(cfg), opt, random_row]


def run(cfg: SceneConfig, spec: ExperimentSpec) -> list[SweepRecord]:
    sweep = spec.resolved_sweep()
    n = spec.resolved_elements()
    if spec.scenario is Scenario.COND_VS_N:
        return run_cond_vs_n(cfg, _n_y_values(sweep), spec.workers)
    if spec.scenario is Scenario.RATE_VS_N:
        return run_rate_vs_n(cfg, _n_y_values(sweep), spec.workers)
    if spec.scenario is Scenario.RATE_CDF:
        return run_rate_cdf(cfg, n, spec.mc_draws, spec.seed, spec.workers)
    if spec.scenario is Scenario.RATE_VS_UE_Y:
        return run_rate_vs_ue_y(cfg, n, sweep.values, spec.workers)
    return run_single(cfg if n is None else with_elements(cfg, n), spec.seed)
