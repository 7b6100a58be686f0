"""High-SNR deployment rate and UE placement linesearch."""

from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ModelValidityError
from .geometry import SceneConfig, link_distances
from .pathloss import beta_bu, beta_c

AXES = {"x": 0, "y": 1, "z": 2}
GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DeploymentObjective:
    upsilon: float
    omega_sum_bs: float
    omega_diff_ue: float
    rate_high_snr: float
    beta_c: float
    beta_bu: float


def angle_terms(cfg: SceneConfig) -> tuple[float, float]:
    """``(O_br + O_bs, O_ru - O_ue)`` expanded directly in node coordinates."""
    xb, yb, zb = cfg.bs_position
    xu, yu, zu = cfg.ue_position
    h = cfg.irs_height
    d_br, d_ru, d_bu = link_distances(cfg)
    st, ct = np.sin(cfg.theta_t), np.cos(cfg.theta_t)
    sp, cp = np.sin(cfg.phi_t), np.cos(cfg.phi_t)
    bs_sum = cfg.d_bs * (
        st * sp * (xb / d_br + (xb - xu) / d_bu)
        + st * cp * (yb / d_br + (yb - yu) / d_bu)
        + ct * ((zb - h) / d_br + (zb - zu) / d_bu)
    )
    st, ct = np.sin(cfg.theta_r), np.cos(cfg.theta_r)
    sp, cp = np.sin(cfg.phi_r), np.cos(cfg.phi_r)
    ue_diff = cfg.d_ue * (
        st * sp * (xu / d_ru - (xb - xu) / d_bu)
        + st * cp * (yu / d_ru - (yb - yu) / d_bu)
        + ct * ((zu - h) / d_ru - (zb - zu) / d_bu)
    )
    return float(bs_sum), float(ue_diff)


def upsilon_from_terms(bs_sum: float, ue_diff: float) -> float:
    return float((1.0 - np.cos(2 * np.pi * bs_sum)) * (1.0 - np.cos(2 * np.pi * ue_diff)))


def deployment_rate(
    cfg: SceneConfig, beta_c_override: float | None = None
) -> DeploymentObjective:
    """High-SNR rate ``log2(P^2 N^2 beta_c beta_bu Upsilon / sigma^4)``.

    ``Upsilon == 0`` means the aligned channel collapses to rank one; the
    rate is then ``-inf``. ``beta_c_override`` pins the IRS path gain, e.g.
    to isolate the element-count scaling.
    """
    bs_sum, ue_diff = angle_terms(cfg)
    ups = upsilon_from_terms(bs_sum, ue_diff)
    gain_c = beta_c(cfg) if beta_c_override is None else beta_c_override
    gain_bu = beta_bu(cfg)
    snr_sq = (cfg.p_tot_w * cfg.n_elements / cfg.noise_w) ** 2 * gain_c * gain_bu * ups
    rate = float(np.log2(snr_sq)) if snr_sq > 0 else -np.inf
    return DeploymentObjective(
        upsilon=ups,
        omega_sum_bs=bs_sum,
        omega_diff_ue=ue_diff,
        rate_high_snr=rate,
        beta_c=gain_c,
        beta_bu=gain_bu,
    )


@dataclass(frozen=True)
class LinesearchResult:
    position: float
    rate: float
    grid: np.ndarray
    rates: np.ndarray
    skipped: tuple[float, ...]


def _move_ue(cfg: SceneConfig, axis: int, value: float) -> SceneConfig:
    pos = list(cfg.ue_position)
    pos[axis] = value
    return dataclasses.replace(cfg, ue_position=tuple(pos))


def ue_linesearch(
    cfg: SceneConfig,
    axis: str | int = "y",
    lo: float = -5.0,
    hi: float = 2.0,
    resolution: float = 0.01,
    refine: bool = True,
    objective=None,
) -> LinesearchResult:
    """Maximize a rate objective over one UE coordinate.

    The range is scanned on a uniform grid (ties go to the lowest
    coordinate); the best bracket is then refined by golden-section search,
    keeping the refined point only if it strictly improves on the grid. Grid
    points where the direct-path model is invalid are skipped with a warning.
    ``objective`` maps a config to a rate and defaults to the high-SNR
    deployment rate.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if not resolution > 0:
        raise ValueError("resolution must be > 0")
    axis = AXES[axis] if isinstance(axis, str) else int(axis)
    if objective is None:
        def objective(c):
            return deployment_rate(c).rate_high_snr

    count = int(np.floor((hi - lo) / resolution + 1e-9)) + 1
    grid = np.round(lo + resolution * np.arange(count), 12)
    rates = np.full(count, np.nan)
    skipped = []
    for k, value in enumerate(grid):
        try:
            rates[k] = objective(_move_ue(cfg, axis, float(value)))
        except ModelValidityError:
            skipped.append(float(value))
    if skipped:
        warnings.warn(f"skipped {len(skipped)} infeasible UE positions", RuntimeWarning, stacklevel=2)
    feasible = ~np.isnan(rates)
    if not feasible.any():
        raise ModelValidityError("no feasible UE position in the search range")
    k = int(np.argmax(np.where(feasible, rates, -np.inf)))
    best_x, best_rate = float(grid[k]), float(rates[k])

    if refine and count > 2:
        a = float(grid[max(k - 1, 0)])
        b = float(grid[min(k + 1, count - 1)])

        def f(x):
            try:
                return objective(_move_ue(cfg, axis, x))
            except ModelValidityError:
                return -np.inf

        x1, x2 = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
        f1, f2 = f(x1), f(x2)
        for _ in range(60):
            if f1 >= f2:
                b, x2, f2 = x2, x1, f1
                x1 = b - GOLDEN * (b - a)
                f1 = f(x1)
            else:
                a, x1, f1 = x1, x2, f2
                x2 = a + GOLDEN * (b - a)
                f2 = f(x2)
        x_ref = x1 if f1 >= f2 else x2
        f_ref = max(f1, f2)
        if f_ref > best_rate:
            best_x, best_rate = x_ref, f_ref

    return LinesearchResult(
        position=best_x, rate=best_rate, grid=grid, rates=rates, skipped=tuple(skipped)
    )
