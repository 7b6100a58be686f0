"""IRS phase profiles: closed-form optimum, random draws, grid oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .allocator import waterfill_arrays
from .channel import TWO_PI, ChannelSet, PhaseProfile, build_channels, compose_phases
from .errors import BudgetExceededError
from .geometry import SceneConfig
from .pathloss import PathlossPair, pathlosses
from .spectral import eigenvalues

MAX_EVALUATIONS = 2_000_000


class PolicyKind(enum.Enum):
    OPTIMAL = "optimal"
    RANDOM = "random"
    FIXED_ZERO = "zero"
    ORACLE = "oracle"


@dataclass(frozen=True)
class PhasePolicy:
    kind: PolicyKind = PolicyKind.OPTIMAL
    seed: int = 0
    grid_points: int = 64
    sweeps: int = 3

    def __post_init__(self):
        if self.kind is PolicyKind.ORACLE and self.grid_points < 8:
            raise ValueError("oracle policy needs grid_points >= 8")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def profile(self, cfg: SceneConfig, draw: int = 0) -> PhaseProfile:
        if self.kind is PolicyKind.OPTIMAL:
            return optimal_phases(cfg)
        if self.kind is PolicyKind.RANDOM:
            return random_phases(cfg.n_elements, self.seed, draw)
        if self.kind is PolicyKind.FIXED_ZERO:
            return PhaseProfile(np.zeros(cfg.n_elements))
        return coordinate_search(cfg, self.grid_points, self.sweeps)


def alignment_sum(cfg: SceneConfig) -> np.ndarray:
    """Per-element ``O_ru1 + O_br1 + O_ru2 + O_br2 + O_bs - O_ue`` (cycles)."""
    br = geo.omega_br_matrix(cfg)
    ru = geo.omega_ru_matrix(cfg)
    return ru[0] + br[:, 0] + ru[1] + br[:, 1] + geo.omega_bs(cfg) - geo.omega_ue(cfg)


def optimal_phases(cfg: SceneConfig) -> PhaseProfile:
    """Phases maximizing ``cos(2 phi_i + 2 pi * alignment_sum_i)`` element-wise."""
    return PhaseProfile(np.mod(-np.pi * alignment_sum(cfg), TWO_PI))


def random_phases(n: int, seed: int, draw: int = 0) -> PhaseProfile:
    """I.i.d. uniform phases on ``[0, 2 pi)``.

    Each ``(seed, draw)`` pair owns an independent generator stream, so Monte
    Carlo batches can be evaluated in any order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(draw,)))
    return PhaseProfile(rng.uniform(0.0, TWO_PI, size=n))


def phase_objective(
    cfg: SceneConfig, prof: PhaseProfile | np.ndarray, gains: PathlossPair | None = None
) -> float | np.ndarray:
    """High-SNR phase objective: ``|A11|^2 |A22|^2 + |A12|^2 |A21|^2``.

    Each ``A_ls`` is the IRS sum for UE antenna ``l`` and BS antenna ``s``
    plus the matching direct-path entry. Accepts phase arrays of shape
    ``(..., N)`` for batch evaluation. ``gains`` overrides the modeled path
    gains.
    """
    phases = prof.phases if isinstance(prof, PhaseProfile) else np.asarray(prof, dtype=float)
    amp = prof.amplitude if isinstance(prof, PhaseProfile) else 1.0
    lam = cfg.wavelength
    d_br, d_ru, d_bu = geo.link_distances(cfg)
    br = geo.omega_br_matrix(cfg)
    ru = geo.omega_ru_matrix(cfg)
    o_bs, o_ue = geo.omega_bs(cfg), geo.omega_ue(cfg)
    gains = pathlosses(cfg) if gains is None else gains
    scat = np.sqrt(gains.beta_c) * np.exp(1j * TWO_PI * (d_br + d_ru) / lam)
    direct = np.sqrt(gains.beta_bu) * np.exp(1j * TWO_PI * d_bu / lam)

    def entry(l, s, direct_phase):  # noqa: E741
        total = np.sum(
            amp * np.exp(1j * (phases + TWO_PI * ru[l] + TWO_PI * br[:, s])), axis=-1
        )
        return np.abs(scat * total + direct * np.exp(1j * TWO_PI * direct_phase)) ** 2

    return entry(0, 0, 0.0) * entry(1, 1, o_ue - o_bs) + entry(0, 1, -o_bs) * entry(1, 0, o_ue)


def exact_rate(chs: ChannelSet, phases, p_tot: float, sigma_sq: float) -> np.ndarray:
    """Waterfilled rate for a stack of phase vectors, shape ``(..., N)``."""
    l1, l2, _, _ = eigenvalues(compose_phases(chs, phases))
    return waterfill_arrays(l1, l2, p_tot, sigma_sq)[3]


def coordinate_search(
    cfg: SceneConfig,
    grid_points: int = 64,
    sweeps: int = 3,
    max_evaluations: int = MAX_EVALUATIONS,
    chs: ChannelSet | None = None,
) -> PhaseProfile:
    """Cyclic coordinate ascent of the exact rate on a uniform phase grid.

    Starts from all-zero phases. Each step sets one element to the grid value
    that maximizes the waterfilled rate, holding the others fixed; ties go to
    the lowest grid value, and a coordinate only moves on strict improvement.
    """
    n = cfg.n_elements
    if grid_points < 1 or sweeps < 1:
        raise ValueError("grid_points and sweeps must be >= 1")
    cost = sweeps * n * grid_points
    if cost > max_evaluations:
        raise BudgetExceededError(
            f"{sweeps} sweeps x {n} elements x {grid_points} points = {cost} "
            f"rate evaluations exceeds the budget of {max_evaluations}"
        )
    chs = build_channels(cfg) if chs is None else chs
    p_tot, sigma_sq = cfg.p_tot_w, cfg.noise_w
    grid = TWO_PI * np.arange(grid_points) / grid_points
    phases = np.zeros(n)
    best = float(exact_rate(chs, phases, p_tot, sigma_sq))
    for _ in range(sweeps):
        moved = False
        for i in range(n):
            trial = np.tile(phases, (grid_points, 1))
            trial[:, i] = grid
            rates = exact_rate(chs, trial, p_tot, sigma_sq)
            k = int(np.argmax(rates))
            if rates[k] > best:
                best = float(rates[k])
                phases[i] = grid[k]
                moved = True
        if not moved:
            break
    return PhaseProfile(phases)
