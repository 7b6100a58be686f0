"""Link-level simulator for IRS-aided 2x2 line-of-sight MIMO.

Builds LoS channels from node geometry, sets IRS phases in closed form,
waterfills power over the two eigenchannels and sweeps deployments.
"""

from .allocator import RateReport, rate_direct, rate_high_snr, waterfill
from .channel import ChannelSet, PhaseProfile, build_channels, compose
from .deployment import DeploymentObjective, deployment_rate, ue_linesearch
from .geometry import GeometrySummary, SceneConfig, summarize
from .pathloss import PathlossPair, beta_bu, beta_c, pathlosses
from .phase_control import (
    PhasePolicy,
    PolicyKind,
    coordinate_search,
    optimal_phases,
    phase_objective,
    random_phases,
)
from .spectral import SpectralResult, analyze, svd_2x2

__all__ = [
    "ChannelSet", "DeploymentObjective", "GeometrySummary", "PathlossPair", "PhasePolicy",
    "PhaseProfile", "PolicyKind", "RateReport", "SceneConfig", "SpectralResult", "analyze",
    "beta_bu", "beta_c", "build_channels", "compose", "coordinate_search", "deployment_rate",
    "optimal_phases", "pathlosses", "phase_objective", "random_phases", "rate_direct",
    "rate_high_snr", "summarize", "svd_2x2", "ue_linesearch", "waterfill",
]
