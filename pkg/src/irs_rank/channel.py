"""Line-of-sight channel matrices and the end-to-end composition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .geometry import SceneConfig
from .pathloss import beta_bu, beta_c

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PhaseProfile:
    """Per-element reflection phases (radians) and a common amplitude."""

    phases: np.ndarray
    amplitude: float = 1.0

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float).reshape(-1)
        if not 0 < self.amplitude <= 1:
            raise ValueError(f"amplitude must be in (0, 1], got {self.amplitude}")
        object.__setattr__(self, "phases", phases)

    def __len__(self):
        return self.phases.size

    @property
    def reflection(self) -> np.ndarray:
        return self.amplitude * np.exp(1j * self.phases)


@dataclass(frozen=True)
class ChannelSet:
    """Normalized BS->IRS, IRS->UE and scaled BS->UE channels.

    ``h_br`` is ``(N, 2)`` and ``h_ru`` is ``(2, N)``, both unit modulus;
    the IRS path gain ``beta_c`` is applied in :func:`compose`. ``h_bu``
    already carries ``sqrt(beta_bu)``.
    """

    h_br: np.ndarray
    h_ru: np.ndarray
    h_bu: np.ndarray
    beta_c: float
    beta_bu: float

    @property
    def n_elements(self) -> int:
        return self.h_br.shape[0]


def steering_vector(omega: float) -> np.ndarray:
    return np.array([1.0, np.exp(1j * TWO_PI * omega)])


def direct_channel(cfg: SceneConfig, gain: float | None = None) -> np.ndarray:
    _, _, d_bu = geo.link_distances(cfg)
    gain = beta_bu(cfg) if gain is None else gain
    a_bs = steering_vector(geo.omega_bs(cfg))
    a_ue = steering_vector(geo.omega_ue(cfg))
    carrier = np.exp(1j * TWO_PI * d_bu / cfg.wavelength)
    return np.sqrt(gain) * carrier * np.outer(a_ue, a_bs.conj())


def build_channels(cfg: SceneConfig) -> ChannelSet:
    lam = cfg.wavelength
    d_br, d_ru, _ = geo.link_distances(cfg)
    h_br = np.exp(1j * TWO_PI * d_br / lam) * np.exp(1j * TWO_PI * geo.omega_br_matrix(cfg))
    h_ru = np.exp(1j * TWO_PI * d_ru / lam) * np.exp(1j * TWO_PI * geo.omega_ru_matrix(cfg))
    gain_bu = beta_bu(cfg)
    return ChannelSet(
        h_br=h_br,
        h_ru=h_ru,
        h_bu=direct_channel(cfg, gain_bu),
        beta_c=beta_c(cfg),
        beta_bu=gain_bu,
    )


def compose_phases(chs: ChannelSet, phases, amplitude: float = 1.0) -> np.ndarray:
    """Effective channel for one or many phase vectors.

    ``phases`` has shape ``(..., N)``; the result has shape ``(..., 2, 2)``.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape[-1] != chs.n_elements:
        raise ValueError(
            f"phase vector length {phases.shape[-1]} != element count {chs.n_elements}"
        )
    refl = amplitude * np.exp(1j * phases)
    # h_ru diag(refl) h_br without forming diag(refl)
    cascade = np.einsum("li,...i,is->...ls", chs.h_ru, refl, chs.h_br)
    return np.sqrt(chs.beta_c) * cascade + chs.h_bu


def compose(chs: ChannelSet, prof: PhaseProfile) -> np.ndarray:
    return compose_phases(chs, prof.phases, prof.amplitude)
