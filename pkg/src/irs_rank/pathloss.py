"""Direct-path and IRS-path power gains."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, ModelValidityError
from .geometry import SceneConfig, db_to_linear, link_distances

UMI_MIN_DISTANCE = 10.0
# far-field check on the surface size relative to the BS offsets
FAR_FIELD_RATIO = 0.1


@dataclass(frozen=True)
class PathlossPair:
    beta_bu: float
    beta_c: float


def beta_bu_db(d_bu: float, gain_tx_dbi: float, gain_rx_dbi: float) -> float:
    """UMi LoS pathloss at 5 GHz with both antenna gains added, in dB."""
    if d_bu < UMI_MIN_DISTANCE:
        raise ModelValidityError(
            f"UMi model is defined for d_bu >= {UMI_MIN_DISTANCE} m, got {d_bu:.3f} m"
        )
    return -41.97 - 22.0 * np.log10(d_bu) + gain_tx_dbi + gain_rx_dbi


def beta_bu(cfg: SceneConfig) -> float:
    _, _, d_bu = link_distances(cfg)
    return float(db_to_linear(beta_bu_db(d_bu, cfg.gain_tx_dbi, cfg.gain_rx_dbi)))


def incidence_angle(cfg: SceneConfig) -> float:
    """Azimuth of arrival at the surface, ``arctan(y_b / x_b)``."""
    xb, yb, _ = cfg.bs_position
    if xb <= 0:
        raise DegenerateGeometryError(
            f"BS must lie in front of the surface (x_b > 0), got x_b={xb}"
        )
    return float(np.arctan(yb / xb))


def surface_dimensions(cfg: SceneConfig) -> tuple[float, float]:
    """Surface side lengths ``(a, b)`` in meters along z and y."""
    pitch = cfg.d_irs * cfg.wavelength
    return cfg.n_z * pitch, cfg.n_y * pitch


def beta_c(cfg: SceneConfig) -> float:
    """Power gain of the BS -> IRS -> UE path for the whole surface.

    Uses the plate-scattering model ``Gt Gr / (4 pi)^2 * (a b / (d_br d_ru))^2
    * cos^2(incidence)``. Warns, without clamping, when the surface is not
    small compared to the BS offsets.
    """
    angle = incidence_angle(cfg)
    d_br, d_ru, _ = link_distances(cfg)
    a, b = surface_dimensions(cfg)
    xb, yb, _ = cfg.bs_position
    offsets = [abs(v) for v in (xb, yb) if v != 0]
    if max(a, b) > FAR_FIELD_RATIO * min(offsets):
        warnings.warn(
            f"surface size {max(a, b):.3g} m is not small against BS offset "
            f"{min(offsets):.3g} m; scattering model may overestimate beta_c",
            RuntimeWarning,
            stacklevel=2,
        )
    gains = db_to_linear(cfg.gain_tx_dbi) * db_to_linear(cfg.gain_rx_dbi)
    return float(gains / (4 * np.pi) ** 2 * (a * b / (d_br * d_ru)) ** 2 * np.cos(angle) ** 2)


def pathlosses(cfg: SceneConfig) -> PathlossPair:
    return PathlossPair(beta_bu=beta_bu(cfg), beta_c=beta_c(cfg))
