"""Node positions, link distances and phase-slope terms.

All phase slopes are in cycles (dimensionless); callers form phases as
``2*pi*omega``. Indices in the scalar API are 1-based, matching the usual
array-element numbering: IRS element ``(m, n)`` maps to the flat index
``i = (m - 1) * n_z + n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError

SPEED_OF_LIGHT = 299_792_458.0


def _as_vec3(value) -> tuple[float, float, float]:
    arr = np.asarray(value, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    return tuple(float(v) for v in arr)


@dataclass(frozen=True)
class SceneConfig:
    """Physical scenario. Defaults reproduce the running example.

    Angles are in radians. ``p_tot_dbm`` and ``noise_dbm`` are powers in
    dBm; the gains are in dBi.
    """

    bs_position: tuple[float, float, float] = (120.0, 120.0, 12.0)
    ue_position: tuple[float, float, float] = (5.0, -5.0, 1.5)
    irs_height: float = 2.0
    n_y: int = 10
    n_z: int = 5
    d_bs: float = 0.5
    d_ue: float = 0.5
    d_irs: float = 0.25
    theta_t: float = np.pi / 2
    phi_t: float = 0.0
    theta_r: float = np.pi / 2
    phi_r: float = 0.0
    carrier_hz: float = 5e9
    p_tot_dbm: float = 10.0
    noise_dbm: float = -94.0
    gain_tx_dbi: float = 3.0
    gain_rx_dbi: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "bs_position", _as_vec3(self.bs_position))
        object.__setattr__(self, "ue_position", _as_vec3(self.ue_position))
        if int(self.n_y) != self.n_y or int(self.n_z) != self.n_z:
            raise ValueError("n_y and n_z must be integers")
        object.__setattr__(self, "n_y", int(self.n_y))
        object.__setattr__(self, "n_z", int(self.n_z))
        if self.n_y < 1 or self.n_z < 1:
            raise ValueError(f"n_y and n_z must be >= 1, got {self.n_y}, {self.n_z}")
        for name in ("d_bs", "d_ue", "d_irs", "carrier_hz"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        irs = np.array([0.0, 0.0, self.irs_height])
        bs, ue = np.array(self.bs_position), np.array(self.ue_position)
        for a, b, label in ((bs, irs, "BS/IRS"), (irs, ue, "IRS/UE"), (bs, ue, "BS/UE")):
            if np.linalg.norm(a - b) == 0:
                raise DegenerateGeometryError(f"{label} positions coincide")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def n_elements(self) -> int:
        return self.n_y * self.n_z

    @property
    def p_tot_w(self) -> float:
        return dbm_to_watts(self.p_tot_dbm)

    @property
    def noise_w(self) -> float:
        return dbm_to_watts(self.noise_dbm)


def dbm_to_watts(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


def linear_to_db(lin):
    return 10.0 * np.log10(lin)


@dataclass(frozen=True)
class GeometrySummary:
    d_br: float
    d_ru: float
    d_bu: float
    omega_bs: float
    omega_ue: float
    omega_br_slope: float
    omega_ru_slope: float


def _check(index: int, upper: int, name: str) -> int:
    if int(index) != index or not 1 <= index <= upper:
        raise IndexError(f"{name}={index} out of range 1..{upper}")
    return int(index)


def element_indices(cfg: SceneConfig) -> tuple[np.ndarray, np.ndarray]:
    """Zero-based ``(m-1, n-1)`` for every flat element index, in order."""
    m = np.repeat(np.arange(cfg.n_y), cfg.n_z)
    n = np.tile(np.arange(cfg.n_z), cfg.n_y)
    return m, n


def split_index(i: int, cfg: SceneConfig) -> tuple[int, int]:
    """Flat element index ``i`` -> ``(m, n)``, all 1-based."""
    i = _check(i, cfg.n_elements, "i")
    m = -(-i // cfg.n_z)
    return m, i - (m - 1) * cfg.n_z


def _ula_direction(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [np.sin(theta) * np.sin(phi), np.sin(theta) * np.cos(phi), np.cos(theta)]
    )


def irs_element_position(m: int, n: int, cfg: SceneConfig) -> np.ndarray:
    m = _check(m, cfg.n_y, "m")
    n = _check(n, cfg.n_z, "n")
    pitch = cfg.d_irs * cfg.wavelength
    return np.array([0.0, (m - 1) * pitch, cfg.irs_height + (n - 1) * pitch])


def irs_element_positions(cfg: SceneConfig) -> np.ndarray:
    """All element positions, shape ``(N, 3)``, in flat-index order."""
    m, n = element_indices(cfg)
    pitch = cfg.d_irs * cfg.wavelength
    return np.stack([np.zeros(m.shape), m * pitch, cfg.irs_height + n * pitch], axis=1)


def bs_antenna_position(s: int, cfg: SceneConfig) -> np.ndarray:
    s = _check(s, 2, "s")
    offset = (s - 1) * cfg.d_bs * cfg.wavelength * _ula_direction(cfg.theta_t, cfg.phi_t)
    return np.array(cfg.bs_position) + offset


def ue_antenna_position(l: int, cfg: SceneConfig) -> np.ndarray:  # noqa: E741
    l = _check(l, 2, "l")  # noqa: E741
    offset = (l - 1) * cfg.d_ue * cfg.wavelength * _ula_direction(cfg.theta_r, cfg.phi_r)
    return np.array(cfg.ue_position) + offset


def link_distances(cfg: SceneConfig) -> tuple[float, float, float]:
    """First-element distances ``(d_br, d_ru, d_bu)`` in meters."""
    xb, yb, zb = cfg.bs_position
    xu, yu, zu = cfg.ue_position
    h = cfg.irs_height
    d_br = float(np.sqrt(xb**2 + yb**2 + (zb - h) ** 2))
    d_ru = float(np.sqrt(xu**2 + yu**2 + (zu - h) ** 2))
    d_bu = float(np.sqrt((xb - xu) ** 2 + (yb - yu) ** 2 + (zb - zu) ** 2))
    if min(d_br, d_ru, d_bu) == 0:
        raise DegenerateGeometryError("zero link distance")
    return d_br, d_ru, d_bu


def _omega_irs(node, spacing, theta, phi, dist, cfg, antenna, m, n):
    # shared body of the BS->IRS and IRS->UE slopes; antenna/m/n are 0-based
    x, y, z = node
    h = cfg.irs_height
    return (
        antenna * x * spacing * np.sin(theta) * np.sin(phi)
        + y * (antenna * spacing * np.sin(theta) * np.cos(phi) - m * cfg.d_irs)
        + (z - h) * (antenna * spacing * np.cos(theta) - n * cfg.d_irs)
    ) / dist


def omega_br(i: int, s: int, cfg: SceneConfig) -> float:
    """Phase slope between BS antenna ``s`` and IRS element ``i``."""
    m, n = split_index(i, cfg)
    s = _check(s, 2, "s")
    d_br, _, _ = link_distances(cfg)
    return float(
        _omega_irs(cfg.bs_position, cfg.d_bs, cfg.theta_t, cfg.phi_t, d_br, cfg, s - 1, m - 1, n - 1)
    )


def omega_ru(l: int, i: int, cfg: SceneConfig) -> float:  # noqa: E741
    """Phase slope between IRS element ``i`` and UE antenna ``l``."""
    l = _check(l, 2, "l")  # noqa: E741
    m, n = split_index(i, cfg)
    _, d_ru, _ = link_distances(cfg)
    return float(
        _omega_irs(cfg.ue_position, cfg.d_ue, cfg.theta_r, cfg.phi_r, d_ru, cfg, l - 1, m - 1, n - 1)
    )


def omega_br_matrix(cfg: SceneConfig) -> np.ndarray:
    """``[i, s]`` -> slope, shape ``(N, 2)``."""
    m, n = element_indices(cfg)
    d_br, _, _ = link_distances(cfg)
    cols = [
        _omega_irs(cfg.bs_position, cfg.d_bs, cfg.theta_t, cfg.phi_t, d_br, cfg, s, m, n)
        for s in (0, 1)
    ]
    return np.stack(cols, axis=1)


def omega_ru_matrix(cfg: SceneConfig) -> np.ndarray:
    """``[l, i]`` -> slope, shape ``(2, N)``."""
    m, n = element_indices(cfg)
    _, d_ru, _ = link_distances(cfg)
    rows = [
        _omega_irs(cfg.ue_position, cfg.d_ue, cfg.theta_r, cfg.phi_r, d_ru, cfg, l, m, n)
        for l in (0, 1)  # noqa: E741
    ]
    return np.stack(rows, axis=0)


def _omega_direct(spacing, theta, phi, cfg):
    _, _, d_bu = link_distances(cfg)
    diff = np.array(cfg.bs_position) - np.array(cfg.ue_position)
    return float(spacing * diff @ _ula_direction(theta, phi) / d_bu)


def omega_bs(cfg: SceneConfig) -> float:
    return _omega_direct(cfg.d_bs, cfg.theta_t, cfg.phi_t, cfg)


def omega_ue(cfg: SceneConfig) -> float:
    return _omega_direct(cfg.d_ue, cfg.theta_r, cfg.phi_r, cfg)


def summarize(cfg: SceneConfig) -> GeometrySummary:
    d_br, d_ru, d_bu = link_distances(cfg)
    # the antenna-index differences are index independent; element (1,1) suffices
    br_slope = float(
        _omega_irs(cfg.bs_position, cfg.d_bs, cfg.theta_t, cfg.phi_t, d_br, cfg, 1, 0, 0)
    )
    ru_slope = float(
        _omega_irs(cfg.ue_position, cfg.d_ue, cfg.theta_r, cfg.phi_r, d_ru, cfg, 1, 0, 0)
    )
    return GeometrySummary(
        d_br=d_br,
        d_ru=d_ru,
        d_bu=d_bu,
        omega_bs=omega_bs(cfg),
        omega_ue=omega_ue(cfg),
        omega_br_slope=br_slope,
        omega_ru_slope=ru_slope,
    )
