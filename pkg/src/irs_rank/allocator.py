"""Waterfilling over the two eigenchannels and rate evaluation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ApproximationError, ZeroChannelError
from .geometry import SceneConfig
from .pathloss import beta_bu
from .spectral import SpectralResult


@dataclass(frozen=True)
class RateReport:
    p1: float
    p2: float
    mu: float
    rate_bps_hz: float
    streams_active: int


def waterfill_arrays(l1, l2, p_tot, sigma_sq):
    """Vectorized two-stream waterfilling.

    Returns ``(p1, p2, mu, rate)`` arrays broadcast over the inputs. Rows with
    ``l1 == 0`` get zero power and zero rate.
    """
    l1, l2, p_tot, sigma_sq = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (l1, l2, p_tot, sigma_sq))
    )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        inv1 = sigma_sq / l1
        inv2 = np.where(l2 > 0, sigma_sq / l2, np.inf)
        mu2 = 0.5 * (p_tot + inv1 + inv2)
        two = mu2 > inv2
        mu = np.where(two, mu2, p_tot + inv1)
        p2 = np.where(two, mu - inv2, 0.0)
        p1 = np.where(two, p_tot - p2, p_tot)
        rate = np.log2(1.0 + p1 * l1 / sigma_sq) + np.where(
            two, np.log2(1.0 + p2 * l2 / sigma_sq), 0.0
        )
    dead = l1 <= 0
    p1 = np.where(dead, 0.0, p1)
    rate = np.where(dead, 0.0, rate)
    mu = np.where(dead, np.nan, mu)
    return p1, p2, mu, rate


def waterfill(spec: SpectralResult, p_tot: float, sigma_sq: float) -> RateReport:
    """KKT-optimal split of ``p_tot`` over the eigenchannels of ``spec``.

    Tries two active streams first and falls back to one stream when the
    weak channel would need negative power.
    """
    if not (p_tot > 0 and sigma_sq > 0):
        raise ValueError("p_tot and sigma_sq must be positive")
    if spec.lambda1_sq <= 0:
        raise ZeroChannelError("channel has no energy (lambda1^2 = 0)")
    p1, p2, mu, rate = waterfill_arrays(spec.lambda1_sq, spec.lambda2_sq, p_tot, sigma_sq)
    p1, p2 = float(p1), float(p2)
    return RateReport(
        p1=p1, p2=p2, mu=float(mu), rate_bps_hz=float(rate), streams_active=2 if p2 > 0 else 1
    )


def stream_rate(powers, eigs, sigma_sq: float) -> float:
    """Sum over streams of ``log2(1 + P_j lambda_j^2 / sigma^2)``."""
    powers = np.asarray(powers, dtype=float)
    eigs = np.asarray(eigs, dtype=float)
    return float(np.sum(np.log2(1.0 + powers * eigs / sigma_sq), axis=-1))


def rate_direct(cfg: SceneConfig) -> RateReport:
    """Single-stream rate of the unaided link, whose only singular value is
    ``2 sqrt(beta_bu)``."""
    p_tot, sigma_sq = cfg.p_tot_w, cfg.noise_w
    gain = 4.0 * beta_bu(cfg)
    return RateReport(
        p1=p_tot,
        p2=0.0,
        mu=p_tot + sigma_sq / gain,
        rate_bps_hz=float(np.log2(1.0 + p_tot * gain / sigma_sq)),
        streams_active=1,
    )


def mu_closed_form(spec: SpectralResult, p_tot: float, sigma_sq: float) -> float:
    """Water level when both streams are active: ``(P - sigma^2 b / c) / 2``."""
    return 0.5 * (p_tot - sigma_sq * spec.b_coef / spec.c_coef)


def rate_two_stream_closed_form(spec: SpectralResult, p_tot: float, sigma_sq: float) -> float:
    """Exact rate when both streams are active, written in ``b`` and ``c``."""
    shifted = p_tot - sigma_sq * spec.b_coef / spec.c_coef
    return float(np.log2(shifted**2 * spec.c_coef / (4.0 * sigma_sq**2)))


def rate_high_snr(spec: SpectralResult, p_tot: float, sigma_sq: float) -> float:
    """High-SNR rate ``log2((P^2 c - 2 sigma^2 P b) / (4 sigma^4))``."""
    if spec.lambda2_sq <= 0 or spec.c_coef <= 0:
        raise ApproximationError("high-SNR rate needs two nonzero eigenvalues")
    arg = (p_tot**2 * spec.c_coef - 2.0 * sigma_sq * p_tot * spec.b_coef) / (4.0 * sigma_sq**2)
    return float(np.log2(arg))
