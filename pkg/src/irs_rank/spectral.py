"""Closed-form spectra of 2x2 complex channels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError

# lambda2^2 / lambda1^2 below this counts as rank deficient
RANK_TOL = 1e-30


@dataclass(frozen=True)
class SpectralResult:
    lambda1_sq: float
    lambda2_sq: float
    b_coef: float
    c_coef: float
    condition_number: float

    @property
    def singular_values(self) -> tuple[float, float]:
        return float(np.sqrt(self.lambda1_sq)), float(np.sqrt(self.lambda2_sq))


def quadratic_coefficients(h):
    """Coefficients ``(b, c)`` of ``x^2 + b x + c``, whose roots are eig(H H^H).

    Works on stacks of shape ``(..., 2, 2)``. ``c`` is evaluated as
    ``|det H|^2``, which expands term by term into
    ``|h11|^2|h22|^2 + |h12|^2|h21|^2 - 2 Re(h11 h12* h21* h22)`` but keeps
    rank-one inputs at rounding level instead of cancelling to noise.
    """
    h = np.asarray(h)
    b = -np.sum(np.abs(h) ** 2, axis=(-2, -1))
    det = h[..., 0, 0] * h[..., 1, 1] - h[..., 0, 1] * h[..., 1, 0]
    return b, np.abs(det) ** 2


def eigenvalues(h):
    """``(lambda1^2, lambda2^2, b, c)`` for a stack of 2x2 matrices."""
    h = np.asarray(h)
    # normalize so fourth powers of tiny or huge entries stay representable
    scale = np.max(np.abs(h), axis=(-2, -1))
    safe = np.where(scale > 0, scale, 1.0)
    hn = h / safe[..., None, None]
    b, c = quadratic_coefficients(hn)
    # b^2 - 4c rewritten as (g11 - g22)^2 + 4|g12|^2 with G = H H^H: same
    # value, but no cancellation when the two eigenvalues nearly coincide
    row_energy = np.sum(np.abs(hn) ** 2, axis=-1)
    g12 = np.sum(hn[..., 0, :] * np.conj(hn[..., 1, :]), axis=-1)
    disc = (row_energy[..., 0] - row_energy[..., 1]) ** 2 + 4.0 * np.abs(g12) ** 2
    l1 = 0.5 * (-b + np.sqrt(disc))
    # Vieta for the small root avoids cancellation in (-b - sqrt(disc)) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        l2 = np.where(l1 > 0, c / l1, 0.0)
    sq = safe**2
    return l1 * sq, l2 * sq, b * sq, c * sq**2


def condition_from_eigs(l1, l2):
    l1 = np.asarray(l1, dtype=float)
    l2 = np.asarray(l2, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        cond = np.sqrt(l1 / l2)
    cond = np.where(l2 <= RANK_TOL * l1, np.inf, cond)
    return np.where(l1 == 0, np.inf, cond)


def analyze(h) -> SpectralResult:
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise NumericError("channel matrix has non-finite entries")
    l1, l2, b, c = eigenvalues(h)
    return SpectralResult(
        lambda1_sq=float(l1),
        lambda2_sq=float(l2),
        b_coef=float(b),
        c_coef=float(c),
        condition_number=float(condition_from_eigs(l1, l2)),
    )


def _top_eigvec(a: float, beta: complex, d: float) -> np.ndarray:
    """Unit eigenvector for the larger eigenvalue of ``[[a, beta], [beta*, d]]``.

    Uses the Jacobi rotation angle, which stays accurate when the two
    eigenvalues nearly coincide; an exactly repeated eigenvalue yields e1.
    """
    theta = 0.5 * np.arctan2(2.0 * abs(beta), a - d)
    psi = np.angle(beta)
    return np.array([np.cos(theta), np.sin(theta) * np.exp(-1j * psi)])


def _complement(v: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def svd_2x2(h):
    """``(U, S, V)`` with ``h = U @ S @ V^H``, singular values descending."""
    h = np.asarray(h, dtype=complex)
    if not np.all(np.isfinite(h)):
        raise NumericError("channel matrix has non-finite entries")
    l1, l2, _, _ = eigenvalues(h)
    s1, s2 = float(np.sqrt(l1)), float(np.sqrt(l2))
    scale = np.max(np.abs(h))
    if s1 == 0 or scale == 0:
        eye = np.eye(2, dtype=complex)
        return eye, np.zeros((2, 2)), eye.copy()
    hn = h / scale
    gram = hn.conj().T @ hn
    v1 = _top_eigvec(gram[0, 0].real, gram[0, 1], gram[1, 1].real)
    v2 = _complement(v1)
    u1 = hn @ v1
    u1 /= np.linalg.norm(u1)
    u2 = _complement(u1)
    t = u2.conj() @ hn @ v2
    if abs(t) > 0:
        u2 = u2 * np.exp(1j * np.angle(t))
    U = np.stack([u1, u2], axis=1)
    V = np.stack([v1, v2], axis=1)
    return U, np.diag([s1, s2]), V
