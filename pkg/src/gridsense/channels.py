"""Photon-loss and dephasing channels in the number basis, plus the
closed-form per-quadrature noise spreads used by the analytic error model.

Two dephasing maps are provided on purpose:

* `apply_dephasing` — the elementwise number-basis map
  ρ_mn → ρ_mn·e^{-γ(m-n)²/2}. This is what the simulation pipeline applies
  (after loss). Being a Hadamard multiplication it commutes exactly with
  phase-space rotations.
* `apply_momentum_diffusion` — Gaussian diffusion of p with variance γ,
  i.e. ρ(q, q′) → ρ(q, q′)·e^{-γ(q-q′)²/2} in the position eigenbasis.
  This channel is anisotropic (it singles out the p axis) and is NOT
  rotation-covariant; it is the channel whose rotated-frame spreads are the
  σ_q(θ), σ_p(θ) formulas below.

The two maps agree only approximately; both are kept so each claim about
"dephasing" can be tested against the map it is actually true of.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fock import position_op

__all__ = [
    "NoiseParams",
    "loss_kraus",
    "apply_loss",
    "apply_dephasing",
    "apply_momentum_diffusion",
    "effective_sigmas",
]


@dataclass(frozen=True)
class NoiseParams:
    """Transmissivity η ∈ (0, 1] and dephasing rate γ ≥ 0."""

    eta: float
    gamma: float

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must lie in (0, 1], got {self.eta}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")


@lru_cache(maxsize=32)
def _log_factorials(D: int) -> np.ndarray:
    from scipy.special import gammaln

    n = np.arange(D, dtype=float)
    return gammaln(n + 1.0)


def loss_kraus(eta: float, D: int) -> list[np.ndarray]:
    """Kraus operators of the photon-loss channel with transmissivity η.

    K_k[n-k, n] = sqrt(C(n,k) (1-η)^k η^{n-k}), k = 0..D-1. Computed in log
    space so large-n binomials stay finite. Σ K†K = I exactly within the
    truncated space.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    if eta == 1.0:
        return [np.eye(D, dtype=complex)]
    lgamma = _log_factorials(D)
    log_eta = math.log(eta)
    log_one_minus = math.log1p(-eta)
    ops = []
    for k in range(D):
        n = np.arange(k, D)
        log_w = (lgamma[n] - lgamma[k] - lgamma[n - k]
                 + k * log_one_minus + (n - k) * log_eta)
        K = np.zeros((D, D), dtype=complex)
        K[n - k, n] = np.exp(0.5 * log_w)
        ops.append(K)
    return ops


def apply_loss(rho: np.ndarray, eta: float) -> np.ndarray:
    """Loss channel Σ_k K_k ρ K_k†; trace-preserving within the cutoff."""
    rho = np.asarray(rho, dtype=complex)
    if eta == 1.0:
        return rho.copy()
    out = np.zeros_like(rho)
    for K in loss_kraus(eta, rho.shape[0]):
        out += K @ rho @ K.conj().T
    return out


def apply_dephasing(rho: np.ndarray, gamma: float) -> np.ndarray:
    """Number-basis dephasing ρ_mn → ρ_mn·e^{-γ(m-n)²/2}.

    Diagonal (and hence trace) is untouched for any γ.
    """
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    rho = np.asarray(rho, dtype=complex)
    n = np.arange(rho.shape[0])
    dn = n[:, None] - n[None, :]
    return rho * np.exp(-0.5 * gamma * dn.astype(float) ** 2)


@lru_cache(maxsize=32)
def _position_eigenbasis(D: int):
    q = position_op(D)
    w, V = np.linalg.eigh((q + q.conj().T) / 2.0)
    return w, V


def apply_momentum_diffusion(rho: np.ndarray, gamma: float) -> np.ndarray:
    """Gaussian diffusion of the p quadrature with variance γ.

    Implemented exactly (within the cutoff) by damping position-basis
    coherences: with q̂ = Σ_i q_i |q_i⟩⟨q_i|, the map is
    ρ(q_i, q_j) → ρ(q_i, q_j)·e^{-γ(q_i-q_j)²/2}. Completely positive and
    trace preserving; anisotropic, hence not rotation-covariant.
    """
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    rho = np.asarray(rho, dtype=complex)
    w, V = _position_eigenbasis(rho.shape[0])
    rho_q = V.conj().T @ rho @ V
    dq = w[:, None] - w[None, :]
    rho_q *= np.exp(-0.5 * gamma * dq**2)
    return V @ rho_q @ V.conj().T


def effective_sigmas(noise: NoiseParams, theta: float) -> tuple[float, float]:
    """Per-quadrature displacement spreads of the rotated-frame error model.

    σ_q²(θ) = (1-η)/(2η) + γ sin²θ,  σ_p²(θ) = (1-η)/(2η) + γ cos²θ.

    The loss term is isotropic; the dephasing term is the p-axis diffusion
    seen from a frame rotated by θ. Their sum σ_q² + σ_p² = (1-η)/η + γ is
    θ-independent.
    """
    base = (1.0 - noise.eta) / (2.0 * noise.eta)
    s, c = math.sin(theta), math.cos(theta)
    sigma_q = math.sqrt(base + noise.gamma * s * s)
    sigma_p = math.sqrt(base + noise.gamma * c * c)
    return sigma_q, sigma_p
