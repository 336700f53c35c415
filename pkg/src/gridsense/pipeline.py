"""The end-to-end sensor-state pipeline: codeword → geometry gates → noise.

Composition order is fixed: squeeze by ln r, rotate by θ, then loss, then
number-basis dephasing (dephasing AFTER loss; the channels do not commute and
the composition order is part of the contract).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import NoiseParams, apply_dephasing, apply_loss
from .fock import ket_density, number_op
from .metrology import qfi_mixed
from .states import logical_state, rotate, squeeze

__all__ = ["SensorSpec", "sensor_ket", "sensor_state", "pipeline_qfi"]


@dataclass(frozen=True)
class SensorSpec:
    """Everything that determines the pre-channel sensor state."""

    theta: float  # lattice rotation, radians
    r: float  # aspect ratio; squeeze parameter is ln r
    epsilon: float = 0.063
    bloch_theta: float = 0.0
    bloch_phi: float = 0.0
    cutoff: int = 30


def sensor_ket(spec: SensorSpec) -> tuple[np.ndarray, float]:
    """Pure sensor state before the noise channels; returns (ket, leakage)."""
    psi = logical_state(spec.bloch_theta, spec.bloch_phi, spec.epsilon,
                        spec.cutoff)
    psi, leakage = squeeze(psi, math.log(spec.r))
    psi = rotate(psi, spec.theta)
    return psi, leakage


def sensor_state(spec: SensorSpec, noise: NoiseParams) -> np.ndarray:
    """Noisy sensor state: channels applied to the pure pipeline output."""
    psi, _ = sensor_ket(spec)
    rho = apply_loss(ket_density(psi), noise.eta)
    return apply_dephasing(rho, noise.gamma)


def pipeline_qfi(spec: SensorSpec, noise: NoiseParams) -> float:
    """Mixed-state QFI of the noisy sensor state with generator n̂."""
    rho = sensor_state(spec, noise)
    return qfi_mixed(rho, number_op(spec.cutoff))
