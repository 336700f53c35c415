"""Shared fixtures: the two benchmark noise points and cached heavy states.

Everything expensive (noisy density matrices, trained runs) is session-scoped
so the suite stays well under its time budget.
"""

import math

import numpy as np
import pytest

from gridsense import (
    NoiseParams,
    SensorSpec,
    prepare_codeword,
    sensor_state,
)

# The two benchmark noise points used throughout.
LOW_NOISE = NoiseParams(eta=0.9, gamma=0.05)
HIGH_NOISE = NoiseParams(eta=0.8, gamma=0.10)

D = 30
EPS = 0.063
R_LOW = 1.092
R_HIGH = 1.082


@pytest.fixture(scope="session")
def low_noise():
    return LOW_NOISE


@pytest.fixture(scope="session")
def high_noise():
    return HIGH_NOISE


@pytest.fixture(scope="session")
def codeword0():
    return prepare_codeword(0, EPS, D)


@pytest.fixture(scope="session")
def codeword1():
    return prepare_codeword(1, EPS, D)


@pytest.fixture(scope="session")
def vacuum():
    ket = np.zeros(D, dtype=complex)
    ket[0] = 1.0
    return ket


def _noisy(theta_deg, bloch_theta=0.0, bloch_phi=0.0, r=R_LOW, noise=LOW_NOISE):
    spec = SensorSpec(theta=math.radians(theta_deg), r=r, epsilon=EPS,
                      bloch_theta=bloch_theta, bloch_phi=bloch_phi, cutoff=D)
    return sensor_state(spec, noise)


@pytest.fixture(scope="session")
def noisy_square():
    """|0̄⟩ sensor state through the low-noise channels, square lattice."""
    return _noisy(0.0)


@pytest.fixture(scope="session")
def noisy_states_by_theta():
    """Low-noise sensor states at the four benchmark angles, keyed by degrees."""
    return {t: _noisy(t) for t in (0.0, 45.0, 67.5, 90.0)}
