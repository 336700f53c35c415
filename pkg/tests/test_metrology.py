"""Fisher information (quantum and homodyne-classical), efficiency, capacity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import gammaln

from gridsense import (
    capacity,
    cfi_homodyne,
    expectation,
    ket_density,
    measurement_efficiency,
    number_op,
    qfi_mixed,
    qfi_pure,
    quadrature_op,
    rotate_density,
)
from gridsense.metrology import cfi_fd_check

from conftest import D


def coherent_ket(alpha: complex, dim: int = D) -> np.ndarray:
    n = np.arange(dim)
    amp = np.exp(-abs(alpha) ** 2 / 2) * alpha**n / np.exp(0.5 * gammaln(n + 1.0))
    ket = amp.astype(complex)
    return ket / np.linalg.norm(ket)


class TestQfiPure:
    def test_vacuum_zero(self, vacuum):
        assert qfi_pure(vacuum, number_op(D)) == 0.0

    def test_fock_state_zero(self):
        ket = np.zeros(D, dtype=complex)
        ket[3] = 1.0
        assert abs(qfi_pure(ket, number_op(D))) < 1e-12

    def test_coherent_state_scores_four(self):
        # 4 Var(n) = 4|alpha|^2 for a coherent state
        assert abs(qfi_pure(coherent_ket(1.0), number_op(D)) - 4.0) < 1e-10

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            qfi_pure(np.ones(D, dtype=complex), number_op(D))


class TestQfiMixed:
    def test_reduces_to_pure_on_rank_one(self, codeword0):
        N = number_op(D)
        pure = qfi_pure(codeword0, N)
        mixed = qfi_mixed(ket_density(codeword0), N)
        assert abs(pure - mixed) < 1e-8 * max(pure, 1.0)

    def test_diagonal_state_zero(self):
        # [n, rho] = 0 when rho is diagonal in the number basis
        p = np.exp(-np.arange(D) / 3.0)
        rho = np.diag(p / p.sum()).astype(complex)
        assert abs(qfi_mixed(rho, number_op(D))) < 1e-12

    def test_noisy_benchmark_value(self, noisy_square):
        # frozen regression value for the untrained benchmark state after
        # loss 0.9 and dephasing 0.05
        assert abs(qfi_mixed(noisy_square, number_op(D)) - 8.525519) < 1e-4

    def test_rotation_invariant(self, noisy_square):
        # the generator commutes with rotations, so QFI cannot depend on the
        # orientation angle
        N = number_op(D)
        base = qfi_mixed(noisy_square, N)
        for theta_deg in (45.0, 67.5, 90.0):
            rotated = rotate_density(noisy_square, math.radians(theta_deg))
            assert abs(qfi_mixed(rotated, N) - base) < 1e-8


class TestCfiHomodyne:
    def test_coherent_state_angles(self):
        # F_C = 4 |alpha|^2 sin^2(psi) for a real-alpha coherent state
        rho = ket_density(coherent_ket(1.0))
        assert cfi_homodyne(rho, 0.0) < 1e-20
        assert abs(cfi_homodyne(rho, math.pi / 4) - 2.0) < 1e-10
        assert abs(cfi_homodyne(rho, math.pi / 2) - 4.0) < 1e-10

    def test_coherent_state_saturates_qfi(self):
        ket = coherent_ket(1.0)
        rho = ket_density(ket)
        best = max(cfi_homodyne(rho, psi)
                   for psi in np.linspace(0, math.pi, 181))
        assert abs(best - qfi_pure(ket, number_op(D))) < 1e-8

    def test_centered_state_scores_zero(self, noisy_square):
        # the mean-quadrature signal of an origin-centered state vanishes at
        # every LO angle, so this estimator extracts nothing from it
        for psi in (0.0, 0.7, math.pi / 2):
            assert cfi_homodyne(noisy_square, psi) < 1e-15

    def test_never_exceeds_qfi(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            ket = rng.normal(size=8) + 1j * rng.normal(size=8)
            ket /= np.linalg.norm(ket)
            rho = ket_density(ket)
            q = qfi_mixed(rho, number_op(8))
            for psi in np.linspace(0, math.pi, 19):
                assert cfi_homodyne(rho, psi) <= q + 1e-8

    def test_commutator_derivative_matches_finite_difference(self):
        # the signal numerator from -i[n, rho] equals the numeric derivative
        # of the rotated family, confirming the closed form
        rho = ket_density(coherent_ket(1.0))
        psi = 0.7
        N = number_op(D)
        x = quadrature_op(D, psi)
        analytic = abs(complex(expectation(-1j * (N @ rho - rho @ N), x)))
        fd = cfi_fd_check(lambda phi: rotate_density(rho, phi), psi)
        assert abs(analytic - fd) < 1e-7

    def test_variance_floor_guard(self):
        rho = np.zeros((D, D), dtype=complex)
        rho[0, 0] = 1.0
        with pytest.raises(ValueError):
            cfi_homodyne(rho, 0.0, var_floor=10.0)


class TestEfficiencyAndCapacity:
    def test_efficiency_formula(self):
        assert measurement_efficiency(0.0) == 1.0
        assert measurement_efficiency(0.5) == 0.0
        assert abs(measurement_efficiency(0.25) - 0.25) < 1e-15

    def test_efficiency_symmetric(self):
        # a always-wrong channel is as informative as an always-right one
        assert abs(measurement_efficiency(0.1)
                   - measurement_efficiency(0.9)) < 1e-15

    def test_efficiency_range_checked(self):
        with pytest.raises(ValueError):
            measurement_efficiency(-0.1)
        with pytest.raises(ValueError):
            measurement_efficiency(1.1)

    def test_capacity_formula(self):
        assert abs(capacity(10.0, math.exp(-5.0)) - 50.0) < 1e-12

    def test_capacity_validation(self):
        with pytest.raises(ValueError):
            capacity(-1.0, 0.1)
        with pytest.raises(ValueError):
            capacity(1.0, 0.0)
        with pytest.raises(ValueError):
            capacity(1.0, 1.0)

    @settings(max_examples=30, deadline=None)
    @given(p=st.floats(1e-9, 0.4999))
    def test_capacity_rewards_lower_error(self, p):
        assert capacity(5.0, p) > capacity(5.0, p * 1.5 + 1e-10)
