import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from floquet_tm import (
    ChainConfig,
    PulseMode,
    build_drift_generator,
    build_pulse_unitary,
    compose_floquet,
    matrix_exp_hermitian,
    pauli_operator,
    two_qubit_ug,
    unitarity_defect,
)
from floquet_tm.operators import SIGMA_X, SIGMA_Y, SIGMA_Z, sum_sigma_x


def reversal_permutation(n):
    """Qubit-order reversal as a permutation matrix (test oracle)."""
    dim = 1 << n
    perm = np.zeros((dim, dim))
    for b in range(dim):
        rev = int(format(b, f"0{n}b")[::-1], 2)
        perm[rev, b] = 1.0
    return perm


class TestPauliOperator:
    def test_single_qubit_z(self):
        assert_allclose(pauli_operator("z", 1, 1), np.diag([1.0, -1.0]))

    def test_kron_identity_padding(self):
        assert_allclose(pauli_operator("x", 2, 2), np.kron(np.eye(2), SIGMA_X))

    def test_most_significant_bit_convention(self):
        assert_allclose(pauli_operator("z", 1, 2), np.diag([1.0, 1.0, -1.0, -1.0]))

    @pytest.mark.parametrize("axis", ["x", "y", "z"])
    def test_hermitian_unitary_involution(self, axis):
        op = pauli_operator(axis, 2, 3)
        assert_allclose(op, op.conj().T)
        assert_allclose(op @ op, np.eye(8), atol=1e-15)

    def test_site_out_of_range(self):
        with pytest.raises(ValueError, match="site"):
            pauli_operator("z", 4, 3)
        with pytest.raises(ValueError, match="site"):
            pauli_operator("z", 0, 3)

    def test_bad_axis(self):
        with pytest.raises(ValueError, match="axis"):
            pauli_operator("w", 1, 1)


class TestPulseUnitary:
    def test_perfect_pi_pulse(self):
        assert_allclose(build_pulse_unitary([0.0]), -1j * SIGMA_X)

    def test_half_pi_imperfection_is_identity(self):
        assert_allclose(build_pulse_unitary([np.pi / 2]), np.eye(2), atol=1e-15)

    def test_two_perfect_pulses(self):
        expected = -np.kron(SIGMA_X, SIGMA_X)
        assert_allclose(build_pulse_unitary([0.0, 0.0]), expected)

    @given(
        st.lists(st.floats(-0.5, 0.5), min_size=1, max_size=4),
    )
    @settings(max_examples=30, deadline=None)
    def test_factorizes_over_qubits(self, eps):
        product = np.ones((1, 1), dtype=complex)
        for e in eps:
            product = np.kron(product, build_pulse_unitary([e]))
        assert np.max(np.abs(build_pulse_unitary(eps) - product)) <= 1e-14

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            build_pulse_unitary([np.nan])


class TestDriftGenerator:
    def test_two_qubit_exchange_block(self):
        # exchange amplitude is -2g; the sign makes exp(-i Phi) equal the
        # closed-form two_qubit_ug (the +i sin 2g convention)
        g = 0.17
        phi = build_drift_generator(ChainConfig(2, coupling=g))
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 2] = expected[2, 1] = -2.0 * g
        assert_allclose(phi, expected)

    def test_detuning_diagonal(self):
        d1, d2 = 0.3, 0.7
        phi = build_drift_generator(ChainConfig(2, detunings=(d1, d2)))
        assert_allclose(phi, np.diag([2 * d1 + 2 * d2, 2 * d1, 2 * d2, 0.0]))

    def test_matches_pauli_string_sum(self):
        # independent construction from embedded Pauli operators
        config = ChainConfig(3, coupling=0.05, detunings=(0.1, -0.2, 0.4))
        oracle = np.zeros((8, 8), dtype=complex)
        for i in range(1, 4):
            oracle += config.detunings[i - 1] * (pauli_operator("z", i, 3) + np.eye(8))
        for i in range(1, 3):
            oracle -= config.coupling * (
                pauli_operator("x", i, 3) @ pauli_operator("x", i + 1, 3)
                + pauli_operator("y", i, 3) @ pauli_operator("y", i + 1, 3)
            )
        assert_allclose(build_drift_generator(config), oracle, atol=1e-15)

    def test_hermitian(self):
        phi = build_drift_generator(ChainConfig(4, coupling=0.3, detunings=(0.1, 0.2, 0.3, 0.4)))
        assert np.max(np.abs(phi - phi.conj().T)) <= 1e-12


class TestMatrixExpHermitian:
    def test_zero_gives_identity(self):
        assert_allclose(matrix_exp_hermitian(np.zeros((4, 4))), np.eye(4))

    def test_pauli_rotation(self):
        assert_allclose(matrix_exp_hermitian((np.pi / 2) * SIGMA_X), -1j * SIGMA_X, atol=1e-15)

    def test_matches_closed_form_drift(self):
        g = 0.05
        phi = build_drift_generator(ChainConfig(2, coupling=g))
        assert np.max(np.abs(matrix_exp_hermitian(phi) - two_qubit_ug(g))) <= 1e-12

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="Hermitian"):
            matrix_exp_hermitian(bad)

    def test_unitary_output(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = a + a.conj().T
        assert unitarity_defect(matrix_exp_hermitian(h)) <= 1e-12


class TestTwoQubitUg:
    def test_identity_at_zero(self):
        assert_allclose(two_qubit_ug(0.0), np.eye(4))

    def test_iswap_point(self):
        u = two_qubit_ug(np.pi / 4)
        assert_allclose(u[1:3, 1:3], np.array([[0, 1j], [1j, 0]]), atol=1e-15)

    def test_small_coupling_block(self):
        u = two_qubit_ug(0.05)
        expected = np.array(
            [[np.cos(0.1), 1j * np.sin(0.1)], [1j * np.sin(0.1), np.cos(0.1)]]
        )
        assert_allclose(u[1:3, 1:3], expected)


class TestComposeFloquet:
    def test_trivial_limit(self):
        config = ChainConfig(2)
        assert_allclose(compose_floquet(config), -np.kron(SIGMA_X, SIGMA_X), atol=1e-15)

    def test_product_oracle(self):
        config = ChainConfig(2, coupling=0.05, pulse_imperfections=0.0436)
        oracle = two_qubit_ug(0.05) @ build_pulse_unitary([0.0436, 0.0436])
        assert np.max(np.abs(compose_floquet(config) - oracle)) <= 1e-12

    def test_finite_pulse_zero_fraction_identical(self):
        inst = compose_floquet(ChainConfig(2, coupling=0.05, pulse_imperfections=0.0436))
        fin = compose_floquet(
            ChainConfig(
                2, coupling=0.05, pulse_imperfections=0.0436,
                pulse_fraction=0.0, mode=PulseMode.FINITE_PULSE,
            )
        )
        assert np.array_equal(inst, fin)

    def test_instantaneous_ignores_fraction(self):
        a = compose_floquet(ChainConfig(2, coupling=0.05, pulse_imperfections=0.0436))
        b = compose_floquet(
            ChainConfig(
                2, coupling=0.05, pulse_imperfections=0.0436, pulse_fraction=0.4,
            )
        )
        assert np.array_equal(a, b)

    def test_finite_pulse_perturbation_bound(self):
        g, r = 0.05, 0.1
        inst = compose_floquet(ChainConfig(2, coupling=g, pulse_imperfections=0.0436))
        fin = compose_floquet(
            ChainConfig(
                2, coupling=g, pulse_imperfections=0.0436,
                pulse_fraction=r, mode=PulseMode.FINITE_PULSE,
            )
        )
        assert np.max(np.abs(fin - inst)) <= np.pi * g * r / (1 - r)

    def test_bitwise_reproducible(self):
        config = ChainConfig(
            3, coupling=0.21, detunings=(0.0, 0.7, -0.3),
            pulse_imperfections=(0.03, 0.05, 0.02),
            pulse_fraction=0.15, mode=PulseMode.FINITE_PULSE,
        )
        assert np.array_equal(compose_floquet(config), compose_floquet(config))

    def test_commutes_with_reversal_for_identical_qubits(self):
        config = ChainConfig(3, coupling=0.08, detunings=0.4, pulse_imperfections=0.05)
        f = compose_floquet(config)
        rev = reversal_permutation(3)
        assert np.max(np.abs(f @ rev - rev @ f)) <= 1e-12

    @given(
        st.integers(1, 4),
        st.floats(0.0, 0.3),
        st.floats(0.0, 0.2),
        st.floats(-1.0, 1.0),
        st.floats(0.0, 0.5),
    )
    @settings(max_examples=25, deadline=None)
    def test_unitarity_property(self, n, g, eps, delta, r):
        config = ChainConfig(
            n, coupling=g, detunings=delta, pulse_imperfections=eps,
            pulse_fraction=r, mode=PulseMode.FINITE_PULSE,
        )
        assert unitarity_defect(compose_floquet(config)) <= 1e-12


class TestSumSigmaX:
    def test_matches_pauli_embedding(self):
        coeff = [0.3, -0.7, 1.1]
        oracle = sum(c * pauli_operator("x", i + 1, 3) for i, c in enumerate(coeff))
        assert_allclose(sum_sigma_x(coeff), oracle, atol=1e-15)


class TestChainConfigValidation:
    def test_rejects_fraction_at_one(self):
        with pytest.raises(ValueError, match="pulse_fraction"):
            ChainConfig(2, pulse_fraction=1.0)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="detunings"):
            ChainConfig(2, detunings=(0.1, 0.2, 0.3))

    def test_rejects_negative_coupling(self):
        with pytest.raises(ValueError, match="coupling"):
            ChainConfig(2, coupling=-0.1)

    def test_rejects_zero_qubits(self):
        with pytest.raises(ValueError, match="n_qubits"):
            ChainConfig(0)

    def test_broadcasts_scalars(self):
        config = ChainConfig(3, detunings=0.7, pulse_imperfections=0.02)
        assert config.detunings == (0.7, 0.7, 0.7)
        assert config.pulse_imperfections == (0.02, 0.02, 0.02)
