import numpy as np
import pytest
from numpy.testing import assert_allclose

from floquet_tm import (
    ChainConfig,
    SpectrumSource,
    analytic_two_qubit_spectrum,
    beat_nodes,
    compose_floquet,
    eigen_overlaps,
    entanglement_entropy,
    epsilon_floquet,
    initial_ferromagnetic_state,
    measure_beat_period,
    phase_multiset_deviation,
    quasienergy_spectrum,
    tm_epsilon_for,
    xi,
)

LN2 = np.log(2.0)


def tm_floquet(eps=0.0436, g=0.05):
    return compose_floquet(ChainConfig(2, coupling=g, pulse_imperfections=eps))


class TestQuasienergySpectrum:
    def test_identity_has_zero_phases(self):
        spectrum = quasienergy_spectrum(np.eye(4, dtype=complex))
        assert_allclose(spectrum.eigenphases, np.zeros(4))

    def test_exact_at_zero_coupling(self):
        # F factorizes over qubits; single-qubit phases +-(pi/2 - eps) sum
        # to {0, 0, +-(pi - 2 eps)}
        for eps in (0.02, 0.0436, 0.3, 1.0):
            spectrum = quasienergy_spectrum(tm_floquet(eps=eps, g=0.0))
            expected = [0.0, 0.0, np.pi - 2 * eps, -(np.pi - 2 * eps)]
            assert phase_multiset_deviation(spectrum.eigenphases, expected) <= 1e-12

    def test_matches_analytic_set_at_small_parameters(self):
        spectrum = quasienergy_spectrum(tm_floquet())
        efl = epsilon_floquet(0.0436, 0.05)
        expected = [0.0, 0.1, efl, -(efl + 0.1)]
        assert phase_multiset_deviation(spectrum.eigenphases, expected) <= 5e-3

    def test_eigen_relation_and_orthonormality(self):
        f = tm_floquet()
        spectrum = quasienergy_spectrum(f)
        residual = f @ spectrum.eigenvectors - spectrum.eigenvectors * np.exp(
            -1j * spectrum.eigenphases
        )
        assert np.max(np.linalg.norm(residual, axis=0)) <= 1e-10
        gram = spectrum.eigenvectors.conj().T @ spectrum.eigenvectors
        assert np.max(np.abs(gram - np.eye(4))) <= 1e-10

    def test_sorted_and_in_branch(self):
        spectrum = quasienergy_spectrum(tm_floquet(eps=0.19, g=0.3))
        theta = spectrum.eigenphases
        assert np.all(np.diff(theta) >= 0)
        assert np.all((theta > -np.pi) & (theta <= np.pi))

    def test_deterministic(self):
        a = quasienergy_spectrum(tm_floquet())
        b = quasienergy_spectrum(tm_floquet())
        assert np.array_equal(a.eigenphases, b.eigenphases)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)

    def test_degenerate_subspace_stays_orthonormal(self):
        f = tm_floquet(eps=0.0)  # two exactly degenerate eigenphases
        spectrum = quasienergy_spectrum(f)
        gram = spectrum.eigenvectors.conj().T @ spectrum.eigenvectors
        assert np.max(np.abs(gram - np.eye(4))) <= 1e-10

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="unitary"):
            quasienergy_spectrum(np.diag([1.0, 0.5, 1.0, 1.0]))


class TestAnalyticTwoQubitSpectrum:
    def test_uncoupled_reduces_to_pulse_phases(self):
        assert abs(epsilon_floquet(0.05, 0.0) - (np.pi - 0.1)) <= 1e-15
        spectrum = analytic_two_qubit_spectrum(0.05, 0.0)
        expected = [0.0, 0.0, np.pi - 0.1, -(np.pi - 0.1)]
        assert phase_multiset_deviation(spectrum.eigenphases, expected) <= 1e-15

    def test_beta_value(self):
        eps, g = 0.0436, 0.05
        beta = (g + np.sqrt(g * g + 4 * eps * eps)) / (2 * eps)
        assert abs(beta - 1.7261) <= 5e-4
        spectrum = analytic_two_qubit_spectrum(eps, g)
        # the eps_fl eigenvector carries amplitude ratio beta between the
        # single-excitation and polarized components
        v = spectrum.eigenvectors[:, np.argmax(spectrum.eigenphases)]
        assert abs(abs(v[1] / v[0]) - beta) <= 1e-12

    def test_bell_eigenvectors_are_maximally_entangled(self):
        spectrum = analytic_two_qubit_spectrum(0.0436, 0.05)
        order = np.argsort(spectrum.eigenphases)
        phases = spectrum.eigenphases[order]
        # phases sorted: -(efl+2g), 0, 2g, efl; the middle two are the
        # exact Bell eigenvectors
        for idx in (1, 2):
            vec = spectrum.eigenvectors[:, order[idx]]
            assert abs(entanglement_entropy(vec, {1}) - LN2) <= 1e-12
        assert abs(phases[1]) <= 1e-15
        assert abs(phases[2] - 0.1) <= 1e-15

    @pytest.mark.filterwarnings("ignore:analytic two-qubit spectrum")
    def test_bell_pair_exact_for_any_parameters(self):
        for eps, g in [(0.0436, 0.05), (0.02, 0.3), (0.1, 0.01)]:
            f = tm_floquet(eps=eps, g=g)
            spectrum = analytic_two_qubit_spectrum(eps, g)
            for phase, vec in [
                (0.0, spectrum.eigenvectors[:, list(spectrum.eigenphases).index(0.0)]),
                (2 * g, spectrum.eigenvectors[:, list(spectrum.eigenphases).index(2 * g)]),
            ]:
                residual = np.linalg.norm(f @ vec - np.exp(-1j * phase) * vec)
                assert residual <= 1e-10

    def test_first_order_pair_residual(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(50):
            eps = rng.uniform(0.005, 0.06)
            g = rng.uniform(0.0, 0.06)
            f = tm_floquet(eps=eps, g=g)
            spectrum = analytic_two_qubit_spectrum(eps, g)
            residual = f @ spectrum.eigenvectors - spectrum.eigenvectors * np.exp(
                -1j * spectrum.eigenphases
            )
            worst = max(worst, float(np.max(np.linalg.norm(residual, axis=0))))
        assert worst <= 5e-2

    def test_degenerate_limit(self):
        spectrum = analytic_two_qubit_spectrum(0.0, 0.05)
        assert spectrum.degenerate
        columns = [spectrum.eigenvectors[:, j] for j in range(4)]
        plus = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        mix = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
        assert any(np.allclose(c, plus) for c in columns)
        assert any(np.allclose(c, mix) for c in columns)

    def test_source_tags(self):
        assert analytic_two_qubit_spectrum(0.01, 0.01).source is SpectrumSource.ANALYTIC_TWO_QUBIT
        assert quasienergy_spectrum(np.eye(2, dtype=complex)).source is SpectrumSource.NUMERICAL

    def test_validity_warning(self):
        with pytest.warns(UserWarning, match="small parameters"):
            analytic_two_qubit_spectrum(0.15, 0.05)

    def test_rejects_negative_parameters(self):
        with pytest.raises(ValueError):
            analytic_two_qubit_spectrum(-0.1, 0.05)


class TestXi:
    def test_exact_crossing(self):
        g = 0.05
        assert abs(xi(1, g * np.sqrt(3) / 2, g) - 6.0) <= 1e-12

    def test_zero_imperfection_limit(self):
        assert xi(1, 0.0, 0.05) == 4.0
        assert xi(3, 0.0, 0.2) == 8.0

    def test_formula_value(self):
        eps, g = 0.0436, 0.05
        expected = 3 * (g + np.sqrt(g * g + 4 * eps * eps)) / g
        value = xi(2, eps, g)
        assert value == expected
        assert abs(value - 9.03) <= 5e-3

    def test_domain_errors(self):
        with pytest.raises(ValueError, match="g > 0"):
            xi(1, 0.05, 0.0)
        with pytest.raises(ValueError, match="k"):
            xi(0, 0.05, 0.05)


class TestTmEpsilonFor:
    def test_first_group_crossing(self):
        prediction = tm_epsilon_for(1, 6, 0.05)
        assert abs(prediction.epsilon - 0.05 * np.sqrt(3) / 2) <= 1e-15
        assert abs(prediction.xi_value - 6.0) <= 1e-9

    def test_degenerate_boundary(self):
        assert tm_epsilon_for(1, 4, 0.3).epsilon == 0.0

    def test_second_group(self):
        prediction = tm_epsilon_for(2, 10, 0.05)
        expected = 0.025 * np.sqrt((10 / 3 - 1) ** 2 - 1)
        assert abs(prediction.epsilon - expected) <= 1e-15
        assert abs(xi(2, prediction.epsilon, 0.05) - 10.0) <= 1e-9

    def test_frequencies(self):
        prediction = tm_epsilon_for(1, 6, 0.05)
        assert abs(prediction.omega2 - 0.1) <= 1e-15
        assert abs(prediction.omega1 - 0.15) <= 1e-12  # 3g at the xi=6 point

    def test_round_trip_over_admissible_grid(self):
        for g in (0.01, 0.05, 0.1, 0.3):
            for k in (1, 2, 3):
                for ell in range(2 * (k + 1), 21, 2):
                    prediction = tm_epsilon_for(k, ell, g)
                    assert abs(xi(k, prediction.epsilon, g) - ell) <= 1e-9

    def test_rejects_odd_ell(self):
        with pytest.raises(ValueError, match="even"):
            tm_epsilon_for(1, 5, 0.05)

    def test_rejects_unsolvable(self):
        with pytest.raises(ValueError, match="unsolvable"):
            tm_epsilon_for(2, 4, 0.05)


class TestEigenOverlaps:
    def test_eigenvector_maps_to_unit_coefficient(self):
        spectrum = quasienergy_spectrum(tm_floquet())
        coeff = eigen_overlaps(spectrum.eigenvectors[:, 1], spectrum)
        expected = np.zeros(4)
        expected[1] = 1.0
        assert_allclose(np.abs(coeff), expected, atol=1e-12)

    def test_ferromagnetic_misses_singlet(self):
        spectrum = analytic_two_qubit_spectrum(0.0436, 0.05)
        coeff = eigen_overlaps(initial_ferromagnetic_state(2), spectrum)
        singlet_idx = int(np.argmin(np.abs(spectrum.eigenphases - 0.1)))
        assert abs(coeff[singlet_idx]) <= 1e-15
        assert abs(np.sum(np.abs(coeff) ** 2) - 1.0) <= 1e-10

    def test_dimension_mismatch(self):
        spectrum = quasienergy_spectrum(np.eye(4, dtype=complex))
        with pytest.raises(ValueError, match="dimension"):
            eigen_overlaps(np.zeros(8), spectrum)


class TestPhaseMultisetDeviation:
    def test_branch_wrap(self):
        a = [np.pi - 1e-9, 0.0]
        b = [-np.pi + 1e-9, 0.0]
        assert phase_multiset_deviation(a, b) <= 3e-9

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            phase_multiset_deviation([0.0], [0.0, 1.0])


class TestBeatMeasurement:
    def test_synthetic_beat(self):
        eps = 0.03
        n = np.arange(400)
        pol = 2.0 * (-1.0) ** n * np.cos(2 * eps * n)
        measured = measure_beat_period(pol)
        assert abs(measured - np.pi / (2 * eps)) <= 0.5

    def test_nodes_of_flat_signal(self):
        assert beat_nodes(np.ones(50) * (-1.0) ** np.arange(50)).size == 0

    def test_too_few_nodes(self):
        with pytest.raises(ValueError, match="nodes"):
            measure_beat_period(np.ones(10) * (-1.0) ** np.arange(10))
