"""Coherent stroboscopic dynamics of periodically pi-pulse-driven,
XY-coupled qubit chains.

The package builds dense one-period propagators, evolves states period by
period while recording total polarization and entanglement entropy,
analyzes quasienergy spectra and their commensurability, detects
time-molecule flat regions, and runs deterministic parameter sweeps. The
``floquet-tm`` command line exposes the same capabilities on files.
"""

__version__ = "0.1.0"

from .analysis import (
    QuasienergySpectrum,
    SpectrumSource,
    TmPrediction,
    analytic_two_qubit_spectrum,
    beat_nodes,
    circular_distance,
    demodulated_polarization,
    eigen_overlaps,
    epsilon_floquet,
    measure_beat_period,
    phase_multiset_deviation,
    quasienergy_spectrum,
    tm_epsilon_for,
    xi,
)
from .config import ChainConfig, PulseMode
from .detect import TmInterval, detect_flat_regions, label_intervals
from .dynamics import (
    StroboscopicTrace,
    entanglement_entropy,
    evolve,
    initial_ferromagnetic_state,
    reduced_density_matrix,
    total_polarization,
)
from .errors import NumericalInstabilityError
from .operators import (
    build_drift_generator,
    build_pulse_unitary,
    compose_floquet,
    matrix_exp_hermitian,
    pauli_operator,
    two_qubit_ug,
    unitarity_defect,
)
from .sweep import SweepAxis, SweepGrid, SweepSpec, run_sweep, spec_digest

__all__ = [
    "ChainConfig",
    "NumericalInstabilityError",
    "PulseMode",
    "QuasienergySpectrum",
    "SpectrumSource",
    "StroboscopicTrace",
    "SweepAxis",
    "SweepGrid",
    "SweepSpec",
    "TmInterval",
    "TmPrediction",
    "analytic_two_qubit_spectrum",
    "beat_nodes",
    "build_drift_generator",
    "build_pulse_unitary",
    "circular_distance",
    "compose_floquet",
    "demodulated_polarization",
    "detect_flat_regions",
    "eigen_overlaps",
    "entanglement_entropy",
    "epsilon_floquet",
    "evolve",
    "initial_ferromagnetic_state",
    "label_intervals",
    "matrix_exp_hermitian",
    "measure_beat_period",
    "pauli_operator",
    "phase_multiset_deviation",
    "quasienergy_spectrum",
    "reduced_density_matrix",
    "run_sweep",
    "spec_digest",
    "tm_epsilon_for",
    "total_polarization",
    "two_qubit_ug",
    "unitarity_defect",
    "xi",
]
