"""Floquet spectral analysis.

Eigenphases theta of a one-period propagator are reported on (-pi, pi]
through F v = exp(-i theta) v. For two resonant qubits the package also
provides the closed-form spectrum and the commensurability ratio xi_k that
predicts time-molecule formation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import NumericalInstabilityError
from .operators import unitarity_defect

RESIDUAL_ABORT = 1e-8
VALIDITY_WARN = 0.1


class SpectrumSource(Enum):
    NUMERICAL = "numerical"
    ANALYTIC_TWO_QUBIT = "analytic-two-qubit"


@dataclass(frozen=True)
class QuasienergySpectrum:
    """Eigenphases (ascending, in (-pi, pi]) with matching eigenvector
    columns. ``degenerate`` flags the eps = 0 limit of the analytic
    two-qubit spectrum, where the closed-form eigenvectors are a chosen
    basis of a degenerate pair."""

    eigenphases: np.ndarray
    eigenvectors: np.ndarray
    source: SpectrumSource
    degenerate: bool = False

    @property
    def dim(self) -> int:
        return self.eigenvectors.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.exp(-1j * self.eigenphases)


def _fix_column_phases(vectors: np.ndarray, cutoff: float = 1e-8) -> np.ndarray:
    """Deterministic gauge: first component above ``cutoff`` in magnitude is
    made real positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = np.argmax(np.abs(col) > cutoff)
        pivot = col[idx]
        if np.abs(pivot) > 0:
            out[:, j] = col * (np.abs(pivot) / pivot)
    return out


def quasienergy_spectrum(floquet: np.ndarray, *, unitary_tol: float = 1e-10) -> QuasienergySpectrum:
    """Full eigendecomposition of a unitary propagator.

    Uses a complex Schur factorization, whose vectors stay orthonormal in
    degenerate subspaces. Ordering is ascending eigenphase (stable), ties
    at -pi are mapped to +pi, and each eigenvector's phase gauge is fixed,
    so the result is deterministic for identical input.
    """
    floquet = np.asarray(floquet, dtype=complex)
    defect = unitarity_defect(floquet)
    if defect > unitary_tol:
        raise ValueError(f"input is not unitary within {unitary_tol} (defect {defect:.3e})")

    t, q = scipy.linalg.schur(floquet, output="complex")
    lam = np.diag(t)
    theta = -np.angle(lam)
    theta[theta == -np.pi] = np.pi

    order = np.argsort(theta, kind="stable")
    theta = theta[order]
    vectors = _fix_column_phases(q[:, order])

    residual = float(
        np.max(np.linalg.norm(floquet @ vectors - vectors * np.exp(-1j * theta), axis=0))
    )
    if residual > RESIDUAL_ABORT:
        raise NumericalInstabilityError(
            f"eigendecomposition residual {residual:.3e} exceeds {RESIDUAL_ABORT}"
        )
    return QuasienergySpectrum(theta, vectors, SpectrumSource.NUMERICAL)


def epsilon_floquet(epsilon: float, g: float) -> float:
    """Quasienergy parameter pi - g - sqrt(g^2 + 4 eps^2) of the two-qubit
    closed form (first order in small epsilon, g)."""
    return np.pi - g - np.sqrt(g * g + 4.0 * epsilon * epsilon)


def analytic_two_qubit_spectrum(epsilon: float, g: float) -> QuasienergySpectrum:
    """Closed-form quasienergy spectrum of two identical resonant qubits.

    Phases {0, 2g, eps_fl, -(eps_fl + 2g)} with eps_fl = epsilon_floquet.
    The Bell vectors (|uu> - |dd>)/sqrt(2) at phase 0 and
    (|ud> - |du>)/sqrt(2) at phase 2g are exact eigenvectors at any
    epsilon, g; the remaining pair is first order in {epsilon, g}, built
    from beta = (g + sqrt(g^2 + 4 eps^2)) / (2 eps):

        phase eps_fl         <->  (|uu> + |dd> + beta (|ud> + |du>)) / norm
        phase -(eps_fl + 2g) <->  (beta (|uu> + |dd>) - (|ud> + |du>)) / norm

    At epsilon = 0 beta diverges; the limiting pair (|uu> + |dd>)/sqrt(2),
    (|ud> + |du>)/sqrt(2) is returned with ``degenerate=True``.
    """
    if epsilon < 0 or g < 0:
        raise ValueError(f"epsilon and g must be >= 0, got {epsilon}, {g}")
    if max(epsilon, g) > VALIDITY_WARN:
        warnings.warn(
            f"analytic two-qubit spectrum derived for small parameters; "
            f"epsilon={epsilon}, g={g} exceed {VALIDITY_WARN}",
            stacklevel=2,
        )
    eps_fl = epsilon_floquet(epsilon, g)
    sq2 = 1.0 / np.sqrt(2.0)
    v_zero = np.array([1, 0, 0, -1], dtype=complex) * sq2
    v_2g = np.array([0, 1, -1, 0], dtype=complex) * sq2

    degenerate = epsilon == 0.0
    if degenerate:
        v_plus = np.array([1, 0, 0, 1], dtype=complex) * sq2
        v_mix = np.array([0, 1, 1, 0], dtype=complex) * sq2
    else:
        beta = (g + np.sqrt(g * g + 4.0 * epsilon * epsilon)) / (2.0 * epsilon)
        norm = 1.0 / np.sqrt(2.0 * (1.0 + beta * beta))
        v_mix = np.array([1, beta, beta, 1], dtype=complex) * norm
        v_plus = np.array([beta, -1, -1, beta], dtype=complex) * norm

    phases = np.array([0.0, 2.0 * g, eps_fl, -(eps_fl + 2.0 * g)])
    phases[phases == -np.pi] = np.pi
    vectors = np.stack([v_zero, v_2g, v_mix, v_plus], axis=1)
    order = np.argsort(phases, kind="stable")
    return QuasienergySpectrum(
        phases[order], vectors[:, order], SpectrumSource.ANALYTIC_TWO_QUBIT, degenerate
    )


def xi(k: int, epsilon: float, g: float) -> float:
    """Commensurability ratio xi_k = (k+1) (g + sqrt(g^2 + 4 eps^2)) / g of
    the two slow Floquet frequencies; time molecules of group k form where
    xi_k hits an even integer."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    if g <= 0:
        raise ValueError(f"commensurability requires g > 0, got {g}")
    return (k + 1) * (g + np.sqrt(g * g + 4.0 * epsilon * epsilon)) / g


@dataclass(frozen=True)
class TmPrediction:
    """Solution of xi_k = ell. ``omega1`` and ``omega2`` are the two slow
    dimensionless frequencies (pi - eps_fl) and 2g at the solution."""

    k: int
    ell: int
    g: float
    epsilon: float
    xi_value: float
    omega1: float
    omega2: float


def tm_epsilon_for(k: int, ell: int, g: float) -> TmPrediction:
    """Invert xi_k = ell for the pulse imperfection.

    Requires even ell with ell/(k+1) >= 2; the boundary ell/(k+1) = 2 gives
    epsilon = 0.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    if not isinstance(ell, int) or ell % 2 != 0:
        raise ValueError(f"ell must be an even integer, got {ell!r}")
    if g <= 0:
        raise ValueError(f"commensurability requires g > 0, got {g}")
    ratio = ell / (k + 1)
    if ratio < 2.0:
        raise ValueError(
            f"xi_{k} = {ell} is unsolvable: ell/(k+1) = {ratio:.4g} < 2"
        )
    epsilon = 0.5 * g * np.sqrt((ratio - 1.0) ** 2 - 1.0)
    value = xi(k, epsilon, g)
    return TmPrediction(
        k=k,
        ell=ell,
        g=g,
        epsilon=float(epsilon),
        xi_value=float(value),
        omega1=float(np.pi - epsilon_floquet(epsilon, g)),
        omega2=2.0 * g,
    )


def eigen_overlaps(psi: np.ndarray, spectrum: QuasienergySpectrum) -> np.ndarray:
    """Coefficients c_j = <v_j | psi> of a state in a Floquet eigenbasis."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] != spectrum.dim:
        raise ValueError(
            f"state dimension {psi.shape[0]} does not match spectrum dimension {spectrum.dim}"
        )
    return spectrum.eigenvectors.conj().T @ psi


def circular_distance(a: float, b: float) -> float:
    """Distance between two angles on the eigenphase circle."""
    d = abs(a - b) % (2.0 * np.pi)
    return min(d, 2.0 * np.pi - d)


def phase_multiset_deviation(phases_a, phases_b) -> float:
    """Largest circular distance under a greedy nearest-neighbour matching
    of two equal-size eigenphase multisets. Index pairing is never assumed,
    so branch-cut wraps at +-pi do not inflate the deviation."""
    a = list(np.asarray(phases_a, dtype=float))
    b = list(np.asarray(phases_b, dtype=float))
    if len(a) != len(b):
        raise ValueError(f"multisets differ in size: {len(a)} vs {len(b)}")
    worst = 0.0
    for pa in a:
        distances = [circular_distance(pa, pb) for pb in b]
        j = int(np.argmin(distances))
        worst = max(worst, distances[j])
        b.pop(j)
    return worst


def demodulated_polarization(polarization: np.ndarray) -> np.ndarray:
    """Remove the period-2 carrier: a_n = (-1)^n <sigma_z>(n)."""
    pol = np.asarray(polarization, dtype=float)
    signs = np.where(np.arange(pol.size) % 2 == 0, 1.0, -1.0)
    return pol * signs


def beat_nodes(polarization: np.ndarray) -> np.ndarray:
    """Zero crossings (linearly interpolated, in periods) of the
    demodulated polarization; these are the nodes of the beat envelope."""
    a = demodulated_polarization(polarization)
    nodes = []
    for i in range(a.size - 1):
        if a[i] == 0.0:
            nodes.append(float(i))
        elif a[i] * a[i + 1] < 0.0:
            nodes.append(i + a[i] / (a[i] - a[i + 1]))
    return np.array(nodes)


def measure_beat_period(polarization: np.ndarray) -> float:
    """Mean spacing of consecutive beat-envelope nodes, in periods.

    For uncoupled qubits this equals pi/(2 eps); deep in the
    coupling-dominated regime it approaches pi g / (2 eps^2).
    """
    nodes = beat_nodes(polarization)
    if nodes.size < 2:
        raise ValueError(
            f"need at least two envelope nodes to measure a period, found {nodes.size}"
        )
    return float(np.mean(np.diff(nodes)))
