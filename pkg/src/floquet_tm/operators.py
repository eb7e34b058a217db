"""Dense operator construction for driven qubit chains.

Basis convention: qubit 1 is the most significant bit and bit value 0 means
spin up, so basis index 0 is the all-up state and for N=2 the order is
|uu>, |ud>, |du>, |dd>. ``sigma_z |up> = +|up>``.
"""

from __future__ import annotations

import numpy as np

from .config import ChainConfig, PulseMode

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def unitarity_defect(u: np.ndarray) -> float:
    """Max-abs entry of U^dag U - I."""
    dim = u.shape[0]
    return float(np.max(np.abs(u.conj().T @ u - np.eye(dim))))


def hermiticity_defect(h: np.ndarray) -> float:
    """Max-abs entry of H - H^dag."""
    return float(np.max(np.abs(h - h.conj().T)))


def pauli_operator(axis: str, site: int, n_qubits: int) -> np.ndarray:
    """Embed a single-qubit Pauli matrix at ``site`` (1-based) in an
    ``n_qubits`` chain via identity Kronecker factors."""
    if axis not in _PAULI:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    if not 1 <= site <= n_qubits:
        raise ValueError(f"site must lie in [1, {n_qubits}], got {site}")
    out = np.ones((1, 1), dtype=complex)
    for i in range(1, n_qubits + 1):
        out = np.kron(out, _PAULI[axis] if i == site else np.eye(2, dtype=complex))
    return out


def single_qubit_pulse(epsilon: float) -> np.ndarray:
    """One imperfect spin-flip factor [[sin e, -i cos e], [-i cos e, sin e]],
    i.e. a rotation by pi - 2*epsilon about x (up to global phase)."""
    s, c = np.sin(epsilon), np.cos(epsilon)
    return np.array([[s, -1j * c], [-1j * c, s]], dtype=complex)


def build_pulse_unitary(pulse_imperfections) -> np.ndarray:
    """Tensor product of per-qubit imperfect pi-pulse factors."""
    eps = np.atleast_1d(np.asarray(pulse_imperfections, dtype=float))
    if not np.all(np.isfinite(eps)):
        raise ValueError(f"pulse imperfections must be finite, got {eps}")
    out = np.ones((1, 1), dtype=complex)
    for e in eps:
        out = np.kron(out, single_qubit_pulse(e))
    return out


def build_drift_generator(config: ChainConfig) -> np.ndarray:
    """Hermitian phase generator Phi of the drift stage; the drift
    propagator is exp(-i Phi).

    Diagonal part: delta_i * (sigma_z_i + 1). Off-diagonal part: XY exchange
    between nearest neighbours of the open chain, coupling basis states that
    differ by one adjacent up/down exchange with amplitude -2g. The exchange
    sign is fixed by requiring exp(-i Phi) == two_qubit_ug(g) for two
    resonant qubits.
    """
    n = config.n_qubits
    dim = config.dim
    g = config.coupling
    deltas = config.detunings
    h = np.zeros((dim, dim), dtype=complex)

    basis = np.arange(dim)
    diag = np.zeros(dim)
    for i in range(n):
        up = ((basis >> (n - 1 - i)) & 1) == 0
        diag[up] += 2.0 * deltas[i]
    h[basis, basis] = diag

    if g != 0.0:
        for b in range(dim):
            for i in range(n - 1):
                hi, lo = n - 1 - i, n - 2 - i
                if ((b >> hi) & 1) != ((b >> lo) & 1):
                    h[b, b ^ ((1 << hi) | (1 << lo))] += -2.0 * g
    return h


def sum_sigma_x(coefficients) -> np.ndarray:
    """Hermitian matrix sum_i c_i * sigma_x_i, built without Kronecker
    products (sigma_x_i flips one bit)."""
    coeff = np.asarray(coefficients, dtype=float)
    n = coeff.size
    dim = 1 << n
    h = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        for i in range(n):
            h[b, b ^ (1 << (n - 1 - i))] += coeff[i]
    return h


def matrix_exp_hermitian(h: np.ndarray, *, tol: float = 1e-12) -> np.ndarray:
    """exp(-i H) for Hermitian H via spectral decomposition.

    Raises ValueError if the input deviates from Hermiticity by more than
    ``tol`` (max-abs entry).
    """
    defect = hermiticity_defect(h)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian within {tol} (defect {defect:.3e})")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def two_qubit_ug(g: float) -> np.ndarray:
    """Closed-form one-period drift propagator for two resonant qubits:
    identity on |uu>, |dd> and [[cos 2g, i sin 2g], [i sin 2g, cos 2g]] on
    the single-excitation block. Oracle for matrix_exp_hermitian."""
    c, s = np.cos(2 * g), np.sin(2 * g)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, c, 1j * s, 0],
            [0, 1j * s, c, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )


def compose_floquet(config: ChainConfig) -> np.ndarray:
    """One-period propagator F.

    Instantaneous mode: F = exp(-i Phi2) @ U_eps (pulse treated as a
    zero-duration gate; pulse_fraction is ignored).

    Finite-pulse mode with r = pulse_fraction > 0: the drift generator runs
    at rate Phi2/T across the whole period, so the pulse window contributes
    r*Phi2 concurrently with the pulse generator and the drift window the
    remaining (1-r)*Phi2:

        F = exp(-i (1-r) Phi2) @ exp(-i [sum_i (pi/2 - eps_i) sigma_x_i + r Phi2])

    The total accumulated drift phase per period stays Phi2, so r -> 0
    recovers the instantaneous product; r = 0 takes the instantaneous
    branch exactly.
    """
    phi2 = build_drift_generator(config)
    r = config.pulse_fraction
    if config.mode is PulseMode.INSTANTANEOUS or r == 0.0:
        return matrix_exp_hermitian(phi2) @ build_pulse_unitary(config.pulse_imperfections)
    phi1 = sum_sigma_x([np.pi / 2 - e for e in config.pulse_imperfections])
    return matrix_exp_hermitian((1.0 - r) * phi2) @ matrix_exp_hermitian(phi1 + r * phi2)
