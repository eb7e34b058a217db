"""Stroboscopic evolution and the two observables: total z-polarization and
bipartite entanglement entropy (natural log)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NumericalInstabilityError

NORM_TOL = 1e-10
NORM_ABORT = 1e-8


@dataclass(frozen=True)
class StroboscopicTrace:
    """Per-period record of one trajectory.

    ``eigen_overlaps`` rows, when recorded, hold the complex coefficients of
    the state in a Floquet eigenbasis at each period.
    """

    steps: np.ndarray
    polarization: np.ndarray
    entropy: np.ndarray | None
    n_qubits: int
    entropy_block: tuple[int, ...] | None = None
    per_site_polarization: np.ndarray | None = None
    eigen_overlaps: np.ndarray | None = None

    @property
    def n_max(self) -> int:
        return int(self.steps[-1])


def _n_qubits_of(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"state dimension must be a power of two >= 2, got {dim}")
    return n


def initial_ferromagnetic_state(n_qubits: int) -> np.ndarray:
    """All-spins-up basis state (amplitude 1 at index 0)."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    psi = np.zeros(1 << n_qubits, dtype=complex)
    psi[0] = 1.0
    return psi


def _z_diagonal(n_qubits: int) -> np.ndarray:
    down_counts = np.array([bin(b).count("1") for b in range(1 << n_qubits)])
    return (n_qubits - 2 * down_counts).astype(float)


def total_polarization(psi: np.ndarray) -> float:
    """<psi| sum_i sigma_z_i |psi>, evaluated diagonally (each basis state
    contributes N minus twice its down-spin count)."""
    psi = np.asarray(psi)
    n = _n_qubits_of(psi.shape[0])
    return float(np.abs(psi) ** 2 @ _z_diagonal(n))


def _per_site_z(n_qubits: int) -> np.ndarray:
    basis = np.arange(1 << n_qubits)
    cols = [1.0 - 2.0 * ((basis >> (n_qubits - i)) & 1) for i in range(1, n_qubits + 1)]
    return np.stack(cols, axis=1)


def _validate_block(keep: Iterable[int], n_qubits: int) -> tuple[int, ...]:
    block = tuple(sorted(set(int(s) for s in keep)))
    if not block:
        raise ValueError("kept block must be nonempty")
    if any(s < 1 or s > n_qubits for s in block):
        raise ValueError(f"kept sites must lie in [1, {n_qubits}], got {block}")
    if len(block) == n_qubits:
        raise ValueError("kept block must be a proper subset of the chain")
    return block


def reduced_density_matrix(psi: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Partial trace of |psi><psi| keeping the 1-based sites in ``keep``."""
    psi = np.asarray(psi, dtype=complex)
    n = _n_qubits_of(psi.shape[0])
    block = _validate_block(keep, n)
    kept_axes = [s - 1 for s in block]
    rest_axes = [a for a in range(n) if a not in kept_axes]
    a = psi.reshape([2] * n).transpose(kept_axes + rest_axes).reshape(
        1 << len(block), 1 << (n - len(block))
    )
    return a @ a.conj().T


def entanglement_entropy(psi: np.ndarray, keep: Iterable[int]) -> float:
    """Von Neumann entropy (natural log) of the reduced state on ``keep``.

    Eigenvalues are clamped to [0, 1] before the log; 0*ln(0) counts as 0.
    """
    lam = np.linalg.eigvalsh(reduced_density_matrix(psi, keep)).real
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(max(0.0, -np.sum(lam * np.log(lam))))


def evolve(
    floquet: np.ndarray,
    psi0: np.ndarray,
    n_max: int,
    entropy_block: Sequence[int] | None = (1,),
    *,
    per_site: bool = False,
    spectrum=None,
) -> StroboscopicTrace:
    """Apply the one-period propagator repeatedly (matrix-vector products,
    never matrix powers) and record observables at n = 0 .. n_max.

    ``entropy_block`` selects the kept sites for the entropy column; pass
    None to skip entropy. For a single qubit the entropy is identically
    zero. ``spectrum`` (a QuasienergySpectrum) switches on per-period
    recording of eigenbasis overlap coefficients.
    """
    floquet = np.asarray(floquet)
    psi = np.asarray(psi0, dtype=complex).copy()
    dim = psi.shape[0]
    if floquet.shape != (dim, dim):
        raise ValueError(
            f"propagator shape {floquet.shape} does not match state dimension {dim}"
        )
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"initial state is not normalized: ||psi|| = {norm!r}")
    n = _n_qubits_of(dim)

    block: tuple[int, ...] | None = None
    if entropy_block is not None and n > 1:
        block = _validate_block(entropy_block, n)

    zdiag = _z_diagonal(n)
    steps = np.arange(n_max + 1)
    pol = np.empty(n_max + 1)
    ent = np.empty(n_max + 1) if entropy_block is not None else None
    psite = np.empty((n_max + 1, n)) if per_site else None
    zmat = _per_site_z(n) if per_site else None
    overlaps = None
    if spectrum is not None:
        if spectrum.eigenvectors.shape[0] != dim:
            raise ValueError("spectrum dimension does not match the state")
        overlaps = np.empty((n_max + 1, dim), dtype=complex)

    for step in range(n_max + 1):
        if step > 0:
            psi = floquet @ psi
            drift = abs(float(np.linalg.norm(psi)) - 1.0)
            if drift > NORM_ABORT:
                raise NumericalInstabilityError(
                    f"norm drift {drift:.3e} at period {step} exceeds {NORM_ABORT}"
                )
        prob = np.abs(psi) ** 2
        pol[step] = prob @ zdiag
        if ent is not None:
            ent[step] = entanglement_entropy(psi, block) if block is not None else 0.0
        if psite is not None:
            psite[step] = prob @ zmat
        if overlaps is not None:
            overlaps[step] = spectrum.eigenvectors.conj().T @ psi

    return StroboscopicTrace(
        steps=steps,
        polarization=pol,
        entropy=ent,
        n_qubits=n,
        entropy_block=block,
        per_site_polarization=psite,
        eigen_overlaps=overlaps,
    )
