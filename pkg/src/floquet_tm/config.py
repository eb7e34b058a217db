"""Chain parameterization.

All physical parameters are dimensionless accumulated phases per drive
period: ``coupling`` is the XY phase picked up during one drift stage,
``detunings[i]`` the phase from the frequency offset of qubit ``i+1``, and
``pulse_imperfections[i]`` the deviation of the spin-flip pulse of qubit
``i+1`` from a perfect pi rotation (rotation angle ``pi - 2*eps_i``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence


class PulseMode(Enum):
    """How the spin-flip pulse is modeled in the one-period propagator."""

    INSTANTANEOUS = "instantaneous"
    FINITE_PULSE = "finite"


def _as_site_tuple(value: float | Sequence[float], n: int, name: str) -> tuple[float, ...]:
    if isinstance(value, (int, float)):
        out = (float(value),) * n
    else:
        out = tuple(float(v) for v in value)
    if len(out) != n:
        raise ValueError(f"{name} must have length {n}, got {len(out)}")
    if not all(math.isfinite(v) for v in out):
        raise ValueError(f"{name} must be finite, got {out}")
    return out


@dataclass(frozen=True)
class ChainConfig:
    """Full specification of one driven-chain simulation.

    Scalars passed for ``detunings`` or ``pulse_imperfections`` are
    broadcast to all qubits. Instances are immutable; derive variants with
    :func:`dataclasses.replace`.
    """

    n_qubits: int
    coupling: float = 0.0
    detunings: tuple[float, ...] = field(default=0.0)  # type: ignore[assignment]
    pulse_imperfections: tuple[float, ...] = field(default=0.0)  # type: ignore[assignment]
    pulse_fraction: float = 0.0
    mode: PulseMode = PulseMode.INSTANTANEOUS

    def __post_init__(self) -> None:
        if not isinstance(self.n_qubits, int) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        object.__setattr__(self, "coupling", float(self.coupling))
        if not math.isfinite(self.coupling) or self.coupling < 0:
            raise ValueError(f"coupling must be finite and >= 0, got {self.coupling}")
        object.__setattr__(
            self, "detunings", _as_site_tuple(self.detunings, self.n_qubits, "detunings")
        )
        object.__setattr__(
            self,
            "pulse_imperfections",
            _as_site_tuple(self.pulse_imperfections, self.n_qubits, "pulse_imperfections"),
        )
        object.__setattr__(self, "pulse_fraction", float(self.pulse_fraction))
        if not 0.0 <= self.pulse_fraction < 1.0:
            raise ValueError(
                f"pulse_fraction must lie in [0, 1), got {self.pulse_fraction}"
            )
        if isinstance(self.mode, str):
            object.__setattr__(self, "mode", PulseMode(self.mode))

    @property
    def dim(self) -> int:
        """Hilbert-space dimension 2**N."""
        return 1 << self.n_qubits

    def with_epsilon(self, epsilon: float | Sequence[float]) -> "ChainConfig":
        """Copy of this config with new pulse imperfections."""
        return replace(self, pulse_imperfections=_as_site_tuple(epsilon, self.n_qubits, "epsilon"))
