"""One-parameter sweep engine.

Rows of a sweep are independent trajectories; they are computed by a
data-parallel pool of workers and written to preallocated slots by index,
so the grid is bitwise identical for any worker count, including one.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum

import numpy as np

from . import __version__
from .config import ChainConfig
from .dynamics import evolve, initial_ferromagnetic_state
from .operators import compose_floquet

ENV_WORKERS = "FLOQUET_TM_THREADS"


class SweepAxis(Enum):
    """Which parameter the sweep values are substituted on.

    EPSILON_UNIFORM sweeps the common pulse imperfection while preserving
    the base config's per-qubit offsets relative to qubit 1 (zero offsets
    give a plain uniform sweep). EPSILON_ADD sweeps the imperfection spread:
    qubit 1 keeps the base value, every other qubit gets base + value.
    DELTA_SITE sweeps the detuning of one site (``SweepSpec.site``, default
    the last qubit).
    """

    EPSILON_UNIFORM = "epsilon_uniform"
    EPSILON_ADD = "epsilon_add"
    COUPLING = "g"
    DELTA_SITE = "delta_site"


@dataclass(frozen=True)
class SweepSpec:
    base: ChainConfig
    axis: SweepAxis
    values: tuple[float, ...]
    n_max: int = 150
    entropy_block: tuple[int, ...] = (1,)
    record_overlaps: bool = False
    site: int | None = None

    def __post_init__(self) -> None:
        if isinstance(self.axis, str):
            object.__setattr__(self, "axis", SweepAxis(self.axis))
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("sweep values must be nonempty")
        if not np.all(np.isfinite(values)):
            raise ValueError("sweep values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        object.__setattr__(self, "values", values)
        if self.n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {self.n_max}")
        if self.axis is SweepAxis.DELTA_SITE:
            site = self.base.n_qubits if self.site is None else self.site
            if not 1 <= site <= self.base.n_qubits:
                raise ValueError(
                    f"site must lie in [1, {self.base.n_qubits}], got {site}"
                )
            object.__setattr__(self, "site", site)

    def config_for(self, value: float) -> ChainConfig:
        """Base config with ``value`` substituted on the sweep axis."""
        base = self.base
        if self.axis is SweepAxis.EPSILON_UNIFORM:
            eps0 = base.pulse_imperfections[0]
            offsets = [e - eps0 for e in base.pulse_imperfections]
            return base.with_epsilon([value + off for off in offsets])
        if self.axis is SweepAxis.EPSILON_ADD:
            eps0 = base.pulse_imperfections[0]
            return base.with_epsilon(
                [eps0] + [eps0 + value] * (base.n_qubits - 1)
            )
        if self.axis is SweepAxis.COUPLING:
            return replace(base, coupling=value)
        deltas = list(base.detunings)
        deltas[self.site - 1] = value
        return replace(base, detunings=tuple(deltas))


@dataclass(frozen=True)
class SweepGrid:
    spec: SweepSpec
    polarization: np.ndarray
    entropy: np.ndarray
    metadata: dict
    overlaps: np.ndarray | None = None


def spec_digest(spec: SweepSpec) -> str:
    """SHA-256 over a canonical JSON encoding of the sweep parameters."""
    base = spec.base
    payload = {
        "n_qubits": base.n_qubits,
        "coupling": repr(base.coupling),
        "detunings": [repr(d) for d in base.detunings],
        "pulse_imperfections": [repr(e) for e in base.pulse_imperfections],
        "pulse_fraction": repr(base.pulse_fraction),
        "mode": base.mode.value,
        "axis": spec.axis.value,
        "values": [repr(v) for v in spec.values],
        "n_max": spec.n_max,
        "entropy_block": list(spec.entropy_block),
        "record_overlaps": spec.record_overlaps,
        "site": spec.site,
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _row(task: tuple[SweepSpec, int]):
    spec, index = task
    value = spec.values[index]
    try:
        config = spec.config_for(value)
        floquet = compose_floquet(config)
        spectrum = None
        if spec.record_overlaps:
            from .analysis import quasienergy_spectrum

            spectrum = quasienergy_spectrum(floquet)
        trace = evolve(
            floquet,
            initial_ferromagnetic_state(config.n_qubits),
            spec.n_max,
            spec.entropy_block,
            spectrum=spectrum,
        )
    except Exception as exc:
        raise RuntimeError(f"sweep row {spec.axis.value}={value!r} failed: {exc}") from exc
    overlaps = trace.eigen_overlaps if spec.record_overlaps else None
    return index, trace.polarization, trace.entropy, overlaps


def resolve_workers(requested: int | None, n_rows: int) -> int:
    """Worker count: explicit argument, else the FLOQUET_TM_THREADS cap
    (0 or unset means all cores), clamped to [1, n_rows]."""
    if requested is None:
        env = os.environ.get(ENV_WORKERS, "").strip()
        if env and env != "0":
            requested = int(env)
        else:
            requested = os.cpu_count() or 1
    return max(1, min(requested, n_rows))


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepGrid:
    """Evaluate every row of the sweep; see the module docstring for the
    determinism contract."""
    n_rows = len(spec.values)
    n_cols = spec.n_max + 1
    polarization = np.empty((n_rows, n_cols))
    entropy = np.empty((n_rows, n_cols))
    overlaps = (
        np.empty((n_rows, n_cols, spec.base.dim), dtype=complex)
        if spec.record_overlaps
        else None
    )

    workers = resolve_workers(workers, n_rows)
    tasks = [(spec, i) for i in range(n_rows)]
    if workers == 1:
        results = map(_row, tasks)
        for index, pol, ent, ov in results:
            polarization[index] = pol
            entropy[index] = ent
            if overlaps is not None:
                overlaps[index] = ov
    else:
        chunk = max(1, n_rows // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, pol, ent, ov in pool.map(_row, tasks, chunksize=chunk):
                polarization[index] = pol
                entropy[index] = ent
                if overlaps is not None:
                    overlaps[index] = ov

    metadata = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
        "config_digest": spec_digest(spec),
    }
    return SweepGrid(
        spec=spec,
        polarization=polarization,
        entropy=entropy,
        metadata=metadata,
        overlaps=overlaps,
    )
