"""Deterministic file serialization.

CSV files are UTF-8 with LF line endings, header
``epsilon,n,polarization,entropy`` and numbers written as the shortest
round-trip decimal of the 64-bit float, so re-parsing reproduces the
in-memory values exactly and identical runs produce identical bytes. JSON
documents share the versioned envelope ``{"format": "floquet-tm/1", ...}``
with grids stored row-major next to their axis arrays. Timestamps live
only in run manifests, never in data files.
"""

from __future__ import annotations

import io as _io
import json
from typing import IO, Iterable

import numpy as np

from . import __version__
from .config import ChainConfig, PulseMode
from .detect import TmInterval
from .dynamics import StroboscopicTrace
from .sweep import SweepGrid, spec_digest

FORMAT_VERSION = "floquet-tm/1"


def fmt(value: float) -> str:
    """Shortest decimal that round-trips a 64-bit float."""
    return repr(float(value))


def _parse_optional(text: str) -> float | None:
    return float(text) if text else None


def config_to_dict(config: ChainConfig) -> dict:
    return {
        "n_qubits": config.n_qubits,
        "coupling": config.coupling,
        "detunings": list(config.detunings),
        "pulse_imperfections": list(config.pulse_imperfections),
        "pulse_fraction": config.pulse_fraction,
        "mode": config.mode.value,
    }


def config_from_dict(data: dict) -> ChainConfig:
    return ChainConfig(
        n_qubits=int(data["n_qubits"]),
        coupling=data["coupling"],
        detunings=tuple(data["detunings"]),
        pulse_imperfections=tuple(data["pulse_imperfections"]),
        pulse_fraction=data.get("pulse_fraction", 0.0),
        mode=PulseMode(data.get("mode", "instantaneous")),
    )


# ---------------------------------------------------------------- CSV


def write_long_csv(
    fh: IO[str],
    axis_values: Iterable[float],
    polarization: np.ndarray,
    entropy: np.ndarray | None,
) -> None:
    """Long-format rows (axis value, period, polarization, entropy); the
    axis column keeps the header name ``epsilon`` for every sweep axis."""
    polarization = np.atleast_2d(polarization)
    fh.write("epsilon,n,polarization,entropy\n")
    for i, value in enumerate(axis_values):
        vtxt = fmt(value)
        for n in range(polarization.shape[1]):
            ent = "" if entropy is None else fmt(entropy[i][n])
            fh.write(f"{vtxt},{n},{fmt(polarization[i][n])},{ent}\n")


def read_long_csv(fh: IO[str]) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    """Inverse of write_long_csv: (axis values, polarization rows, entropy
    rows or None)."""
    header = fh.readline().strip()
    if header != "epsilon,n,polarization,entropy":
        raise ValueError(f"unrecognized CSV header: {header!r}")
    values: list[float] = []
    pol_rows: list[list[float]] = []
    ent_rows: list[list[float | None]] = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        v, n, p, s = line.split(",")
        value = float(v)
        if not values or value != values[-1]:
            values.append(value)
            pol_rows.append([])
            ent_rows.append([])
        pol_rows[-1].append(float(p))
        ent_rows[-1].append(_parse_optional(s))
    if not values:
        raise ValueError("CSV contains no data rows")
    widths = {len(r) for r in pol_rows}
    if len(widths) != 1:
        raise ValueError("CSV rows have inconsistent lengths per axis value")
    polarization = np.array(pol_rows)
    has_entropy = ent_rows[0][0] is not None
    entropy = np.array(ent_rows, dtype=float) if has_entropy else None
    return np.array(values), polarization, entropy


# ---------------------------------------------------------------- JSON


def _complex_to_json(arr: np.ndarray) -> dict:
    return {"re": arr.real.tolist(), "im": arr.imag.tolist()}


def trace_to_json(trace: StroboscopicTrace, config: ChainConfig) -> dict:
    doc = {
        "format": FORMAT_VERSION,
        "kind": "trace",
        "version": __version__,
        "config": config_to_dict(config),
        "entropy_block": list(trace.entropy_block) if trace.entropy_block else None,
        "polarization": trace.polarization.tolist(),
        "entropy": None if trace.entropy is None else trace.entropy.tolist(),
    }
    if trace.per_site_polarization is not None:
        doc["per_site_polarization"] = trace.per_site_polarization.tolist()
    if trace.eigen_overlaps is not None:
        doc["eigen_overlaps"] = _complex_to_json(trace.eigen_overlaps)
    return doc


def trace_from_json(doc: dict) -> tuple[StroboscopicTrace, ChainConfig]:
    if doc.get("kind") != "trace":
        raise ValueError(f"not a trace document: kind={doc.get('kind')!r}")
    config = config_from_dict(doc["config"])
    pol = np.array(doc["polarization"], dtype=float)
    ent = None if doc.get("entropy") is None else np.array(doc["entropy"], dtype=float)
    block = doc.get("entropy_block")
    trace = StroboscopicTrace(
        steps=np.arange(pol.size),
        polarization=pol,
        entropy=ent,
        n_qubits=config.n_qubits,
        entropy_block=tuple(block) if block else None,
    )
    return trace, config


def grid_to_json(grid: SweepGrid) -> dict:
    spec = grid.spec
    return {
        "format": FORMAT_VERSION,
        "kind": "grid",
        "version": grid.metadata.get("version", __version__),
        "config_digest": grid.metadata.get("config_digest", spec_digest(spec)),
        "axis": spec.axis.value,
        "site": spec.site,
        "values": list(spec.values),
        "n_max": spec.n_max,
        "entropy_block": list(spec.entropy_block),
        "config": config_to_dict(spec.base),
        "polarization": grid.polarization.tolist(),
        "entropy": grid.entropy.tolist(),
    }


def grid_arrays_from_json(doc: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    if doc.get("kind") != "grid":
        raise ValueError(f"not a grid document: kind={doc.get('kind')!r}")
    values = np.array(doc["values"], dtype=float)
    polarization = np.array(doc["polarization"], dtype=float)
    entropy = None if doc.get("entropy") is None else np.array(doc["entropy"], dtype=float)
    return values, polarization, entropy


def dump_json(doc: dict, fh: IO[str]) -> None:
    json.dump(doc, fh, indent=1, sort_keys=True)
    fh.write("\n")


def dumps_json(doc: dict) -> str:
    buf = _io.StringIO()
    dump_json(doc, buf)
    return buf.getvalue()


# ------------------------------------------------------- other documents


def spectrum_to_json(eigenphases: np.ndarray, config: ChainConfig, analytic: dict | None) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "spectrum",
        "version": __version__,
        "config": config_to_dict(config),
        "eigenphases": [float(t) for t in eigenphases],
        "analytic": analytic,
    }


def write_spectrum_csv(fh: IO[str], eigenphases: np.ndarray, analytic_phases=None) -> None:
    if analytic_phases is None:
        fh.write("j,eigenphase\n")
        for j, theta in enumerate(eigenphases):
            fh.write(f"{j},{fmt(theta)}\n")
    else:
        fh.write("j,eigenphase,analytic_phase\n")
        for j, (theta, ana) in enumerate(zip(eigenphases, analytic_phases)):
            fh.write(f"{j},{fmt(theta)},{fmt(ana)}\n")


def intervals_to_json(intervals: list[TmInterval], parameters: dict) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "intervals",
        "version": __version__,
        "parameters": parameters,
        "intervals": [
            {
                "n_start": iv.n_start,
                "n_end": iv.n_end,
                "duration": iv.duration,
                "mean_abs_polarization": iv.mean_abs_polarization,
                "mean_entropy": iv.mean_entropy,
                "k": None if iv.label is None else iv.label[0],
                "l": None if iv.label is None else iv.label[1],
            }
            for iv in intervals
        ],
    }


def write_intervals_csv(fh: IO[str], intervals: list[TmInterval]) -> None:
    fh.write("n_start,n_end,duration,mean_abs_polarization,mean_entropy,k,l\n")
    for iv in intervals:
        ent = "" if iv.mean_entropy is None else fmt(iv.mean_entropy)
        k = "" if iv.label is None else str(iv.label[0])
        l = "" if iv.label is None else str(iv.label[1])
        fh.write(
            f"{iv.n_start},{iv.n_end},{iv.duration},{fmt(iv.mean_abs_polarization)},{ent},{k},{l}\n"
        )


def prediction_to_json(prediction) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "prediction",
        "version": __version__,
        "k": prediction.k,
        "ell": prediction.ell,
        "g": prediction.g,
        "epsilon": prediction.epsilon,
        "xi_value": prediction.xi_value,
        "omega1": prediction.omega1,
        "omega2": prediction.omega2,
    }


def write_prediction_csv(fh: IO[str], prediction) -> None:
    fh.write("k,ell,g,epsilon,xi_value,omega1,omega2\n")
    fh.write(
        f"{prediction.k},{prediction.ell},{fmt(prediction.g)},{fmt(prediction.epsilon)},"
        f"{fmt(prediction.xi_value)},{fmt(prediction.omega1)},{fmt(prediction.omega2)}\n"
    )


def manifest_document(subcommand: str, parameters: dict, outputs: list[str], created: str) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "manifest",
        "version": __version__,
        "subcommand": subcommand,
        "parameters": parameters,
        "outputs": outputs,
        "created": created,
    }
