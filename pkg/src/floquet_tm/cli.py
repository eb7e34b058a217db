"""Command-line interface.

Subcommands: ``evolve`` (single trajectory), ``sweep`` (parameter grid),
``spectrum`` (quasienergies), ``predict-tm`` (commensurability inversion)
and ``detect-tm`` (flat-region detection). Every run writes its data file
plus a ``manifest.json`` with the fully resolved parameters into a
run-named subdirectory of ``--out`` (default ``./out``); ``--out -``
streams the data document to standard output instead. Usage errors exit
with status 2, numerical or input-data failures with status 1.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, io
from .analysis import (
    analytic_two_qubit_spectrum,
    phase_multiset_deviation,
    quasienergy_spectrum,
    tm_epsilon_for,
)
from .config import ChainConfig, PulseMode
from .detect import detect_flat_regions, label_intervals
from .dynamics import evolve, initial_ferromagnetic_state
from .errors import NumericalInstabilityError
from .operators import compose_floquet
from .sweep import SweepAxis, SweepGrid, SweepSpec, run_sweep, spec_digest

AXIS_NAMES = {
    "epsilon-uniform": SweepAxis.EPSILON_UNIFORM,
    "epsilon-add": SweepAxis.EPSILON_ADD,
    "g": SweepAxis.COUPLING,
    "delta-site": SweepAxis.DELTA_SITE,
}


def _parse_float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part != ""]


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-qubits", type=int, default=2, help="chain length N")
    parser.add_argument("--g", type=float, default=0.0, help="XY coupling phase per period")
    parser.add_argument(
        "--epsilon",
        default="0",
        help="pulse imperfection, scalar or comma list with one entry per qubit",
    )
    parser.add_argument(
        "--delta", default="0", help="detuning phase, scalar or comma list per qubit"
    )
    parser.add_argument(
        "--mode",
        choices=["instantaneous", "finite"],
        default="instantaneous",
        help="pulse model",
    )
    parser.add_argument(
        "--pulse-fraction",
        type=float,
        default=0.0,
        help="pulse duration fraction r = t1/T; used by finite mode",
    )


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out", default="out", help="output directory, or '-' to stream to stdout"
    )
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_trace_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--steps", type=int, default=150, help="number of periods n_max")
    parser.add_argument(
        "--entropy-block",
        choices=["first", "half"],
        default="first",
        help="entropy bipartition: first qubit or first half of the chain",
    )
    parser.add_argument(
        "--overlaps",
        action="store_true",
        help="record Floquet-eigenbasis overlap coefficients (JSON output only)",
    )


def _config_from_args(parser: argparse.ArgumentParser, args) -> ChainConfig:
    try:
        eps = _parse_float_list(args.epsilon)
        deltas = _parse_float_list(args.delta)
    except ValueError as exc:
        parser.error(f"invalid numeric list: {exc}")
    n = args.n_qubits
    try:
        return ChainConfig(
            n_qubits=n,
            coupling=args.g,
            detunings=deltas[0] if len(deltas) == 1 else tuple(deltas),
            pulse_imperfections=eps[0] if len(eps) == 1 else tuple(eps),
            pulse_fraction=args.pulse_fraction,
            mode=PulseMode.FINITE_PULSE if args.mode == "finite" else PulseMode.INSTANTANEOUS,
        )
    except ValueError as exc:
        parser.error(str(exc))


def _entropy_block(parser: argparse.ArgumentParser, choice: str, n_qubits: int) -> tuple[int, ...]:
    if choice == "first" or n_qubits == 1:
        return (1,)
    half = n_qubits // 2
    if half < 1 or half >= n_qubits:
        parser.error(f"half-chain entropy block is empty for N={n_qubits}")
    return tuple(range(1, half + 1))


def _params_digest(parameters: dict) -> str:
    return hashlib.sha256(
        json.dumps(parameters, sort_keys=True, default=str).encode()
    ).hexdigest()


def _emit(
    subcommand: str,
    parameters: dict,
    out: str,
    basename: str,
    fmt: str,
    write_csv,
    json_doc: dict,
) -> int:
    """Write the data document to stdout or into a run directory with its
    manifest."""
    if out == "-":
        if fmt == "csv":
            write_csv(sys.stdout)
        else:
            sys.stdout.write(io.dumps_json(json_doc))
        return 0
    run_dir = Path(out) / f"{subcommand}-{_params_digest(parameters)[:12]}"
    run_dir.mkdir(parents=True, exist_ok=True)
    data_path = run_dir / f"{basename}.{fmt}"
    with open(data_path, "w", encoding="utf-8", newline="\n") as fh:
        if fmt == "csv":
            write_csv(fh)
        else:
            io.dump_json(json_doc, fh)
    manifest = io.manifest_document(
        subcommand,
        parameters,
        [data_path.name],
        created=datetime.now(timezone.utc).isoformat(),
    )
    with open(run_dir / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        io.dump_json(manifest, fh)
    print(data_path)
    return 0


def _resolved_config_params(config: ChainConfig) -> dict:
    return io.config_to_dict(config)


# ------------------------------------------------------------ subcommands


def _cmd_evolve(parser, args) -> int:
    config = _config_from_args(parser, args)
    if args.steps < 0:
        parser.error(f"--steps must be >= 0, got {args.steps}")
    block = _entropy_block(parser, args.entropy_block, config.n_qubits)
    floquet = compose_floquet(config)
    spectrum = quasienergy_spectrum(floquet) if args.overlaps else None
    trace = evolve(
        floquet,
        initial_ferromagnetic_state(config.n_qubits),
        args.steps,
        block,
        spectrum=spectrum,
    )
    parameters = {
        **_resolved_config_params(config),
        "steps": args.steps,
        "entropy_block": list(block),
        "overlaps": bool(args.overlaps),
        "format": args.format,
    }
    axis_value = config.pulse_imperfections[0]

    def write_csv(fh):
        io.write_long_csv(fh, [axis_value], trace.polarization[None, :], trace.entropy[None, :])

    return _emit(
        "evolve", parameters, args.out, "trace", args.format, write_csv,
        io.trace_to_json(trace, config),
    )


def _cmd_sweep(parser, args) -> int:
    config = _config_from_args(parser, args)
    if args.points < 1:
        parser.error(f"--points must be >= 1, got {args.points}")
    if args.max < args.min:
        parser.error(f"--max must be >= --min, got [{args.min}, {args.max}]")
    if args.points == 1:
        values = (float(args.min),)
    else:
        values = tuple(np.linspace(args.min, args.max, args.points))
    block = _entropy_block(parser, args.entropy_block, config.n_qubits)
    try:
        spec = SweepSpec(
            base=config,
            axis=AXIS_NAMES[args.axis],
            values=values,
            n_max=args.steps,
            entropy_block=block,
            record_overlaps=False,
            site=args.site,
        )
    except ValueError as exc:
        parser.error(str(exc))
    grid = run_sweep(spec, workers=args.workers)
    parameters = {
        **_resolved_config_params(config),
        "axis": args.axis,
        "min": args.min,
        "max": args.max,
        "points": args.points,
        "site": spec.site,
        "steps": args.steps,
        "entropy_block": list(block),
        "format": args.format,
    }

    def write_csv(fh):
        io.write_long_csv(fh, spec.values, grid.polarization, grid.entropy)

    return _emit(
        "sweep", parameters, args.out, "grid", args.format, write_csv, io.grid_to_json(grid)
    )


def _cmd_spectrum(parser, args) -> int:
    config = _config_from_args(parser, args)
    spectrum = quasienergy_spectrum(compose_floquet(config))
    analytic_doc = None
    analytic_phases = None
    identical = (
        config.n_qubits == 2
        and len(set(config.detunings)) == 1
        and config.detunings[0] == 0.0
        and len(set(config.pulse_imperfections)) == 1
    )
    if identical:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            analytic = analytic_two_qubit_spectrum(
                config.pulse_imperfections[0], config.coupling
            )
        deviation = phase_multiset_deviation(spectrum.eigenphases, analytic.eigenphases)
        analytic_phases = analytic.eigenphases
        analytic_doc = {
            "eigenphases": [float(t) for t in analytic.eigenphases],
            "max_abs_deviation": float(deviation),
        }
    if args.out != "-":
        print("eigenphases:", " ".join(io.fmt(t) for t in spectrum.eigenphases))
        if analytic_doc is not None:
            print("analytic:   ", " ".join(io.fmt(t) for t in analytic_doc["eigenphases"]))
            print(f"max deviation: {analytic_doc['max_abs_deviation']:.3e}")
    parameters = {**_resolved_config_params(config), "format": args.format}

    def write_csv(fh):
        io.write_spectrum_csv(fh, spectrum.eigenphases, analytic_phases)

    return _emit(
        "spectrum", parameters, args.out, "spectrum", args.format, write_csv,
        io.spectrum_to_json(spectrum.eigenphases, config, analytic_doc),
    )


def _cmd_predict_tm(parser, args) -> int:
    try:
        prediction = tm_epsilon_for(args.k, args.ell, args.g)
    except ValueError as exc:
        parser.error(str(exc))
    if args.out != "-":
        print(
            f"k={prediction.k} ell={prediction.ell} g={io.fmt(prediction.g)} "
            f"-> epsilon={io.fmt(prediction.epsilon)} (xi={io.fmt(prediction.xi_value)})"
        )
    parameters = {"k": args.k, "ell": args.ell, "g": args.g, "format": args.format}

    def write_csv(fh):
        io.write_prediction_csv(fh, prediction)

    return _emit(
        "predict-tm", parameters, args.out, "prediction", args.format, write_csv,
        io.prediction_to_json(prediction),
    )


def _load_trace_file(path: str):
    """Read a trace written by ``evolve`` (CSV or JSON); returns the trace
    plus whatever labeling context the file carries."""
    from .dynamics import StroboscopicTrace

    text_path = Path(path)
    raw = text_path.read_text(encoding="utf-8")
    if text_path.suffix == ".json" or raw.lstrip().startswith("{"):
        doc = json.loads(raw)
        trace, config = io.trace_from_json(doc)
        return trace, config.coupling, config.pulse_imperfections[0]
    import io as _io

    values, pol, ent = io.read_long_csv(_io.StringIO(raw))
    if values.size != 1:
        raise ValueError(
            f"{path} holds {values.size} axis values; detect-tm expects a single trace"
        )
    n_qubits = max(1, int(round(np.max(np.abs(pol)))) or 1)
    trace = StroboscopicTrace(
        steps=np.arange(pol.shape[1]),
        polarization=pol[0],
        entropy=None if ent is None else ent[0],
        n_qubits=n_qubits,
    )
    return trace, None, float(values[0])


def _cmd_detect_tm(parser, args) -> int:
    if args.input is not None:
        trace, g, eps = _load_trace_file(args.input)
        if args.g is not None and args.g > 0:
            g = args.g
        parameters = {"input": args.input}
    else:
        config = _config_from_args(parser, args)
        block = _entropy_block(parser, args.entropy_block, config.n_qubits)
        trace = evolve(
            compose_floquet(config),
            initial_ferromagnetic_state(config.n_qubits),
            args.steps,
            block,
        )
        g = config.coupling
        eps = config.pulse_imperfections[0]
        parameters = {
            **_resolved_config_params(config),
            "steps": args.steps,
            "entropy_block": list(block),
        }
    try:
        intervals = detect_flat_regions(
            trace, window=args.window, threshold=args.threshold,
            entropy_floor=args.entropy_floor,
        )
    except ValueError as exc:
        parser.error(str(exc))
    if g is not None and g > 0:
        intervals = label_intervals(intervals, g, eps, k_max=args.k_max)
    parameters.update(
        {
            "window": args.window,
            "threshold": args.threshold,
            "entropy_floor": args.entropy_floor,
            "k_max": args.k_max,
            "format": args.format,
        }
    )
    if args.out != "-":
        if intervals:
            for iv in intervals:
                tag = "" if iv.label is None else f" (k={iv.label[0]}, l={iv.label[1]})"
                print(
                    f"[{iv.n_start}, {iv.n_end}] duration {iv.duration}, "
                    f"mean |polarization| {iv.mean_abs_polarization:.4f}{tag}"
                )
        else:
            print("no flat regions detected")

    def write_csv(fh):
        io.write_intervals_csv(fh, intervals)

    return _emit(
        "detect-tm", parameters, args.out, "intervals", args.format, write_csv,
        io.intervals_to_json(intervals, parameters),
    )


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floquet-tm",
        description="Stroboscopic dynamics of pi-pulse-driven qubit chains",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_evolve = sub.add_parser("evolve", help="evolve one trajectory and write its trace")
    _add_config_flags(p_evolve)
    _add_trace_flags(p_evolve)
    _add_output_flags(p_evolve)

    p_sweep = sub.add_parser("sweep", help="run a one-parameter sweep grid")
    _add_config_flags(p_sweep)
    _add_trace_flags(p_sweep)
    _add_output_flags(p_sweep)
    p_sweep.add_argument("--axis", choices=sorted(AXIS_NAMES), default="epsilon-uniform")
    p_sweep.add_argument("--min", type=float, required=True, help="first axis value")
    p_sweep.add_argument("--max", type=float, required=True, help="last axis value")
    p_sweep.add_argument("--points", type=int, required=True, help="number of axis values")
    p_sweep.add_argument("--site", type=int, default=None, help="site for delta-site sweeps")
    p_sweep.add_argument(
        "--workers", type=int, default=None,
        help="worker processes (default: FLOQUET_TM_THREADS or all cores)",
    )

    p_spec = sub.add_parser("spectrum", help="quasienergy eigenphases of the propagator")
    _add_config_flags(p_spec)
    _add_output_flags(p_spec)

    p_pred = sub.add_parser("predict-tm", help="pulse imperfection solving xi_k = ell")
    p_pred.add_argument("--g", type=float, required=True)
    p_pred.add_argument("--k", type=int, required=True, help="commensurability parameter")
    p_pred.add_argument("--ell", type=int, required=True, help="even integer target")
    _add_output_flags(p_pred)

    p_det = sub.add_parser("detect-tm", help="detect flat regions in a trace")
    _add_config_flags(p_det)
    _add_trace_flags(p_det)
    _add_output_flags(p_det)
    p_det.add_argument("--input", default=None, help="existing trace file (csv or json)")
    p_det.add_argument("--window", type=int, default=10, help="minimum run length W")
    p_det.add_argument(
        "--threshold", type=float, default=None,
        help="|polarization| bound (default 0.075 per qubit)",
    )
    p_det.add_argument(
        "--entropy-floor", type=float, default=None,
        help="minimum mean entropy (default 0.6 when entropy data exists)",
    )
    p_det.add_argument("--k-max", type=int, default=4, help="largest group index for labels")
    return parser


_HANDLERS = {
    "evolve": _cmd_evolve,
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "predict-tm": _cmd_predict_tm,
    "detect-tm": _cmd_detect_tm,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.subcommand](parser, args)
    except (NumericalInstabilityError, RuntimeError, OSError, ValueError) as exc:
        print(f"floquet-tm {args.subcommand}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
