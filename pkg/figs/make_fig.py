#!/usr/bin/env python3
"""Render the standard figure set from floquet-tm grid files.

Reads the CLI's CSV/JSON grid formats directly (this script never imports
the simulation package) and writes one PNG per figure id. The only physics
evaluated here is the commensurability ratio overlay of figure 2c, from
its published closed form.

Usage:
    python make_fig.py --figure 2a --data DATA_DIR --out fig2a.png
    python make_fig.py --list
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

LN2 = float(np.log(2.0))
CROSS_EPS_MAIN = 0.0436
XI_COUPLING = 0.05


@dataclass
class Grid:
    values: np.ndarray
    polarization: np.ndarray
    entropy: np.ndarray | None
    n_qubits: int


def load_grid(path: Path) -> Grid:
    if not path.exists():
        raise FileNotFoundError(f"grid file not found: {path}")
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        if doc.get("kind") != "grid" or "values" not in doc:
            raise ValueError(f"{path} is not a grid document")
        values = np.asarray(doc["values"], dtype=float)
        pol = np.asarray(doc["polarization"], dtype=float)
        ent = None if doc.get("entropy") is None else np.asarray(doc["entropy"], dtype=float)
        n_qubits = int(doc.get("config", {}).get("n_qubits", 0))
    else:
        lines = text.splitlines()
        if not lines or lines[0] != "epsilon,n,polarization,entropy":
            raise ValueError(f"{path} is not a grid CSV")
        rows: dict[float, list[tuple[float, float | None]]] = {}
        order: list[float] = []
        for line in lines[1:]:
            if not line:
                continue
            v, _, p, s = line.split(",")
            value = float(v)
            if value not in rows:
                rows[value] = []
                order.append(value)
            rows[value].append((float(p), float(s) if s else None))
        if not order:
            raise ValueError(f"{path} contains no data rows")
        values = np.asarray(order)
        pol = np.asarray([[p for p, _ in rows[v]] for v in order])
        has_entropy = rows[order[0]][0][1] is not None
        ent = (
            np.asarray([[s for _, s in rows[v]] for v in order]) if has_entropy else None
        )
        n_qubits = 0
    if values.size == 0 or pol.size == 0:
        raise ValueError(f"{path} holds an empty grid")
    if n_qubits <= 0:
        n_qubits = max(1, int(np.ceil(np.max(np.abs(pol)) - 1e-9)))
    return Grid(values, pol, ent, n_qubits)


def new_axes(width=6.4, height=4.2):
    fig, ax = plt.subplots(figsize=(width, height), dpi=150)
    return fig, ax


def save(fig, out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="png")
    plt.close(fig)


def render_heatmap(grid: Grid, quantity: str, title: str, out: Path) -> None:
    if quantity == "entropy":
        if grid.entropy is None:
            raise ValueError("grid carries no entropy data")
        data, cmap, vmin, vmax = grid.entropy, "viridis", 0.0, LN2
        label = "entanglement entropy S"
    else:
        bound = float(grid.n_qubits)
        data, cmap, vmin, vmax = grid.polarization, "RdBu_r", -bound, bound
        label = "total polarization"
    fig, ax = new_axes()
    n_max = data.shape[1] - 1
    mesh = ax.imshow(
        data,
        aspect="auto",
        origin="lower",
        extent=(0, n_max, grid.values[0], grid.values[-1]),
        cmap=cmap,
        vmin=vmin,
        vmax=vmax,
        interpolation="nearest",
    )
    ax.set_xlabel("period n")
    ax.set_ylabel("pulse imperfection")
    ax.set_title(title)
    fig.colorbar(mesh, ax=ax, label=label)
    save(fig, out)


def render_cross_sections(
    grid: Grid, quantity: str, eps_values: list[float], title: str, out: Path
) -> None:
    data = grid.entropy if quantity == "entropy" else grid.polarization
    if data is None:
        raise ValueError("grid carries no entropy data")
    fig, ax = new_axes()
    steps = np.arange(data.shape[1])
    for eps in eps_values:
        row = int(np.argmin(np.abs(grid.values - eps)))
        ax.plot(steps, data[row], lw=0.9, label=f"eps = {grid.values[row]:.4g}")
    ax.set_xlabel("period n")
    if quantity == "entropy":
        ax.set_ylabel("entanglement entropy S")
        ax.axhline(LN2, color="gray", lw=0.6, ls=":")
    else:
        ax.set_ylabel("total polarization")
        ax.set_ylim(-grid.n_qubits * 1.05, grid.n_qubits * 1.05)
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    save(fig, out)


def render_xi_curves(out: Path, g: float = XI_COUPLING) -> None:
    """Commensurability ratio xi_k = (k+1)(g + sqrt(g^2 + 4 eps^2))/g for
    k = 1, 2, with circles where the curves cross even integers."""
    eps = np.linspace(0.0, 0.2, 801)
    fig, ax = new_axes()
    colors = {1: "tab:blue", 2: "tab:red"}
    for k in (1, 2):
        curve = (k + 1) * (g + np.sqrt(g * g + 4 * eps * eps)) / g
        ax.plot(eps, curve, color=colors[k], lw=1.2, label=f"k = {k}")
        for ell in range(2 * (k + 1), int(np.ceil(curve[-1])) + 1, 2):
            ratio = ell / (k + 1)
            if ratio < 2.0:
                continue
            eps_cross = 0.5 * g * np.sqrt((ratio - 1.0) ** 2 - 1.0)
            if eps_cross <= 0.2:
                ax.plot([eps_cross], [ell], "o", ms=5, mfc="none", color=colors[k])
    top = int(np.ceil(3 * (g + np.sqrt(g * g + 4 * 0.04)) / g))
    for ell in range(4, top + 1, 2):
        ax.axhline(ell, color="gray", lw=0.5, ls="--")
    ax.set_xlabel("pulse imperfection")
    ax.set_ylabel(r"$\xi_k$")
    ax.set_title(f"commensurability ratio, g = {g}")
    ax.set_xlim(0, 0.2)
    ax.legend(loc="upper left", fontsize=8)
    save(fig, out)


FIGURES: dict[str, dict] = {
    "1a": dict(kind="heatmap", source="grid_g0.json", quantity="polarization",
               title="total polarization, g = 0"),
    "1b": dict(kind="heatmap", source="grid_g005.json", quantity="polarization",
               title="total polarization, g = 0.05"),
    "1c": dict(kind="heatmap", source="grid_g03.json", quantity="polarization",
               title="total polarization, g = 0.3"),
    "1d": dict(kind="cross", source="grid_g0.json", quantity="polarization",
               eps=[CROSS_EPS_MAIN], title="cross-section, g = 0"),
    "1e": dict(kind="cross", source="grid_g005.json", quantity="polarization",
               eps=[CROSS_EPS_MAIN], title="cross-section, g = 0.05"),
    "1f": dict(kind="cross", source="grid_g03.json", quantity="polarization",
               eps=[CROSS_EPS_MAIN], title="cross-section, g = 0.3"),
    "2a": dict(kind="heatmap", source="grid_g005.json", quantity="polarization",
               title="time-molecule groups, g = 0.05"),
    "2b": dict(kind="cross", source="grid_g005.json", quantity="polarization",
               eps=[0.0436, 0.0968], title="molecule tongues, g = 0.05"),
    "2c": dict(kind="xi", title="commensurability crossings"),
    "3a": dict(kind="heatmap", source="grid_g005.json", quantity="entropy",
               title="entanglement entropy, g = 0.05"),
    "3b": dict(kind="cross", source="grid_g005.json", quantity="entropy",
               eps=[0.012, 0.0436, 0.185], title="entropy cross-sections, g = 0.05"),
    "4": dict(kind="heatmap", source="grid_g005_detuned.json", quantity="polarization",
              title="total polarization, g = 0.05, delta_2 = 0.7"),
    "s1a": dict(kind="heatmap", source="grid_eadd003.json", quantity="polarization",
                title="imperfection spread 0.03"),
    "s1b": dict(kind="heatmap", source="grid_eadd006.json", quantity="polarization",
                title="imperfection spread 0.06"),
    "s2a": dict(kind="heatmap", source="grid_n3.json", quantity="polarization",
                title="total polarization, N = 3"),
    "s2b": dict(kind="heatmap", source="grid_n5.json", quantity="polarization",
                title="total polarization, N = 5"),
}


def render(figure_id: str, data_dir: Path, out: Path) -> None:
    recipe = FIGURES[figure_id]
    kind = recipe["kind"]
    if kind == "xi":
        render_xi_curves(out)
        return
    grid = load_grid(data_dir / recipe["source"])
    if kind == "heatmap":
        render_heatmap(grid, recipe["quantity"], recipe["title"], out)
    else:
        render_cross_sections(grid, recipe["quantity"], recipe["eps"], recipe["title"], out)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--figure", choices=sorted(FIGURES), help="figure id to render")
    parser.add_argument("--data", default="data", help="directory with grid files")
    parser.add_argument("--out", help="output PNG path")
    parser.add_argument("--list", action="store_true", help="list figure ids and exit")
    args = parser.parse_args(argv)

    if args.list:
        for fig_id in sorted(FIGURES):
            recipe = FIGURES[fig_id]
            source = recipe.get("source", "-")
            print(f"{fig_id:4s} {source:24s} {recipe['title']}")
        return 0
    if not args.figure or not args.out:
        parser.error("--figure and --out are required unless --list is given")
    try:
        render(args.figure, Path(args.data), Path(args.out))
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"make_fig: {exc}", file=sys.stderr)
        return 1
    print(args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
