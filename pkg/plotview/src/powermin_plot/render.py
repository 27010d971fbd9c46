"""Figure rendering for power-law interaction-energy experiments.

Three figure kinds, all driven by the files the `powermin` CLI emits:
kernel-shape panels (one per sign class of the exponents), log-log
diameter-vs-n charts from sweep CSVs with fitted power-law annotations,
and 1D/2D configuration scatters.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

SWEEP_COLUMNS = (
    "n", "gamma", "alpha", "dim", "seed", "restarts", "energy", "diameter",
    "min_gap", "grad_inf_norm", "iterations", "converged", "wall_ms",
)

PLOT_KINDS = ("potential-shapes", "diameter", "configuration")

CLASS_ORDER = ("both-positive", "mixed", "both-negative")
CLASS_TITLES = {
    "both-positive": "0 < α < γ",
    "mixed": "α ≤ 0 ≤ γ",
    "both-negative": "α < γ < 0",
}


class SchemaError(ValueError):
    """An input file does not match the expected sweep-CSV schema."""


@dataclass(frozen=True)
class PlotSpec:
    """One rendering job: what to draw, from which files, to which image."""

    kind: str
    inputs: tuple
    output: str
    title: Optional[str] = None

    def __post_init__(self):
        if self.kind not in PLOT_KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}; choose from {PLOT_KINDS}")
        if not self.inputs:
            raise ValueError("at least one input is required")


def kernel_values(gamma: float, alpha: float, r: np.ndarray) -> np.ndarray:
    """w(r) = r^gamma/gamma - r^alpha/alpha, log(r) at a zero exponent."""
    if not gamma > alpha:
        raise ValueError(f"gamma must exceed alpha, got gamma={gamma}, alpha={alpha}")

    def term(eta):
        return np.log(r) if eta == 0.0 else r**eta / eta

    return term(gamma) - term(alpha)


def classify(gamma: float, alpha: float) -> str:
    if alpha > 0.0:
        return "both-positive"
    if gamma < 0.0:
        return "both-negative"
    return "mixed"


def fit_loglog(ns: np.ndarray, values: np.ndarray):
    """Least squares of log(value) on log(n); returns (exponent, prefactor)."""
    if ns.size < 2:
        raise ValueError("power-law fit needs at least two rows")
    if np.any(values <= 0.0):
        raise ValueError("power-law fit needs positive values")
    x = np.log(ns.astype(float))
    y = np.log(values)
    slope = ((x - x.mean()) * (y - y.mean())).sum() / ((x - x.mean()) ** 2).sum()
    return float(slope), float(np.exp(y.mean() - slope * x.mean()))


def read_sweep_csv(path: str) -> dict:
    """Read one sweep CSV, enforcing the exact column schema."""
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise SchemaError(f"{path}: empty file")
    header = tuple(rows[0])
    if header != SWEEP_COLUMNS:
        for got, want in zip(header, SWEEP_COLUMNS):
            if got != want:
                raise SchemaError(f"{path}: expected column {want!r}, found {got!r}")
        raise SchemaError(
            f"{path}: expected {len(SWEEP_COLUMNS)} columns, found {len(header)}"
        )
    body = rows[1:]
    if len(body) < 2:
        raise SchemaError(f"{path}: need at least two data rows to fit a power law")
    return {
        "n": np.array([int(r[0]) for r in body]),
        "gamma": float(body[0][1]),
        "alpha": float(body[0][2]),
        "diameter": np.array([float(r[7]) for r in body]),
    }


def build_potential_figure(
    potentials: Sequence[tuple], r_range=(0.05, 2.5), title: Optional[str] = None
):
    """One panel per exponent sign class present, minimum marked at r = 1."""
    if not potentials:
        raise ValueError("at least one (gamma, alpha) pair is required")
    lo, hi = float(r_range[0]), float(r_range[1])
    if not 0.0 < lo < hi:
        raise ValueError("r_range must satisfy 0 < r_min < r_max")
    groups = {}
    for gamma, alpha in potentials:
        if not gamma > alpha:
            raise ValueError(f"gamma must exceed alpha, got gamma={gamma}, alpha={alpha}")
        groups.setdefault(classify(gamma, alpha), []).append((float(gamma), float(alpha)))
    present = [cls for cls in CLASS_ORDER if cls in groups]

    r = np.linspace(lo, hi, 600)
    fig, axes = plt.subplots(1, len(present), figsize=(4.2 * len(present), 3.4))
    axes = np.atleast_1d(axes)
    for ax, cls in zip(axes, present):
        for gamma, alpha in groups[cls]:
            ax.plot(r, kernel_values(gamma, alpha, r), label=f"γ={gamma:g}, α={alpha:g}")
            w_min = float(kernel_values(gamma, alpha, np.array([1.0]))[0])
            ax.plot([1.0], [w_min], "o", ms=5, color=ax.lines[-1].get_color())
        ax.axvline(1.0, lw=0.6, ls=":", color="gray")
        ax.set_title(CLASS_TITLES[cls])
        ax.set_xlabel("r")
        ax.set_ylabel("w(r)")
        ax.legend(fontsize=8)
    fig.suptitle(title or "w(r) = r^γ/γ − r^α/α")
    fig.tight_layout()
    return fig


def build_diameter_figure(csv_paths: Sequence[str], title: Optional[str] = None):
    """Log-log diameter vs n, one series per CSV, fitted exponent annotated.

    Returns (figure, fits) where each fit carries the series alpha/gamma and
    the annotated exponent/prefactor.
    """
    if not csv_paths:
        raise ValueError("at least one sweep CSV is required")
    sweeps = [read_sweep_csv(path) for path in csv_paths]
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    fits = []
    for sweep in sweeps:
        exponent, prefactor = fit_loglog(sweep["n"], sweep["diameter"])
        label = f"α={sweep['alpha']:g}: R ∝ n^{exponent:.6f}"
        ax.plot(sweep["n"], sweep["diameter"], "o-", label=label)
        fits.append(
            {
                "alpha": sweep["alpha"],
                "gamma": sweep["gamma"],
                "exponent": exponent,
                "prefactor": prefactor,
            }
        )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("diameter R")
    gammas = sorted({f["gamma"] for f in fits})
    ax.legend(title="γ = " + ", ".join(f"{g:g}" for g in gammas), fontsize=8)
    ax.set_title(title or "Diameter of minimizers vs number of particles")
    fig.tight_layout()
    return fig, fits


def build_configuration_figure(config: dict, title: Optional[str] = None):
    """1D: points on a line with unit-spacing circle guides; 2D: scatter."""
    dim = int(config["dim"])
    points = np.array(config["points"], dtype=float)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    if dim not in (1, 2) or points.shape[1] != dim:
        raise ValueError(f"only dim 1 or 2 configurations can be drawn, got dim={dim}")
    fig, ax = plt.subplots(figsize=(5.6, 3.2 if dim == 1 else 5.0))
    if dim == 1:
        xs = np.sort(points[:, 0])
        ax.scatter(xs, np.zeros_like(xs), zorder=3, s=25)
        # Radius-1/2 guides: neighboring circles touch exactly at unit spacing.
        for x in xs:
            ax.add_patch(plt.Circle((x, 0.0), 0.5, fill=False, lw=0.5, color="lightgray"))
        ax.axhline(0.0, lw=0.5, color="gray")
        ax.set_yticks([])
    else:
        ax.scatter(points[:, 0], points[:, 1], s=25)
    ax.set_aspect("equal")
    ax.set_title(title or f"{points.shape[0]} points, d={dim}")
    fig.tight_layout()
    return fig


def _save(fig, out_path: str) -> str:
    fig.savefig(out_path)
    plt.close(fig)
    return out_path


def render_potential_shapes(
    potentials: Sequence[tuple], out_path: str, r_range=(0.05, 2.5),
    title: Optional[str] = None,
) -> str:
    return _save(build_potential_figure(potentials, r_range, title), out_path)


def render_diameter_plot(
    csv_paths: Sequence[str], out_path: str, title: Optional[str] = None
):
    fig, fits = build_diameter_figure(csv_paths, title)
    _save(fig, out_path)
    return fits


def render_configuration(
    config_json_path: str, out_path: str, title: Optional[str] = None
) -> str:
    with open(config_json_path) as handle:
        config = json.load(handle)
    return _save(build_configuration_figure(config, title), out_path)
