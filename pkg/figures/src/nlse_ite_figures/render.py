"""Render experiment figures from the solver's CSV outputs.

Consumes the series/profile CSV schemas emitted by the nlse-ite CLI; the
solver itself is never imported.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SERIES_COLUMNS = ["tau", "norm_sq", "mu", "l2_error", "energy"]
PROFILE_COLUMNS = ["x", "re", "im", "abs", "ref_abs"]

FIGURE_IDS = ("norm_mu_err", "final_vs_sech", "baseline_vs_feedback", "multi_alpha")

DPI = 150


class CsvFormatError(ValueError):
    """Input CSV does not match the expected schema."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    inputs: tuple[Path, ...]
    output: Path

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure_id!r}, expected one of {FIGURE_IDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def read_table(path: Path, expected: list[str]) -> dict[str, np.ndarray]:
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows or rows[0] != expected:
        found = rows[0] if rows else []
        raise CsvFormatError(
            f"{path}: expected columns {expected}, found {found}"
        )
    if len(rows) < 2:
        raise CsvFormatError(f"{path}: no data rows")
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    return {name: data[:, i] for i, name in enumerate(expected)}


def _label(path: Path) -> str:
    stem = path.stem
    for prefix in ("series_", "profile_"):
        if stem.startswith(prefix):
            return stem[len(prefix):]
    return stem


def _render_norm_mu_err(spec: FigureSpec):
    fig, axes = plt.subplots(1, 3, figsize=(12.0, 4.0))
    for path in spec.inputs:
        table = read_table(path, SERIES_COLUMNS)
        label = _label(path)
        axes[0].plot(table["tau"], table["norm_sq"], label=label)
        axes[1].plot(table["tau"], table["mu"], label=label)
        axes[2].plot(table["tau"], table["l2_error"], label=label)
    for ax, title in zip(axes, (r"$\|\psi\|^2$", r"$\mu(\tau)$", r"$L^2$ error")):
        ax.set_xlabel(r"$\tau$")
        ax.set_title(title)
        ax.legend()
    axes[2].set_yscale("log")
    return fig


def _render_final_vs_sech(spec: FigureSpec):
    if len(spec.inputs) != 1:
        raise ValueError("final_vs_sech takes exactly one profile CSV")
    table = read_table(spec.inputs[0], PROFILE_COLUMNS)
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    ax.plot(table["x"], table["abs"], label=r"$|\psi(x)|$")
    ax.plot(table["x"], table["ref_abs"], "--", label=r"$\mathrm{sech}(x)$")
    ax.set_xlabel("x")
    ax.set_ylabel("amplitude")
    ax.legend()
    return fig


def _render_baseline_vs_feedback(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for path in spec.inputs:
        table = read_table(path, SERIES_COLUMNS)
        ax.plot(table["tau"], table["norm_sq"], label=_label(path))
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel(r"$\|\psi\|^2$")
    ax.legend()
    return fig


def _render_multi_alpha(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    first = read_table(spec.inputs[0], PROFILE_COLUMNS)
    for path in spec.inputs:
        table = read_table(path, PROFILE_COLUMNS)
        ax.plot(table["x"], table["abs"], label=_label(path))
    ax.plot(first["x"], first["ref_abs"], "k--", label="sech reference")
    ax.set_xlabel("x")
    ax.set_ylabel(r"$|\psi(x)|$")
    ax.legend()
    return fig


_RENDERERS = {
    "norm_mu_err": _render_norm_mu_err,
    "final_vs_sech": _render_final_vs_sech,
    "baseline_vs_feedback": _render_baseline_vs_feedback,
    "multi_alpha": _render_multi_alpha,
}


def render(spec: FigureSpec) -> Path:
    """Render one figure; raises before any output is written on bad input."""
    fig = _RENDERERS[spec.figure_id](spec)
    try:
        spec.output.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output, dpi=DPI)
    finally:
        plt.close(fig)
    return spec.output
