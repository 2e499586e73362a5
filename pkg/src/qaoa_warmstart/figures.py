"""Figure rendering for the report paths: landscape heatmaps, aggregate
solution-quality bands, and per-run training curves, written next to the
delimited output files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import AggregateCurve, Landscape

_BAND_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple")


def render_landscape(
    ls: Landscape,
    path: Path,
    title: str = "",
    max_cut: float | None = None,
    trajectories=None,
) -> None:
    """Heatmap of the depth-1 expectation over the (gamma, beta) window.

    When ``max_cut`` is given the color scale shows the approximation ratio.
    ``trajectories`` is an optional list of (gammas, betas) arrays overlaid
    as training paths (circle = start, x = end).
    """
    values = ls.values / max_cut if max_cut else ls.values
    fig, ax = plt.subplots(figsize=(7, 3.2))
    mesh = ax.pcolormesh(ls.gamma_grid, ls.beta_grid, values, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="fraction of max cut" if max_cut else "expected cut")
    if trajectories:
        for gam, bet in trajectories:
            ax.plot(gam, bet, color="white", lw=0.8, alpha=0.8)
            ax.plot(gam[0], bet[0], "o", color="black", ms=4)
            ax.plot(gam[-1], bet[-1], "x", color="white", ms=6)
    ax.set_xlabel(r"$\gamma_1$")
    ax.set_ylabel(r"$\beta_1$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_aggregate_bands(
    curves_by_label: dict[str, list[AggregateCurve]],
    path: Path,
    title: str = "",
) -> None:
    """Solution-quality band (low/high percentiles) with a median line per
    variant, as a function of the training epoch."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for color, (label, curves) in zip(_BAND_COLORS, sorted(curves_by_label.items())):
        ordered = sorted(curves, key=lambda c: c.percentile)
        lo, hi = ordered[0], ordered[-1]
        epochs = np.arange(len(lo.values))
        ax.fill_between(epochs, lo.values, hi.values, alpha=0.25, color=color, label=label)
        median = min(ordered, key=lambda c: abs(c.percentile - 0.5))
        ax.plot(epochs, median.values, color=color, lw=1.5)
    ax.set_xlabel("epoch")
    ax.set_ylabel("approximation ratio")
    ax.set_ylim(0, 1.02)
    ax.legend(loc="lower right", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_training_curves(
    labeled_traces: dict[str, list],
    max_cut: float,
    path: Path,
    title: str = "",
) -> None:
    """Approximation ratio per epoch for each run, grouped by variant label."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for color, (label, traces) in zip(_BAND_COLORS, sorted(labeled_traces.items())):
        for k, trace in enumerate(traces):
            ax.plot(
                np.arange(trace.num_epochs),
                trace.f_values / max_cut,
                color=color,
                lw=1.0,
                alpha=0.8,
                label=label if k == 0 else None,
            )
    ax.set_xlabel("epoch")
    ax.set_ylabel("approximation ratio")
    ax.set_ylim(0, 1.02)
    ax.legend(loc="lower right", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
