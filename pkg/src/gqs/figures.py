"""Matplotlib rendering of density grids and report summaries.

Figures are companions to the delimited outputs, never the primary record:
every figure is rendered from the same data that goes into the CSV/JSON
files.  PNG metadata is pinned so reruns produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cavity2d import DensityGrid
from .experiment import ExperimentReport

__all__ = ["render_density_grid", "render_pair_accumulation"]

_PNG_METADATA = {"Software": "gqs"}


def render_density_grid(grid: DensityGrid, path: str) -> None:
    """Heatmap of |Psi_{n,m}|^2 with both axes in units of l0."""
    fig, ax = plt.subplots(figsize=(4.4, 4.0))
    mesh = ax.pcolormesh(
        grid.axis_x(),
        grid.axis_y(),
        grid.values.T,
        cmap="inferno",
        shading="gouraud",
        rasterized=True,
    )
    ax.set_xlabel(r"$x / l_0$")
    ax.set_ylabel(r"$y / l_0$")
    ax.set_title(rf"$|\Psi_{{{grid.n},{grid.m}}}|^2$  [$l_0^{{-2}}$]")
    ax.set_aspect("equal")
    fig.colorbar(mesh, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)


def render_pair_accumulation(report: ExperimentReport, path: str) -> None:
    """Expected entangled-pair count vs dwell time, for both coherence lengths."""
    t_max = max(report.t, 1.0) * 1.5
    ts = np.linspace(0.0, t_max, 200)
    rate_adopted = report.pairs / report.t if report.t > 0 else 0.0
    rate_computed = report.pairs_computed_lc / report.t if report.t > 0 else 0.0
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(ts, rate_adopted * ts, label=r"adopted $L_c$")
    ax.plot(ts, rate_computed * ts, "--", label=r"computed $L_c = \hbar/(m\,\Delta v)$")
    ax.axhline(1.0, color="0.6", lw=0.8)
    ax.axvline(report.t, color="0.6", lw=0.8)
    ax.set_xlabel("time in cavity [s]")
    ax.set_ylabel("expected entangled pairs")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
