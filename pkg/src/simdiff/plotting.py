"""Headless figure rendering for the CLI report paths.

Every CLI command that writes delimited output also drops a PNG next to it so
runs can be eyeballed without loading the CSVs elsewhere.  Rendering uses the
Agg backend only; nothing here ever opens a window.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["render_curves", "render_gel_panels"]

_RC = {
    "figure.figsize": (6.4, 4.2),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
}


def render_curves(
    path: str,
    curves: Sequence[Tuple[str, Sequence[float], Sequence[float]]],
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> str:
    """Plot (label, x, y) curves on a single axes and save a PNG."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for label, x, y in curves:
            ax.plot(x, y, label=label, linewidth=1.4)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if len(curves) > 1:
            ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path


def render_gel_panels(
    path: str,
    displacement_curves: Sequence[Tuple[str, Sequence[float], Sequence[float]]],
    density_curves: Sequence[Tuple[str, Sequence[float], Sequence[float]]],
    title: str = "",
) -> str:
    """Two-panel figure: radial displacement (left) and density deviation (right).

    Dashed entries (label starting with '~') are drawn as reference overlays.
    """
    with plt.rc_context(_RC):
        fig, (ax_u, ax_rho) = plt.subplots(1, 2, figsize=(9.6, 4.0))
        for ax, curves, ylab in (
            (ax_u, displacement_curves, "displacement"),
            (ax_rho, density_curves, "density deviation"),
        ):
            for label, x, y in curves:
                if label.startswith("~"):
                    ax.plot(x, y, "--", linewidth=1.0, label=label[1:])
                else:
                    ax.plot(x, y, linewidth=1.4, label=label)
            ax.set_xlabel("r")
            ax.set_ylabel(ylab)
            ax.legend(frameon=False, fontsize=8)
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path
