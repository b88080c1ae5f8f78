"""Matplotlib rendering for the report path.

Every figure is written as SVG on a fixed 800x600 canvas per panel (8x6
inches at 100 dpi).  Output bytes are deterministic: the SVG hash salt is
pinned and the creation date is stripped from the metadata.  Each plotted
curve is a single Line2D, so it lands in the SVG as a single path element.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

# The SVG backend writes the canvas at 72 units per inch, so this figsize
# pins every panel to an 800x600 canvas.
PANEL_INCHES = (800.0 / 72.0, 600.0 / 72.0)
DPI = 100

matplotlib.rcParams.update(
    {
        "figure.dpi": DPI,
        "savefig.dpi": DPI,
        "svg.hashsalt": "polar-well",
        "axes.grid": False,
    }
)


def save_svg(fig, path: Path) -> None:
    """Write `fig` as deterministic SVG and release it."""
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def mirror_closed(theta, magnitude):
    """Extend a curve on (0, pi) to the full circle by mirror symmetry."""
    theta = np.asarray(theta)
    magnitude = np.asarray(magnitude)
    full_theta = np.concatenate([theta, 2.0 * math.pi - theta[::-1]])
    full_magnitude = np.concatenate([magnitude, magnitude[::-1]])
    return full_theta, full_magnitude


def _potential_axis(ax, theta, curves: Mapping[int, Sequence[float]], v_cap: float) -> None:
    for m, values in curves.items():
        ax.plot(theta, values, label=f"m = {m}", linewidth=1.2)
    ax.set_xlim(0.0, math.pi)
    ax.set_ylim(-0.05 * v_cap, v_cap)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$V_m(\theta)$")


def potential_figure(theta, curves: Mapping[int, Sequence[float]], v_cap: float):
    """One panel with the confining-potential curves, vertically clipped."""
    fig, ax = plt.subplots(figsize=PANEL_INCHES)
    _potential_axis(ax, theta, curves, v_cap)
    ax.legend(loc="upper center", ncol=min(len(curves), 6), frameon=False)
    ax.set_title("confining potential family")
    return fig


def lattice_figure(points: Sequence[tuple[int, int]], l_max: int):
    """Scatter of the admissible (m, l) pairs, m <= l <= l_max."""
    fig, ax = plt.subplots(figsize=PANEL_INCHES)
    ax.plot(
        [p[0] for p in points],
        [p[1] for p in points],
        linestyle="",
        marker="o",
        color="k",
        markersize=6,
    )
    ax.set_xlabel("m")
    ax.set_ylabel("l")
    ax.set_xticks(range(l_max + 1))
    ax.set_yticks(range(l_max + 1))
    ax.set_xlim(-0.5, l_max + 0.5)
    ax.set_ylim(-0.5, l_max + 0.5)
    ax.set_title("quantum-number lattice (m <= l)")
    return fig


def state_line_figure(theta, curves: Mapping[str, Sequence[float]], title: str):
    """One panel with wavefunction curves over theta."""
    fig, ax = plt.subplots(figsize=PANEL_INCHES)
    for label, values in curves.items():
        ax.plot(theta, values, label=label, linewidth=1.2)
    ax.set_xlim(0.0, math.pi)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$y(\theta)$")
    ax.axhline(0.0, color="0.7", linewidth=0.6)
    ax.legend(frameon=False)
    ax.set_title(title)
    return fig


def polar_magnitude_figure(theta, magnitude, title: str):
    """Closed polar curve of an angular amplitude magnitude."""
    fig = plt.figure(figsize=PANEL_INCHES)
    ax = fig.add_subplot(projection="polar")
    full_theta, full_magnitude = mirror_closed(theta, magnitude)
    ax.plot(full_theta, full_magnitude, linewidth=1.2)
    ax.grid(False)
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_theta_zero_location("N")  # polar axis up, matching theta from z
    ax.set_theta_direction(-1)
    ax.set_title(title)
    return fig


def confinement_grid_figure(
    theta,
    panels: Sequence[dict],
    v_cap: float,
):
    """3 x k grid: potential, ground state, and polar amplitude per m.

    Each `panels` entry carries {"m", "potential", "ground", "magnitude"}.
    """
    k = len(panels)
    fig = plt.figure(figsize=(PANEL_INCHES[0] * k, PANEL_INCHES[1] * 3))
    for col, panel in enumerate(panels):
        m = panel["m"]
        ax = fig.add_subplot(3, k, col + 1)
        _potential_axis(ax, theta, {m: panel["potential"]}, v_cap)
        ax.set_title(f"potential, m = {m}")
        ax = fig.add_subplot(3, k, k + col + 1)
        ax.plot(theta, panel["ground"], linewidth=1.2)
        ax.set_xlim(0.0, math.pi)
        ax.set_xlabel(r"$\theta$")
        ax.set_ylabel(r"$y_0(\theta)$")
        ax.set_title(f"ground state, m = {m}")
        ax = fig.add_subplot(3, k, 2 * k + col + 1, projection="polar")
        full_theta, full_magnitude = mirror_closed(theta, panel["magnitude"])
        ax.plot(full_theta, full_magnitude, linewidth=1.2)
        ax.grid(False)
        ax.set_xticks([])
        ax.set_yticks([])
        ax.set_theta_zero_location("N")
        ax.set_theta_direction(-1)
        ax.set_title(f"angular amplitude, m = {m}")
    return fig
