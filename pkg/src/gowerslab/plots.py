"""Figures for CLI results, rendered to files with the Agg backend."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def plot_series(xs, ys, path, xlabel="n", ylabel="value", title="", logy=False, marker=".") -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, marker=marker, linestyle="-" if len(xs) < 50 else "none", markersize=3)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    return _finish(fig, path)


def plot_phase_portrait(values, path, title="") -> str:
    """Real and imaginary parts of a sequence, plus its points on the unit circle."""
    v = np.asarray(values, dtype=np.complex128)
    fig, (a1, a2) = plt.subplots(1, 2, figsize=(9, 4))
    n = np.arange(1, len(v) + 1)
    a1.plot(n, v.real, ".", markersize=2, label="Re")
    a1.plot(n, v.imag, ".", markersize=2, label="Im")
    a1.set_xlabel("n")
    a1.legend(loc="upper right")
    a2.plot(v.real, v.imag, ".", markersize=2)
    a2.set_aspect("equal")
    a2.set_xlim(-1.1, 1.1)
    a2.set_ylim(-1.1, 1.1)
    if title:
        fig.suptitle(title)
    return _finish(fig, path)


def plot_grid(grid, path, extent=None, title="") -> str:
    """Boolean or real 2-d array as an image (sumset iterates, frequency scans)."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(np.asarray(grid, dtype=float).T, origin="lower", extent=extent, cmap="Greys",
              interpolation="nearest")
    if title:
        ax.set_title(title)
    return _finish(fig, path)


def plot_points(points, path, title="") -> str:
    """Scatter of orbit points on the 2-torus (first two coordinates)."""
    p = np.asarray(points, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 5))
    if p.ndim == 2 and p.shape[1] >= 2:
        ax.plot(p[:, 0], p[:, 1], ".", markersize=1)
    else:
        ax.plot(p.ravel(), np.zeros(p.size), "|")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    if title:
        ax.set_title(title)
    return _finish(fig, path)
