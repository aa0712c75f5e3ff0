"""Figures for Pareto runs."""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_frontiers(series: Mapping[int, Sequence[tuple[int, int]]], path: str | Path, title: str = "") -> Path:
    """Scatter of total rented length (x) against number of rental periods (y), one marker set per h.

    The file format follows the suffix of ``path`` (``.svg``, ``.png``, ``.pdf``).
    """
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4.8, 3.6))
    markers = "os^Dv<>"
    for idx, (h, points) in enumerate(sorted(series.items())):
        if not points:
            continue
        ys, zs = zip(*points)
        ax.plot(zs, ys, linestyle="--", linewidth=0.8,
                marker=markers[idx % len(markers)], label=f"h={h}")
    ax.set_xlabel("total rented days (zc)")
    ax.set_ylabel("rental periods (yc)")
    ax.yaxis.get_major_locator().set_params(integer=True)
    ax.xaxis.get_major_locator().set_params(integer=True)
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
