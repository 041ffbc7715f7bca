"""Matplotlib rendering of the plot-ready outputs.

Each function takes the already-computed analysis objects and writes one PNG
next to the delimited output it visualizes.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .network import CollabNetwork
from .trends import AnnualSeries

DPI = 150


def render_share_trends(series: list[AnnualSeries], path: Path) -> None:
    years = [s.year for s in series]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(years, [s.intl_paper_share for s in series], label="international papers", lw=1.5)
    ax.plot(
        years,
        [s.intl_citation_share for s in series],
        label="citations to international papers",
        lw=1.5,
        ls="--",
    )
    ax.set_xlabel("year")
    ax.set_ylabel("share")
    ax.set_ylim(0, 1)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def render_distance_trends(
    series: list[AnnualSeries], indicators: tuple[str, ...], path: Path
) -> None:
    n = len(indicators)
    ncols = 4
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.2 * ncols, 2.4 * nrows), squeeze=False)
    for i, name in enumerate(indicators):
        ax = axes[i // ncols][i % ncols]
        points = [(s.year, s.mean_distance[name]) for s in series if name in s.mean_distance]
        if points:
            ax.plot([p[0] for p in points], [p[1] for p in points], lw=1.2)
        ax.set_title(name, fontsize=9)
    for j in range(n, nrows * ncols):
        axes[j // ncols][j % ncols].axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def render_density(
    curves: dict[str, tuple[np.ndarray, np.ndarray]], indicator: str, path: Path
) -> None:
    """Overlay the base co-publication density with any exclusion variants."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for label, (edges, masses) in curves.items():
        centers = 0.5 * (edges[:-1] + edges[1:])
        ax.plot(centers, masses, lw=1.3, label=label)
    ax.set_xlabel(indicator)
    ax.set_ylabel("co-publication mass")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def render_network(network: CollabNetwork, rdc_scores: dict[str, float], path: Path) -> None:
    """Circular layout; node size tracks degree centrality, edge width tracks
    joint paper counts."""
    nodes = list(network.nodes)
    n = len(nodes)
    fig, ax = plt.subplots(figsize=(6, 6))
    if n:
        angles = {
            node: 2.0 * math.pi * i / n for i, node in enumerate(nodes)
        }
        pos = {node: (math.cos(a), math.sin(a)) for node, a in angles.items()}
        max_count = max(network.edges.values(), default=1)
        for (a, b), count in sorted(network.edges.items()):
            xa, ya = pos[a]
            xb, yb = pos[b]
            ax.plot([xa, xb], [ya, yb], color="steelblue", alpha=0.5, lw=0.5 + 3.0 * count / max_count)
        for node in nodes:
            x, y = pos[node]
            ax.scatter([x], [y], s=100 + 900 * rdc_scores.get(node, 0.0), color="darkorange", zorder=3)
            ax.annotate(node, (x, y), ha="center", va="center", fontsize=7, zorder=4)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
