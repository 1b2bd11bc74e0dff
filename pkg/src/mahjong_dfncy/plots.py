"""Figures for benchmark tables, written straight to image files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows: Sequence, path: Path, title: str = "") -> Path:
    """Mean time per call of both searches by knowledge-base bucket, log scale."""
    rows = [r for r in rows if r.kb_bucket != "total"]
    labels = [r.kb_bucket for r in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(7, 4))
    if any(r.quad_mean_ms is not None for r in rows):
        ax.plot(xs, [r.quad_mean_ms for r in rows], marker="o", label="quadtree")
    if any(r.block_mean_ms is not None for r in rows):
        ax.plot(xs, [r.block_mean_ms for r in rows], marker="s", label="block")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=30)
    ax.set_yscale("log")
    ax.set_xlabel("knowledge-base size")
    ax.set_ylabel("mean ms per call")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
