"""Figures for census output; rendered off-screen."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .census import CensusSummary  # noqa: E402


def plot_histogram(summary: CensusSummary, path, title: str | None = None) -> None:
    """Heatmap of copious graphs by edge count (rows) and ML degree (columns)."""
    rows, cols, counts, outside = summary.table()
    data = np.array(counts, dtype=float) if rows and cols else np.zeros((1, 1))
    fig, ax = plt.subplots(figsize=(1.0 + 0.8 * max(len(cols), 1), 1.0 + 0.5 * max(len(rows), 1)))
    ax.imshow(data, cmap="Blues", aspect="auto", vmin=0)
    ax.set_xticks(range(len(cols)), cols)
    ax.set_yticks(range(len(rows)), rows)
    ax.set_xlabel("ML degree")
    ax.set_ylabel("edges")
    peak = data.max() if data.size else 0
    for i in range(len(rows)):
        for j in range(len(cols)):
            v = counts[i][j]
            ax.text(j, i, str(v), ha="center", va="center",
                    color="white" if peak and v > 0.6 * peak else "black", fontsize=9)
    if title is None:
        title = f"copious graphs, n = {summary.n}" if summary.n else "copious graphs"
        if outside:
            title += f" ({outside} outside bins)"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
