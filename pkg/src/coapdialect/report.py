"""Bar charts of suite results next to the recorded reference counts."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_suite(rows, path: str) -> None:
    """Two panels: solution counts and visited counts, ours against the reference.

    Rows without a numeric reference are left out of the panel concerned.
    """
    sol_rows = [r for r in rows if isinstance(r.expected, int) and not isinstance(r.expected, bool)
                and r.solutions is not None]
    vis_rows = [r for r in rows if r.ref_visited]
    fig, axes = plt.subplots(2, 1, figsize=(max(8, 0.35 * len(sol_rows)), 9))
    _bars(axes[0], [r.key for r in sol_rows], [r.solutions for r in sol_rows],
          [r.expected for r in sol_rows], "solutions")
    _bars(axes[1], [r.key for r in vis_rows], [r.visited for r in vis_rows],
          [r.ref_visited for r in vis_rows], "states visited")
    axes[1].set_yscale("log")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _bars(ax, labels, ours, ref, title) -> None:
    x = np.arange(len(labels))
    ax.bar(x - 0.2, ours, 0.4, label="this model")
    ax.bar(x + 0.2, ref, 0.4, label="reference")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=70, ha="right", fontsize=7)
    ax.set_title(title)
    ax.legend()
