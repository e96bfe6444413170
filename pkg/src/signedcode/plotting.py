"""Accuracy-versus-noise figures rendered to files.

One panel per (source, average degree) group; each decoder contributes a
marker line with 95% confidence error bars where available.
"""
from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiment import SummaryRow

__all__ = ["plot_accuracy_curves"]

_STYLE = {
    "bit-flip": dict(color="#d62728", marker="s"),
    "bp": dict(color="#9467bd", marker="^"),
    "hamming-plain": dict(color="#1f77b4", marker="o"),
    "hamming-two-step": dict(color="#2ca02c", marker="D"),
}


def plot_accuracy_curves(rows: Sequence[SummaryRow], path: str | Path) -> None:
    """Render mean edge accuracy against crossover probability."""
    if not rows:
        raise ValueError("no summary rows to plot")
    panels: Dict[Tuple[str, Optional[float]], List[SummaryRow]] = {}
    for row in rows:
        panels.setdefault((row.source, row.c), []).append(row)
    keys = sorted(panels, key=lambda k: (k[0], -1.0 if k[1] is None else k[1]))
    fig, axes = plt.subplots(
        1, len(keys), figsize=(5.2 * len(keys), 4.0), squeeze=False, sharey=True
    )
    for ax, key in zip(axes[0], keys):
        source, c = key
        by_decoder: Dict[str, List[SummaryRow]] = {}
        for row in panels[key]:
            by_decoder.setdefault(row.decoder, []).append(row)
        for decoder, group in by_decoder.items():
            group = sorted(group, key=lambda r: r.p)
            ps = [r.p for r in group]
            means = [r.mean_accuracy for r in group]
            errs = [r.ci95_half_width or 0.0 for r in group]
            style = _STYLE.get(decoder, {})
            ax.errorbar(
                ps, means, yerr=errs, label=decoder, capsize=3, markersize=5, **style
            )
        title = source if c is None else f"{source}, average degree {c:g}"
        ax.set_title(title)
        ax.set_xlabel("crossover probability p")
        ax.grid(True, alpha=0.3)
    axes[0][0].set_ylabel("edge accuracy")
    axes[0][-1].legend(loc="lower left", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
