"""Figures written next to the delimited reports."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    # fixed metadata keeps reruns byte-identical
    "svg.hashsalt": "lingaug",
}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def plot_reports(reports: Sequence, path: str | Path) -> Path:
    """Grouped bars of Recall, Recall_avg and F1_avg (percent) per model/dataset row."""
    labels = [f"{r.model_name}\n{r.dataset_name}".strip() for r in reports]
    values = np.array([[r.recall_off, r.recall_macro, r.f1_macro] for r in reports]) * 100
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 1.6 * len(reports) + 1.5), 3.2))
        x = np.arange(len(reports))
        width = 0.26
        for j, name in enumerate(("Recall", "Recall_avg", "F1_avg")):
            bars = ax.bar(x + (j - 1) * width, values[:, j], width, label=name)
            ax.bar_label(bars, fmt="%.1f", fontsize=6, padding=1)
        ax.set_xticks(x, labels)
        ax.set_ylim(0, 105)
        ax.set_ylabel("score (%)")
        ax.legend(ncol=3, loc="upper center", bbox_to_anchor=(0.5, 1.15), frameon=False)
        return _save(fig, Path(path))


def plot_balance(report, path: str | Path) -> Path:
    """Class counts before and after balancing."""
    before, after = report.before, report.after
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(3.6, 3.0))
        x = np.arange(2)
        ax.bar(x - 0.18, before, 0.36, label="before", color="0.65")
        ax.bar(x + 0.18, after, 0.36, label="after", color="C3")
        ax.set_xticks(x, ["OFF", "NOT"])
        ax.set_ylabel("examples")
        title = f"+{report.added} mined"
        if report.exhausted:
            title += " (pool exhausted)"
        ax.set_title(title)
        ax.legend(frameon=False, loc="upper left", bbox_to_anchor=(1.0, 1.0))
        return _save(fig, Path(path))
