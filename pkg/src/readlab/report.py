"""Optional figure rendering for evaluation reports.

The delimited outputs are canonical; these helpers draw the same numbers
as PNG files for quick inspection. Rendering is headless (Agg backend)
and deterministic for a given input.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .formulas import HIGHER_IS_EASIER
from .metrics import ConfusionMatrix


def confusion_figure(cm: ConfusionMatrix, class_names: Sequence[str], path) -> None:
    """Render the confusion matrix as an annotated heatmap PNG."""
    matrix = cm.as_array()
    fig, ax = plt.subplots(figsize=(1.2 + 0.8 * cm.n_classes, 1.0 + 0.8 * cm.n_classes))
    image = ax.imshow(matrix, cmap="Blues")
    ax.set_xticks(range(cm.n_classes), labels=class_names, rotation=45, ha="right")
    ax.set_yticks(range(cm.n_classes), labels=class_names)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    threshold = matrix.max() / 2 if matrix.max() else 0.5
    for i in range(cm.n_classes):
        for j in range(cm.n_classes):
            color = "white" if matrix[i, j] > threshold else "black"
            ax.text(j, i, f"{int(matrix[i, j])}", ha="center", va="center", color=color)
    fig.colorbar(image, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def correlation_figure(correlations: Mapping[str, float], path) -> None:
    """Render per-measure correlations as a horizontal bar chart PNG.

    Higher-is-easier measures are drawn in a second color since a negative
    correlation is the good direction for them.
    """
    measures = list(correlations)
    values = [correlations[m] for m in measures]
    colors = ["#d62728" if m in HIGHER_IS_EASIER else "#1f77b4" for m in measures]
    fig, ax = plt.subplots(figsize=(6.0, 0.6 + 0.5 * len(measures)))
    positions = range(len(measures))
    ax.barh(positions, values, color=colors)
    ax.set_yticks(positions, labels=measures)
    ax.invert_yaxis()
    ax.axvline(0.0, color="black", linewidth=0.8)
    ax.set_xlim(-1.0, 1.0)
    ax.set_xlabel("correlation with difficulty class")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
