"""Evaluation metrics for ordinal classification and measure comparison.

Unsupervised measures are judged by how well they correlate with the true
difficulty classes and ranked across datasets; classifiers are judged by
accuracy, support-weighted precision/recall/F1, and a chance-corrected
agreement coefficient whose disagreement weights grow with the distance
between classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    ConstantSeries,
    DegenerateMarginals,
    EmptyInput,
    EmptyMatrix,
    LabelOutOfRange,
    LengthMismatch,
)
from .formulas import HIGHER_IS_EASIER

QWK_WEIGHTS = ("linear-paper", "quadratic")


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation coefficient of two equal-length series."""
    if len(xs) != len(ys):
        raise LengthMismatch(f"series lengths differ: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise EmptyInput("correlation needs at least two points")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    xd = x - x.mean()
    yd = y - y.mean()
    sx = float(np.sqrt(np.dot(xd, xd)))
    sy = float(np.sqrt(np.dot(yd, yd)))
    if sx == 0.0 or sy == 0.0:
        raise ConstantSeries("correlation is undefined for a constant series")
    return float(np.dot(xd, yd) / (sx * sy))


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count matrix: rows are true classes, columns predictions."""

    counts: tuple[tuple[int, ...], ...]

    @property
    def n_classes(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float)


def confusion(
    true: Sequence[int],
    pred: Sequence[int],
    n_classes: Optional[int] = None,
) -> ConfusionMatrix:
    """Count (true, predicted) pairs into a square matrix.

    With an explicit ``n_classes`` an empty pair list yields a zero matrix;
    otherwise the class count is inferred from the labels.
    """
    if len(true) != len(pred):
        raise LengthMismatch(f"label lengths differ: {len(true)} vs {len(pred)}")
    if n_classes is None:
        if not true:
            raise EmptyInput("cannot infer the class count from no labels")
        n_classes = max(max(true), max(pred)) + 1
    counts = [[0] * n_classes for _ in range(n_classes)]
    for t, p in zip(true, pred):
        if not 0 <= t < n_classes:
            raise LabelOutOfRange(f"true label {t} outside [0, {n_classes})")
        if not 0 <= p < n_classes:
            raise LabelOutOfRange(f"predicted label {p} outside [0, {n_classes})")
        counts[t][p] += 1
    return ConfusionMatrix(tuple(tuple(row) for row in counts))


@dataclass(frozen=True)
class ClassMetrics:
    label: int
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    """Accuracy plus per-class and support-weighted precision/recall/F1."""

    accuracy: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    per_class: tuple[ClassMetrics, ...]

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "weighted_precision": self.weighted_precision,
            "weighted_recall": self.weighted_recall,
            "weighted_f1": self.weighted_f1,
            "per_class": [vars(c) for c in self.per_class],
        }


def classification_metrics(cm: ConfusionMatrix) -> ClassificationReport:
    """Summarize a confusion matrix; undefined per-class ratios count as 0."""
    matrix = cm.as_array()
    total = matrix.sum()
    if total == 0:
        raise EmptyMatrix("confusion matrix has no observations")
    diag = np.diag(matrix)
    row_sums = matrix.sum(axis=1)
    col_sums = matrix.sum(axis=0)
    per_class = []
    for label in range(cm.n_classes):
        precision = float(diag[label] / col_sums[label]) if col_sums[label] else 0.0
        recall = float(diag[label] / row_sums[label]) if row_sums[label] else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class.append(
            ClassMetrics(label, precision, recall, f1, int(row_sums[label]))
        )
    weights = row_sums / total
    return ClassificationReport(
        accuracy=float(diag.sum() / total),
        weighted_precision=float(sum(w * c.precision for w, c in zip(weights, per_class))),
        weighted_recall=float(sum(w * c.recall for w, c in zip(weights, per_class))),
        weighted_f1=float(sum(w * c.f1 for w, c in zip(weights, per_class))),
        per_class=tuple(per_class),
    )


def qwk(cm: ConfusionMatrix, weights: str = "linear-paper") -> float:
    """Weighted kappa: 1 - weighted observed / weighted expected disagreement.

    ``linear-paper`` weights disagreement by |i - j|, ``quadratic`` by
    (i - j) squared. Expected counts come from the outer product of the
    marginals. If both classifiers are constant and agree, the expected
    disagreement is zero and the score is 1.0 by convention.
    """
    if weights not in QWK_WEIGHTS:
        raise ValueError(f"unknown weighting scheme: {weights!r}")
    observed = cm.as_array()
    if observed.sum() == 0:
        raise EmptyMatrix("kappa of an empty confusion matrix is undefined")
    n = cm.n_classes
    idx = np.arange(n, dtype=float)
    distance = np.abs(idx[:, None] - idx[None, :])
    weight = distance if weights == "linear-paper" else distance**2
    expected = np.outer(observed.sum(axis=1), observed.sum(axis=0)) / observed.sum()
    num = float((weight * observed).sum())
    den = float((weight * expected).sum())
    if den == 0.0:
        if num == 0.0:
            return 1.0
        raise DegenerateMarginals("expected disagreement is zero but observed is not")
    return 1.0 - num / den


@dataclass(frozen=True)
class MeasureRanking:
    """Per-dataset ranks of one measure and their average."""

    measure: str
    ranks: dict
    average: float


def _competition_ranks(goodness: dict[str, float]) -> dict[str, int]:
    """Best-first ranks; ties share the smallest rank and skip the next."""
    ordered = sorted(goodness.items(), key=lambda kv: -kv[1])
    ranks = {}
    for position, (measure, value) in enumerate(ordered, start=1):
        if position > 1 and value == ordered[position - 2][1]:
            ranks[measure] = ranks[ordered[position - 2][0]]
        else:
            ranks[measure] = position
    return ranks


def rank_measures(
    correlations: Mapping[str, Mapping[str, Optional[float]]],
) -> list[MeasureRanking]:
    """Rank measures by correlation with true difficulty across datasets.

    ``correlations`` maps dataset name to per-measure correlations (None
    where a measure was not computed). Higher-is-easier measures are good
    when the correlation is negative, so their sign is flipped before
    ranking. Returns rankings sorted by average rank over the datasets
    where each measure has a value.
    """
    if not correlations:
        raise EmptyInput("no datasets to rank over")
    per_dataset_ranks: dict[str, dict[str, int]] = {}
    for dataset, values in correlations.items():
        goodness = {
            m: (-v if m in HIGHER_IS_EASIER else v)
            for m, v in values.items()
            if v is not None
        }
        if goodness:
            per_dataset_ranks[dataset] = _competition_ranks(goodness)
    measures: list[str] = []
    for values in correlations.values():
        for m in values:
            if m not in measures:
                measures.append(m)
    rankings = []
    for measure in measures:
        ranks = {
            dataset: per_dataset_ranks.get(dataset, {}).get(measure)
            for dataset in correlations
        }
        present = [r for r in ranks.values() if r is not None]
        if not present:
            continue
        rankings.append(MeasureRanking(measure, ranks, sum(present) / len(present)))
    if not rankings:
        raise EmptyInput("no measure has a correlation in any dataset")
    rankings.sort(key=lambda r: (r.average, r.measure))
    return rankings


def rank_table(rankings: Sequence[MeasureRanking], datasets: Sequence[str]) -> tuple[list[str], list[list[str]]]:
    """Header row and string cells for a rank table; '/' marks missing."""
    headers = ["measure", *datasets, "average"]
    rows = []
    for r in rankings:
        cells = [r.measure]
        for dataset in datasets:
            rank = r.ranks.get(dataset)
            cells.append("/" if rank is None else str(rank))
        cells.append(f"{r.average:.2f}")
        rows.append(cells)
    return headers, rows
