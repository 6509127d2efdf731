"""Feature-based baseline classifier.

Documents are reduced to a small vector of readability scores (the seven
surface formulas, optionally a ranked sentence score and log perplexity
from a language model) and classified with multinomial logistic regression
trained by full-batch gradient descent. Features are standardized with
statistics from the training set only.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyCorpus,
    LabelOutOfRange,
    LengthMismatch,
    MissingFile,
    NonFiniteLoss,
    SingleClass,
    VersionMismatch,
)
from .formulas import GFI_VARIANTS, MEASURES, compute
from .langmodel import LikelihoodProvider, document_perplexity
from .rsrs import document_rsrs
from .textseg import (
    EN_SYLLABLES,
    Document,
    SyllableProfile,
    WordList,
    profile,
)

CLASSIFIER_FORMAT = "readlab-logreg"
CLASSIFIER_VERSION = "v1"


@dataclass(frozen=True)
class FeatureSpec:
    """Which features to extract and how the formulas are configured."""

    gfi_variant: str = "paper"
    wordlist: Optional[WordList] = None
    lang_profile: SyllableProfile = EN_SYLLABLES
    include_rsrs: bool = False
    include_perplexity: bool = False

    def __post_init__(self):
        if self.gfi_variant not in GFI_VARIANTS:
            raise ValueError(f"unknown GFI variant: {self.gfi_variant!r}")

    @property
    def names(self) -> tuple[str, ...]:
        extra = []
        if self.include_rsrs:
            extra.append("RSRS")
        if self.include_perplexity:
            extra.append("LOGPPL")
        return MEASURES + tuple(extra)


def featurize(
    doc: Document,
    spec: FeatureSpec = FeatureSpec(),
    provider: Optional[LikelihoodProvider] = None,
) -> np.ndarray:
    """One document's feature vector in ``spec.names`` order."""
    if (spec.include_rsrs or spec.include_perplexity) and provider is None:
        raise ValueError("model-based features need a likelihood provider")
    stats = profile(doc, wordlist=spec.wordlist, lang_profile=spec.lang_profile)
    values = [compute(m, stats, gfi_variant=spec.gfi_variant) for m in MEASURES]
    if spec.include_rsrs:
        values.append(document_rsrs(provider, doc))
    if spec.include_perplexity:
        values.append(math.log(document_perplexity(provider, doc)))
    return np.asarray(values, dtype=float)


def featurize_corpus(
    documents: Sequence[Document],
    spec: FeatureSpec = FeatureSpec(),
    provider: Optional[LikelihoodProvider] = None,
) -> np.ndarray:
    if not documents:
        raise EmptyCorpus("no documents to featurize")
    return np.stack([featurize(doc, spec, provider) for doc in documents])


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def loss_and_gradient(
    weights: np.ndarray, design: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray]:
    """Mean cross-entropy and its gradient with respect to the weights.

    ``design`` already carries the bias column; ``weights`` is (C, F+1).
    """
    m = len(labels)
    proba = _softmax(design @ weights.T)
    loss = float(-np.mean(np.log(proba[np.arange(m), labels])))
    onehot = np.zeros_like(proba)
    onehot[np.arange(m), labels] = 1.0
    grad = (proba - onehot).T @ design / m
    return loss, grad


@dataclass
class LogRegModel:
    """Trained classifier: standardization stats plus one weight row per class.

    ``kept`` indexes the raw features that survived the zero-variance drop;
    ``weights`` has one trailing column for the bias term.
    """

    feature_names: tuple[str, ...]
    class_names: tuple[str, ...]
    kept: tuple[int, ...]
    means: np.ndarray
    stds: np.ndarray
    weights: np.ndarray
    lr: float
    epochs: int
    loss_history: list[float] = field(default_factory=list)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def _design(self, features: np.ndarray) -> np.ndarray:
        features = np.asarray(features, dtype=float)
        if features.ndim != 2 or features.shape[1] != len(self.feature_names):
            raise DimensionMismatch(
                f"expected (n, {len(self.feature_names)}) features, got {features.shape}"
            )
        z = (features[:, self.kept] - self.means) / self.stds
        return np.hstack([z, np.ones((len(z), 1))])

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        return _softmax(self._design(features) @ self.weights.T)

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(features), axis=1)


def train_logreg(
    features: np.ndarray,
    labels: Sequence[int],
    class_names: Sequence[str],
    feature_names: Sequence[str],
    lr: float = 0.1,
    epochs: int = 1500,
) -> LogRegModel:
    """Fit by full-batch gradient descent on the mean cross-entropy.

    Weights start at zero, so training is deterministic. The recorded loss
    history has one entry per epoch plus the final loss.
    """
    features = np.asarray(features, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if features.ndim != 2:
        raise DimensionMismatch(f"features must be 2-d, got shape {features.shape}")
    if len(features) != len(labels):
        raise LengthMismatch(f"{len(features)} feature rows for {len(labels)} labels")
    if len(features) == 0:
        raise EmptyCorpus("no training rows")
    if features.shape[1] != len(feature_names):
        raise DimensionMismatch(
            f"{features.shape[1]} feature columns for {len(feature_names)} names"
        )
    n_classes = len(class_names)
    if labels.min() < 0 or labels.max() >= n_classes:
        raise LabelOutOfRange(
            f"labels span [{labels.min()}, {labels.max()}], outside [0, {n_classes})"
        )
    if len(set(labels.tolist())) < 2:
        raise SingleClass("training labels contain a single class")

    means = features.mean(axis=0)
    stds = features.std(axis=0)
    kept = tuple(i for i in range(features.shape[1]) if stds[i] > 0)
    dropped = [feature_names[i] for i in range(features.shape[1]) if stds[i] == 0]
    if dropped:
        warnings.warn(f"dropping zero-variance features: {', '.join(dropped)}")

    model = LogRegModel(
        feature_names=tuple(feature_names),
        class_names=tuple(class_names),
        kept=kept,
        means=means[list(kept)],
        stds=stds[list(kept)],
        weights=np.zeros((n_classes, len(kept) + 1)),
        lr=lr,
        epochs=epochs,
    )
    design = model._design(features)
    for _ in range(epochs):
        loss, grad = loss_and_gradient(model.weights, design, labels)
        if not math.isfinite(loss):
            raise NonFiniteLoss(f"training loss became {loss}")
        model.loss_history.append(loss)
        model.weights -= lr * grad
    final_loss, _ = loss_and_gradient(model.weights, design, labels)
    model.loss_history.append(final_loss)
    return model


def save_classifier(model: LogRegModel, path) -> None:
    """Serialize to JSON; loading reproduces predictions exactly."""
    record = {
        "format": CLASSIFIER_FORMAT,
        "version": CLASSIFIER_VERSION,
        "feature_names": list(model.feature_names),
        "class_names": list(model.class_names),
        "kept": list(model.kept),
        "means": model.means.tolist(),
        "stds": model.stds.tolist(),
        "weights": model.weights.tolist(),
        "lr": model.lr,
        "epochs": model.epochs,
        "loss_history": model.loss_history,
    }
    Path(path).write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")


def load_classifier(path) -> LogRegModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MissingFile(f"classifier file not found: {path}") from None
    try:
        record = json.loads(text)
    except json.JSONDecodeError as err:
        raise VersionMismatch(f"classifier file is not JSON: {err}") from None
    if record.get("format") != CLASSIFIER_FORMAT or record.get("version") != CLASSIFIER_VERSION:
        raise VersionMismatch(
            f"expected {CLASSIFIER_FORMAT} {CLASSIFIER_VERSION}, "
            f"got {record.get('format')!r} {record.get('version')!r}"
        )
    return LogRegModel(
        feature_names=tuple(record["feature_names"]),
        class_names=tuple(record["class_names"]),
        kept=tuple(record["kept"]),
        means=np.asarray(record["means"], dtype=float),
        stds=np.asarray(record["stds"], dtype=float),
        weights=np.asarray(record["weights"], dtype=float),
        lr=record["lr"],
        epochs=record["epochs"],
        loss_history=list(record["loss_history"]),
    )
