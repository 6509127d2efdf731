"""Readability assessment toolkit.

Surface readability formulas, n-gram language models with a pluggable
likelihood-provider interface, a rank-weighted sentence difficulty score,
ordinal evaluation metrics, corpus management, and a feature-based
baseline classifier. See the ``readlab`` command for the CLI.
"""

__version__ = "0.1.0"

from .baseline import (
    FeatureSpec,
    LogRegModel,
    featurize,
    featurize_corpus,
    load_classifier,
    loss_and_gradient,
    save_classifier,
    train_logreg,
)
from .corpus import (
    LabeledCorpus,
    chunk_corpus,
    chunk_document,
    generate_synthetic,
    load_document,
    load_manifest,
    save_corpus,
    stratified_kfold,
    stratified_split,
)
from .formulas import (
    HIGHER_IS_EASIER,
    MEASURES,
    FormulaConfig,
    MeasureReport,
    compute,
    direction,
    score_all,
)
from .langmodel import (
    NGramModel,
    LikelihoodProvider,
    PrecomputedScores,
    TokenScore,
    document_perplexity,
    export_precomputed,
    load_model,
    load_precomputed,
    perplexity,
    save_model,
    train_ngram,
)
from .metrics import (
    ClassificationReport,
    ConfusionMatrix,
    classification_metrics,
    confusion,
    pearson,
    qwk,
    rank_measures,
)
from .rsrs import document_rsrs, rank_words, sentence_rsrs, wnll
from .textseg import (
    Document,
    StatProfile,
    SyllableProfile,
    WordList,
    count_syllables,
    profile,
    split_sentences,
    tokenize_words,
)

__all__ = [
    "__version__",
    "ClassificationReport",
    "ConfusionMatrix",
    "Document",
    "FeatureSpec",
    "FormulaConfig",
    "HIGHER_IS_EASIER",
    "LabeledCorpus",
    "LikelihoodProvider",
    "LogRegModel",
    "MEASURES",
    "MeasureReport",
    "NGramModel",
    "PrecomputedScores",
    "StatProfile",
    "SyllableProfile",
    "TokenScore",
    "WordList",
    "chunk_corpus",
    "chunk_document",
    "classification_metrics",
    "compute",
    "confusion",
    "count_syllables",
    "direction",
    "document_perplexity",
    "document_rsrs",
    "export_precomputed",
    "featurize",
    "featurize_corpus",
    "generate_synthetic",
    "load_classifier",
    "load_document",
    "load_manifest",
    "load_model",
    "load_precomputed",
    "loss_and_gradient",
    "pearson",
    "perplexity",
    "profile",
    "qwk",
    "rank_measures",
    "rank_words",
    "save_classifier",
    "save_corpus",
    "save_model",
    "score_all",
    "sentence_rsrs",
    "split_sentences",
    "stratified_kfold",
    "stratified_split",
    "tokenize_words",
    "train_logreg",
    "train_ngram",
    "wnll",
]
