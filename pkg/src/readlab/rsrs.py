"""Ranked sentence readability score.

A sentence's tokens are sorted by how surprising the language model found
them; each token's negative log probability is then weighted by the square
root of its rank, so the hardest words dominate. Out-of-vocabulary tokens
get double weight: the model's smoothed guess understates how unexpected
an unseen word really is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyDocument, EmptySentence, InvalidProbability
from .langmodel import LikelihoodProvider, TokenScore
from .textseg import Document


def wnll(probability: float) -> float:
    """Word negative log likelihood, -ln(p)."""
    if not 0.0 < probability <= 1.0 or math.isnan(probability):
        raise InvalidProbability(f"probability must be in (0, 1], got {probability!r}")
    return -math.log(probability)


@dataclass(frozen=True)
class RankedWord:
    """A token's loss and the weight its rank earned it."""

    token: str
    loss: float
    rank: int
    weight: float
    oov: bool


def rank_words(scores: Sequence[TokenScore]) -> list[RankedWord]:
    """Sort tokens by ascending loss and attach sqrt-of-rank weights.

    The sort is stable, so tokens with equal loss keep input order and
    still receive distinct consecutive ranks. OOV tokens get twice the
    weight of an in-vocabulary token at the same rank.
    """
    if not scores:
        raise EmptySentence("cannot rank an empty score list")
    losses = [wnll(s.probability) for s in scores]
    order = sorted(range(len(scores)), key=lambda i: losses[i])
    ranked = []
    for rank, i in enumerate(order, start=1):
        weight = math.sqrt(rank)
        if scores[i].oov:
            weight *= 2.0
        ranked.append(RankedWord(scores[i].token, losses[i], rank, weight, scores[i].oov))
    return ranked


def sentence_rsrs(scores: Sequence[TokenScore]) -> float:
    """Mean of rank-weighted losses over the sentence's tokens."""
    ranked = rank_words(scores)
    return sum(w.weight * w.loss for w in ranked) / len(ranked)


def document_rsrs(
    provider: LikelihoodProvider,
    doc: Document,
    per_sentence: Optional[list[float]] = None,
) -> float:
    """Unweighted mean of sentence scores over non-empty sentences.

    Pass ``per_sentence`` to also collect each sentence's score.
    """
    values = []
    for index, sent in enumerate(doc.sentences):
        if not sent:
            continue
        scores = provider.score_sentence(sent, doc_id=doc.id, sent_index=index)
        values.append(sentence_rsrs(scores))
    if not values:
        raise EmptyDocument(f"document {doc.id!r} has no scorable sentences")
    if per_sentence is not None:
        per_sentence.extend(values)
    return sum(values) / len(values)
