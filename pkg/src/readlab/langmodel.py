"""Token-likelihood providers and perplexity.

A likelihood provider turns a tokenized sentence into one probability per
token. Two backends are shipped: a trainable smoothed n-gram model, and an
adapter over precomputed per-token scores so that externally trained models
(neural or otherwise) can plug into the same scoring pipeline through a
JSONL file.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    EmptyCorpus,
    EmptyDocument,
    EmptyInput,
    EmptySentence,
    MissingDocument,
    MissingFile,
    ProviderFailure,
    SchemaError,
    VersionMismatch,
)
from .textseg import Document

UNK = "<unk>"
BOS = "<s>"
EOS = "</s>"

SMOOTHING_METHODS = ("add-k", "witten-bell")

MODEL_FORMAT = "readlab-ngram"
MODEL_VERSION = "v1"


@dataclass(frozen=True)
class TokenScore:
    """One scored token: surface form, model probability, OOV flag."""

    token: str
    probability: float
    oov: bool


class LikelihoodProvider:
    """Contract: one ``TokenScore`` per input token, in input order.

    ``doc_id`` and ``sent_index`` identify the sentence for backends keyed
    by document (the precomputed adapter); context-free backends ignore them.
    """

    def score_sentence(
        self,
        tokens: Sequence[str],
        doc_id: Optional[str] = None,
        sent_index: Optional[int] = None,
    ) -> list[TokenScore]:
        raise NotImplementedError


class NGramModel(LikelihoodProvider):
    """Smoothed n-gram model over per-sentence token sequences.

    Sentences are padded with ``order - 1`` begin markers; for order >= 2 an
    end marker is appended and predicted like any other event, so each
    conditional distribution sums to one over the event vocabulary
    (real tokens + the unknown marker + the end marker). Tokens below
    ``min_count`` in the training corpus are folded into the unknown marker.
    Trained models are immutable and safe to query concurrently.
    """

    def __init__(
        self,
        order: int,
        smoothing: str,
        k: float,
        min_count: int,
        vocab: frozenset[str],
        counts: dict[int, dict[tuple[str, ...], Counter]],
    ):
        self.order = order
        self.smoothing = smoothing
        self.k = k
        self.min_count = min_count
        self.vocab = vocab
        self.counts = counts
        self.totals = {
            m: {ctx: sum(events.values()) for ctx, events in table.items()}
            for m, table in counts.items()
        }
        specials = [UNK] + ([EOS] if order >= 2 else [])
        self.event_vocab = tuple(sorted(vocab) + specials)
        self._event_set = frozenset(self.event_vocab)

    # -- training -------------------------------------------------------

    @classmethod
    def train(
        cls,
        sentences: Iterable[Sequence[str]],
        order: int,
        smoothing: str = "add-k",
        k: float = 1.0,
        min_count: int = 1,
    ) -> "NGramModel":
        if order < 1:
            raise ValueError("order must be >= 1")
        if smoothing not in SMOOTHING_METHODS:
            raise ValueError(f"unknown smoothing: {smoothing!r}")
        if smoothing == "add-k" and k <= 0:
            raise ValueError("k must be > 0")
        sentences = [list(s) for s in sentences if s]
        raw_counts = Counter(tok for sent in sentences for tok in sent)
        if not raw_counts:
            raise EmptyCorpus("no tokens in training corpus")
        vocab = frozenset(t for t, c in raw_counts.items() if c >= min_count)

        counts: dict[int, dict[tuple[str, ...], Counter]] = {
            m: {} for m in range(1, order + 1)
        }
        for sent in sentences:
            mapped = [t if t in vocab else UNK for t in sent]
            padded = [BOS] * (order - 1) + mapped
            if order >= 2:
                padded.append(EOS)
            for pos in range(order - 1, len(padded)):
                event = padded[pos]
                for m in range(1, order + 1):
                    ctx = tuple(padded[pos - m + 1 : pos])
                    table = counts[m].setdefault(ctx, Counter())
                    table[event] += 1
        return cls(order, smoothing, k, min_count, vocab, counts)

    # -- scoring ----------------------------------------------------------

    def conditional(self, word: str, context: tuple[str, ...]) -> float:
        """P(word | context) for an unk-mapped word and padded context."""
        if word not in self._event_set:
            raise ValueError(f"{word!r} is not in the event vocabulary")
        if self.smoothing == "add-k":
            events = self.counts[self.order].get(context)
            c_hw = events[word] if events else 0
            c_h = self.totals[self.order].get(context, 0)
            return (c_hw + self.k) / (c_h + self.k * len(self.event_vocab))
        return self._witten_bell(word, context, self.order)

    def _witten_bell(self, word: str, context: tuple[str, ...], m: int) -> float:
        if m == 1:
            events = self.counts[1][()]
            total = self.totals[1][()]
            distinct = len(events)
            uniform = 1.0 / len(self.event_vocab)
            return (events.get(word, 0) + distinct * uniform) / (total + distinct)
        events = self.counts[m].get(context)
        if not events:
            return self._witten_bell(word, context[1:], m - 1)
        total = self.totals[m][context]
        distinct = len(events)
        backoff = self._witten_bell(word, context[1:], m - 1)
        return (events.get(word, 0) + distinct * backoff) / (total + distinct)

    def map_token(self, token: str) -> str:
        return token if token in self.vocab else UNK

    def score_sentence(
        self,
        tokens: Sequence[str],
        doc_id: Optional[str] = None,
        sent_index: Optional[int] = None,
    ) -> list[TokenScore]:
        if not tokens:
            raise EmptySentence("cannot score an empty sentence")
        history = [BOS] * (self.order - 1)
        scores = []
        for token in tokens:
            mapped = self.map_token(token)
            context = tuple(history[len(history) - (self.order - 1):]) if self.order > 1 else ()
            prob = self.conditional(mapped, context)
            scores.append(TokenScore(token, prob, oov=mapped == UNK))
            history.append(mapped)
        return scores


def train_ngram(
    sentences: Iterable[Sequence[str]],
    order: int,
    smoothing: str = "add-k",
    k: float = 1.0,
    min_count: int = 1,
) -> NGramModel:
    """Train a smoothed n-gram model on an iterable of token lists."""
    return NGramModel.train(sentences, order, smoothing=smoothing, k=k, min_count=min_count)


# -- perplexity -----------------------------------------------------------


def perplexity(scores: Sequence[TokenScore]) -> float:
    """exp of the mean per-token negative log probability."""
    if not scores:
        raise EmptyInput("perplexity of an empty score list is undefined")
    nll = -sum(math.log(s.probability) for s in scores)
    return math.exp(nll / len(scores))


def document_perplexity(provider: LikelihoodProvider, doc: Document) -> float:
    """Perplexity over all token scores of a document, in sentence order."""
    scores: list[TokenScore] = []
    for index, sent in enumerate(doc.sentences):
        if not sent:
            continue
        scores.extend(provider.score_sentence(sent, doc_id=doc.id, sent_index=index))
    if not scores:
        raise EmptyDocument(f"document {doc.id!r} has no tokens")
    return perplexity(scores)


# -- precomputed scores ----------------------------------------------------


class PrecomputedScores(LikelihoodProvider):
    """Provider backed by a score file, keyed by doc id and sentence index."""

    def __init__(self, by_doc: dict[str, list[list[TokenScore]]]):
        self.by_doc = by_doc

    def score_sentence(
        self,
        tokens: Sequence[str],
        doc_id: Optional[str] = None,
        sent_index: Optional[int] = None,
    ) -> list[TokenScore]:
        if doc_id is None or sent_index is None:
            raise ProviderFailure("precomputed scores require doc_id and sent_index")
        if doc_id not in self.by_doc:
            raise MissingDocument(f"no precomputed scores for document {doc_id!r}")
        sentences = self.by_doc[doc_id]
        if sent_index >= len(sentences):
            raise ProviderFailure(
                f"document {doc_id!r} has {len(sentences)} stored sentences, "
                f"index {sent_index} requested"
            )
        stored = sentences[sent_index]
        if len(stored) != len(tokens):
            raise ProviderFailure(
                f"document {doc_id!r} sentence {sent_index}: "
                f"{len(stored)} stored scores for {len(tokens)} tokens"
            )
        for position, (score, token) in enumerate(zip(stored, tokens)):
            if score.token != token:
                raise ProviderFailure(
                    f"document {doc_id!r} sentence {sent_index} position {position}: "
                    f"stored token {score.token!r} != input token {token!r}"
                )
        return list(stored)


def load_precomputed(path) -> PrecomputedScores:
    """Load a JSONL score file.

    One object per line and per document:
    ``{"doc_id": str, "sentences": [[{"token": str, "logprob": float,
    "oov": bool}, ...], ...]}`` with natural-log probabilities (<= 0).
    Empty sentences are stored as empty lists so sentence indices line up
    with the segmented document.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except FileNotFoundError:
        raise MissingFile(f"precomputed score file not found: {path}") from None
    by_doc: dict[str, list[list[TokenScore]]] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as err:
            raise SchemaError(lineno, f"invalid JSON: {err}") from None
        if not isinstance(record, dict) or "doc_id" not in record or "sentences" not in record:
            raise SchemaError(lineno, "expected object with doc_id and sentences")
        doc_id = record["doc_id"]
        if not isinstance(doc_id, str):
            raise SchemaError(lineno, "doc_id must be a string")
        if doc_id in by_doc:
            raise SchemaError(lineno, f"duplicate doc_id {doc_id!r}")
        if not isinstance(record["sentences"], list):
            raise SchemaError(lineno, "sentences must be a list")
        sentences = []
        for sent in record["sentences"]:
            if not isinstance(sent, list):
                raise SchemaError(lineno, "each sentence must be a list of token objects")
            scores = []
            for item in sent:
                if not isinstance(item, dict) or not {"token", "logprob", "oov"} <= item.keys():
                    raise SchemaError(lineno, "token object needs token, logprob, oov")
                logprob = item["logprob"]
                if not isinstance(logprob, (int, float)) or logprob > 0 or math.isnan(logprob):
                    raise SchemaError(lineno, f"logprob must be <= 0, got {logprob!r}")
                scores.append(
                    TokenScore(str(item["token"]), math.exp(logprob), bool(item["oov"]))
                )
            sentences.append(scores)
        by_doc[doc_id] = sentences
    return PrecomputedScores(by_doc)


def export_precomputed(provider: LikelihoodProvider, docs: Iterable[Document], path) -> None:
    """Write a provider's scores for the given documents in the JSONL schema."""
    with open(path, "w", encoding="utf-8") as handle:
        for doc in docs:
            sentences = []
            for index, sent in enumerate(doc.sentences):
                if not sent:
                    sentences.append([])
                    continue
                scores = provider.score_sentence(sent, doc_id=doc.id, sent_index=index)
                sentences.append(
                    [
                        {"token": s.token, "logprob": math.log(s.probability), "oov": s.oov}
                        for s in scores
                    ]
                )
            handle.write(json.dumps({"doc_id": doc.id, "sentences": sentences}) + "\n")


# -- model persistence ------------------------------------------------------

_HEADER = re.compile(
    r"^readlab-ngram v1 order=(\d+) smoothing=(\S+) k=([0-9.eE+-]+)$"
)


def save_model(model: NGramModel, path) -> None:
    """Write the model as ARPA-style text: header, counts sections, end mark.

    The min_count mapping is already baked into the stored counts (rare
    tokens appear as the unknown marker), so it is not part of the header.
    """
    lines = [
        f"{MODEL_FORMAT} {MODEL_VERSION} order={model.order} "
        f"smoothing={model.smoothing} k={model.k!r}",
        "",
        "\\data\\",
    ]
    flat: dict[int, list[tuple[tuple[str, ...], int]]] = {}
    for m in range(1, model.order + 1):
        rows = []
        for ctx, events in model.counts[m].items():
            for event, count in events.items():
                rows.append((ctx + (event,), count))
        rows.sort()
        flat[m] = rows
        lines.append(f"ngram {m}={len(rows)}")
    for m in range(1, model.order + 1):
        lines.append("")
        lines.append(f"\\{m}-grams:")
        for gram, count in flat[m]:
            lines.append(f"{count}\t{' '.join(gram)}")
    lines.append("")
    lines.append("\\end\\")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def load_model(path) -> NGramModel:
    """Read a model written by :func:`save_model`; exact count round-trip."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except FileNotFoundError:
        raise MissingFile(f"model file not found: {path}") from None
    if not lines:
        raise VersionMismatch("empty model file")
    header = _HEADER.match(lines[0])
    if header is None:
        raise VersionMismatch(
            f"unrecognized model header: {lines[0][:80]!r} "
            f"(expected '{MODEL_FORMAT} {MODEL_VERSION} ...')"
        )
    order = int(header.group(1))
    smoothing = header.group(2)
    k = float(header.group(3))
    if smoothing not in SMOOTHING_METHODS:
        raise VersionMismatch(f"unknown smoothing in header: {smoothing!r}")

    counts: dict[int, dict[tuple[str, ...], Counter]] = {m: {} for m in range(1, order + 1)}
    current: Optional[int] = None
    for lineno, line in enumerate(lines[1:], start=2):
        text = line.strip()
        if not text or text == "\\data\\" or text.startswith("ngram "):
            continue
        if text == "\\end\\":
            break
        section = re.match(r"^\\(\d+)-grams:$", text)
        if section:
            current = int(section.group(1))
            if current < 1 or current > order:
                raise VersionMismatch(f"line {lineno}: section order {current} out of range")
            continue
        if current is None:
            raise VersionMismatch(f"line {lineno}: counts outside a grams section")
        try:
            count_text, gram_text = text.split("\t", 1)
            count = int(count_text)
            gram = tuple(gram_text.split(" "))
        except ValueError:
            raise VersionMismatch(f"line {lineno}: malformed count row {text!r}") from None
        if len(gram) != current:
            raise VersionMismatch(f"line {lineno}: {len(gram)}-gram in \\{current}-grams")
        if count > 0:
            table = counts[current].setdefault(gram[:-1], Counter())
            table[gram[-1]] += count
    unigrams = counts.get(1, {}).get((), Counter())
    vocab = frozenset(t for t in unigrams if t not in (UNK, EOS))
    if current is None:
        raise VersionMismatch("model file has no counts sections")
    return NGramModel(order, smoothing, k, 1, vocab, counts)
