"""Labeled corpora: manifest IO, chunking, splits, and synthetic data.

A corpus is a list of documents with contiguous integer difficulty classes
(0 = easiest). On disk it is a TSV manifest pointing at plain-text files;
in memory it is a ``LabeledCorpus``. Splitting is always stratified so
class balance survives, and the synthetic generator produces corpora whose
difficulty signal is known by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import (
    BadRow,
    ClassSmallerThanK,
    EmptyClass,
    EmptyCorpus,
    EmptyDocument,
    MissingFile,
    NonContiguousClasses,
)
from .textseg import Document


@dataclass(frozen=True)
class LabeledCorpus:
    """Documents with aligned class labels and index-ordered class names."""

    documents: tuple[Document, ...]
    labels: tuple[int, ...]
    class_names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def subset(self, indices: Sequence[int]) -> "LabeledCorpus":
        return LabeledCorpus(
            tuple(self.documents[i] for i in indices),
            tuple(self.labels[i] for i in indices),
            self.class_names,
        )


def load_document(path) -> Document:
    """Read one plain-text document; its id is the file name stem."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MissingFile(f"document not found: {path}") from None
    return Document(path.stem, text, source=str(path))


MANIFEST_HEADER = "doc_path\tclass_name\tclass_index"


def load_manifest(path) -> LabeledCorpus:
    """Load a TSV manifest: header row, then one document per row.

    The header is ``doc_path<TAB>class_name<TAB>class_index``; lines
    starting with ``#`` are comments. Relative document paths are resolved
    against the manifest's directory. Class indexes must cover 0..max
    without gaps, and a class index must always pair with the same name.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise MissingFile(f"manifest not found: {path}") from None
    documents: list[Document] = []
    labels: list[int] = []
    names: dict[int, str] = {}
    seen_ids: set[str] = set()
    header_seen = False
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        if not header_seen:
            if line != MANIFEST_HEADER:
                raise BadRow(lineno, f"expected header {MANIFEST_HEADER!r}, got {line!r}")
            header_seen = True
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise BadRow(lineno, f"expected 3 tab-separated fields, got {len(fields)}")
        doc_path, class_name, index_text = fields
        if not doc_path or not class_name:
            raise BadRow(lineno, "empty doc_path or class_name")
        try:
            class_index = int(index_text)
        except ValueError:
            raise BadRow(lineno, f"class_index is not an integer: {index_text!r}") from None
        if class_index < 0:
            raise BadRow(lineno, f"class_index must be >= 0, got {class_index}")
        if class_index in names and names[class_index] != class_name:
            raise BadRow(
                lineno,
                f"class {class_index} named both {names[class_index]!r} and {class_name!r}",
            )
        if class_name in {n for i, n in names.items() if i != class_index}:
            raise BadRow(lineno, f"class name {class_name!r} reused for a second index")
        names[class_index] = class_name
        resolved = Path(doc_path)
        if not resolved.is_absolute():
            resolved = path.parent / resolved
        doc = load_document(resolved)
        if doc.id in seen_ids:
            raise BadRow(lineno, f"duplicate document id {doc.id!r}")
        seen_ids.add(doc.id)
        documents.append(doc)
        labels.append(class_index)
    if not documents:
        raise EmptyCorpus(f"manifest has no rows: {path}")
    if set(names) != set(range(max(names) + 1)):
        raise NonContiguousClasses(
            f"class indexes {sorted(names)} do not cover 0..{max(names)}"
        )
    class_names = tuple(names[i] for i in range(len(names)))
    return LabeledCorpus(tuple(documents), tuple(labels), class_names)


def save_corpus(corpus: LabeledCorpus, out_dir, meta_line: Optional[str] = None) -> Path:
    """Write one text file per document plus a manifest; returns its path.

    ``meta_line`` becomes a leading ``#`` comment in the manifest.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = [f"# {meta_line}"] if meta_line else []
    rows.append(MANIFEST_HEADER)
    for doc, label in zip(corpus.documents, corpus.labels):
        file_name = f"{doc.id}.txt"
        (out_dir / file_name).write_text(doc.raw_text, encoding="utf-8")
        rows.append(f"{file_name}\t{corpus.class_names[label]}\t{label}")
    manifest = out_dir / "manifest.tsv"
    manifest.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return manifest


# -- chunking ---------------------------------------------------------------


def chunk_document(doc: Document, n_sentences: int, min_tail: int = 1) -> list[Document]:
    """Split a document into runs of ``n_sentences`` consecutive sentences.

    Chunk ids are ``{doc_id}#{k}``. A final chunk shorter than ``min_tail``
    sentences is appended to the previous chunk instead of standing alone.
    """
    if n_sentences < 1:
        raise ValueError("n_sentences must be >= 1")
    if min_tail < 1:
        raise ValueError("min_tail must be >= 1")
    texts = doc.sentence_texts
    if not texts:
        raise EmptyDocument(f"document {doc.id!r} has no sentences")
    groups = [list(texts[i : i + n_sentences]) for i in range(0, len(texts), n_sentences)]
    if len(groups) > 1 and len(groups[-1]) < min_tail:
        groups[-2].extend(groups.pop())
    return [
        Document(f"{doc.id}#{k}", " ".join(group)) for k, group in enumerate(groups)
    ]


def chunk_corpus(corpus: LabeledCorpus, n_sentences: int, min_tail: int = 1) -> LabeledCorpus:
    """Chunk every document; each chunk inherits its source document's label."""
    documents: list[Document] = []
    labels: list[int] = []
    for doc, label in zip(corpus.documents, corpus.labels):
        for chunk in chunk_document(doc, n_sentences, min_tail):
            documents.append(chunk)
            labels.append(label)
    return LabeledCorpus(tuple(documents), tuple(labels), corpus.class_names)


# -- splitting ----------------------------------------------------------------


@dataclass(frozen=True)
class Split:
    """Index triple into a corpus; each part is sorted ascending."""

    train: tuple[int, ...]
    val: tuple[int, ...]
    test: tuple[int, ...]


def _class_members(labels: Sequence[int]) -> list[list[int]]:
    if not labels:
        raise EmptyCorpus("no labels to split")
    n_classes = max(labels) + 1
    members: list[list[int]] = [[] for _ in range(n_classes)]
    for index, label in enumerate(labels):
        members[label].append(index)
    for label, group in enumerate(members):
        if not group:
            raise EmptyClass(f"class {label} has no documents")
    return members


def _allocate(count: int, ratios: Sequence[float]) -> list[int]:
    """Largest-remainder seat allocation; ties prefer later splits."""
    exact = [count * r for r in ratios]
    seats = [int(e) for e in exact]
    leftover = count - sum(seats)
    order = sorted(range(len(ratios)), key=lambda i: (-(exact[i] - seats[i]), i))
    for i in order[:leftover]:
        seats[i] += 1
    return seats


def stratified_split(
    labels: Sequence[int],
    ratios: Sequence[float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> Split:
    """Shuffle each class with the seed and cut it by the three ratios.

    Within every class the part sizes come from largest-remainder rounding
    of ``ratios``, so the realized proportions are as close to the request
    as integer counts allow.
    """
    if len(ratios) != 3:
        raise ValueError("ratios must have three entries (train, val, test)")
    if any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must be non-negative and sum to 1")
    rng = random.Random(seed)
    parts: list[list[int]] = [[], [], []]
    for group in _class_members(labels):
        shuffled = group[:]
        rng.shuffle(shuffled)
        n_train, n_val, _ = _allocate(len(group), ratios)
        parts[0].extend(shuffled[:n_train])
        parts[1].extend(shuffled[n_train : n_train + n_val])
        parts[2].extend(shuffled[n_train + n_val :])
    return Split(*(tuple(sorted(p)) for p in parts))


def stratified_kfold(labels: Sequence[int], k: int, seed: int = 0) -> list[Split]:
    """k rotated splits: fold i tests, fold i+1 (mod k) validates, rest train.

    Folds are stratified: each class is shuffled once with the seed and
    dealt round-robin, so fold sizes per class differ by at most one.
    """
    if k < 3:
        raise ValueError("k must be >= 3 so every rotation has a train part")
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for label, group in enumerate(_class_members(labels)):
        if len(group) < k:
            raise ClassSmallerThanK(
                f"class {label} has {len(group)} documents, fewer than k={k}"
            )
        shuffled = group[:]
        rng.shuffle(shuffled)
        for position, index in enumerate(shuffled):
            folds[position % k].append(index)
    splits = []
    for i in range(k):
        test = folds[i]
        val = folds[(i + 1) % k]
        train = [
            index
            for j, fold in enumerate(folds)
            if j != i and j != (i + 1) % k
            for index in fold
        ]
        splits.append(Split(tuple(sorted(train)), tuple(sorted(val)), tuple(sorted(test))))
    return splits


# -- synthetic corpora --------------------------------------------------------

_CONSONANTS = "bdfgklmnprst"
_VOWELS = "aiou"


def _make_word(rng: random.Random, n_syllables: int) -> str:
    # consonant-vowel syllables only: the syllable count is unambiguous
    return "".join(rng.choice(_CONSONANTS) + rng.choice(_VOWELS) for _ in range(n_syllables))


def generate_synthetic(
    n_classes: int,
    docs_per_class: int,
    seed: int = 0,
    sentences_per_doc: tuple[int, int] = (20, 40),
) -> LabeledCorpus:
    """Build a corpus whose difficulty grows with the class index.

    Class c draws sentence lengths around ``6 + 4c`` words and uses hard
    words (4-5 syllables, hence long and polysyllabic) at rate
    ``0.05 + 0.15c``; easy words have 1-2 syllables. The same seed always
    yields byte-identical documents.
    """
    if n_classes < 2:
        raise ValueError("a graded corpus needs at least two classes")
    if docs_per_class < 1:
        raise ValueError("need at least one document per class")
    lo, hi = sentences_per_doc
    if lo < 1 or hi < lo:
        raise ValueError("sentences_per_doc must be an increasing range from >= 1")
    rng = random.Random(seed)
    easy_vocab = [_make_word(rng, rng.choice((1, 2))) for _ in range(160)]
    hard_vocab = [_make_word(rng, rng.choice((4, 5))) for _ in range(80)]
    documents = []
    labels = []
    for label in range(n_classes):
        mean_len = 6 + 4 * label
        hard_rate = 0.05 + 0.15 * label
        for d in range(docs_per_class):
            sentences = []
            for _ in range(rng.randint(lo, hi)):
                length = max(3, round(rng.gauss(mean_len, 2.0)))
                words = [
                    rng.choice(hard_vocab if rng.random() < hard_rate else easy_vocab)
                    for _ in range(length)
                ]
                words[0] = words[0].capitalize()
                sentences.append(" ".join(words) + ".")
            documents.append(Document(f"synth-{label}-{d}", " ".join(sentences)))
            labels.append(label)
    class_names = tuple(f"level-{c}" for c in range(n_classes))
    return LabeledCorpus(tuple(documents), tuple(labels), class_names)
