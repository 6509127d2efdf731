"""Deterministic sentence/word segmentation and surface-count profiles.

The splitter is rule-based on purpose: a fixed abbreviation list and a fixed
token pattern mean that identical input bytes always produce identical
segmentation, with no external models or downloads involved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import MissingFile

# Version of the segmentation rules (abbreviation list + token pattern).
# Bump whenever either changes, so stored results can be traced to the rules
# that produced them.
SEGMENTER_VERSION = "1"

# Words after which a period does not end a sentence. Lowercase, no trailing
# dot; multi-dot abbreviations keep their internal dots ("e.g" matches "e.g.").
ABBREVIATIONS = frozenset({
    # titles
    "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "st", "sr", "jr",
    # latin & common
    "e.g", "i.e", "cf", "etc", "vs", "al", "ca", "approx", "viz",
    # corporate
    "inc", "ltd", "corp", "co",
    # months
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
    "oct", "nov", "dec",
    # references
    "no", "nos", "vol", "vols", "fig", "figs", "p", "pp", "ch", "sec",
    # slovenian
    "npr", "itd", "itn", "t.i", "oz", "str", "ipd",
})

_TERMINAL_RUN = re.compile(r"[.!?…]+[)\]\"'”»]*")

# A token is a run of letters/digits; apostrophes and hyphens join runs,
# and a period/comma joins digit runs (3,000 / 3.14 stay one token).
_TOKEN = re.compile(r"[^\W_]+(?:['’-][^\W_]+|(?<=\d)[.,]\d+)*", re.UNICODE)

_WORD_BEFORE = re.compile(r"\S+$")


def split_sentences(text: str) -> list[str]:
    """Split text into sentences at terminal punctuation (. ! ? ...).

    A period does not split when the preceding word is a known abbreviation,
    a single-letter initial, or a bare number directly followed by another
    digit. Trailing text without terminal punctuation becomes the final
    sentence, so no non-whitespace input is ever dropped.
    """
    sentences: list[str] = []
    start = 0
    for match in _TERMINAL_RUN.finditer(text):
        end = match.end()
        if end < len(text) and not text[end].isspace():
            continue
        if _protected_period(text, match):
            continue
        piece = text[start:end].strip()
        if piece:
            sentences.append(piece)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _protected_period(text: str, match: re.Match) -> bool:
    """True when a '.'-only terminal run belongs to the preceding word."""
    run = match.group()
    if any(ch in run for ch in "!?…"):
        return False
    word_match = _WORD_BEFORE.search(text, 0, match.start())
    if word_match is None:
        return False
    word = word_match.group().lstrip("([{\"'“«").lower()
    if word in ABBREVIATIONS:
        return True
    if len(word) == 1 and word.isalpha():
        return True  # initials: "J. Smith"
    if word.isdigit():
        rest = text[match.end():].lstrip()
        if rest and rest[0].isdigit():
            return True
    return False


def tokenize_words(sentence: str) -> list[str]:
    """Extract word tokens; punctuation is dropped, case preserved."""
    return _TOKEN.findall(sentence)


@dataclass(frozen=True)
class SyllableProfile:
    """Per-language inputs to the vowel-group syllable heuristic."""

    name: str
    vowels: str
    silent_final_e: bool
    restore_le: bool


EN_SYLLABLES = SyllableProfile("en", "aeiouy", silent_final_e=True, restore_le=True)
SL_SYLLABLES = SyllableProfile("sl", "aeiou", silent_final_e=False, restore_le=False)

SYLLABLE_PROFILES = {"en": EN_SYLLABLES, "sl": SL_SYLLABLES}


def count_syllables(word: str, profile: SyllableProfile = EN_SYLLABLES) -> int:
    """Count syllables as maximal vowel groups, never fewer than one.

    The English profile treats a final "e" after another syllable as silent
    ("make" -> 1) unless it ends a consonant+"le" cluster ("table" -> 2).
    Tokens without letters (e.g. "3,000") count as one spoken unit.
    """
    letters = "".join(ch for ch in word.lower() if ch.isalpha())
    if not letters:
        return 1
    vowels = profile.vowels
    groups = 0
    prev_vowel = False
    for ch in letters:
        is_vowel = ch in vowels
        if is_vowel and not prev_vowel:
            groups += 1
        prev_vowel = is_vowel
    if profile.silent_final_e and groups > 1 and letters.endswith("e"):
        keeps_le = (
            profile.restore_le
            and len(letters) >= 3
            and letters.endswith("le")
            and letters[-3] not in vowels
        )
        if not keeps_le:
            groups -= 1
    return max(1, groups)


class Document:
    """A document with lazily computed, cached segmentation.

    ``sentences`` holds one token list per sentence (possibly empty for
    punctuation-only fragments); ``sentence_texts`` holds the raw sentence
    strings in the same order. Re-segmenting identical raw text always
    reproduces the same result.
    """

    __slots__ = ("id", "raw_text", "source", "_sentence_texts", "_sentences")

    def __init__(
        self,
        doc_id: str,
        raw_text: str,
        sentence_texts: Optional[list[str]] = None,
        sentences: Optional[list[list[str]]] = None,
        source: Optional[str] = None,
    ):
        self.id = doc_id
        self.raw_text = raw_text
        self.source = source
        self._sentence_texts = sentence_texts
        self._sentences = sentences

    def _segment(self) -> None:
        self._sentence_texts = split_sentences(self.raw_text)
        self._sentences = [tokenize_words(s) for s in self._sentence_texts]

    @property
    def sentence_texts(self) -> list[str]:
        if self._sentence_texts is None:
            self._segment()
        return self._sentence_texts

    @property
    def sentences(self) -> list[list[str]]:
        if self._sentences is None:
            self._segment()
        return self._sentences

    def tokens(self) -> list[str]:
        return [tok for sent in self.sentences for tok in sent]

    def __repr__(self) -> str:
        return f"Document(id={self.id!r}, chars={len(self.raw_text)})"


class WordList:
    """Known-word list for difficult-word counting; lookups are lowercase."""

    def __init__(self, words: Iterable[str]):
        self.words = frozenset(w.lower() for w in words)

    @classmethod
    def load(cls, path) -> "WordList":
        """Read one word per line; blank lines and '#' comments are skipped."""
        try:
            with open(path, encoding="utf-8") as handle:
                lines = handle.read().splitlines()
        except FileNotFoundError:
            raise MissingFile(f"word list not found: {path}") from None
        words = []
        for line in lines:
            entry = line.split("#", 1)[0].strip()
            if entry:
                words.append(entry)
        return cls(words)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)


# Tokens longer than this many characters count as "long" words.
LONG_WORD_THRESHOLD = 7

# Tokens with at least this many syllables count as polysyllables.
POLYSYLLABLE_MIN = 3


@dataclass(frozen=True)
class StatProfile:
    """Surface counts consumed by the traditional readability formulas."""

    total_words: int
    total_sentences: int
    total_syllables: int
    total_characters: int
    long_words: int
    polysyllables: int
    difficult_words: int

    def as_dict(self) -> dict[str, int]:
        return {
            "total_words": self.total_words,
            "total_sentences": self.total_sentences,
            "total_syllables": self.total_syllables,
            "total_characters": self.total_characters,
            "long_words": self.long_words,
            "polysyllables": self.polysyllables,
            "difficult_words": self.difficult_words,
        }


def profile(
    doc: Document,
    wordlist: Optional[WordList] = None,
    lang_profile: SyllableProfile = EN_SYLLABLES,
) -> StatProfile:
    """Compute the surface-count profile of a segmented document.

    ``difficult_words`` counts tokens absent from ``wordlist``; with no
    word list (or an empty one) it falls back to the long-word count.
    ``total_characters`` counts alphanumeric characters inside word tokens
    only. Zero-sentence documents yield an all-zero profile; the formulas
    reject those downstream.
    """
    words = 0
    syllables = 0
    characters = 0
    long_words = 0
    poly = 0
    difficult = 0
    use_wordlist = wordlist is not None and len(wordlist) > 0
    for sent in doc.sentences:
        for token in sent:
            words += 1
            n_syll = count_syllables(token, lang_profile)
            syllables += n_syll
            characters += sum(1 for ch in token if ch.isalnum())
            if len(token) > LONG_WORD_THRESHOLD:
                long_words += 1
            if n_syll >= POLYSYLLABLE_MIN:
                poly += 1
            if use_wordlist and token not in wordlist:
                difficult += 1
    if not use_wordlist:
        difficult = long_words
    return StatProfile(
        total_words=words,
        total_sentences=len(doc.sentences),
        total_syllables=syllables,
        total_characters=characters,
        long_words=long_words,
        polysyllables=poly,
        difficult_words=difficult,
    )
