"""Traditional readability formulas computed from a surface-count profile.

All formulas are closed-form functions of word/sentence/syllable/character
counts. Every score grows with text difficulty except Flesch reading ease,
which assigns higher values to easier text.

References:
    GFI:  https://en.wikipedia.org/wiki/Gunning_fog_index
    FRE/FKGL: https://en.wikipedia.org/wiki/Flesch%E2%80%93Kincaid_readability_tests
    ARI:  https://en.wikipedia.org/wiki/Automated_readability_index
    DCRF: https://en.wikipedia.org/wiki/Dale%E2%80%93Chall_readability_formula
    SMOG: https://en.wikipedia.org/wiki/SMOG
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DegenerateProfile
from .textseg import Document, EN_SYLLABLES, StatProfile, SyllableProfile, WordList, profile

MEASURES = ("GFI", "FRE", "FKGL", "ARI", "DCRF", "SMOG", "ASL")

HIGHER_IS_EASIER = frozenset({"FRE"})

GFI_VARIANTS = ("paper", "standard")


def _require(p: StatProfile, *fields: str) -> None:
    for name in fields:
        if getattr(p, name) == 0:
            raise DegenerateProfile(name)


def gfi(p: StatProfile, variant: str = "paper") -> float:
    """Gunning fog index, an estimate of years of formal education needed.

    The default "paper" variant relates long words to the sentence count;
    "standard" uses Gunning's original long-word share of all words.
    """
    if variant not in GFI_VARIANTS:
        raise ValueError(f"unknown GFI variant: {variant!r}")
    _require(p, "total_sentences", "total_words")
    if variant == "standard":
        long_term = 100.0 * p.long_words / p.total_words
    else:
        long_term = 100.0 * p.long_words / p.total_sentences
    return 0.4 * (p.total_words / p.total_sentences + long_term)


def fre(p: StatProfile) -> float:
    """Flesch reading ease; higher values mean more readable text."""
    _require(p, "total_sentences", "total_words")
    return (
        206.835
        - 1.015 * (p.total_words / p.total_sentences)
        - 84.6 * (p.total_syllables / p.total_words)
    )


def fkgl(p: StatProfile) -> float:
    """Flesch-Kincaid grade level (years of education)."""
    _require(p, "total_sentences", "total_words")
    return (
        0.39 * (p.total_words / p.total_sentences)
        + 11.8 * (p.total_syllables / p.total_words)
        - 15.59
    )


def ari(p: StatProfile) -> float:
    """Automated readability index, from characters per word."""
    _require(p, "total_words", "total_sentences")
    return (
        4.71 * (p.total_characters / p.total_words)
        + 0.5 * (p.total_words / p.total_sentences)
        - 21.43
    )


def dcrf(p: StatProfile) -> float:
    """Dale-Chall readability formula over the difficult-word share."""
    _require(p, "total_words", "total_sentences")
    return (
        0.1579 * (p.difficult_words / p.total_words * 100.0)
        + 0.0496 * (p.total_words / p.total_sentences)
    )


def smog(p: StatProfile) -> float:
    """SMOG grade from the polysyllable rate per 30 sentences."""
    _require(p, "total_sentences")
    return 1.0430 * math.sqrt(p.polysyllables * 30.0 / p.total_sentences) + 3.1291


def asl(p: StatProfile) -> float:
    """Average sentence length in words."""
    _require(p, "total_sentences")
    return p.total_words / p.total_sentences


_FORMULAS = {
    "GFI": gfi,
    "FRE": fre,
    "FKGL": fkgl,
    "ARI": ari,
    "DCRF": dcrf,
    "SMOG": smog,
    "ASL": asl,
}


def compute(measure: str, p: StatProfile, gfi_variant: str = "paper") -> float:
    """Evaluate one measure by name on a profile."""
    if measure == "GFI":
        return gfi(p, variant=gfi_variant)
    return _FORMULAS[measure](p)


def direction(measure: str) -> str:
    return "higher-is-easier" if measure in HIGHER_IS_EASIER else "higher-is-harder"


@dataclass(frozen=True)
class FormulaConfig:
    """Which measures to compute and with which knobs."""

    measures: tuple[str, ...] = MEASURES
    gfi_variant: str = "paper"
    wordlist: Optional[WordList] = None
    lang_profile: SyllableProfile = EN_SYLLABLES

    def __post_init__(self):
        unknown = [m for m in self.measures if m not in _FORMULAS]
        if unknown:
            raise ValueError(f"unknown measures: {unknown}")


@dataclass
class MeasureReport:
    """Per-document formula scores with explicit per-measure error markers."""

    doc_id: str
    scores: dict[str, float] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    direction: dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "scores": self.scores,
            "errors": self.errors,
            "direction": self.direction,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MeasureReport":
        return cls(
            doc_id=data["doc_id"],
            scores=dict(data.get("scores", {})),
            errors=dict(data.get("errors", {})),
            direction=dict(data.get("direction", {})),
        )


def score_all(doc: Document, config: FormulaConfig = FormulaConfig()) -> MeasureReport:
    """Compute every configured measure for one document.

    A degenerate profile (zero words or sentences) records an error marker
    for the affected measures instead of raising, so corpus-level runs keep
    going and the caller can see exactly which documents failed.
    """
    p = profile(doc, wordlist=config.wordlist, lang_profile=config.lang_profile)
    report = MeasureReport(doc_id=doc.id)
    for measure in config.measures:
        report.direction[measure] = direction(measure)
        try:
            report.scores[measure] = compute(measure, p, gfi_variant=config.gfi_variant)
        except DegenerateProfile as err:
            report.errors[measure] = str(err)
    return report
