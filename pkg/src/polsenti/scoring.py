"""Lexicon-based sentiment scoring and corpus-level descriptive stats.

A document's score is the number of its tokens found in the positive
list minus the number found in the negative list; every token occurrence
counts, so a repeated word contributes repeatedly. Zero means neutral.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass, replace

from .corpus import Corpus, SentimentClass
from .lexicon import SentimentLexicon
from .normalize import NormalizerConfig, normalized_tokens


@dataclass(frozen=True)
class SentimentScore:
    value: int
    pos_matches: int
    neg_matches: int

    def __post_init__(self) -> None:
        if self.value != self.pos_matches - self.neg_matches:
            raise ValueError("value must equal pos_matches - neg_matches")


def classify_score(score: int) -> SentimentClass:
    """Sign rule: >0 positive, <0 negative, 0 neutral."""
    return SentimentClass.from_score(score)


def score_document(
    text: str,
    lex: SentimentLexicon,
    config: NormalizerConfig | None = None,
) -> SentimentScore:
    """Count lexicon hits over the normalized token stream."""
    tokens = normalized_tokens(text, config)
    pos = sum(1 for t in tokens if t in lex.positive)
    neg = sum(1 for t in tokens if t in lex.negative)
    return SentimentScore(value=pos - neg, pos_matches=pos, neg_matches=neg)


def score_corpus(
    corpus: Corpus,
    lex: SentimentLexicon,
    config: NormalizerConfig | None = None,
) -> Corpus:
    """Return a copy of the corpus with score and class filled in."""
    scored = []
    for doc in corpus:
        s = score_document(doc.text, lex, config)
        scored.append(
            replace(doc, senti_score=s.value, senti_class=classify_score(s.value))
        )
    return Corpus(tuple(scored), provenance=corpus.provenance)


@dataclass(frozen=True)
class CandidateSummary:
    """Descriptive statistics of one candidate's scores.

    std_dev uses the sample (n-1) convention and is None for a single
    document, where it is undefined.
    """

    candidate: str
    tweets: int
    median: float
    mean: float
    std_dev: float | None
    min: int
    max: int


def summarize_by_candidate(
    corpus: Corpus, exclude_neutral: bool = True
) -> list[CandidateSummary]:
    """Per-candidate score summaries, candidates in alphabetical order.

    Candidates left with no qualifying documents after the neutral filter
    are omitted rather than reported with empty statistics.
    """
    corpus.require_scored()
    groups: dict[str, list[int]] = {}
    for doc in corpus:
        assert doc.senti_score is not None
        if exclude_neutral and doc.senti_score == 0:
            continue
        groups.setdefault(doc.candidate, []).append(doc.senti_score)
    summaries = []
    for candidate in sorted(groups):
        scores = groups[candidate]
        summaries.append(
            CandidateSummary(
                candidate=candidate,
                tweets=len(scores),
                median=statistics.median(scores),
                mean=statistics.mean(scores),
                std_dev=statistics.stdev(scores) if len(scores) >= 2 else None,
                min=min(scores),
                max=max(scores),
            )
        )
    return summaries


@dataclass(frozen=True)
class ScoreHistogram:
    """Integer-binned score counts, overall and faceted by candidate.

    All bin maps span the same global [min, max] score range (zero
    counts included) so facets share a common axis.
    """

    bins: dict[int, int]
    per_candidate: dict[str, dict[int, int]]


def histogram(corpus: Corpus) -> ScoreHistogram:
    corpus.require_scored()
    if len(corpus) == 0:
        return ScoreHistogram(bins={}, per_candidate={})
    scores = [doc.senti_score for doc in corpus]  # type: ignore[misc]
    lo, hi = min(scores), max(scores)
    span = range(lo, hi + 1)
    bins = {s: 0 for s in span}
    per_candidate: dict[str, dict[int, int]] = {}
    for doc in corpus:
        assert doc.senti_score is not None
        bins[doc.senti_score] += 1
        facet = per_candidate.setdefault(doc.candidate, {s: 0 for s in span})
        facet[doc.senti_score] += 1
    return ScoreHistogram(bins=bins, per_candidate=per_candidate)
