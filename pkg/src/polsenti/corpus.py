"""Document records, sparse term-document matrices, and seeded splits.

The matrix build path is sparse end to end (per-row count maps); dense
document-term arrays are never materialized here, which keeps corpora in
the thousands of documents comfortably inside a small memory budget.
"""
from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from .errors import DomainError
from .normalize import NormalizerConfig, normalized_tokens


class EmptyCorpusError(DomainError):
    """Operation requires at least one document."""


class UnscoredCorpusError(DomainError):
    """Operation requires every document to carry a sentiment score."""


class SentimentClass(enum.Enum):
    NEGATIVE = "Negative"
    NEUTRAL = "Neutral"
    POSITIVE = "Positive"

    @classmethod
    def from_score(cls, score: int) -> "SentimentClass":
        if score > 0:
            return cls.POSITIVE
        if score < 0:
            return cls.NEGATIVE
        return cls.NEUTRAL


@dataclass(frozen=True, kw_only=True)
class Document:
    """One tweet-like record; score and class stay None until scored."""

    senti_score: int | None = None
    text: str
    code: str = ""
    candidate: str = ""
    senti_class: SentimentClass | None = None

    def __post_init__(self) -> None:
        if self.senti_score is not None and self.senti_class is not None:
            expected = SentimentClass.from_score(self.senti_score)
            if self.senti_class is not expected:
                raise ValueError(
                    f"senti_class {self.senti_class.value} inconsistent with "
                    f"score {self.senti_score} (expected {expected.value})"
                )

    @property
    def scored(self) -> bool:
        return self.senti_score is not None


@dataclass(frozen=True)
class Corpus:
    """Ordered, immutable collection of documents."""

    documents: tuple[Document, ...]
    provenance: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "documents", tuple(self.documents))

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def __getitem__(self, i: int) -> Document:
        return self.documents[i]

    def require_scored(self) -> None:
        for i, doc in enumerate(self.documents):
            if not doc.scored:
                raise UnscoredCorpusError(f"document {i} has no sentiment score")


@dataclass(frozen=True)
class Vocabulary:
    """Ordered unique terms with a term -> column-id map."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {term: i for i, term in enumerate(self.terms)}
        if len(index) != len(self.terms):
            raise ValueError("vocabulary terms must be unique")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class TermDocumentMatrix:
    """Sparse counts: one {column id: count} map per document row.

    Stored counts are always >= 1; absent entries mean zero. The two
    flags are recorded for provenance only — the tokenizer already drops
    punctuation and collapses whitespace, so they change nothing here.
    """

    vocab: Vocabulary
    rows: tuple[dict[int, int], ...]
    remove_punctuation: bool = True
    strip_whitespace: bool = True

    @property
    def n_docs(self) -> int:
        return len(self.rows)

    def count(self, doc: int, term_id: int) -> int:
        return self.rows[doc].get(term_id, 0)

    def document_frequencies(self) -> list[int]:
        df = [0] * len(self.vocab)
        for row in self.rows:
            for col in row:
                df[col] += 1
        return df

    def total_count(self) -> int:
        return sum(sum(row.values()) for row in self.rows)


def build_tdm(
    corpus: Corpus,
    config: NormalizerConfig | None = None,
    *,
    remove_punctuation: bool = True,
    strip_whitespace: bool = True,
) -> TermDocumentMatrix:
    """Count normalized tokens per document; vocabulary in first-seen order."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot build a term-document matrix from zero documents")
    config = config or NormalizerConfig()
    terms: list[str] = []
    index: dict[str, int] = {}
    rows: list[dict[int, int]] = []
    for doc in corpus:
        counts = Counter(normalized_tokens(doc.text, config))
        row: dict[int, int] = {}
        for term, n in counts.items():
            col = index.get(term)
            if col is None:
                col = len(terms)
                index[term] = col
                terms.append(term)
            row[col] = n
        rows.append(row)
    return TermDocumentMatrix(
        vocab=Vocabulary(tuple(terms)),
        rows=tuple(rows),
        remove_punctuation=remove_punctuation,
        strip_whitespace=strip_whitespace,
    )


def remove_sparse_terms(tdm: TermDocumentMatrix, sparse: float) -> TermDocumentMatrix:
    """Keep exactly the terms whose sparsity (1 - df/n_docs) is < `sparse`.

    The comparison is strict, so sparse=1.0 keeps every present term and
    smaller thresholds prune progressively harder. Column ids are
    reassigned preserving the original term order.
    """
    if not 0.0 < sparse <= 1.0:
        raise ValueError(f"sparse must be in (0, 1], got {sparse}")
    n = tdm.n_docs
    df = tdm.document_frequencies()
    keep = [col for col in range(len(tdm.vocab)) if 1.0 - df[col] / n < sparse]
    remap = {old: new for new, old in enumerate(keep)}
    rows = tuple(
        {remap[col]: cnt for col, cnt in row.items() if col in remap} for row in tdm.rows
    )
    vocab = Vocabulary(tuple(tdm.vocab.terms[col] for col in keep))
    return replace(tdm, vocab=vocab, rows=rows)


class Split(enum.Enum):
    TRAIN = "Train"
    TEST = "Test"


@dataclass(frozen=True)
class SplitAssignment:
    """Per-document Train/Test tags produced by a seeded generator."""

    labels: tuple[Split, ...]
    seed: int
    probabilities: tuple[float, float]

    def train_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.labels) if s is Split.TRAIN]

    def test_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.labels) if s is Split.TEST]

    def apply(self, corpus: Corpus) -> tuple[Corpus, Corpus]:
        if len(corpus) != len(self.labels):
            raise ValueError("assignment length does not match corpus size")
        train = tuple(corpus[i] for i in self.train_indices())
        test = tuple(corpus[i] for i in self.test_indices())
        return (
            Corpus(train, provenance=f"{corpus.provenance} [train]".strip()),
            Corpus(test, provenance=f"{corpus.provenance} [test]".strip()),
        )


def split_train_test(corpus: Corpus, seed: int, p_train: float = 0.7) -> SplitAssignment:
    """Independently tag each document Train with probability p_train.

    Uses Python's Mersenne Twister seeded with `seed`; the same (seed,
    corpus size, p_train) always reproduces the same assignment.
    """
    if not 0.0 < p_train < 1.0:
        raise ValueError(f"p_train must be in (0, 1), got {p_train}")
    rng = random.Random(seed)
    labels = tuple(
        Split.TRAIN if rng.random() < p_train else Split.TEST for _ in range(len(corpus))
    )
    return SplitAssignment(labels=labels, seed=seed, probabilities=(p_train, 1.0 - p_train))


def filter_neutral(corpus: Corpus) -> Corpus:
    """Drop zero-score documents, preserving order."""
    corpus.require_scored()
    kept = tuple(doc for doc in corpus if doc.senti_score != 0)
    return Corpus(kept, provenance=corpus.provenance)


def subset(corpus: Corpus, indices: Iterable[int]) -> Corpus:
    return Corpus(tuple(corpus[i] for i in indices), provenance=corpus.provenance)
