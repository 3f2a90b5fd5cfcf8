"""Synthetic corpora for benchmarks and end-to-end sanity checks."""
from __future__ import annotations

import random

from .corpus import Corpus, Document, SentimentClass


def synthetic_two_class_corpus(
    n_docs: int = 2000,
    vocab_per_class: int = 50,
    words_per_doc: int = 12,
    noise: float = 0.10,
    seed: int = 7,
) -> Corpus:
    """Two-class corpus with disjoint class vocabularies and label noise.

    Each document samples its words (with replacement) from its true
    class's private vocabulary; with probability `noise` the recorded
    label is flipped while the text stays untouched, so `1 - noise` is
    the ceiling any classifier can reach on held-out data.
    """
    if not 0.0 <= noise < 0.5:
        raise ValueError("noise must be in [0, 0.5)")
    rng = random.Random(seed)
    vocab = {
        SentimentClass.NEGATIVE: [f"neg{i:03d}" for i in range(vocab_per_class)],
        SentimentClass.POSITIVE: [f"pos{i:03d}" for i in range(vocab_per_class)],
    }
    docs = []
    for _ in range(n_docs):
        true = rng.choice((SentimentClass.NEGATIVE, SentimentClass.POSITIVE))
        words = rng.choices(vocab[true], k=words_per_doc)
        label = true
        if rng.random() < noise:
            label = (
                SentimentClass.POSITIVE
                if true is SentimentClass.NEGATIVE
                else SentimentClass.NEGATIVE
            )
        docs.append(
            Document(
                senti_score=1 if label is SentimentClass.POSITIVE else -1,
                text=" ".join(words),
                code="SYN",
                candidate="synthetic",
                senti_class=label,
            )
        )
    return Corpus(
        tuple(docs),
        provenance=(
            f"synthetic two-class corpus (n={n_docs}, vocab={vocab_per_class}/class, "
            f"noise={noise}, seed={seed})"
        ),
    )


def random_token_corpus(
    n_docs: int,
    vocabulary: list[str],
    max_words: int = 10,
    seed: int = 0,
    candidates: tuple[str, ...] = ("A", "B"),
) -> Corpus:
    """Unscored corpus of random word bags; handy for property tests."""
    rng = random.Random(seed)
    docs = []
    for _ in range(n_docs):
        words = rng.choices(vocabulary, k=rng.randint(0, max_words))
        candidate = rng.choice(candidates)
        docs.append(
            Document(text=" ".join(words), code=candidate, candidate=candidate)
        )
    return Corpus(tuple(docs), provenance=f"random token corpus (seed={seed})")
