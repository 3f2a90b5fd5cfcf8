"""Loading and validation of the positive/negative opinion word lists.

Lexicon files hold one word per line in the folded alphabet (lowercase,
no Polish diacritics); `#` comments and blank lines are ignored. Each
list must carry its emoticon sentinel so emoticon matches participate in
scoring like ordinary words.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .normalize import NEGATIVE_SENTINEL, POSITIVE_SENTINEL, POLISH_DIACRITICS


class LexiconError(DomainError):
    """Base class for lexicon validation failures."""


class OverlapError(LexiconError):
    """A word appears in both the positive and the negative list."""

    def __init__(self, words: set[str]):
        self.words = frozenset(words)
        super().__init__(
            "words present in both lexicons: " + ", ".join(sorted(self.words))
        )


class LexiconFormatError(LexiconError):
    """A word violates the folded-alphabet file format."""


def _word_problem(word: str) -> str | None:
    if not word:
        return "empty word"
    if any(ch.isspace() for ch in word):
        return "contains whitespace"
    if word != word.lower():
        return "contains uppercase"
    if any(ch in POLISH_DIACRITICS.sources for ch in word):
        return "contains Polish diacritics (fold the file to base Latin)"
    return None


@dataclass(frozen=True)
class SentimentLexicon:
    """Disjoint positive/negative word sets, immutable after load."""

    positive: frozenset[str]
    negative: frozenset[str]
    source_paths: tuple[str, str] = ("", "")

    def __post_init__(self) -> None:
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negative", frozenset(self.negative))
        for word in self.positive | self.negative:
            problem = _word_problem(word)
            if problem:
                raise LexiconFormatError(f"{word!r}: {problem}")
        overlap = self.positive & self.negative
        if overlap:
            raise OverlapError(overlap)

    def swapped(self) -> "SentimentLexicon":
        """Positive and negative lists exchanged (useful for symmetry tests)."""
        return SentimentLexicon(
            positive=self.negative, negative=self.positive, source_paths=self.source_paths
        )


def _read_words(path: str) -> set[str]:
    words: set[str] = set()
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"lexicon file not found: {path}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            word = raw.strip()
            if not word or word.startswith("#"):
                continue
            problem = _word_problem(word)
            if problem:
                raise LexiconFormatError(f"{path}:{lineno}: {word!r} {problem}")
            words.add(word)
    return words


def load_lexicon(pos_file: str, neg_file: str) -> SentimentLexicon:
    """Load and validate both lists; duplicates within a file collapse.

    Raises FileNotFoundError for missing paths, LexiconFormatError for
    malformed words or a missing sentinel, and OverlapError when the two
    lists intersect.
    """
    positive = _read_words(pos_file)
    negative = _read_words(neg_file)
    if POSITIVE_SENTINEL not in positive:
        raise LexiconFormatError(
            f"{pos_file}: missing required sentinel word {POSITIVE_SENTINEL!r}"
        )
    if NEGATIVE_SENTINEL not in negative:
        raise LexiconFormatError(
            f"{neg_file}: missing required sentinel word {NEGATIVE_SENTINEL!r}"
        )
    return SentimentLexicon(
        positive=frozenset(positive),
        negative=frozenset(negative),
        source_paths=(pos_file, neg_file),
    )


def lexicon_stats(lex: SentimentLexicon) -> tuple[int, int]:
    """Exact cardinalities of the positive and negative sets."""
    return len(lex.positive), len(lex.negative)


def write_lexicon(lex: SentimentLexicon, pos_file: str, neg_file: str) -> None:
    """Write both lists back out, one word per line, sorted, LF endings."""
    for path, words in ((pos_file, lex.positive), (neg_file, lex.negative)):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for word in sorted(words):
                fh.write(word + "\n")


def unsorted_entries(path: str) -> list[tuple[int, str]]:
    """Lint helper: (line, word) pairs that break alphabetical order.

    Loading never requires sorted input; this only supports the CLI's
    --check-sorted warning.
    """
    offenders: list[tuple[int, str]] = []
    previous: str | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            word = raw.strip()
            if not word or word.startswith("#"):
                continue
            if previous is not None and word < previous:
                offenders.append((lineno, word))
            previous = word
    return offenders
