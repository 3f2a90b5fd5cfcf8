"""Deterministic text normalization for short Polish social-media texts.

The pipeline order is fixed: lowercase, fold Polish diacritics to base
Latin letters, replace emoticons with sentinel words, tokenize. Emoticon
matching happens after lowercasing, so table entries must be written in
the lowercase form the matcher actually sees (":d", not ":D").

All functions are pure; tables and maps are immutable after construction
and safe to share across threads.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import DomainError

POSITIVE_SENTINEL = "pos.emot"
NEGATIVE_SENTINEL = "neg.emot"

# The 9 Polish-specific lowercase letters plus their uppercase forms, all
# folded to single base letters. Lowercasing happens before folding in the
# normalize() pipeline, so the uppercase rows only matter for standalone
# fold_diacritics() calls.
_POLISH_PAIRS = (
    ("ą", "a"),  # ą
    ("ć", "c"),  # ć
    ("ę", "e"),  # ę
    ("ł", "l"),  # ł
    ("ń", "n"),  # ń
    ("ó", "o"),  # ó
    ("ś", "s"),  # ś
    ("ź", "z"),  # ź
    ("ż", "z"),  # ż
    ("Ą", "a"),  # Ą
    ("Ć", "c"),  # Ć
    ("Ę", "e"),  # Ę
    ("Ł", "l"),  # Ł
    ("Ń", "n"),  # Ń
    ("Ó", "o"),  # Ó
    ("Ś", "s"),  # Ś
    ("Ź", "z"),  # Ź
    ("Ż", "z"),  # Ż
)


class EmoticonTableError(DomainError):
    """Malformed emoticon table entry or file."""


@dataclass(frozen=True)
class DiacriticMap:
    """Ordered character-to-ASCII replacement table.

    Every source is a single codepoint and every replacement a single
    letter in [a-z], which makes the fold idempotent by construction.
    """

    entries: tuple[tuple[str, str], ...] = _POLISH_PAIRS

    def __post_init__(self) -> None:
        for src, repl in self.entries:
            if len(src) != 1:
                raise ValueError(f"diacritic source must be one codepoint: {src!r}")
            if len(repl) != 1 or repl not in string.ascii_lowercase:
                raise ValueError(f"replacement must be a single a-z letter: {repl!r}")

    @property
    def sources(self) -> frozenset[str]:
        return frozenset(src for src, _ in self.entries)


POLISH_DIACRITICS = DiacriticMap()


@lru_cache(maxsize=None)
def _translation(dmap: DiacriticMap) -> dict[int, str]:
    return {ord(src): repl for src, repl in dmap.entries}


def fold_diacritics(text: str, dmap: DiacriticMap = POLISH_DIACRITICS) -> str:
    """Replace mapped diacritic letters with base Latin ones; total function."""
    return text.translate(_translation(dmap))


@dataclass(frozen=True)
class EmoticonTable:
    """Disjoint positive/negative emoticon inventories.

    Entries are matched as literal substrings against already-lowercased
    text, longest entry first at each position.
    """

    positive: tuple[str, ...]
    negative: tuple[str, ...]

    def __post_init__(self) -> None:
        for entry in self.positive + self.negative:
            if not entry:
                raise EmoticonTableError("empty emoticon entry")
            if any(ch.isspace() for ch in entry):
                raise EmoticonTableError(f"emoticon contains whitespace: {entry!r}")
        overlap = set(self.positive) & set(self.negative)
        if overlap:
            raise EmoticonTableError(
                "emoticons listed as both positive and negative: "
                + ", ".join(sorted(overlap))
            )

    @property
    def entries(self) -> tuple[str, ...]:
        return self.positive + self.negative


@lru_cache(maxsize=None)
def _emoticon_pattern(table: EmoticonTable) -> tuple[re.Pattern[str], dict[str, str]]:
    # Alternation order encodes longest-match-first; re picks the first
    # branch that matches at a position.
    sentinel = {e: POSITIVE_SENTINEL for e in table.positive}
    sentinel.update({e: NEGATIVE_SENTINEL for e in table.negative})
    ordered = sorted(sentinel, key=len, reverse=True)
    pattern = re.compile("|".join(re.escape(e) for e in ordered))
    return pattern, sentinel


def replace_emoticons(text: str, table: EmoticonTable | None = None) -> str:
    """Swap every table emoticon for a space-padded sentinel word.

    The padding guarantees the tokenizer later sees the sentinel as its
    own token instead of gluing it to adjacent characters.
    """
    table = table if table is not None else default_emoticon_table()
    if not table.entries:
        return text
    pattern, sentinel = _emoticon_pattern(table)
    return pattern.sub(lambda m: f" {sentinel[m.group(0)]} ", text)


def normalize(
    text: str,
    table: EmoticonTable | None = None,
    dmap: DiacriticMap = POLISH_DIACRITICS,
) -> str:
    """Lowercase, fold diacritics, then replace emoticons — in that order."""
    return replace_emoticons(fold_diacritics(text.lower(), dmap), table)


# Sentinels match only as standalone words (no letter/digit on either
# side); everything else tokenizes as maximal runs of Unicode
# letters/digits. Underscore and all punctuation act as separators.
_TOKEN_RE = re.compile(
    r"(?<![^\W_])(?:pos\.emot|neg\.emot)(?![^\W_])|[^\W_]+",
    re.UNICODE,
)


def tokenize(text: str) -> list[str]:
    """Split normalized text into word tokens; never fails."""
    return _TOKEN_RE.findall(text)


@dataclass(frozen=True)
class NormalizerConfig:
    """Bundle of the emoticon table and diacritic map used by a pipeline."""

    emoticons: EmoticonTable | None = None
    diacritics: DiacriticMap = POLISH_DIACRITICS

    def table(self) -> EmoticonTable:
        return self.emoticons if self.emoticons is not None else default_emoticon_table()


def normalized_tokens(text: str, config: NormalizerConfig | None = None) -> list[str]:
    """Tokens of the fully normalized text; the bag-of-words unit everywhere."""
    config = config or NormalizerConfig()
    return tokenize(normalize(text, config.table(), config.diacritics))


def load_emoticon_table(path: str) -> EmoticonTable:
    """Read a table file: one `<emoticon><TAB><pos|neg>` entry per line.

    Blank lines and lines starting with `#` are ignored. Entries must be
    lowercase because matching runs on lowercased text.
    """
    positive: list[str] = []
    negative: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise EmoticonTableError(
                    f"{path}:{lineno}: expected '<emoticon><TAB><pos|neg>'"
                )
            entry, tag = parts
            if not entry or any(ch.isspace() for ch in entry):
                raise EmoticonTableError(f"{path}:{lineno}: bad emoticon {entry!r}")
            if entry != entry.lower():
                raise EmoticonTableError(
                    f"{path}:{lineno}: entry {entry!r} must be lowercase "
                    "(matching runs on lowercased text)"
                )
            if tag == "pos":
                positive.append(entry)
            elif tag == "neg":
                negative.append(entry)
            else:
                raise EmoticonTableError(f"{path}:{lineno}: tag must be pos or neg")
    return EmoticonTable(positive=tuple(positive), negative=tuple(negative))


@lru_cache(maxsize=1)
def default_emoticon_table() -> EmoticonTable:
    """The packaged 18-positive / 22-negative inventory."""
    ref = resources.files("polsenti").joinpath("data/emoticons.txt")
    with resources.as_file(ref) as path:
        return load_emoticon_table(str(path))
