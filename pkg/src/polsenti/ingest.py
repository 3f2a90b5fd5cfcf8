"""Corpus file I/O, a pluggable document source, and rate-limit planning.

Corpora persist as CSV (RFC 4180, UTF-8, LF, no BOM) or JSON-lines with
the field names senti_score,text,code,candidate,senti_class; the loader
dispatches on the file extension. Live API ingestion is replaced by a
source abstraction plus a static in-memory/file-backed source so the
paging, caching, and budgeting logic stays fully testable offline.
"""
from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol

from .corpus import Corpus, Document, SentimentClass
from .errors import DomainError

CORPUS_FIELDS = ("senti_score", "text", "code", "candidate", "senti_class")


class CorpusParseError(DomainError):
    """Malformed corpus file; message names the offending row/line."""


class UnsupportedFormatError(DomainError):
    pass


class SourceError(DomainError):
    """Document source failure, annotated with the profile being fetched."""


# ---------------------------------------------------------------------------
# corpus files

def _parse_score(raw: str, where: str) -> int | None:
    if raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise CorpusParseError(f"{where}: senti_score {raw!r} is not an integer") from None


def _parse_class(raw: str, where: str) -> SentimentClass | None:
    if raw == "":
        return None
    try:
        return SentimentClass(raw)
    except ValueError:
        raise CorpusParseError(
            f"{where}: senti_class {raw!r} is not one of "
            + "/".join(c.value for c in SentimentClass)
        ) from None


def _document(score: int | None, text: str, code: str, candidate: str,
              senti_class: SentimentClass | None, where: str) -> Document:
    try:
        return Document(
            senti_score=score,
            text=text,
            code=code,
            candidate=candidate,
            senti_class=senti_class,
        )
    except ValueError as exc:
        raise CorpusParseError(f"{where}: {exc}") from None


def _read_csv(path: str) -> Corpus:
    docs: list[Document] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusParseError(f"{path}: empty file (missing header)") from None
        if tuple(header) != CORPUS_FIELDS:
            raise CorpusParseError(
                f"{path}: row 1: header must be {','.join(CORPUS_FIELDS)}"
            )
        for rownum, row in enumerate(reader, start=2):
            where = f"{path}: row {rownum}"
            if len(row) != len(CORPUS_FIELDS):
                raise CorpusParseError(
                    f"{where}: expected {len(CORPUS_FIELDS)} fields, got {len(row)}"
                )
            score_raw, text, code, candidate, class_raw = row
            docs.append(
                _document(
                    _parse_score(score_raw, where),
                    text,
                    code,
                    candidate,
                    _parse_class(class_raw, where),
                    where,
                )
            )
    return Corpus(tuple(docs), provenance=path)


def _read_jsonl(path: str) -> Corpus:
    docs: list[Document] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}: line {lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"{where}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise CorpusParseError(f"{where}: expected a JSON object")
            if "text" not in obj or not isinstance(obj["text"], str):
                raise CorpusParseError(f"{where}: missing string field 'text'")
            score = obj.get("senti_score")
            if score is not None and not isinstance(score, int):
                raise CorpusParseError(f"{where}: senti_score must be an integer")
            raw_class = obj.get("senti_class") or ""
            docs.append(
                _document(
                    score,
                    obj["text"],
                    str(obj.get("code") or ""),
                    str(obj.get("candidate") or ""),
                    _parse_class(raw_class, where),
                    where,
                )
            )
    return Corpus(tuple(docs), provenance=path)


def read_corpus(path: str) -> Corpus:
    """Load a .csv or .jsonl corpus; raises FileNotFoundError if absent."""
    suffix = Path(path).suffix.lower()
    if suffix not in (".csv", ".jsonl"):
        raise UnsupportedFormatError(f"unsupported corpus extension {suffix!r} ({path})")
    if not Path(path).exists():
        raise FileNotFoundError(f"corpus file not found: {path}")
    return _read_csv(path) if suffix == ".csv" else _read_jsonl(path)


def write_corpus(corpus: Corpus, path: str) -> None:
    """Write a corpus losslessly; format chosen by the file extension."""
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CORPUS_FIELDS)
            for doc in corpus:
                writer.writerow(
                    [
                        "" if doc.senti_score is None else str(doc.senti_score),
                        doc.text,
                        doc.code,
                        doc.candidate,
                        "" if doc.senti_class is None else doc.senti_class.value,
                    ]
                )
    elif suffix == ".jsonl":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for doc in corpus:
                fh.write(
                    json.dumps(
                        {
                            "senti_score": doc.senti_score,
                            "text": doc.text,
                            "code": doc.code,
                            "candidate": doc.candidate,
                            "senti_class": None
                            if doc.senti_class is None
                            else doc.senti_class.value,
                        },
                        ensure_ascii=False,
                        sort_keys=True,
                    )
                    + "\n"
                )
    else:
        raise UnsupportedFormatError(f"unsupported corpus extension {suffix!r} ({path})")


# ---------------------------------------------------------------------------
# rate-limit planning

@dataclass(frozen=True)
class RateLimitPolicy:
    """Requests allowed per fixed window (15 minutes by default)."""

    budget_per_window: int = 180
    window_seconds: int = 900

    def __post_init__(self) -> None:
        if self.window_seconds <= 0 or self.budget_per_window <= 0:
            raise ValueError("window_seconds and budget_per_window must be positive")


@dataclass(frozen=True)
class SourceManifest:
    """What to fetch: profile queries, per-profile cap, and the cache dir."""

    profiles: tuple[str, ...]
    per_profile_cap: int = 1500
    cache_dir: str = "cache"

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError("manifest needs at least one profile")
        if self.per_profile_cap <= 0:
            raise ValueError("per_profile_cap must be positive")


def load_manifest(path: str) -> SourceManifest:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except FileNotFoundError:
        raise FileNotFoundError(f"manifest file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CorpusParseError(f"{path}: invalid JSON manifest ({exc.msg})") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("profiles"), list):
        raise CorpusParseError(f"{path}: manifest must be an object with a 'profiles' list")
    return SourceManifest(
        profiles=tuple(str(p) for p in obj["profiles"]),
        per_profile_cap=int(obj.get("per_profile_cap", 1500)),
        cache_dir=str(obj.get("cache_dir", "cache")),
    )


@dataclass(frozen=True)
class FetchPlan:
    """Paged requests greedily packed into rate-limit windows."""

    requests: tuple[tuple[str, int], ...]
    schedule: tuple[int, ...]
    total_windows: int
    total_duration_seconds: int


def plan_fetch(
    manifest: SourceManifest,
    policy: RateLimitPolicy,
    page_size: int = 100,
) -> FetchPlan:
    """ceil(cap / page_size) requests per profile, budget per window.

    The duration counts only the forced waits between windows: requests
    inside a window are treated as instantaneous.
    """
    if page_size <= 0:
        raise ValueError("page_size must be positive")
    requests: list[tuple[str, int]] = []
    for profile in manifest.profiles:
        remaining = manifest.per_profile_cap
        while remaining > 0:
            take = min(page_size, remaining)
            requests.append((profile, take))
            remaining -= take
    schedule = tuple(i // policy.budget_per_window for i in range(len(requests)))
    total_windows = math.ceil(len(requests) / policy.budget_per_window)
    return FetchPlan(
        requests=tuple(requests),
        schedule=schedule,
        total_windows=total_windows,
        total_duration_seconds=(total_windows - 1) * policy.window_seconds,
    )


def format_plan(plan: FetchPlan, policy: RateLimitPolicy) -> str:
    lines = [
        f"requests: {len(plan.requests)}",
        f"windows: {plan.total_windows} x {policy.window_seconds} s "
        f"(budget {policy.budget_per_window}/window)",
        f"total wait between windows: {plan.total_duration_seconds} s",
    ]
    per_window: dict[int, int] = {}
    for w in plan.schedule:
        per_window[w] = per_window.get(w, 0) + 1
    for w in sorted(per_window):
        lines.append(f"  window {w}: {per_window[w]} requests")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# document sources and caching fetch

class DocumentSource(Protocol):
    """Anything that can serve pages of raw texts for a profile query."""

    def fetch_page(self, query: str, page_size: int, offset: int) -> list[str]:
        """Return up to page_size texts starting at offset; short page = end."""
        ...


class StaticSource:
    """In-memory source for tests and offline replays; counts its calls."""

    def __init__(self, texts_by_query: dict[str, list[str]]):
        self.texts_by_query = texts_by_query
        self.call_count = 0

    @classmethod
    def from_dir(cls, directory: str) -> "StaticSource":
        """Load `<query>.jsonl` files (one {"text": ...} object per line)."""
        mapping: dict[str, list[str]] = {}
        for path in sorted(Path(directory).glob("*.jsonl")):
            texts = []
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        texts.append(json.loads(line)["text"])
            mapping[path.stem] = texts
        return cls(mapping)

    def fetch_page(self, query: str, page_size: int, offset: int) -> list[str]:
        self.call_count += 1
        texts = self.texts_by_query.get(query, [])
        return texts[offset : offset + page_size]


def cache_path(cache_dir: str, profile: str) -> Path:
    safe = re.sub(r'[/\\:*?"<>|\s]', "_", profile)
    return Path(cache_dir) / f"{safe}.jsonl"


def _read_cache(path: Path) -> list[str]:
    texts = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                texts.append(json.loads(line)["text"])
    return texts


def fetch(
    manifest: SourceManifest,
    source: DocumentSource,
    page_size: int = 100,
    dedupe: bool = False,
) -> Corpus:
    """Collect up to the cap per profile, caching pages as they arrive.

    A `<profile>.done` marker records completion; a warm rerun is served
    entirely from the cache with zero source calls, and a partially
    cached profile resumes from where it stopped. Exact duplicate texts
    within a profile are kept unless dedupe is set.
    """
    cache_dir = Path(manifest.cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    documents: list[Document] = []
    for profile in manifest.profiles:
        path = cache_path(manifest.cache_dir, profile)
        done_marker = path.with_suffix(".done")
        texts = _read_cache(path) if path.exists() else []
        if not done_marker.exists():
            cap = manifest.per_profile_cap
            with open(path, "a", encoding="utf-8", newline="\n") as fh:
                while len(texts) < cap:
                    want = min(page_size, cap - len(texts))
                    try:
                        page = source.fetch_page(profile, want, len(texts))
                    except Exception as exc:
                        raise SourceError(f"profile {profile!r}: {exc}") from exc
                    for text in page:
                        fh.write(json.dumps({"text": text}, ensure_ascii=False) + "\n")
                    fh.flush()
                    texts.extend(page)
                    if len(page) < want:
                        break
            done_marker.touch()
        kept: Iterable[str] = dict.fromkeys(texts) if dedupe else texts
        code = profile.lstrip("@")
        documents.extend(
            Document(text=text, code=code, candidate=profile) for text in kept
        )
    return Corpus(
        tuple(documents),
        provenance=f"fetched {len(documents)} texts from {len(manifest.profiles)} profiles",
    )
