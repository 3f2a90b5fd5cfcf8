"""Confusion matrices, accuracy/precision/recall/F, and k-fold CV.

Confusion matrices are oriented rows = actual class, columns = predicted
class. Precision and recall with a zero denominator are *undefined* —
they raise here and are reported as absent (never silently 0) in
MetricsReport, whose macro averages skip absent entries and record how
many were skipped.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from typing import Any, Hashable, Sequence

from .classifiers import TRAINERS, predict_with
from .classifiers.features import LabeledSet
from .errors import DomainError


class LengthMismatchError(DomainError):
    pass


class UnknownLabelError(DomainError):
    pass


class EmptyMatrixError(DomainError):
    pass


class UndefinedMetricError(DomainError):
    """Zero-denominator precision or recall."""


class TooFewExamplesError(DomainError):
    pass


class SingleClassFoldError(DomainError):
    """A fold's training portion contains only one class."""


@dataclass(frozen=True)
class ConfusionMatrix:
    classes: tuple[Hashable, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.classes)
        if len(self.counts) != k or any(len(row) != k for row in self.counts):
            raise ValueError("counts must be square over classes")
        if any(c < 0 for row in self.counts for c in row):
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def index(self, cls: Hashable) -> int:
        try:
            return self.classes.index(cls)
        except ValueError:
            raise UnknownLabelError(f"unknown class {cls!r}") from None

    def row_sum(self, cls: Hashable) -> int:
        return sum(self.counts[self.index(cls)])

    def col_sum(self, cls: Hashable) -> int:
        j = self.index(cls)
        return sum(row[j] for row in self.counts)

    def transposed(self) -> "ConfusionMatrix":
        k = len(self.classes)
        return ConfusionMatrix(
            classes=self.classes,
            counts=tuple(tuple(self.counts[i][j] for i in range(k)) for j in range(k)),
        )


def confusion_matrix(
    actual: Sequence[Hashable],
    predicted: Sequence[Hashable],
    classes: Sequence[Hashable],
) -> ConfusionMatrix:
    if len(actual) != len(predicted):
        raise LengthMismatchError(
            f"actual has {len(actual)} labels, predicted has {len(predicted)}"
        )
    if len(actual) == 0:
        raise LengthMismatchError("need at least one example")
    index = {cls: i for i, cls in enumerate(classes)}
    k = len(index)
    counts = [[0] * k for _ in range(k)]
    for a, p in zip(actual, predicted):
        if a not in index:
            raise UnknownLabelError(f"actual label {a!r} not in classes")
        if p not in index:
            raise UnknownLabelError(f"predicted label {p!r} not in classes")
        counts[index[a]][index[p]] += 1
    return ConfusionMatrix(
        classes=tuple(classes), counts=tuple(tuple(row) for row in counts)
    )


def accuracy(cm: ConfusionMatrix) -> float:
    total = cm.total
    if total == 0:
        raise EmptyMatrixError("confusion matrix holds no examples")
    trace = sum(cm.counts[i][i] for i in range(len(cm.classes)))
    return trace / total


def precision(cm: ConfusionMatrix, cls: Hashable) -> float:
    j = cm.index(cls)
    col = cm.col_sum(cls)
    if col == 0:
        raise UndefinedMetricError(f"no predictions for class {cls!r}")
    return cm.counts[j][j] / col


def recall(cm: ConfusionMatrix, cls: Hashable) -> float:
    i = cm.index(cls)
    row = cm.row_sum(cls)
    if row == 0:
        raise UndefinedMetricError(f"no actual examples of class {cls!r}")
    return cm.counts[i][i] / row


def f_score(p: float, r: float) -> float:
    """Harmonic mean; 0 by convention when both inputs are 0."""
    if p + r == 0:
        return 0.0
    return 2.0 * p * r / (p + r)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    per_class: dict[Hashable, ClassMetrics]
    macro_precision: float | None
    macro_recall: float | None
    macro_f1: float | None
    skipped: dict[str, int]


def metrics_report(cm: ConfusionMatrix) -> MetricsReport:
    per_class: dict[Hashable, ClassMetrics] = {}
    for cls in cm.classes:
        try:
            p: float | None = precision(cm, cls)
        except UndefinedMetricError:
            p = None
        try:
            r: float | None = recall(cm, cls)
        except UndefinedMetricError:
            r = None
        f = f_score(p, r) if p is not None and r is not None else None
        per_class[cls] = ClassMetrics(precision=p, recall=r, f1=f)

    def macro(key: str) -> tuple[float | None, int]:
        values = [getattr(m, key) for m in per_class.values()]
        present = [v for v in values if v is not None]
        skipped = len(values) - len(present)
        return (sum(present) / len(present) if present else None), skipped

    macro_p, skip_p = macro("precision")
    macro_r, skip_r = macro("recall")
    macro_f, skip_f = macro("f1")
    return MetricsReport(
        accuracy=accuracy(cm),
        per_class=per_class,
        macro_precision=macro_p,
        macro_recall=macro_r,
        macro_f1=macro_f,
        skipped={"precision": skip_p, "recall": skip_r, "f1": skip_f},
    )


@dataclass(frozen=True)
class CvResult:
    """Per-fold held-out accuracies and their arithmetic mean."""

    fold_accuracies: tuple[float, ...]
    k: int
    seed: int
    skipped_folds: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.fold_accuracies) + len(self.skipped_folds) != self.k:
            raise ValueError("fold accuracies plus skipped folds must cover k folds")

    @property
    def mean_accuracy(self) -> float:
        return sum(self.fold_accuracies) / len(self.fold_accuracies)


def fold_partition(n: int, k: int, seed: int) -> list[list[int]]:
    """Shuffle 0..n-1 once by seed, then cut into k contiguous chunks.

    Fold sizes differ by at most one; folds are disjoint and cover
    every index.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < k:
        raise TooFewExamplesError(f"{n} examples cannot fill {k} folds")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(order[start : start + size])
        start += size
    return folds


def cross_validate(
    data: LabeledSet,
    k: int,
    algo: str,
    seed: int = 0,
    **hyperparams: Any,
) -> CvResult:
    """k-fold CV: train on k-1 folds, test on the held-out one, rotate.

    A fold whose training portion is single-class aborts with
    SingleClassFoldError unless no shuffle could have avoided it (only
    one example exists outside the majority class); such folds are
    skipped with a warning instead.
    """
    if algo not in TRAINERS:
        raise ValueError(f"unknown algorithm {algo!r}")
    folds = fold_partition(len(data), k, seed)
    majority = max(
        (data.labels.count(c) for c in range(data.n_classes)), default=0
    )
    unavoidable = (len(data) - majority) == 1
    accuracies: list[float] = []
    skipped: list[int] = []
    for i, fold in enumerate(folds):
        test_set = set(fold)
        train_idx = [j for j in range(len(data)) if j not in test_set]
        train_data = data.subset(train_idx)
        if len(set(train_data.labels)) < 2:
            if unavoidable:
                warnings.warn(
                    f"fold {i}: training portion is single-class; fold skipped",
                    stacklevel=2,
                )
                skipped.append(i)
                continue
            raise SingleClassFoldError(
                f"fold {i}: training portion contains a single class"
            )
        model = TRAINERS[algo](train_data, **hyperparams)
        correct = sum(
            1
            for j in fold
            if predict_with(model, data.features[j]).label == data.labels[j]
        )
        accuracies.append(correct / len(fold))
    if not accuracies:
        raise TooFewExamplesError("every fold was skipped")
    return CvResult(
        fold_accuracies=tuple(accuracies), k=k, seed=seed, skipped_folds=tuple(skipped)
    )


def format_report_text(report: MetricsReport) -> str:
    """Aligned plain-text metrics table."""
    rows = [("class", "precision", "recall", "f1")]

    def fmt(v: float | None) -> str:
        return f"{v:.7f}" if v is not None else "-"

    for cls, m in report.per_class.items():
        rows.append((str(cls), fmt(m.precision), fmt(m.recall), fmt(m.f1)))
    rows.append(("macro", fmt(report.macro_precision), fmt(report.macro_recall), fmt(report.macro_f1)))
    rows.append(("accuracy", fmt(report.accuracy), "", ""))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    skipped = sum(report.skipped.values())
    if skipped:
        detail = ", ".join(f"{k}={v}" for k, v in report.skipped.items() if v)
        lines.append(f"undefined entries skipped in macro averages: {detail}")
    return "\n".join(lines)


def report_rows(report: MetricsReport) -> list[list[str]]:
    """CSV rows: header, one row per class, then the accuracy row."""

    def fmt(v: float | None) -> str:
        return repr(v) if v is not None else ""

    rows = [["class", "precision", "recall", "f1"]]
    for cls, m in report.per_class.items():
        rows.append([str(cls), fmt(m.precision), fmt(m.recall), fmt(m.f1)])
    rows.append(["accuracy", fmt(report.accuracy), "", ""])
    return rows


def report_json(report: MetricsReport) -> dict[str, Any]:
    return {
        "accuracy": report.accuracy,
        "per_class": {
            str(cls): {"precision": m.precision, "recall": m.recall, "f1": m.f1}
            for cls, m in report.per_class.items()
        },
        "macro": {
            "precision": report.macro_precision,
            "recall": report.macro_recall,
            "f1": report.macro_f1,
        },
        "skipped": dict(report.skipped),
    }


def format_cv_text(cv: CvResult) -> str:
    """Per-fold listing plus the mean, one fold per line."""
    lines = [
        f"Fold {i} out of Sample Accuracy = {acc:.7g}"
        for i, acc in enumerate(cv.fold_accuracies, start=1)
    ]
    for i in cv.skipped_folds:
        lines.append(f"Fold {i + 1} skipped (single-class training portion)")
    lines.append(f"meanAccuracy = {cv.mean_accuracy:.7g}")
    return "\n".join(lines)
