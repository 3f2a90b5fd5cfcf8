"""Sparse feature vectors, labeled sets, and the shared prediction type."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse as sp

from ..corpus import SentimentClass, TermDocumentMatrix
from ..errors import DomainError


class EmptyTrainingSetError(DomainError):
    """Training requires at least one example."""


class SingleClassError(DomainError):
    """Training labels are all identical."""


@dataclass(frozen=True)
class FeatureVector:
    """Sparse column-id -> value map; zeros are never stored."""

    entries: dict[int, float]
    binarized: bool = False

    def __post_init__(self) -> None:
        if any(v == 0 for v in self.entries.values()):
            raise ValueError("zero-valued entries must be omitted")
        if self.binarized and any(v != 1 for v in self.entries.values()):
            raise ValueError("binarized vectors may only hold 1s")

    def binarize(self) -> "FeatureVector":
        return FeatureVector({k: 1.0 for k in self.entries}, binarized=True)


@dataclass(frozen=True)
class LabeledSet:
    """Feature vectors with integer class labels and the class-name order.

    Class ids index into class_names; the id order fixes every
    lowest-id tie-break downstream.
    """

    features: tuple[FeatureVector, ...]
    labels: tuple[int, ...]
    class_names: tuple[str, ...]
    n_features: int

    def __post_init__(self) -> None:
        if len(self.features) != len(self.labels):
            raise ValueError("features and labels must have equal length")
        if any(not 0 <= lab < len(self.class_names) for lab in self.labels):
            raise ValueError("label id outside class_names range")
        for fv in self.features:
            if any(col < 0 or col >= self.n_features for col in fv.entries):
                raise ValueError("feature column id outside n_features range")

    def __len__(self) -> int:
        return len(self.features)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def subset(self, indices: Sequence[int]) -> "LabeledSet":
        return LabeledSet(
            features=tuple(self.features[i] for i in indices),
            labels=tuple(self.labels[i] for i in indices),
            class_names=self.class_names,
            n_features=self.n_features,
        )


@dataclass(frozen=True)
class Prediction:
    """argmax label over per-class scores; ties go to the lowest class id."""

    label: int
    scores: tuple[float, ...]

    @classmethod
    def from_scores(cls, scores: Sequence[float]) -> "Prediction":
        scores = tuple(float(s) for s in scores)
        best = max(range(len(scores)), key=lambda i: (scores[i], -i))
        return cls(label=best, scores=scores)


def labeled_set_from_tdm(
    tdm: TermDocumentMatrix,
    classes: Sequence[SentimentClass | str],
) -> LabeledSet:
    """Pair TDM rows with class labels; class ids follow sorted class names."""
    if len(classes) != tdm.n_docs:
        raise ValueError("one class label per document row is required")
    names = [c.value if isinstance(c, SentimentClass) else str(c) for c in classes]
    class_names = tuple(sorted(set(names)))
    index = {name: i for i, name in enumerate(class_names)}
    features = tuple(
        FeatureVector({col: float(cnt) for col, cnt in row.items()}) for row in tdm.rows
    )
    return LabeledSet(
        features=features,
        labels=tuple(index[name] for name in names),
        class_names=class_names,
        n_features=len(tdm.vocab),
    )


def to_csr(data: LabeledSet, binarize: bool = False) -> sp.csr_matrix:
    """Materialize the sparse design matrix for the numeric trainers."""
    indptr = [0]
    indices: list[int] = []
    values: list[float] = []
    for fv in data.features:
        for col in sorted(fv.entries):
            indices.append(col)
            values.append(1.0 if binarize else fv.entries[col])
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.asarray(values), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
        shape=(len(data), data.n_features),
    )
