"""Linear SVM trained by Pegasos-style primal subgradient descent.

Each iteration takes one full-batch subgradient step of the objective
(lambda/2)||w||^2 + mean hinge loss, with the classic 1/(lambda * t)
step size and lambda = 1 / c_param. The mean (rather than summed) hinge
makes the learned decision function invariant to duplicating the
training set. The seeded shuffle fixes the row order of the design
matrix up front, so runs are bit-reproducible for identical
(data, hyperparameters, seed).

The bias is updated from the hinge subgradient but never regularized;
for data symmetric under mirroring through the origin with flipped
labels the bias therefore stays exactly zero.

Multiclass problems (3+ classes) train one-vs-rest, one binary problem
per class id; binary problems train a single separator whose positive
side is class id 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse as sp

from .features import (
    EmptyTrainingSetError,
    FeatureVector,
    LabeledSet,
    Prediction,
    SingleClassError,
    to_csr,
)


@dataclass(frozen=True, eq=False)
class LinearSvmModel:
    """One weight row + bias per binary problem (1 row when binary)."""

    weights: np.ndarray             # (P, F)
    bias: np.ndarray                # (P,)
    c_param: float
    epochs: int
    n_classes: int

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]


def _pegasos(
    x: sp.csr_matrix, y: np.ndarray, lam: float, epochs: int
) -> tuple[np.ndarray, float]:
    n, n_features = x.shape
    w = np.zeros(n_features)
    b = 0.0
    for t in range(1, epochs + 1):
        margins = y * (x @ w + b)
        violated = margins < 1.0
        eta = 1.0 / (lam * t)
        if violated.any():
            yv = y[violated]
            grad_w = lam * w - (x[violated].T @ yv) / n
            grad_b = -yv.sum() / n
        else:
            grad_w = lam * w
            grad_b = 0.0
        w = w - eta * grad_w
        b = b - eta * grad_b
    return w, b


def train_svm(
    data: LabeledSet,
    c_param: float = 1.0,
    epochs: int = 50,
    seed: int = 0,
) -> LinearSvmModel:
    if c_param <= 0:
        raise ValueError("c_param must be positive")
    if epochs < 1:
        raise ValueError("epochs must be at least 1")
    if len(data) == 0:
        raise EmptyTrainingSetError("no training examples")
    if len(set(data.labels)) < 2:
        raise SingleClassError("training labels are all identical")

    order = np.random.default_rng(seed).permutation(len(data))
    x = to_csr(data)[order]
    labels = np.asarray(data.labels)[order]
    lam = 1.0 / c_param

    if data.n_classes == 2:
        targets = [np.where(labels == 1, 1.0, -1.0)]
    else:
        targets = [np.where(labels == c, 1.0, -1.0) for c in range(data.n_classes)]
    rows = [_pegasos(x, y, lam, epochs) for y in targets]
    return LinearSvmModel(
        weights=np.vstack([w for w, _ in rows]),
        bias=np.asarray([b for _, b in rows]),
        c_param=c_param,
        epochs=epochs,
        n_classes=data.n_classes,
    )


def predict_svm(model: LinearSvmModel, x: FeatureVector) -> Prediction:
    """Margin per class; binary models report (-margin, +margin)."""
    margins = model.bias.copy()
    for col, value in x.entries.items():
        if 0 <= col < model.n_features:
            margins = margins + value * model.weights[:, col]
    if model.n_classes == 2:
        scores = (-margins[0], margins[0])
    else:
        scores = tuple(margins)
    return Prediction.from_scores(scores)
