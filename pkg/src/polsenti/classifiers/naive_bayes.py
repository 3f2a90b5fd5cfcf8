"""Bernoulli naive Bayes over term presence/absence.

Count features are binarized internally: a term either occurs in a
document or it does not. Laplace smoothing with pseudo-count alpha keeps
every per-term Bernoulli strictly inside (0, 1), and the present/absent
probabilities sum to exactly one by construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import (
    EmptyTrainingSetError,
    FeatureVector,
    LabeledSet,
    Prediction,
    SingleClassError,
)


@dataclass(frozen=True, eq=False)
class NaiveBayesModel:
    log_priors: np.ndarray          # (C,)
    log_present: np.ndarray         # (C, F): log P(term present | class)
    log_absent: np.ndarray          # (C, F): log P(term absent | class)
    alpha: float

    @property
    def n_classes(self) -> int:
        return self.log_priors.shape[0]

    @property
    def n_features(self) -> int:
        return self.log_present.shape[1]


def train_naive_bayes(data: LabeledSet, alpha: float = 1.0) -> NaiveBayesModel:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    n = len(data)
    if n == 0:
        raise EmptyTrainingSetError("no training examples")
    if len(set(data.labels)) < 2:
        raise SingleClassError("training labels are all identical")
    n_classes, n_features = data.n_classes, data.n_features
    class_counts = np.zeros(n_classes)
    df = np.zeros((n_classes, n_features))
    for fv, label in zip(data.features, data.labels):
        class_counts[label] += 1
        for col in fv.entries:
            df[label, col] += 1
    with np.errstate(divide="ignore"):
        log_priors = np.log(class_counts / n)
    denom = (class_counts + 2.0 * alpha)[:, None]
    log_present = np.log((df + alpha) / denom)
    log_absent = np.log((class_counts[:, None] - df + alpha) / denom)
    return NaiveBayesModel(
        log_priors=log_priors,
        log_present=log_present,
        log_absent=log_absent,
        alpha=alpha,
    )


def predict_naive_bayes(model: NaiveBayesModel, x: FeatureVector) -> Prediction:
    """Log-joint score per class; unknown columns are ignored."""
    scores = model.log_priors + model.log_absent.sum(axis=1)
    for col, value in x.entries.items():
        if value != 0 and 0 <= col < model.n_features:
            scores = scores + model.log_present[:, col] - model.log_absent[:, col]
    return Prediction.from_scores(scores)
