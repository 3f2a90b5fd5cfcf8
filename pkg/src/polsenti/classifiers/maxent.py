"""Maximum entropy classifier: L2-regularized softmax regression.

Training minimizes the mean multinomial negative log-likelihood plus an
L2 penalty on the term weights (the bias column is never penalized, so
with overwhelming regularization predictions fall back to the empirical
class prior). The optimizer is full-batch gradient descent with an
Armijo backtracking line search; it stops when the gradient max-norm
drops below the tolerance or the iteration budget runs out. Failing to
converge is not an error — the achieved gradient norm is recorded on the
model for the caller to inspect.
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


@dataclass(frozen=True)
class ConvergenceInfo:
    tolerance: float
    max_iters: int
    achieved_grad_norm: float
    iterations: int
    converged: bool


@dataclass(frozen=True, eq=False)
class MaxEntModel:
    """weights has one row per class; the last column is the bias."""

    weights: np.ndarray             # (C, F + 1)
    l2_lambda: float
    convergence: ConvergenceInfo

    @property
    def n_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def n_features(self) -> int:
        return self.weights.shape[1] - 1

    @property
    def term_weights(self) -> np.ndarray:
        return self.weights[:, :-1]

    @property
    def bias(self) -> np.ndarray:
        return self.weights[:, -1]


def _log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def _design(data: LabeledSet) -> tuple[sp.csr_matrix, np.ndarray]:
    x = to_csr(data)
    y = np.zeros((len(data), data.n_classes))
    y[np.arange(len(data)), np.asarray(data.labels)] = 1.0
    return x, y


def objective(weights: np.ndarray, data: LabeledSet, l2_lambda: float) -> float:
    """Mean NLL + 0.5 * lambda * ||term weights||^2 (bias unpenalized)."""
    x, y = _design(data)
    return _objective_from_parts(weights, x, y, l2_lambda)


def gradient(weights: np.ndarray, data: LabeledSet, l2_lambda: float) -> np.ndarray:
    """Analytic gradient of `objective` with the same shape as weights."""
    x, y = _design(data)
    return _gradient_from_parts(weights, x, y, l2_lambda)


def _logits(weights: np.ndarray, x: sp.csr_matrix) -> np.ndarray:
    return x @ weights[:, :-1].T + weights[:, -1]


def _objective_from_parts(
    weights: np.ndarray, x: sp.csr_matrix, y: np.ndarray, l2_lambda: float
) -> float:
    log_p = _log_softmax(_logits(weights, x))
    nll = -(y * log_p).sum() / x.shape[0]
    return float(nll + 0.5 * l2_lambda * (weights[:, :-1] ** 2).sum())


def _gradient_from_parts(
    weights: np.ndarray, x: sp.csr_matrix, y: np.ndarray, l2_lambda: float
) -> np.ndarray:
    n = x.shape[0]
    p = np.exp(_log_softmax(_logits(weights, x)))
    delta = p - y
    grad = np.empty_like(weights)
    grad[:, :-1] = (delta.T @ x) / n + l2_lambda * weights[:, :-1]
    grad[:, -1] = delta.sum(axis=0) / n
    return grad


def train_maxent(
    data: LabeledSet,
    l2_lambda: float = 1e-3,
    tolerance: float = 1e-6,
    max_iters: int = 500,
) -> MaxEntModel:
    if l2_lambda < 0:
        raise ValueError("l2_lambda must be non-negative")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if len(data) == 0:
        raise EmptyTrainingSetError("no training examples")
    if len(set(data.labels)) < 2:
        raise SingleClassError("training labels are all identical")

    x, y = _design(data)
    weights = np.zeros((data.n_classes, data.n_features + 1))
    grad = _gradient_from_parts(weights, x, y, l2_lambda)
    grad_norm = float(np.abs(grad).max())
    iterations = 0
    while grad_norm >= tolerance and iterations < max_iters:
        value = _objective_from_parts(weights, x, y, l2_lambda)
        step = 1.0
        descent = float((grad * grad).sum())
        # Armijo backtracking on the steepest-descent direction.
        while (
            _objective_from_parts(weights - step * grad, x, y, l2_lambda)
            > value - 1e-4 * step * descent
        ):
            step *= 0.5
            if step < 1e-18:
                break
        if step < 1e-18:
            break
        weights = weights - step * grad
        grad = _gradient_from_parts(weights, x, y, l2_lambda)
        grad_norm = float(np.abs(grad).max())
        iterations += 1
    return MaxEntModel(
        weights=weights,
        l2_lambda=l2_lambda,
        convergence=ConvergenceInfo(
            tolerance=tolerance,
            max_iters=max_iters,
            achieved_grad_norm=grad_norm,
            iterations=iterations,
            converged=grad_norm < tolerance,
        ),
    )


def predict_maxent(model: MaxEntModel, x: FeatureVector) -> Prediction:
    """Softmax class probabilities; unknown columns are ignored."""
    logits = model.bias.copy()
    for col, value in x.entries.items():
        if 0 <= col < model.n_features:
            logits = logits + value * model.term_weights[:, col]
    shifted = np.exp(logits - logits.max())
    return Prediction.from_scores(shifted / shifted.sum())
