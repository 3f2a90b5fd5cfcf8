"""Four supervised classifiers over sparse term features.

All trainers are deterministic for identical (data, hyperparameters,
seed); all predictors break score ties toward the lowest class id.
"""
from __future__ import annotations

from typing import Any

from .features import (
    EmptyTrainingSetError,
    FeatureVector,
    LabeledSet,
    Prediction,
    SingleClassError,
    labeled_set_from_tdm,
)
from .maxent import ConvergenceInfo, MaxEntModel, predict_maxent, train_maxent
from .naive_bayes import NaiveBayesModel, predict_naive_bayes, train_naive_bayes
from .serialize import ModelBundle, ModelFormatError, load_model, save_model
from .svm import LinearSvmModel, predict_svm, train_svm
from .tree import DecisionTreeModel, predict_tree, train_tree

TRAINERS = {
    "nb": train_naive_bayes,
    "maxent": train_maxent,
    "svm": train_svm,
    "tree": train_tree,
}

_PREDICTORS = {
    NaiveBayesModel: predict_naive_bayes,
    MaxEntModel: predict_maxent,
    LinearSvmModel: predict_svm,
    DecisionTreeModel: predict_tree,
}

ALGORITHMS = tuple(TRAINERS)


def train_classifier(algo: str, data: LabeledSet, **hyperparams: Any):
    """Train by algorithm name; see TRAINERS for the accepted names."""
    try:
        trainer = TRAINERS[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}") from None
    return trainer(data, **hyperparams)


def predict_with(model: Any, x: FeatureVector) -> Prediction:
    """Dispatch prediction on the model type."""
    for cls, predictor in _PREDICTORS.items():
        if isinstance(model, cls):
            return predictor(model, x)
    raise TypeError(f"no predictor for model type {type(model).__name__}")


def algo_name(model: Any) -> str:
    mapping = {
        NaiveBayesModel: "nb",
        MaxEntModel: "maxent",
        LinearSvmModel: "svm",
        DecisionTreeModel: "tree",
    }
    for cls, name in mapping.items():
        if isinstance(model, cls):
            return name
    raise TypeError(f"unknown model type {type(model).__name__}")


__all__ = [
    "ALGORITHMS",
    "ConvergenceInfo",
    "DecisionTreeModel",
    "EmptyTrainingSetError",
    "FeatureVector",
    "LabeledSet",
    "LinearSvmModel",
    "MaxEntModel",
    "ModelBundle",
    "ModelFormatError",
    "NaiveBayesModel",
    "Prediction",
    "SingleClassError",
    "TRAINERS",
    "algo_name",
    "labeled_set_from_tdm",
    "load_model",
    "predict_maxent",
    "predict_naive_bayes",
    "predict_svm",
    "predict_tree",
    "predict_with",
    "save_model",
    "train_classifier",
    "train_maxent",
    "train_naive_bayes",
    "train_svm",
    "train_tree",
]
