"""Versioned, checksummed text serialization for trained models.

The on-disk format is a single JSON document:

    {"format": "polsenti-model", "version": 1,
     "sha256": "<hex digest of the canonical payload>",
     "payload": {"algo": ..., "class_names": [...], "vocab": [...] | null,
                 "model": {...}}}

The payload is canonicalized (sorted keys, no whitespace) before
hashing, so identical models serialize to identical bytes. Floats use
Python's shortest round-trip repr; non-finite values are written in
Python's extended JSON (Infinity/NaN) and read back losslessly.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import DomainError
from .maxent import ConvergenceInfo, MaxEntModel
from .naive_bayes import NaiveBayesModel
from .svm import LinearSvmModel
from .tree import DecisionTreeModel, TreeLeaf, TreeNode, TreeSplit

FORMAT_NAME = "polsenti-model"
FORMAT_VERSION = 1


class ModelFormatError(DomainError):
    """Unreadable, corrupted, or unsupported model file."""


@dataclass(frozen=True)
class ModelBundle:
    """A trained model plus everything needed to score raw documents."""

    algo: str
    model: NaiveBayesModel | MaxEntModel | LinearSvmModel | DecisionTreeModel
    class_names: tuple[str, ...]
    vocab: tuple[str, ...] | None = None


def _encode_tree_node(node: TreeNode) -> dict[str, Any]:
    if isinstance(node, TreeLeaf):
        return {"leaf": list(node.counts)}
    return {
        "term": node.term,
        "threshold": node.threshold,
        "left": _encode_tree_node(node.left),
        "right": _encode_tree_node(node.right),
    }


def _decode_tree_node(obj: dict[str, Any]) -> TreeNode:
    if "leaf" in obj:
        return TreeLeaf(counts=tuple(int(c) for c in obj["leaf"]))
    return TreeSplit(
        term=int(obj["term"]),
        threshold=float(obj["threshold"]),
        left=_decode_tree_node(obj["left"]),
        right=_decode_tree_node(obj["right"]),
    )


def _encode_model(model: Any) -> dict[str, Any]:
    if isinstance(model, NaiveBayesModel):
        return {
            "kind": "nb",
            "alpha": model.alpha,
            "log_priors": model.log_priors.tolist(),
            "log_present": model.log_present.tolist(),
            "log_absent": model.log_absent.tolist(),
        }
    if isinstance(model, MaxEntModel):
        conv = model.convergence
        return {
            "kind": "maxent",
            "weights": model.weights.tolist(),
            "l2_lambda": model.l2_lambda,
            "convergence": {
                "tolerance": conv.tolerance,
                "max_iters": conv.max_iters,
                "achieved_grad_norm": conv.achieved_grad_norm,
                "iterations": conv.iterations,
                "converged": conv.converged,
            },
        }
    if isinstance(model, LinearSvmModel):
        return {
            "kind": "svm",
            "weights": model.weights.tolist(),
            "bias": model.bias.tolist(),
            "c_param": model.c_param,
            "epochs": model.epochs,
            "n_classes": model.n_classes,
        }
    if isinstance(model, DecisionTreeModel):
        return {
            "kind": "tree",
            "root": _encode_tree_node(model.root),
            "max_depth": model.max_depth,
            "min_samples_split": model.min_samples_split,
            "n_classes": model.n_classes,
        }
    raise ModelFormatError(f"cannot serialize model of type {type(model).__name__}")


def _decode_model(obj: dict[str, Any]) -> Any:
    kind = obj.get("kind")
    if kind == "nb":
        return NaiveBayesModel(
            log_priors=np.asarray(obj["log_priors"], dtype=float),
            log_present=np.asarray(obj["log_present"], dtype=float),
            log_absent=np.asarray(obj["log_absent"], dtype=float),
            alpha=float(obj["alpha"]),
        )
    if kind == "maxent":
        conv = obj["convergence"]
        return MaxEntModel(
            weights=np.asarray(obj["weights"], dtype=float),
            l2_lambda=float(obj["l2_lambda"]),
            convergence=ConvergenceInfo(
                tolerance=float(conv["tolerance"]),
                max_iters=int(conv["max_iters"]),
                achieved_grad_norm=float(conv["achieved_grad_norm"]),
                iterations=int(conv["iterations"]),
                converged=bool(conv["converged"]),
            ),
        )
    if kind == "svm":
        return LinearSvmModel(
            weights=np.asarray(obj["weights"], dtype=float),
            bias=np.asarray(obj["bias"], dtype=float),
            c_param=float(obj["c_param"]),
            epochs=int(obj["epochs"]),
            n_classes=int(obj["n_classes"]),
        )
    if kind == "tree":
        return DecisionTreeModel(
            root=_decode_tree_node(obj["root"]),
            max_depth=int(obj["max_depth"]),
            min_samples_split=int(obj["min_samples_split"]),
            n_classes=int(obj["n_classes"]),
        )
    raise ModelFormatError(f"unknown model kind {kind!r}")


def _canonical(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def serialize_bundle(bundle: ModelBundle) -> bytes:
    payload = {
        "algo": bundle.algo,
        "class_names": list(bundle.class_names),
        "vocab": list(bundle.vocab) if bundle.vocab is not None else None,
        "model": _encode_model(bundle.model),
    }
    canonical = _canonical(payload)
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "sha256": hashlib.sha256(canonical.encode("utf-8")).hexdigest(),
        "payload": payload,
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def deserialize_bundle(blob: bytes) -> ModelBundle:
    try:
        doc = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"not a model file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise ModelFormatError("not a polsenti model file")
    if doc.get("version") != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {doc.get('version')!r}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise ModelFormatError("missing payload")
    digest = hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()
    if digest != doc.get("sha256"):
        raise ModelFormatError("checksum mismatch: model file is corrupted")
    vocab = payload.get("vocab")
    return ModelBundle(
        algo=str(payload["algo"]),
        model=_decode_model(payload["model"]),
        class_names=tuple(payload["class_names"]),
        vocab=tuple(vocab) if vocab is not None else None,
    )


def save_model(bundle: ModelBundle, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_bundle(bundle))


def load_model(path: str) -> ModelBundle:
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except FileNotFoundError:
        raise FileNotFoundError(f"model file not found: {path}") from None
    return deserialize_bundle(blob)
