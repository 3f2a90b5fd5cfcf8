"""Greedy CART decision tree on term-count features.

Each internal node tests `count(term) <= threshold`, sending matches
left. By default only the 0.5 boundary is tried per term (a pure
presence/absence split, matching the binarized feature convention);
midpoints between observed counts are searched when binarize=False.
The split chosen minimizes the children's weighted Gini impurity; ties
go to the lowest term id, then the lowest threshold, which makes
training order-independent. Zero-gain splits are allowed as long as both
children are non-empty, so structures like XOR are still separable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .features import EmptyTrainingSetError, FeatureVector, LabeledSet, Prediction


@dataclass(frozen=True)
class TreeLeaf:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class TreeSplit:
    term: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[TreeLeaf, TreeSplit]


@dataclass(frozen=True)
class DecisionTreeModel:
    root: TreeNode
    max_depth: int
    min_samples_split: int
    n_classes: int

    def depth(self) -> int:
        def walk(node: TreeNode) -> int:
            if isinstance(node, TreeLeaf):
                return 0
            return 1 + max(walk(node.left), walk(node.right))

        return walk(self.root)

    def leaf_count(self) -> int:
        def walk(node: TreeNode) -> int:
            if isinstance(node, TreeLeaf):
                return 1
            return walk(node.left) + walk(node.right)

        return walk(self.root)


def gini(counts: list[int] | tuple[int, ...]) -> float:
    total = sum(counts)
    if total == 0:
        return 0.0
    return 1.0 - sum((c / total) ** 2 for c in counts)


def _label_counts(labels: tuple[int, ...], docs: list[int], n_classes: int) -> list[int]:
    counts = [0] * n_classes
    for i in docs:
        counts[labels[i]] += 1
    return counts


def best_split(
    data: LabeledSet, docs: list[int], binarize: bool = True
) -> tuple[int, float] | None:
    """Exhaustive (term, threshold) search minimizing weighted child Gini.

    Returns None when every candidate leaves one side empty. Candidate
    order (term id, then threshold) breaks exact ties deterministically.
    """
    n = len(docs)
    labels = data.labels
    n_classes = data.n_classes
    total_counts = _label_counts(labels, docs, n_classes)
    best: tuple[float, int, float] | None = None
    for term in range(data.n_features):
        values = {i: data.features[i].entries.get(term, 0.0) for i in docs}
        if binarize:
            thresholds = [0.5]
        else:
            distinct = sorted(set(values.values()))
            thresholds = [
                (a + b) / 2.0 for a, b in zip(distinct, distinct[1:])
            ]
        for threshold in thresholds:
            left_docs = [i for i in docs if values[i] <= threshold]
            n_left = len(left_docs)
            if n_left == 0 or n_left == n:
                continue
            left_counts = _label_counts(labels, left_docs, n_classes)
            right_counts = [t - l for t, l in zip(total_counts, left_counts)]
            weighted = (
                n_left * gini(left_counts) + (n - n_left) * gini(right_counts)
            ) / n
            if best is None or weighted < best[0] - 1e-12:
                best = (weighted, term, threshold)
    if best is None:
        return None
    return best[1], best[2]


def train_tree(
    data: LabeledSet,
    max_depth: int = 20,
    min_samples_split: int = 5,
    binarize: bool = True,
) -> DecisionTreeModel:
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    if min_samples_split < 2:
        raise ValueError("min_samples_split must be at least 2")
    if len(data) == 0:
        raise EmptyTrainingSetError("no training examples")

    def grow(docs: list[int], depth: int) -> TreeNode:
        counts = _label_counts(data.labels, docs, data.n_classes)
        if (
            depth >= max_depth
            or len(docs) < min_samples_split
            or max(counts) == len(docs)
        ):
            return TreeLeaf(counts=tuple(counts))
        found = best_split(data, docs, binarize=binarize)
        if found is None:
            return TreeLeaf(counts=tuple(counts))
        term, threshold = found
        left_docs = [
            i for i in docs if data.features[i].entries.get(term, 0.0) <= threshold
        ]
        right_docs = [
            i for i in docs if data.features[i].entries.get(term, 0.0) > threshold
        ]
        return TreeSplit(
            term=term,
            threshold=threshold,
            left=grow(left_docs, depth + 1),
            right=grow(right_docs, depth + 1),
        )

    root = grow(list(range(len(data))), 0)
    return DecisionTreeModel(
        root=root,
        max_depth=max_depth,
        min_samples_split=min_samples_split,
        n_classes=data.n_classes,
    )


def predict_tree(model: DecisionTreeModel, x: FeatureVector) -> Prediction:
    """Root-to-leaf descent; the leaf's class proportions are the scores."""
    node = model.root
    while isinstance(node, TreeSplit):
        value = x.entries.get(node.term, 0.0)
        node = node.left if value <= node.threshold else node.right
    total = node.total
    if total == 0:
        return Prediction.from_scores([0.0] * model.n_classes)
    return Prediction.from_scores([c / total for c in node.counts])
