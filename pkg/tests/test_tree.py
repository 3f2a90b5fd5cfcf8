import random
from fractions import Fraction

import pytest

from polsenti.classifiers import (
    EmptyTrainingSetError,
    FeatureVector,
    LabeledSet,
    predict_tree,
    train_tree,
)
from polsenti.classifiers.tree import TreeLeaf, TreeSplit, best_split


def _labeled(rows, labels, n_features, n_classes=2):
    return LabeledSet(
        features=tuple(FeatureVector({k: float(v) for k, v in r.items()}) for r in rows),
        labels=tuple(labels),
        class_names=tuple(f"c{i}" for i in range(n_classes)),
        n_features=n_features,
    )


def _exact_gini(counts):
    total = sum(counts)
    if total == 0:
        return Fraction(0)
    return 1 - sum(Fraction(c, total) ** 2 for c in counts)


def _oracle_split(data, docs):
    """Exact-arithmetic exhaustive search over (term, 0.5) candidates."""
    n = len(docs)
    best = None
    for term in range(data.n_features):
        left = [i for i in docs if data.features[i].entries.get(term, 0.0) <= 0.5]
        if not left or len(left) == n:
            continue
        right = [i for i in docs if i not in set(left)]

        def counts(group):
            out = [0] * data.n_classes
            for i in group:
                out[data.labels[i]] += 1
            return out

        weighted = (
            len(left) * _exact_gini(counts(left))
            + len(right) * _exact_gini(counts(right))
        ) / n
        if best is None or weighted < best[0]:
            best = (weighted, term, 0.5)
    return None if best is None else (best[1], best[2])


class TestTraining:
    def test_pure_input_single_leaf(self):
        data = _labeled([{0: 1}, {1: 1}, {}], [1, 1, 1], 2)
        model = train_tree(data)
        assert isinstance(model.root, TreeLeaf)
        assert model.depth() == 0
        assert predict_tree(model, FeatureVector({0: 1.0})).label == 1

    def test_xor_needs_depth_two(self):
        rows = [{}, {0: 1, 1: 1}, {0: 1}, {1: 1}]
        labels = [0, 0, 1, 1]
        data = _labeled(rows, labels, 2)
        model = train_tree(data, max_depth=2, min_samples_split=2)
        for fv, label in zip(data.features, data.labels):
            assert predict_tree(model, fv).label == label
        assert model.depth() == 2

    def test_split_matches_exhaustive_oracle(self):
        rng = random.Random(99)
        for trial in range(60):
            n_docs = rng.randint(2, 50)
            n_features = rng.randint(1, 6)
            rows = [
                {c: 1 for c in range(n_features) if rng.random() < 0.5}
                for _ in range(n_docs)
            ]
            labels = [rng.randrange(2) for _ in range(n_docs)]
            data = _labeled(rows, labels, n_features)
            docs = list(range(n_docs))
            assert best_split(data, docs) == _oracle_split(data, docs)

    def test_empty_training_set(self):
        with pytest.raises(EmptyTrainingSetError):
            train_tree(_labeled([], [], 2))

    def test_depth_limit_respected(self):
        rng = random.Random(1)
        rows = [{c: 1 for c in range(8) if rng.random() < 0.5} for _ in range(60)]
        labels = [rng.randrange(2) for _ in range(60)]
        data = _labeled(rows, labels, 8)
        for depth in (0, 1, 3):
            model = train_tree(data, max_depth=depth, min_samples_split=2)
            assert model.depth() <= depth

    def test_leaf_counts_sum_to_samples(self):
        rng = random.Random(2)
        rows = [{c: 1 for c in range(5) if rng.random() < 0.5} for _ in range(40)]
        labels = [rng.randrange(2) for _ in range(40)]
        data = _labeled(rows, labels, 5)
        model = train_tree(data, min_samples_split=2)

        def leaf_total(node):
            if isinstance(node, TreeLeaf):
                return node.total
            return leaf_total(node.left) + leaf_total(node.right)

        assert leaf_total(model.root) == 40

    def test_fully_grown_tree_reproduces_training_labels(self):
        # Labels are a deterministic function of the binary feature row, so
        # a fully grown tree must fit the training set exactly.
        rng = random.Random(12)
        seen = {}
        rows, labels = [], []
        for _ in range(40):
            row = tuple(sorted(c for c in range(6) if rng.random() < 0.5))
            label = seen.setdefault(row, (len(row) + sum(row)) % 2)
            rows.append({c: 1 for c in row})
            labels.append(label)
        data = _labeled(rows, labels, 6)
        model = train_tree(data, max_depth=64, min_samples_split=2)
        for fv, label in zip(data.features, data.labels):
            assert predict_tree(model, fv).label == label

    def test_permutation_invariant(self):
        rng = random.Random(6)
        rows = [{c: 1 for c in range(5) if rng.random() < 0.4} for _ in range(30)]
        labels = [rng.randrange(2) for _ in range(30)]
        data = _labeled(rows, labels, 5)
        order = list(range(30))
        random.Random(7).shuffle(order)
        a = train_tree(data, min_samples_split=2)
        b = train_tree(data.subset(order), min_samples_split=2)

        def shape(node):
            if isinstance(node, TreeLeaf):
                return ("leaf", node.counts)
            return ("split", node.term, node.threshold, shape(node.left), shape(node.right))

        assert shape(a.root) == shape(b.root)

    def test_count_thresholds_when_not_binarized(self):
        # Counts 1 vs 2 are separable only with real thresholds.
        data = _labeled([{0: 1}, {0: 2}, {0: 1}, {0: 2}], [0, 1, 0, 1], 1)
        binarized = train_tree(data, min_samples_split=2)
        assert isinstance(binarized.root, TreeLeaf)  # presence alone cannot split
        model = train_tree(data, min_samples_split=2, binarize=False)
        for fv, label in zip(data.features, data.labels):
            assert predict_tree(model, fv).label == label


class TestPrediction:
    def test_single_leaf_always_same_class(self):
        from polsenti.classifiers.tree import DecisionTreeModel

        model = DecisionTreeModel(
            root=TreeLeaf(counts=(1, 3)), max_depth=5, min_samples_split=2, n_classes=2
        )
        for entries in ({}, {0: 1.0}, {5: 2.0}):
            assert predict_tree(model, FeatureVector(entries)).label == 1

    def test_hand_built_descent(self):
        from polsenti.classifiers.tree import DecisionTreeModel

        root = TreeSplit(
            term=0,
            threshold=0.5,
            left=TreeLeaf(counts=(3, 0)),
            right=TreeSplit(
                term=1,
                threshold=0.5,
                left=TreeLeaf(counts=(0, 2)),
                right=TreeLeaf(counts=(1, 0)),
            ),
        )
        model = DecisionTreeModel(
            root=root, max_depth=2, min_samples_split=2, n_classes=2
        )
        assert predict_tree(model, FeatureVector({})).label == 0
        assert predict_tree(model, FeatureVector({0: 1.0})).label == 1
        assert predict_tree(model, FeatureVector({0: 1.0, 1: 1.0})).label == 0

    def test_scores_are_leaf_proportions(self):
        from polsenti.classifiers.tree import DecisionTreeModel

        model = DecisionTreeModel(
            root=TreeLeaf(counts=(1, 3)), max_depth=0, min_samples_split=2, n_classes=2
        )
        pred = predict_tree(model, FeatureVector({}))
        assert pred.scores == (0.25, 0.75)
