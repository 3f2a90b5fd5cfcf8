import tracemalloc

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polsenti.corpus import (
    Corpus,
    Document,
    EmptyCorpusError,
    SentimentClass,
    Split,
    TermDocumentMatrix,
    UnscoredCorpusError,
    Vocabulary,
    build_tdm,
    filter_neutral,
    remove_sparse_terms,
    split_train_test,
)
from polsenti.normalize import normalized_tokens
from polsenti.synthetic import random_token_corpus


def _corpus(texts):
    return Corpus(tuple(Document(text=t) for t in texts))


class TestDocument:
    def test_class_must_match_score_sign(self):
        Document(senti_score=2, text="x", senti_class=SentimentClass.POSITIVE)
        with pytest.raises(ValueError, match="inconsistent"):
            Document(senti_score=2, text="x", senti_class=SentimentClass.NEGATIVE)
        with pytest.raises(ValueError, match="inconsistent"):
            Document(senti_score=0, text="x", senti_class=SentimentClass.POSITIVE)

    def test_unscored_is_fine(self):
        doc = Document(text="x")
        assert not doc.scored


class TestBuildTdm:
    def test_hand_counted(self):
        tdm = build_tdm(_corpus(["a b a", "b c"]))
        assert tdm.vocab.terms == ("a", "b", "c")
        assert tdm.rows == ({0: 2, 1: 1}, {1: 1, 2: 1})
        assert tdm.n_docs == 2

    def test_single_empty_document(self):
        tdm = build_tdm(_corpus([""]))
        assert tdm.vocab.terms == ()
        assert tdm.rows == ({},)

    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpusError):
            build_tdm(Corpus(()))

    def test_count_conservation(self):
        corpus = random_token_corpus(50, [f"w{i}" for i in range(30)], seed=5)
        tdm = build_tdm(corpus)
        expected = sum(len(normalized_tokens(doc.text)) for doc in corpus)
        assert tdm.total_count() == expected

    def test_normalization_applied(self):
        tdm = build_tdm(_corpus(["Zły DZIEŃ :("]))
        assert tdm.vocab.terms == ("zly", "dzien", "neg.emot")

    def test_vocabulary_first_seen_order(self):
        tdm = build_tdm(_corpus(["b a", "c a d"]))
        assert tdm.vocab.terms == ("b", "a", "c", "d")

    def test_memory_stays_sparse_at_production_scale(self):
        # A corpus the size that broke a dense pipeline on a 2 GB machine
        # must build comfortably inside a 256 MB allocation budget.
        words = [f"slowo{i:03d}" for i in range(800)]
        corpus = random_token_corpus(1468, words, max_words=20, seed=42)
        tracemalloc.start()
        tdm = build_tdm(corpus)
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        assert tdm.n_docs == 1468
        assert peak < 256 * 1024 * 1024


def _tdm_from_rows(rows, n_terms):
    vocab = Vocabulary(tuple(f"t{i}" for i in range(n_terms)))
    return TermDocumentMatrix(vocab=vocab, rows=tuple(rows))


def _naive_df_scan(tdm, sparse):
    # Independent retention rule: keep iff 1 - df/n < sparse.
    kept = []
    for col, term in enumerate(tdm.vocab.terms):
        df = sum(1 for row in tdm.rows if col in row)
        if 1.0 - df / tdm.n_docs < sparse:
            kept.append(term)
    return kept


class TestRemoveSparseTerms:
    def test_boundary_kept(self):
        rows = [{0: 1}] + [{}] * 9  # df=1, n=10 -> sparsity 0.9
        tdm = _tdm_from_rows(rows, 1)
        assert remove_sparse_terms(tdm, 0.95).vocab.terms == ("t0",)

    def test_boundary_removed(self):
        rows = [{0: 1}] + [{}] * 9
        tdm = _tdm_from_rows(rows, 1)
        assert remove_sparse_terms(tdm, 0.90).vocab.terms == ()

    def test_sparse_one_keeps_everything(self):
        tdm = build_tdm(_corpus(["a b", "b"]))
        pruned = remove_sparse_terms(tdm, 1.0)
        assert pruned.vocab.terms == tdm.vocab.terms
        assert pruned.rows == tdm.rows

    def test_bad_threshold(self):
        tdm = build_tdm(_corpus(["a"]))
        for bad in (0.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                remove_sparse_terms(tdm, bad)

    def test_reindexing_preserves_counts(self):
        tdm = build_tdm(_corpus(["a a b", "b c", "b"]))
        pruned = remove_sparse_terms(tdm, 0.5)  # keep terms in >half the docs
        assert pruned.vocab.terms == ("b",)
        assert pruned.rows == ({0: 1}, {0: 1}, {0: 1})


_small_corpus = st.lists(
    st.lists(st.sampled_from("abcdefg"), max_size=6).map(" ".join),
    min_size=1,
    max_size=20,
)


class TestSparsePruningProperties:
    @given(_small_corpus, st.floats(min_value=0.01, max_value=1.0))
    @settings(max_examples=150)
    def test_equals_naive_scan(self, texts, sparse):
        tdm = build_tdm(_corpus(texts))
        pruned = remove_sparse_terms(tdm, sparse)
        assert list(pruned.vocab.terms) == _naive_df_scan(tdm, sparse)

    @given(_small_corpus)
    @settings(max_examples=100)
    def test_monotone_in_threshold(self, texts):
        tdm = build_tdm(_corpus(texts))
        grid = [0.90, 0.95, 0.99, 0.995, 1.0]
        kept = [set(remove_sparse_terms(tdm, s).vocab.terms) for s in grid]
        for smaller, larger in zip(kept, kept[1:]):
            assert smaller <= larger

    @given(_small_corpus, st.sampled_from([0.90, 0.95, 0.99, 1.0]))
    @settings(max_examples=100)
    def test_idempotent(self, texts, sparse):
        tdm = build_tdm(_corpus(texts))
        once = remove_sparse_terms(tdm, sparse)
        twice = remove_sparse_terms(once, sparse)
        assert twice.vocab.terms == once.vocab.terms
        assert twice.rows == once.rows


class TestSplit:
    def test_deterministic(self):
        corpus = _corpus(["x"] * 500)
        a = split_train_test(corpus, seed=99, p_train=0.7)
        b = split_train_test(corpus, seed=99, p_train=0.7)
        assert a.labels == b.labels

    def test_partition(self):
        corpus = _corpus(["x"] * 321)
        assignment = split_train_test(corpus, seed=1, p_train=0.7)
        train, test = assignment.train_indices(), assignment.test_indices()
        assert len(train) + len(test) == len(corpus)
        assert set(train) | set(test) == set(range(len(corpus)))
        assert not set(train) & set(test)

    def test_fraction_close_to_p(self):
        # Binomial 3-sigma bound at n=10000: |p_hat - 0.7| <= ~0.0137.
        corpus = _corpus(["x"] * 10000)
        assignment = split_train_test(corpus, seed=2015, p_train=0.7)
        frac = len(assignment.train_indices()) / len(corpus)
        assert 0.68 <= frac <= 0.72

    def test_apply_keeps_order_and_content(self):
        docs = [Document(text=f"d{i}") for i in range(40)]
        corpus = Corpus(tuple(docs))
        assignment = split_train_test(corpus, seed=3, p_train=0.5)
        train, test = assignment.apply(corpus)
        assert [d.text for d in train] == [docs[i].text for i in assignment.train_indices()]
        assert len(train) + len(test) == 40

    def test_invalid_fraction(self):
        corpus = _corpus(["x"])
        for bad in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                split_train_test(corpus, seed=0, p_train=bad)

    def test_labels_enum(self):
        corpus = _corpus(["x"] * 10)
        assignment = split_train_test(corpus, seed=0, p_train=0.5)
        assert all(s in (Split.TRAIN, Split.TEST) for s in assignment.labels)


def _scored(scores):
    return Corpus(
        tuple(
            Document(senti_score=s, text="x", senti_class=SentimentClass.from_score(s))
            for s in scores
        )
    )


class TestFilterNeutral:
    def test_sign_filter(self):
        assert len(filter_neutral(_scored([0, 1, -1, 0]))) == 2

    def test_all_neutral(self):
        assert len(filter_neutral(_scored([0, 0]))) == 0

    def test_order_preserved(self):
        corpus = _scored([1, 0, -2, 3])
        kept = filter_neutral(corpus)
        assert [d.senti_score for d in kept] == [1, -2, 3]

    def test_unscored_rejected(self):
        corpus = Corpus((Document(text="x"),))
        with pytest.raises(UnscoredCorpusError):
            filter_neutral(corpus)
