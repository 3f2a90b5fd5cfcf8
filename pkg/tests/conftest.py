from pathlib import Path

import pytest

from polsenti.lexicon import SentimentLexicon, load_lexicon

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def demo_lexicon() -> SentimentLexicon:
    return load_lexicon(
        str(DATA_DIR / "positive-words.txt"), str(DATA_DIR / "negative-words.txt")
    )


@pytest.fixture
def tiny_lexicon() -> SentimentLexicon:
    return SentimentLexicon(
        positive=frozenset({"dobry", "pos.emot"}),
        negative=frozenset({"zly", "neg.emot"}),
    )
