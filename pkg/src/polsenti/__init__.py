"""polsenti: lexicon-based sentiment scoring and classifier benchmarking
for short Polish social-media texts.

Submodules: normalize, lexicon, corpus, scoring, classifiers,
evaluation, ingest, synthetic, svg, cli.
"""

from .corpus import Corpus, Document, SentimentClass
from .lexicon import SentimentLexicon, load_lexicon
from .normalize import EmoticonTable, NormalizerConfig

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "Document",
    "EmoticonTable",
    "NormalizerConfig",
    "SentimentClass",
    "SentimentLexicon",
    "load_lexicon",
    "__version__",
]
