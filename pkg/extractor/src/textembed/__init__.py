"""textembed: JSONL corpora to EMB1 embedding matrices via a causal LM."""

__version__ = "0.1.0"

from .emb1 import read_corpus, read_emb1, write_emb1
from .extract import DEFAULT_MODEL, POOLINGS, ExtractConfig, extract

__all__ = [
    "__version__",
    "read_corpus",
    "read_emb1",
    "write_emb1",
    "DEFAULT_MODEL",
    "POOLINGS",
    "ExtractConfig",
    "extract",
]
