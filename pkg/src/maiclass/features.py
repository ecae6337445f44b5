"""Top-K keyword vocabulary and the three bag-of-words vector models.

``bernoulli`` marks keyword presence with 0/1, ``plain_freq`` uses raw
occurrence counts, and ``norm_freq`` divides each count by the document's
total token count so every entry lands in [0, 1].
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus import Document
from .errors import EmptyCorpus

VECTOR_MODELS = ("bernoulli", "plain_freq", "norm_freq")


@dataclass(frozen=True)
class Vocabulary:
    """Tokens ordered by descending corpus frequency, ties lexicographic."""

    tokens: tuple[str, ...]
    counts: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.tokens)

    def index(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.tokens)}


def build_vocabulary(docs: Sequence[Document], k: int) -> Vocabulary:
    """Pick the k most frequent tokens across ``docs``, stop-words included.

    Ties in frequency break by ascending lexicographic order so the result
    is deterministic and invariant under permutation of the documents. If
    fewer than k distinct tokens exist, all of them are returned.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counter: Counter[str] = Counter()
    for doc in docs:
        counter.update(doc.tokens)
    if not counter:
        raise EmptyCorpus("no tokens in any document")
    ordered = sorted(counter.items(), key=lambda item: (-item[1], item[0]))
    top = ordered[:k]
    return Vocabulary(tokens=tuple(tok for tok, _ in top), counts=dict(top))


def vectorize(tokens: Iterable[str], vocab: Vocabulary, model: str) -> np.ndarray:
    """Map a token sequence to a vector of length ``vocab.size``."""
    if model not in VECTOR_MODELS:
        raise ValueError(f"unknown vector model {model!r}")
    if vocab.size == 0:
        raise ValueError("vocabulary is empty")
    tokens = list(tokens)
    index = vocab.index()
    vec = np.zeros(vocab.size, dtype=np.float64)
    for tok in tokens:
        pos = index.get(tok)
        if pos is not None:
            vec[pos] += 1.0
    if model == "bernoulli":
        return (vec > 0).astype(np.float64)
    if model == "norm_freq":
        total = len(tokens)
        return vec / total if total else vec
    return vec


@dataclass(frozen=True)
class FeatureMatrix:
    """A vectorized corpus: one row per document, aligned labels."""

    model: str
    vocab: Vocabulary
    rows: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.rows.shape[0] != len(self.labels):
            raise ValueError("row count does not match label count")

    @property
    def n_documents(self) -> int:
        return self.rows.shape[0]


def build_matrix(docs: Sequence[Document], vocab: Vocabulary, model: str) -> FeatureMatrix:
    """Vectorize every document under ``model``, preserving order."""
    if not docs:
        raise EmptyCorpus("no documents to vectorize")
    rows = np.vstack([vectorize(doc.tokens, vocab, model) for doc in docs])
    return FeatureMatrix(
        model=model, vocab=vocab, rows=rows, labels=tuple(doc.label for doc in docs)
    )


def matrix_to_csv(matrix: FeatureMatrix) -> str:
    """Debug dump: header of vocab tokens, one row per document, label last."""
    buf = io.StringIO()
    buf.write(",".join(list(matrix.vocab.tokens) + ["label"]))
    buf.write("\n")
    for row, label in zip(matrix.rows, matrix.labels):
        buf.write(",".join(format(v, "g") for v in row))
        buf.write(f",{label}\n")
    return buf.getvalue()
