"""Shared fixtures: a synthetic, cleanly separable three-class corpus.

The corpus follows the construction used by the acceptance suite: 30
documents per class, each class owning a disjoint 50-token vocabulary, plus
a pool of 200 noise tokens shared by everyone. Every document mixes its own
class's tokens with noise, so the classes are linearly separable under all
three vector models while the noise keeps the problem non-trivial.
"""

import json

import numpy as np
import pytest

from maiclass.corpus import Corpus, Document

CLASS_TOKENS = {
    "football": tuple(f"foot{i:02d}" for i in range(50)),
    "rock": tuple(f"rock{i:02d}" for i in range(50)),
    "vegetarianism": tuple(f"veg{i:02d}" for i in range(50)),
}
NOISE_TOKENS = tuple(f"noise{i:03d}" for i in range(200))


def make_synthetic_corpus(docs_per_class: int = 30, seed: int = 12345) -> Corpus:
    rng = np.random.default_rng(seed)
    networks = ("twitter", "vkontakte")
    languages = ("en", "ru")
    documents = []
    for label, words in CLASS_TOKENS.items():
        for j in range(docs_per_class):
            # words[0] is a class marker carried by every document, so even
            # single-feature learners can carve the classes exactly; the rest
            # of the class vocabulary varies from document to document.
            own = rng.choice(words, size=20)
            noise = rng.choice(NOISE_TOKENS, size=10)
            text = " ".join([words[0]] + list(own) + list(noise))
            documents.append(Document.from_raw(
                id=f"{label}-{j:02d}",
                network=networks[j % 2],
                language=languages[j % 2],
                label=label,
                raw_text=text,
            ))
    return Corpus(name="synthetic", documents=tuple(documents),
                  classes=tuple(CLASS_TOKENS))


def corpus_records(corpus: Corpus):
    for doc in corpus.documents:
        yield {"id": doc.id, "network": doc.network, "language": doc.language,
               "label": doc.label, "text": doc.raw_text}


def write_jsonl(path, records) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return str(path)


@pytest.fixture(scope="session")
def synthetic_corpus() -> Corpus:
    return make_synthetic_corpus()


@pytest.fixture(scope="session")
def corpus_jsonl_path(tmp_path_factory, synthetic_corpus) -> str:
    path = tmp_path_factory.mktemp("corpus") / "synthetic.jsonl"
    return write_jsonl(path, corpus_records(synthetic_corpus))
