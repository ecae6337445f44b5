"""Repeated stratified split-half evaluation with per-class F1 scoring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from .classifiers import ClassifierSpec, predict, train
from .corpus import Corpus
from .errors import ClassTooSmall, LengthMismatch, MaiclassError, RunFailure
from .features import build_matrix, build_vocabulary


@dataclass(frozen=True)
class SplitPlan:
    """Document indices for one train/test division, grouped per class."""

    seed: int
    per_class: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...]]]

    @property
    def train_indices(self) -> Tuple[int, ...]:
        out: List[int] = []
        for label in self.per_class:
            out.extend(self.per_class[label][0])
        return tuple(out)

    @property
    def test_indices(self) -> Tuple[int, ...]:
        out: List[int] = []
        for label in self.per_class:
            out.extend(self.per_class[label][1])
        return tuple(out)


def stratified_split(corpus: Corpus, seed: int) -> SplitPlan:
    """Shuffle each class and put the first ceil(n/2) documents in train.

    With the 30-document classes used throughout this gives the 15/15
    split-half design. Raises :class:`ClassTooSmall` when any class has
    fewer than two documents.
    """
    rng = np.random.default_rng(seed)
    per_class: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
    for label in corpus.classes:
        idx = np.array([i for i, doc in enumerate(corpus.documents)
                        if doc.label == label])
        if idx.shape[0] < 2:
            raise ClassTooSmall(label, int(idx.shape[0]))
        shuffled = idx[rng.permutation(idx.shape[0])]
        n_train = math.ceil(idx.shape[0] / 2)
        train_part = tuple(sorted(int(i) for i in shuffled[:n_train]))
        test_part = tuple(sorted(int(i) for i in shuffled[n_train:]))
        per_class[label] = (train_part, test_part)
    return SplitPlan(seed=seed, per_class=per_class)


@dataclass(frozen=True)
class F1Result:
    """Per-class one-vs-rest F1 plus which classes were degenerate (0/0)."""

    per_class: Dict[str, float]
    degenerate: FrozenSet[str]

    def macro(self) -> float:
        return sum(self.per_class.values()) / len(self.per_class)


def f1_scores(gold: Sequence[str], predicted: Sequence[str],
              classes: Sequence[str]) -> F1Result:
    """One-vs-rest F1 for each class; empty precision+recall counts as 0."""
    if len(gold) != len(predicted):
        raise LengthMismatch(
            f"gold has {len(gold)} labels, predictions {len(predicted)}")
    per_class: Dict[str, float] = {}
    degenerate = set()
    for label in classes:
        tp = fp = fn = 0
        for g, p in zip(gold, predicted):
            if p == label and g == label:
                tp += 1
            elif p == label:
                fp += 1
            elif g == label:
                fn += 1
        denom = 2 * tp + fp + fn
        if denom == 0:
            per_class[label] = 0.0
            degenerate.add(label)
        else:
            per_class[label] = 2 * tp / denom
    return F1Result(per_class=per_class, degenerate=frozenset(degenerate))


@dataclass(frozen=True)
class EvalResult:
    """F1 scores of one classifier/vector-model pair over repeated runs."""

    algorithm: str
    vector_model: str
    classes: Tuple[str, ...]
    runs: Tuple[F1Result, ...]
    master_seed: int

    @property
    def mean_f1(self) -> Dict[str, float]:
        return {label: sum(r.per_class[label] for r in self.runs)
                / len(self.runs) for label in self.classes}


def run_seeds(master_seed: int, run: int) -> Tuple[int, int]:
    """Derive (split_seed, train_seed) for one run from the master seed."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(run,))
    a, b = ss.generate_state(2)
    return int(a), int(b)


def run_experiment(corpus: Corpus, vector_model: str, spec: ClassifierSpec,
                   runs: int = 5, vocab_size: int = 1000,
                   master_seed: int = 0) -> EvalResult:
    """Repeat split/vocabulary/train/score ``runs`` times and collect F1.

    The vocabulary is rebuilt from each run's training half only, so no test
    token information leaks into the features. Failures inside a run are
    re-raised as :class:`RunFailure` carrying the run index.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    results: List[F1Result] = []
    for r in range(runs):
        split_seed, train_seed = run_seeds(master_seed, r)
        try:
            plan = stratified_split(corpus, split_seed)
            train_docs = [corpus.documents[i] for i in plan.train_indices]
            test_docs = [corpus.documents[i] for i in plan.test_indices]
            vocab = build_vocabulary(train_docs, vocab_size)
            train_m = build_matrix(train_docs, vocab, vector_model)
            test_m = build_matrix(test_docs, vocab, vector_model)
            model = train(spec, train_m, seed=train_seed)
            predicted = predict(model, test_m.rows)
            results.append(f1_scores([d.label for d in test_docs], predicted,
                                     corpus.classes))
        except MaiclassError as exc:
            raise RunFailure(r, exc) from exc
    return EvalResult(algorithm=spec.algorithm, vector_model=vector_model,
                      classes=tuple(corpus.classes), runs=tuple(results),
                      master_seed=master_seed)


def results_to_csv(results: Sequence[EvalResult]) -> str:
    """Flat CSV: one row per (algorithm, vector model, class)."""
    if not results:
        return "algorithm,vector_model,class,mean_f1\n"
    n_runs = len(results[0].runs)
    header = ["algorithm", "vector_model", "class"]
    header += [f"run_{i + 1}" for i in range(n_runs)]
    header.append("mean_f1")
    lines = [",".join(header)]
    for res in results:
        for label in res.classes:
            cells = [res.algorithm, res.vector_model, label]
            cells += [f"{r.per_class[label]:.6f}" for r in res.runs]
            cells.append(f"{res.mean_f1[label]:.6f}")
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
