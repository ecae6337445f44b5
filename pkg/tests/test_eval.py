"""Stratified split-half evaluation protocol and F1 scoring."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maiclass.classifiers import ClassifierSpec
from maiclass.corpus import Corpus, Document
from maiclass.errors import ClassTooSmall, LengthMismatch, RunFailure
from maiclass.evaluate import (
    EvalResult,
    F1Result,
    f1_scores,
    results_to_csv,
    run_experiment,
    run_seeds,
    stratified_split,
)

from conftest import make_synthetic_corpus


def tiny_corpus(sizes):
    docs = []
    for label, count in sizes.items():
        for i in range(count):
            docs.append(Document(id=f"{label}{i}", network="twitter",
                                 language="en", label=label,
                                 raw_text="w", tokens=("w",)))
    return Corpus(name="tiny", documents=tuple(docs), classes=tuple(sizes))


def test_thirty_per_class_gives_fifteen_fifteen(synthetic_corpus):
    plan = stratified_split(synthetic_corpus, seed=0)
    for label in synthetic_corpus.classes:
        train_part, test_part = plan.per_class[label]
        assert len(train_part) == 15
        assert len(test_part) == 15
        assert not set(train_part) & set(test_part)
    all_indices = sorted(plan.train_indices + plan.test_indices)
    assert all_indices == list(range(90))


def test_odd_class_splits_four_three():
    plan = stratified_split(tiny_corpus({"a": 7, "b": 4}), seed=1)
    assert len(plan.per_class["a"][0]) == 4
    assert len(plan.per_class["a"][1]) == 3
    assert len(plan.per_class["b"][0]) == 2


def test_split_is_seed_deterministic(synthetic_corpus):
    a = stratified_split(synthetic_corpus, seed=3)
    b = stratified_split(synthetic_corpus, seed=3)
    c = stratified_split(synthetic_corpus, seed=4)
    assert a == b
    assert a != c


def test_class_too_small():
    with pytest.raises(ClassTooSmall) as err:
        stratified_split(tiny_corpus({"a": 1, "b": 5}), seed=0)
    assert err.value.label == "a"


def test_f1_perfect_and_half():
    perfect = f1_scores(["a", "b"], ["a", "b"], ["a", "b"])
    assert perfect.per_class == {"a": 1.0, "b": 1.0}
    assert perfect.macro() == 1.0
    # Class a: TP=1, FP=1, FN=1 -> F1 = 2/(2+1+1) = 0.5.
    mixed = f1_scores(["a", "a", "b"], ["a", "b", "a"], ["a", "b"])
    assert mixed.per_class["a"] == 0.5
    assert mixed.per_class["b"] == 0.0
    assert not mixed.degenerate


def test_f1_degenerate_class_flagged():
    res = f1_scores(["a", "a"], ["a", "a"], ["a", "b"])
    assert res.per_class == {"a": 1.0, "b": 0.0}
    assert res.degenerate == frozenset({"b"})


def test_f1_length_mismatch():
    with pytest.raises(LengthMismatch):
        f1_scores(["a"], ["a", "b"], ["a", "b"])


@given(st.data())
def test_f1_invariant_under_pair_permutation(data):
    n = data.draw(st.integers(2, 20))
    gold = data.draw(st.lists(st.sampled_from("ab"), min_size=n, max_size=n))
    pred = data.draw(st.lists(st.sampled_from("ab"), min_size=n, max_size=n))
    perm = data.draw(st.permutations(range(n)))
    direct = f1_scores(gold, pred, ["a", "b"])
    shuffled = f1_scores([gold[i] for i in perm], [pred[i] for i in perm],
                         ["a", "b"])
    assert direct == shuffled


@given(st.data())
def test_f1_respects_label_bijection(data):
    n = data.draw(st.integers(2, 20))
    gold = data.draw(st.lists(st.sampled_from("ab"), min_size=n, max_size=n))
    pred = data.draw(st.lists(st.sampled_from("ab"), min_size=n, max_size=n))
    rename = {"a": "x", "b": "y"}
    direct = f1_scores(gold, pred, ["a", "b"])
    renamed = f1_scores([rename[g] for g in gold], [rename[p] for p in pred],
                        ["x", "y"])
    assert direct.per_class["a"] == renamed.per_class["x"]
    assert direct.per_class["b"] == renamed.per_class["y"]


def test_run_seeds_stable_and_distinct():
    pairs = [run_seeds(0, r) for r in range(5)]
    assert pairs == [run_seeds(0, r) for r in range(5)]
    assert len(set(pairs)) == 5
    assert run_seeds(0, 0) != run_seeds(1, 0)


def test_run_experiment_on_separable_corpus(synthetic_corpus):
    res = run_experiment(synthetic_corpus, "bernoulli",
                         ClassifierSpec(algorithm="nb_multinomial"),
                         runs=3, vocab_size=1000, master_seed=0)
    assert isinstance(res, EvalResult)
    assert len(res.runs) == 3
    assert res.classes == synthetic_corpus.classes
    assert res.mean_f1 == {"football": 1.0, "rock": 1.0,
                           "vegetarianism": 1.0}


def test_run_experiment_deterministic(synthetic_corpus):
    spec = ClassifierSpec(algorithm="decision_tree")
    a = run_experiment(synthetic_corpus, "plain_freq", spec, runs=2)
    b = run_experiment(synthetic_corpus, "plain_freq", spec, runs=2)
    assert a == b


def test_run_experiment_rejects_zero_runs(synthetic_corpus):
    with pytest.raises(ValueError):
        run_experiment(synthetic_corpus, "bernoulli",
                       ClassifierSpec(algorithm="knn"), runs=0)


def test_failures_are_wrapped_with_run_index():
    # Tokenless documents leave nothing to build a vocabulary from, so the
    # first run must fail and carry its index.
    docs = tuple(
        Document(id=f"d{i}", network="twitter", language="en",
                 label="a" if i < 2 else "b", raw_text="", tokens=())
        for i in range(4))
    corpus = Corpus(name="empty", documents=docs, classes=("a", "b"))
    with pytest.raises(RunFailure) as err:
        run_experiment(corpus, "bernoulli",
                       ClassifierSpec(algorithm="knn"), runs=2)
    assert err.value.run == 0
    assert "EmptyCorpus" in str(err.value)


def test_results_to_csv_layout():
    corpus = make_synthetic_corpus(docs_per_class=4)
    res = run_experiment(corpus, "bernoulli",
                         ClassifierSpec(algorithm="knn"), runs=2)
    text = results_to_csv([res])
    lines = text.splitlines()
    assert lines[0] == "algorithm,vector_model,class,run_1,run_2,mean_f1"
    assert len(lines) == 1 + 3
    first = lines[1].split(",")
    assert first[0] == "knn"
    assert first[1] == "bernoulli"
    assert first[2] == "football"
    for cell in first[3:]:
        float(cell)
    assert text == results_to_csv([res])


def test_small_vocabulary_still_evaluates(synthetic_corpus):
    res = run_experiment(synthetic_corpus, "norm_freq",
                         ClassifierSpec(algorithm="nb_gaussian"), runs=1,
                         vocab_size=25)
    assert len(res.runs) == 1
    for score in res.runs[0].per_class.values():
        assert 0.0 <= score <= 1.0
