"""Contracts every one of the twelve classifier configurations must meet."""

import json

import numpy as np
import pytest

from maiclass.classifiers import (
    ALGORITHMS,
    ClassifierSpec,
    load_model,
    model_from_dict,
    model_to_dict,
    predict,
    predict_scores,
    save_model,
    train,
)
from maiclass.errors import (
    DegenerateLabels,
    DimensionMismatch,
    IoError,
    ParseError,
    Unsupported,
)

SCORED = {"mlp_lbfgs", "mlp_adam", "nb_bernoulli", "nb_multinomial",
          "nb_gaussian", "logistic_regression"}


def blob_data(seed=21, per_class=12):
    """Bag-of-words-style counts: each class keeps to its own three of nine
    features, so presence, count, and distance based models all separate it."""
    rng = np.random.default_rng(seed)
    rows = np.zeros((3 * per_class, 9))
    labels = []
    for k, name in enumerate(("alpha", "beta", "gamma")):
        block = slice(k * per_class, (k + 1) * per_class)
        rows[block, 3 * k:3 * k + 3] = rng.integers(1, 5, size=(per_class, 3))
        labels += [name] * per_class
    return rows, labels


def test_twelve_configurations():
    assert len(ALGORITHMS) == 12
    assert len(set(ALGORITHMS)) == 12


def test_unknown_algorithm_rejected():
    with pytest.raises(ValueError):
        ClassifierSpec(algorithm="perceptron")


def test_unknown_hyperparameter_rejected():
    rows, labels = blob_data()
    with pytest.raises(ValueError, match="hyperparameter"):
        train(ClassifierSpec(algorithm="knn", hyperparams={"leafs": 3}),
              (rows, labels))


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_train_predict_and_serialise(algo, tmp_path):
    rows, labels = blob_data()
    model = train(ClassifierSpec(algorithm=algo), (rows, labels), seed=3)
    assert model.classes == ("alpha", "beta", "gamma")
    got = predict(model, rows)
    assert set(got) <= set(model.classes)
    # Well-separated blobs: every configuration should fit them exactly.
    assert got == list(labels)

    path = tmp_path / f"{algo}.json"
    save_model(model, path)
    clone = load_model(path)
    assert clone.spec.algorithm == algo
    assert clone.classes == model.classes
    assert predict(clone, rows) == got


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_deterministic_given_seed(algo):
    rows, labels = blob_data()
    queries = np.abs(np.random.default_rng(5).normal(1.5, 2.0, size=(30, 9)))
    a = train(ClassifierSpec(algorithm=algo), (rows, labels), seed=11)
    b = train(ClassifierSpec(algorithm=algo), (rows, labels), seed=11)
    assert predict(a, queries) == predict(b, queries)
    if algo in SCORED:
        assert np.array_equal(predict_scores(a, queries),
                              predict_scores(b, queries))


@pytest.mark.parametrize("algo", sorted(SCORED))
def test_scores_are_distributions(algo):
    rows, labels = blob_data()
    model = train(ClassifierSpec(algorithm=algo), (rows, labels), seed=0)
    scores = predict_scores(model, rows)
    assert scores.shape == (len(labels), 3)
    assert np.all(scores >= 0.0)
    assert np.allclose(scores.sum(axis=1), 1.0, atol=1e-9)


@pytest.mark.parametrize("algo", sorted(set(ALGORITHMS) - SCORED))
def test_unscored_families_raise(algo):
    rows, labels = blob_data()
    model = train(ClassifierSpec(algorithm=algo), (rows, labels), seed=0)
    with pytest.raises(Unsupported):
        predict_scores(model, rows)


def test_single_label_degenerate():
    rows = np.zeros((4, 2))
    with pytest.raises(DegenerateLabels):
        train(ClassifierSpec(algorithm="nb_gaussian"),
              (rows, ["same"] * 4))


def test_wrong_width_rejected():
    rows, labels = blob_data()
    model = train(ClassifierSpec(algorithm="knn"), (rows, labels))
    with pytest.raises(DimensionMismatch):
        predict(model, np.zeros((2, 5)))
    with pytest.raises(DimensionMismatch):
        predict(model, np.zeros(3))


def test_model_dict_round_trip_exact():
    rows, labels = blob_data()
    model = train(ClassifierSpec(algorithm="logistic_regression"),
                  (rows, labels))
    state = json.loads(json.dumps(model_to_dict(model)))
    clone = model_from_dict(state)
    assert np.array_equal(predict_scores(model, rows),
                          predict_scores(clone, rows))


def test_load_model_errors(tmp_path):
    with pytest.raises(IoError):
        load_model(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_model(bad)
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"format": "other/9"}), encoding="utf-8")
    with pytest.raises(ParseError):
        load_model(wrong)


def test_hyperparameter_overrides_reach_estimator():
    rows, labels = blob_data()
    model = train(ClassifierSpec(algorithm="knn", hyperparams={"k": 1}),
                  (rows, labels))
    assert model.estimator.k == 1
    svm = train(ClassifierSpec(algorithm="svm_rbf",
                               hyperparams={"gamma": 2.5, "c": 0.7}),
                (rows, labels))
    assert svm.estimator.params.gamma == 2.5
    assert svm.estimator.c == 0.7
