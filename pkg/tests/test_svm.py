"""Kernel SVM: hand examples, one-vs-one voting, determinism."""

import numpy as np
import pytest

from maiclass.classifiers import ClassifierSpec, predict, train
from maiclass.classifiers.svm import KernelSvm


def test_two_point_linear_example():
    model = train(ClassifierSpec(algorithm="svm_linear"),
                  ([[0.0, 0.0], [1.0, 1.0]], ["A", "B"]))
    assert predict(model, [[0.9, 0.9]]) == ["B"]
    assert predict(model, [[0.1, 0.1]]) == ["A"]


def test_binary_margin_midpoint():
    est = KernelSvm(kernel="linear").fit(
        np.array([[0.0], [2.0]]), np.array([0, 1]), 2)
    dec = est.decision_pairs(np.array([[1.0], [0.0], [2.0]]))
    # Pair (0, 1) treats class 0 as +1; the midpoint is on the boundary.
    assert abs(dec[0, 0]) < 1e-9
    assert dec[1, 0] > 0.0 > dec[2, 0]


@pytest.mark.parametrize("kernel", ["linear", "poly", "rbf", "sigmoid"])
def test_each_kernel_separates_blobs(kernel):
    rng = np.random.default_rng(12)
    X = np.concatenate([rng.normal(-2.0, 0.4, size=(20, 2)),
                        rng.normal(2.0, 0.4, size=(20, 2))])
    y = np.repeat([0, 1], 20)
    est = KernelSvm(kernel=kernel).fit(X, y, 2)
    assert (est.predict_codes(X) == y).mean() == 1.0
    assert est.converged


def test_three_class_one_vs_one_machinery():
    rng = np.random.default_rng(13)
    centers = np.array([[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]])
    X = np.concatenate([rng.normal(c, 0.5, size=(15, 2)) for c in centers])
    y = np.repeat([0, 1, 2], 15)
    est = KernelSvm(kernel="rbf", gamma=0.5).fit(X, y, 3)
    assert len(est.machines) == 3
    assert est.decision_pairs(X).shape == (45, 3)
    assert (est.predict_codes(X) == y).mean() == 1.0


def test_gamma_defaults_to_reciprocal_dimension():
    X = np.array([[0.0, 0.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0]])
    est = KernelSvm(kernel="rbf").fit(X, np.array([0, 1]), 2)
    assert est.params.gamma == 0.25
    explicit = KernelSvm(kernel="rbf", gamma=0.25).fit(X, np.array([0, 1]), 2)
    assert np.array_equal(est.decision_pairs(X), explicit.decision_pairs(X))


def test_decisions_invariant_under_training_permutation():
    rng = np.random.default_rng(14)
    X = np.concatenate([rng.normal(-2.0, 0.3, size=(12, 2)),
                        rng.normal(2.0, 0.3, size=(12, 2))])
    y = np.repeat([0, 1], 12)
    perm = rng.permutation(24)
    grid = rng.normal(scale=2.5, size=(40, 2))
    a = KernelSvm(kernel="rbf").fit(X, y, 2)
    b = KernelSvm(kernel="rbf").fit(X[perm], y[perm], 2)
    assert np.array_equal(a.predict_codes(grid), b.predict_codes(grid))


def test_vote_tie_falls_back_to_confidence_then_lowest():
    est = KernelSvm()
    est.n_classes = 2
    est.machines = []
    codes = est.predict_codes(np.zeros((3, 1)))
    # With no machines everything is a 0-0 tie; the lowest class wins.
    assert codes.tolist() == [0, 0, 0]


def test_refuses_bad_c():
    with pytest.raises(ValueError):
        KernelSvm(c=0.0)


def test_round_trip_serialization():
    rng = np.random.default_rng(15)
    X = rng.normal(size=(20, 3))
    y = (X[:, 0] > 0).astype(int)
    est = KernelSvm(kernel="poly", degree=2, coef0=1.0).fit(X, y, 2)
    clone = KernelSvm.from_dict(est.to_dict())
    q = rng.normal(size=(10, 3))
    assert np.array_equal(est.decision_pairs(q), clone.decision_pairs(q))
    assert np.array_equal(est.predict_codes(q), clone.predict_codes(q))
