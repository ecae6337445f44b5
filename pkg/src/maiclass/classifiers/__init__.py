"""Uniform train/predict facade over the twelve classifier configurations.

A :class:`ClassifierSpec` names one of the :data:`ALGORITHMS` plus optional
hyperparameter overrides; :func:`train` resolves it against a feature matrix
and returns a :class:`TrainedModel` that predicts string labels. Class codes
are always assigned by sorted label order, so results do not depend on the
order documents appear in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    DegenerateLabels,
    DimensionMismatch,
    IoError,
    ParseError,
    Unsupported,
)
from .kernels import KernelParams, kernel_eval, kernel_matrix
from .linear import LogisticRegressionOVR, logistic_loss_and_grad
from .mlp import MlpClassifier, init_glorot, mlp_loss_and_grad
from .naive_bayes import (
    BernoulliNaiveBayes,
    GaussianNaiveBayes,
    MultinomialNaiveBayes,
    softmax_rows,
)
from .neighbors import KNeighbors
from .svm import KernelSvm
from .tree import DecisionTree

__all__ = [
    "ALGORITHMS",
    "ClassifierSpec",
    "TrainedModel",
    "train",
    "predict",
    "predict_scores",
    "save_model",
    "load_model",
    "model_to_dict",
    "model_from_dict",
    "KernelParams",
    "kernel_eval",
    "kernel_matrix",
    "logistic_loss_and_grad",
    "mlp_loss_and_grad",
    "init_glorot",
    "softmax_rows",
    "KernelSvm",
    "MlpClassifier",
    "BernoulliNaiveBayes",
    "MultinomialNaiveBayes",
    "GaussianNaiveBayes",
    "LogisticRegressionOVR",
    "DecisionTree",
    "KNeighbors",
]

ALGORITHMS = (
    "svm_linear",
    "svm_poly",
    "svm_rbf",
    "svm_sigmoid",
    "mlp_lbfgs",
    "mlp_adam",
    "nb_bernoulli",
    "nb_multinomial",
    "nb_gaussian",
    "logistic_regression",
    "decision_tree",
    "knn",
)

MODEL_FORMAT = "maiclass-model/1"


@dataclass(frozen=True)
class ClassifierSpec:
    """Algorithm id plus hyperparameter overrides (defaults fill the rest)."""

    algorithm: str
    hyperparams: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


@dataclass
class TrainedModel:
    spec: ClassifierSpec
    classes: Tuple[str, ...]
    n_features: int
    estimator: object


def _take(hp: dict, allowed: Sequence[str]) -> dict:
    unknown = set(hp) - set(allowed)
    if unknown:
        raise ValueError(
            f"unknown hyperparameter(s) {sorted(unknown)!r}; "
            f"expected a subset of {sorted(allowed)!r}")
    return hp


def _make_estimator(spec: ClassifierSpec):
    algo = spec.algorithm
    hp = dict(spec.hyperparams)
    if algo.startswith("svm_"):
        _take(hp, ("c", "tolerance", "gamma", "degree", "coef0",
                   "max_iterations"))
        return KernelSvm(kernel=algo[4:], c=hp.get("c", 1.0),
                         tolerance=hp.get("tolerance", 1e-3),
                         gamma=hp.get("gamma"),
                         degree=hp.get("degree", 3),
                         coef0=hp.get("coef0", 0.0),
                         max_iterations=hp.get("max_iterations", 200_000))
    if algo.startswith("mlp_"):
        _take(hp, ("hidden", "alpha", "max_iterations", "learning_rate",
                   "tolerance"))
        return MlpClassifier(solver=algo[4:],
                             hidden=hp.get("hidden", 100),
                             alpha=hp.get("alpha", 1e-4),
                             max_iterations=hp.get("max_iterations", 200),
                             learning_rate=hp.get("learning_rate", 0.001),
                             tolerance=hp.get("tolerance", 1e-5))
    if algo == "nb_bernoulli":
        _take(hp, ("alpha",))
        return BernoulliNaiveBayes(alpha=hp.get("alpha", 1.0))
    if algo == "nb_multinomial":
        _take(hp, ("alpha",))
        return MultinomialNaiveBayes(alpha=hp.get("alpha", 1.0))
    if algo == "nb_gaussian":
        _take(hp, ("var_smoothing",))
        return GaussianNaiveBayes(var_smoothing=hp.get("var_smoothing", 1e-9))
    if algo == "logistic_regression":
        _take(hp, ("c", "max_iterations", "tolerance"))
        return LogisticRegressionOVR(c=hp.get("c", 1.0),
                                     max_iterations=hp.get("max_iterations",
                                                           200),
                                     tolerance=hp.get("tolerance", 1e-6))
    if algo == "decision_tree":
        _take(hp, ())
        return DecisionTree()
    _take(hp, ("k",))
    return KNeighbors(k=hp.get("k", 5))


def _resolve_data(data):
    if hasattr(data, "rows") and hasattr(data, "labels"):
        return np.asarray(data.rows, dtype=np.float64), tuple(data.labels)
    rows, labels = data
    return np.asarray(rows, dtype=np.float64), tuple(labels)


def train(spec: ClassifierSpec, data, seed: int = 0) -> TrainedModel:
    """Fit one classifier; ``data`` is a FeatureMatrix or (rows, labels).

    ``seed`` only influences algorithms with random initialisation (the two
    MLPs); everything else is deterministic regardless.
    """
    X, labels = _resolve_data(data)
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise DegenerateLabels(
            f"need at least two distinct labels, got {len(classes)}")
    code_of = {label: i for i, label in enumerate(classes)}
    y = np.fromiter((code_of[l] for l in labels), dtype=np.int64,
                    count=len(labels))
    rng = np.random.default_rng(seed)
    estimator = _make_estimator(spec)
    estimator.fit(X, y, len(classes), rng)
    return TrainedModel(spec=spec, classes=classes,
                        n_features=X.shape[1], estimator=estimator)


def _check_rows(model: TrainedModel, rows) -> np.ndarray:
    X = np.asarray(rows, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise DimensionMismatch(
            f"expected rows of width {model.n_features}, "
            f"got shape {X.shape}")
    return X


def predict(model: TrainedModel, rows) -> List[str]:
    """Predicted labels for a 2-D array of feature rows."""
    X = _check_rows(model, rows)
    codes = model.estimator.predict_codes(X)
    return [model.classes[c] for c in codes]


def predict_scores(model: TrainedModel, rows) -> np.ndarray:
    """Per-class scores in [0, 1] summing to 1 per row.

    Available for the probabilistic families (Naive Bayes, logistic
    regression, MLP); other estimators raise :class:`Unsupported`.
    """
    X = _check_rows(model, rows)
    est = model.estimator
    if hasattr(est, "predict_proba"):
        return est.predict_proba(X)
    if hasattr(est, "log_joint"):
        return softmax_rows(est.log_joint(X))
    raise Unsupported(
        f"{model.spec.algorithm} does not produce per-class scores")


_LOADERS = {
    "svm": KernelSvm,
    "mlp": MlpClassifier,
    "nb_bernoulli": BernoulliNaiveBayes,
    "nb_multinomial": MultinomialNaiveBayes,
    "nb_gaussian": GaussianNaiveBayes,
    "logistic_regression": LogisticRegressionOVR,
    "decision_tree": DecisionTree,
    "knn": KNeighbors,
}


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "format": MODEL_FORMAT,
        "algorithm": model.spec.algorithm,
        "hyperparams": dict(model.spec.hyperparams),
        "classes": list(model.classes),
        "n_features": model.n_features,
        "estimator": model.estimator.to_dict(),
    }


def model_from_dict(state: dict) -> TrainedModel:
    if state.get("format") != MODEL_FORMAT:
        raise ParseError(0, f"unsupported model format {state.get('format')!r}")
    algo = state["algorithm"]
    spec = ClassifierSpec(algorithm=algo,
                          hyperparams=dict(state.get("hyperparams", {})))
    family = algo.split("_")[0] if algo.startswith(("svm_", "mlp_")) else algo
    estimator = _LOADERS[family].from_dict(state["estimator"])
    return TrainedModel(spec=spec, classes=tuple(state["classes"]),
                        n_features=int(state["n_features"]),
                        estimator=estimator)


def save_model(model: TrainedModel, path) -> None:
    """Write the model as deterministic JSON (sorted keys)."""
    payload = json.dumps(model_to_dict(model), sort_keys=True, indent=1)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    except OSError as exc:
        raise IoError(f"cannot write model file {path}: {exc}") from exc


def load_model(path) -> TrainedModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read model file {path}: {exc}") from exc
    try:
        state = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid model JSON: {exc.msg}") from exc
    try:
        return model_from_dict(state)
    except (KeyError, TypeError) as exc:
        raise ParseError(0, f"malformed model file: {exc}") from exc
