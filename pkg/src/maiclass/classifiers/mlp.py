"""Single-hidden-layer perceptron trained by L-BFGS or full-batch Adam."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from ..optim import OptimizerConfig, adam_minimize, lbfgs_minimize
from ..errors import LineSearchFailure
from .naive_bayes import softmax_rows


def _unpack(theta: np.ndarray, d: int, h: int, c: int):
    o = 0
    W1 = theta[o:o + d * h].reshape(d, h)
    o += d * h
    b1 = theta[o:o + h]
    o += h
    W2 = theta[o:o + h * c].reshape(h, c)
    o += h * c
    b2 = theta[o:o + c]
    return W1, b1, W2, b2


def mlp_loss_and_grad(theta: np.ndarray, X: np.ndarray, Y: np.ndarray,
                      hidden: int, alpha: float) -> Tuple[float, np.ndarray]:
    """Cross-entropy of a ReLU/softmax net plus L2 on the weight matrices.

    ``Y`` is one-hot (n, c). The penalty is ``alpha/(2n) * (|W1|^2 + |W2|^2)``;
    biases are not penalised.
    """
    n, d = X.shape
    c = Y.shape[1]
    W1, b1, W2, b2 = _unpack(theta, d, hidden, c)
    Z1 = X @ W1 + b1
    A1 = np.maximum(Z1, 0.0)
    Z2 = A1 @ W2 + b2
    shifted = Z2 - Z2.max(axis=1, keepdims=True)
    log_norm = np.log(np.sum(np.exp(shifted), axis=1, keepdims=True))
    log_probs = shifted - log_norm
    ce = -float(np.sum(Y * log_probs)) / n
    loss = ce + alpha / (2.0 * n) * (float(np.sum(W1 * W1))
                                     + float(np.sum(W2 * W2)))
    P = np.exp(log_probs)
    dZ2 = (P - Y) / n
    gW2 = A1.T @ dZ2 + (alpha / n) * W2
    gb2 = dZ2.sum(axis=0)
    dA1 = dZ2 @ W2.T
    dZ1 = dA1 * (Z1 > 0.0)
    gW1 = X.T @ dZ1 + (alpha / n) * W1
    gb1 = dZ1.sum(axis=0)
    grad = np.concatenate([gW1.ravel(), gb1, gW2.ravel(), gb2])
    return loss, grad


def init_glorot(rng: np.random.Generator, d: int, hidden: int, c: int,
                ) -> np.ndarray:
    """Glorot-uniform weights, zero biases, packed into one flat vector."""
    bound1 = math.sqrt(6.0 / (d + hidden))
    bound2 = math.sqrt(6.0 / (hidden + c))
    W1 = rng.uniform(-bound1, bound1, size=(d, hidden))
    W2 = rng.uniform(-bound2, bound2, size=(hidden, c))
    return np.concatenate([W1.ravel(), np.zeros(hidden),
                           W2.ravel(), np.zeros(c)])


class MlpClassifier:
    """100-unit ReLU hidden layer, softmax output."""

    def __init__(self, solver: str = "lbfgs", hidden: int = 100,
                 alpha: float = 1e-4, max_iterations: int = 200,
                 learning_rate: float = 0.001, tolerance: float = 1e-5):
        if solver not in ("lbfgs", "adam"):
            raise ValueError(f"unknown solver {solver!r}")
        if hidden < 1:
            raise ValueError("hidden must be >= 1")
        self.solver = solver
        self.hidden = hidden
        self.alpha = alpha
        self.max_iterations = max_iterations
        self.learning_rate = learning_rate
        self.tolerance = tolerance
        self.theta = None
        self.n_features = None
        self.n_classes = None

    @property
    def kind(self):
        return f"mlp_{self.solver}"

    def fit(self, X, y, n_classes, rng=None):
        Xa = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        n, d = Xa.shape
        Y = np.zeros((n, n_classes))
        Y[np.arange(n), y] = 1.0
        if rng is None:
            rng = np.random.default_rng(0)
        theta0 = init_glorot(rng, d, self.hidden, n_classes)

        def oracle(t):
            return mlp_loss_and_grad(t, Xa, Y, self.hidden, self.alpha)

        if self.solver == "lbfgs":
            cfg = OptimizerConfig(max_iterations=self.max_iterations,
                                  tolerance=self.tolerance)
            try:
                res = lbfgs_minimize(oracle, theta0, cfg)
                theta = res.x
            except LineSearchFailure as exc:
                # ReLU kinks can defeat the Wolfe conditions; keep the best
                # iterate reached instead of failing the whole fit.
                theta = exc.best_x
        else:
            cfg = OptimizerConfig(max_iterations=self.max_iterations,
                                  tolerance=self.tolerance,
                                  learning_rate=self.learning_rate)
            res = adam_minimize(lambda t: oracle(t)[1], theta0, cfg,
                                objective=lambda t: oracle(t)[0])
            theta = res.x
        self.theta = theta
        self.n_features = d
        self.n_classes = n_classes
        return self

    def _logits(self, X):
        Xa = np.asarray(X, dtype=np.float64)
        W1, b1, W2, b2 = _unpack(self.theta, self.n_features, self.hidden,
                                 self.n_classes)
        A1 = np.maximum(Xa @ W1 + b1, 0.0)
        return A1 @ W2 + b2

    def predict_codes(self, X):
        return np.argmax(self._logits(X), axis=1)

    def predict_proba(self, X):
        return softmax_rows(self._logits(X))

    def to_dict(self):
        return {
            "solver": self.solver,
            "hidden": self.hidden,
            "alpha": self.alpha,
            "max_iterations": self.max_iterations,
            "learning_rate": self.learning_rate,
            "tolerance": self.tolerance,
            "theta": self.theta.tolist(),
            "n_features": self.n_features,
            "n_classes": self.n_classes,
        }

    @classmethod
    def from_dict(cls, state):
        est = cls(solver=state["solver"], hidden=state["hidden"],
                  alpha=state["alpha"],
                  max_iterations=state["max_iterations"],
                  learning_rate=state["learning_rate"],
                  tolerance=state["tolerance"])
        est.theta = np.asarray(state["theta"], dtype=np.float64)
        est.n_features = state["n_features"]
        est.n_classes = state["n_classes"]
        return est
