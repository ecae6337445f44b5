"""L2-regularised logistic regression, one-vs-rest, trained with L-BFGS."""

from __future__ import annotations

import numpy as np

from ..optim import OptimizerConfig, lbfgs_minimize
from ..errors import LineSearchFailure


def _log1pexp(t: np.ndarray) -> np.ndarray:
    # log(1 + e^t) without overflow for large |t|.
    return np.logaddexp(0.0, t)


def _sigmoid(t: np.ndarray) -> np.ndarray:
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def logistic_loss_and_grad(wb: np.ndarray, X: np.ndarray, y_pm: np.ndarray,
                           c: float):
    """Objective ``0.5 w.w + c * sum log(1+exp(-y f))`` and its gradient.

    ``wb`` packs the weights with the bias last; the bias is not penalised.
    """
    w = wb[:-1]
    b = wb[-1]
    margins = y_pm * (X @ w + b)
    loss = 0.5 * float(w @ w) + c * float(np.sum(_log1pexp(-margins)))
    coef = -c * y_pm * _sigmoid(-margins)
    grad = np.empty_like(wb)
    grad[:-1] = w + X.T @ coef
    grad[-1] = float(np.sum(coef))
    return loss, grad


class LogisticRegressionOVR:
    """One binary logistic model per class; scores are normalised sigmoids."""

    kind = "logistic_regression"

    def __init__(self, c: float = 1.0, max_iterations: int = 200,
                 tolerance: float = 1e-6):
        if c <= 0:
            raise ValueError("c must be > 0")
        self.c = c
        self.max_iterations = max_iterations
        self.tolerance = tolerance
        self.weights = None
        self.biases = None

    def fit(self, X, y, n_classes, rng=None):
        Xa = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        d = Xa.shape[1]
        cfg = OptimizerConfig(max_iterations=self.max_iterations,
                              tolerance=self.tolerance)
        self.weights = np.zeros((n_classes, d))
        self.biases = np.zeros(n_classes)
        for cls_code in range(n_classes):
            y_pm = np.where(y == cls_code, 1.0, -1.0)

            def oracle(wb, _y=y_pm):
                return logistic_loss_and_grad(wb, Xa, _y, self.c)

            try:
                res = lbfgs_minimize(oracle, np.zeros(d + 1), cfg)
                wb = res.x
            except LineSearchFailure as exc:
                # Convex and smooth, so this only fires at numeric limits;
                # the best iterate is still a usable model.
                wb = exc.best_x
            self.weights[cls_code] = wb[:-1]
            self.biases[cls_code] = wb[-1]
        return self

    def decision(self, X) -> np.ndarray:
        Xa = np.asarray(X, dtype=np.float64)
        return Xa @ self.weights.T + self.biases

    def predict_codes(self, X):
        return np.argmax(self.decision(X), axis=1)

    def predict_proba(self, X):
        sig = _sigmoid(self.decision(X))
        return sig / sig.sum(axis=1, keepdims=True)

    def to_dict(self):
        return {
            "c": self.c,
            "max_iterations": self.max_iterations,
            "tolerance": self.tolerance,
            "weights": self.weights.tolist(),
            "biases": self.biases.tolist(),
        }

    @classmethod
    def from_dict(cls, state):
        est = cls(c=state["c"], max_iterations=state["max_iterations"],
                  tolerance=state["tolerance"])
        est.weights = np.asarray(state["weights"], dtype=np.float64)
        est.biases = np.asarray(state["biases"], dtype=np.float64)
        return est
