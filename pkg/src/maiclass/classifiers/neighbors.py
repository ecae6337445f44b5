"""k-nearest-neighbour classifier, Euclidean metric, majority vote."""

from __future__ import annotations

import numpy as np


class KNeighbors:
    """Memorises the training matrix; all work happens at predict time.

    Neighbours are ranked by squared Euclidean distance with the training
    row index as tie-breaker, so ordering is fully deterministic. Vote ties
    go to the lowest class code.
    """

    kind = "knn"

    def __init__(self, k: int = 5):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.train_x = None
        self.train_y = None
        self.n_classes = 0

    def fit(self, X, y, n_classes, rng=None):
        self.train_x = np.asarray(X, dtype=np.float64).copy()
        self.train_y = np.asarray(y, dtype=np.int64).copy()
        self.n_classes = n_classes
        return self

    def kneighbors(self, X, k=None) -> np.ndarray:
        """Indices of the k nearest training rows for each query row."""
        k = self.k if k is None else k
        Xa = np.asarray(X, dtype=np.float64)
        n_train = self.train_x.shape[0]
        k = min(k, n_train)
        out = np.empty((Xa.shape[0], k), dtype=np.intp)
        tie_break = np.arange(n_train)
        for r in range(Xa.shape[0]):
            diff = self.train_x - Xa[r]
            d2 = np.sum(diff * diff, axis=1)
            order = np.lexsort((tie_break, d2))
            out[r] = order[:k]
        return out

    def predict_codes(self, X):
        neigh = self.kneighbors(X)
        votes = np.apply_along_axis(
            lambda row: np.bincount(self.train_y[row],
                                    minlength=self.n_classes),
            1, neigh)
        return np.argmax(votes, axis=1)

    def to_dict(self):
        return {
            "k": self.k,
            "n_classes": self.n_classes,
            "train_x": self.train_x.tolist(),
            "train_y": self.train_y.tolist(),
        }

    @classmethod
    def from_dict(cls, state):
        est = cls(k=state["k"])
        est.n_classes = state["n_classes"]
        est.train_x = np.asarray(state["train_x"], dtype=np.float64)
        est.train_y = np.asarray(state["train_y"], dtype=np.int64)
        return est
