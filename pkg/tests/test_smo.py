"""SMO dual solver: hand oracles, KKT conditions, and a grid-search oracle."""

import numpy as np
import pytest

from maiclass.errors import DimensionMismatch, LengthMismatch
from maiclass.optim import smo_solve


def linear_gram(X):
    X = np.asarray(X, dtype=np.float64)
    return X @ X.T


def dual_objective(alpha, Q):
    return float(alpha.sum() - 0.5 * alpha @ Q @ alpha)


def kkt_gap(alpha, Q, y, c):
    """Maximal-violating-pair gap m - M recomputed from scratch."""
    grad = Q @ alpha - 1.0
    yg = -y * grad
    pos = y > 0
    up = np.where(pos, alpha < c, alpha > 0.0)
    low = np.where(pos, alpha > 0.0, alpha < c)
    return float(yg[up].max() - yg[low].min())


def test_two_point_symmetric_oracle():
    # Points -1 and +1 with labels -1, +1: by symmetry the dual optimum is
    # alpha = (0.5, 0.5) and the separating function is f(x) = x, bias 0.
    K = linear_gram([[-1.0], [1.0]])
    sol = smo_solve(K, [-1.0, 1.0])
    assert np.allclose(sol.alphas, [0.5, 0.5], atol=1e-9)
    assert abs(sol.bias) < 1e-9
    assert sol.converged
    assert sol.support_indices == (0, 1)


def test_two_point_shifted_oracle():
    # Points 0 and 2: margin-maximizing line is f(x) = x - 1.
    K = linear_gram([[0.0], [2.0]])
    sol = smo_solve(K, [-1.0, 1.0])
    w = float(sol.alphas[1] * 2.0 - sol.alphas[0] * 0.0)
    assert np.allclose(sol.alphas, [0.5, 0.5], atol=1e-9)
    assert abs(w - 1.0) < 1e-9
    assert abs(sol.bias - (-1.0)) < 1e-9


def test_identical_points_opposite_labels():
    # Irreducibly overlapping data: both multipliers hit the box bound.
    K = linear_gram([[1.0], [1.0]])
    sol = smo_solve(K, [-1.0, 1.0], c=1.0)
    assert np.array_equal(sol.alphas, [1.0, 1.0])
    assert sol.converged


def test_kkt_satisfied_on_random_problems():
    rng = np.random.default_rng(42)
    tol = 1e-3
    for _ in range(50):
        n = int(rng.integers(2, 21))
        X = rng.normal(size=(n, 2))
        y = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        if np.all(y == y[0]):
            y[0] = -y[0]
        d2 = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
        K = np.exp(-0.7 * d2)
        c = float(rng.choice([0.3, 1.0, 4.0]))
        sol = smo_solve(K, y, c=c, tolerance=tol)
        Q = (y[:, None] * y[None, :]) * K
        assert sol.converged
        assert kkt_gap(sol.alphas, Q, y, c) <= tol + 1e-12
        assert np.all(sol.alphas >= 0.0) and np.all(sol.alphas <= c)
        assert abs(float(sol.alphas @ y)) <= 1e-8


def grid_search_dual(Q, y, c, levels=4, steps=11):
    """Zooming grid search over the feasible box, eliminating the equality
    constraint by solving for the last coordinate."""
    n = len(y)
    best_obj = -np.inf
    center = np.full(n - 1, c / 2.0)
    half = c / 2.0
    for _ in range(levels):
        axes = [np.clip(np.linspace(center[i] - half, center[i] + half,
                                    steps), 0.0, c) for i in range(n - 1)]
        mesh = np.meshgrid(*axes, indexing="ij")
        head = np.stack([m.ravel() for m in mesh], axis=1)
        last = -(head @ y[:-1]) / y[-1]
        ok = (last >= -1e-12) & (last <= c + 1e-12)
        if ok.any():
            full = np.concatenate(
                [head[ok], np.clip(last[ok], 0.0, c)[:, None]], axis=1)
            obj = full.sum(axis=1) \
                - 0.5 * np.einsum("ij,jk,ik->i", full, Q, full)
            k = int(np.argmax(obj))
            if obj[k] > best_obj:
                best_obj = float(obj[k])
                center = full[k][:-1]
        half = half * 2.0 / (steps - 1)
    return best_obj


@pytest.mark.parametrize("seed,n", [(0, 3), (1, 4), (2, 4), (3, 5), (4, 6),
                                    (5, 6)])
def test_dual_objective_matches_grid_oracle(seed, n):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 2))
    y = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    if np.all(y == y[0]):
        y[0] = -y[0]
    K = linear_gram(X) if seed % 2 else np.exp(
        -((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
    sol = smo_solve(K, y, c=1.0, tolerance=1e-6)
    Q = (y[:, None] * y[None, :]) * K
    ours = dual_objective(sol.alphas, Q)
    oracle = grid_search_dual(Q, y, 1.0)
    assert abs(ours - oracle) <= 1e-3


def test_iteration_budget_returns_unconverged():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(30, 2))
    y = np.where(rng.random(30) < 0.5, -1.0, 1.0)
    K = linear_gram(X)
    sol = smo_solve(K, y, max_iterations=1)
    assert not sol.converged
    assert sol.iterations == 1


def test_validation_errors():
    with pytest.raises(DimensionMismatch):
        smo_solve(np.zeros((2, 3)), [1.0, -1.0])
    with pytest.raises(LengthMismatch):
        smo_solve(np.eye(3), [1.0, -1.0])
    with pytest.raises(ValueError):
        smo_solve(np.eye(2), [1.0, 2.0])
    with pytest.raises(ValueError):
        smo_solve(np.eye(2), [1.0, -1.0], c=0.0)
    with pytest.raises(ValueError):
        smo_solve(np.eye(2), [1.0, -1.0], tolerance=0.0)
