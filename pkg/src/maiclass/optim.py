"""From-scratch optimizers: L-BFGS, Adam, and an SMO dual solver.

All three are deterministic given their inputs. ``lbfgs_minimize`` and
``adam_minimize`` work on flat float64 parameter vectors; ``smo_solve``
handles box-constrained SVM duals through the :mod:`maiclass._core` kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DimensionMismatch,
    LengthMismatch,
    LineSearchFailure,
    NumericalFailure,
)
from . import _core

Oracle = Callable[[np.ndarray], Tuple[float, np.ndarray]]

_WOLFE_C1 = 1e-4
_WOLFE_C2 = 0.9
_CURVATURE_SKIP = 1e-10


@dataclass(frozen=True)
class OptimizerConfig:
    """Shared knobs for the iterative optimizers.

    ``learning_rate``, ``beta1``, ``beta2`` and ``epsilon`` only affect Adam;
    ``history_size`` only affects L-BFGS.
    """

    max_iterations: int = 200
    tolerance: float = 1e-6
    learning_rate: float = 0.001
    history_size: int = 10
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.history_size < 1:
            raise ValueError("history_size must be >= 1")
        if not 0.0 <= self.beta1 < 1.0 or not 0.0 <= self.beta2 < 1.0:
            raise ValueError("betas must lie in [0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")


@dataclass(frozen=True)
class OptResult:
    x: np.ndarray
    fun: Optional[float]
    iterations: int
    converged: bool
    grad_norm: float


def _check_x0(x0) -> np.ndarray:
    x = np.array(x0, dtype=np.float64, copy=True)
    if x.ndim != 1:
        raise ValueError("x0 must be a 1-D vector")
    return x


def _call_oracle(objective: Oracle, x: np.ndarray) -> Tuple[float, np.ndarray]:
    f, g = objective(x)
    return float(f), np.asarray(g, dtype=np.float64)


def _quad_trial(a_lo, f_lo, d_lo, a_hi, f_hi):
    """Minimizer of the quadratic through (a_lo, f_lo, d_lo) and (a_hi, f_hi)."""
    width = a_hi - a_lo
    denom = 2.0 * (f_hi - f_lo - d_lo * width)
    if denom == 0.0 or not math.isfinite(denom):
        return None
    trial = a_lo - d_lo * width * width / denom
    if not math.isfinite(trial):
        return None
    lo, hi = (a_lo, a_hi) if a_lo < a_hi else (a_hi, a_lo)
    margin = 0.1 * (hi - lo)
    if trial < lo + margin or trial > hi - margin:
        return None
    return trial


def _zoom(objective, x, d, f0, g0d, a_lo, f_lo, d_lo, g_lo, a_hi, f_hi,
          max_iter=30):
    """Nocedal-Wright zoom stage; shrinks [a_lo, a_hi] to a Wolfe point."""
    for _ in range(max_iter):
        trial = _quad_trial(a_lo, f_lo, d_lo, a_hi, f_hi)
        if trial is None:
            trial = 0.5 * (a_lo + a_hi)
        f_t, g_t = _call_oracle(objective, x + trial * d)
        d_t = float(g_t @ d) if np.all(np.isfinite(g_t)) else math.nan
        if not math.isfinite(f_t) or f_t > f0 + _WOLFE_C1 * trial * g0d \
                or f_t >= f_lo:
            a_hi, f_hi = trial, f_t
        else:
            if math.isfinite(d_t) and abs(d_t) <= -_WOLFE_C2 * g0d:
                return trial, f_t, g_t
            if math.isfinite(d_t) and d_t * (a_hi - a_lo) >= 0.0:
                a_hi, f_hi = a_lo, f_lo
            a_lo, f_lo, d_lo, g_lo = trial, f_t, d_t, g_t
        if abs(a_hi - a_lo) <= 1e-16 * max(1.0, abs(a_lo)):
            break
    # The shrunken interval may still hold an acceptable sufficient-decrease
    # point; prefer reporting failure with the best point seen so far.
    raise LineSearchFailure()


def _line_search(objective, x, d, f0, g0d, a_init, max_iter=25):
    """Strong Wolfe search (c1=1e-4, c2=0.9); returns (step, f, g)."""
    a_prev, f_prev = 0.0, f0
    d_prev, g_prev = g0d, None
    a = a_init
    for it in range(max_iter):
        f_a, g_a = _call_oracle(objective, x + a * d)
        d_a = float(g_a @ d) if np.all(np.isfinite(g_a)) else math.nan
        if not math.isfinite(f_a) or f_a > f0 + _WOLFE_C1 * a * g0d \
                or (it > 0 and f_a >= f_prev):
            return _zoom(objective, x, d, f0, g0d,
                         a_prev, f_prev, d_prev, g_prev, a, f_a)
        if math.isfinite(d_a) and abs(d_a) <= -_WOLFE_C2 * g0d:
            return a, f_a, g_a
        if math.isfinite(d_a) and d_a >= 0.0:
            return _zoom(objective, x, d, f0, g0d,
                         a, f_a, d_a, g_a, a_prev, f_prev)
        a_prev, f_prev, d_prev, g_prev = a, f_a, d_a, g_a
        a = 2.0 * a
    raise LineSearchFailure()


def lbfgs_minimize(objective: Oracle, x0, config: Optional[OptimizerConfig] = None,
                   ) -> OptResult:
    """Limited-memory BFGS with a strong Wolfe line search.

    ``objective(x)`` must return ``(value, gradient)``. Raises
    :class:`NumericalFailure` when the oracle is non-finite at ``x0`` and
    :class:`LineSearchFailure` (carrying ``best_x``/``best_f``) when no step
    satisfies the Wolfe conditions. Stops when the gradient 2-norm drops to
    ``config.tolerance``.
    """
    cfg = config or OptimizerConfig()
    x = _check_x0(x0)
    f, g = _call_oracle(objective, x)
    if not math.isfinite(f) or not np.all(np.isfinite(g)):
        raise NumericalFailure("objective not finite at the starting point")
    best_x, best_f = x.copy(), f
    s_hist: list = []
    y_hist: list = []
    rho_hist: list = []
    gnorm = float(np.linalg.norm(g))
    converged = gnorm <= cfg.tolerance
    iterations = 0
    while iterations < cfg.max_iterations and not converged:
        d = _two_loop(g, s_hist, y_hist, rho_hist)
        g0d = float(g @ d)
        if not math.isfinite(g0d) or g0d >= 0.0:
            d = -g
            g0d = -float(g @ g)
        a_init = 1.0 if s_hist else min(1.0, 1.0 / max(gnorm, 1.0))
        try:
            a, f_new, g_new = _line_search(objective, x, d, f, g0d, a_init)
        except LineSearchFailure as exc:
            exc.best_x = best_x
            exc.best_f = best_f
            exc.iterations = iterations
            raise
        x_new = x + a * d
        s = x_new - x
        yv = g_new - g
        sy = float(s @ yv)
        if sy > _CURVATURE_SKIP * float(np.linalg.norm(s)) \
                * float(np.linalg.norm(yv)):
            s_hist.append(s)
            y_hist.append(yv)
            rho_hist.append(1.0 / sy)
            if len(s_hist) > cfg.history_size:
                s_hist.pop(0)
                y_hist.pop(0)
                rho_hist.pop(0)
        x, f, g = x_new, f_new, g_new
        if f < best_f and np.all(np.isfinite(x)):
            best_f = f
            best_x = x.copy()
        gnorm = float(np.linalg.norm(g))
        converged = gnorm <= cfg.tolerance
        iterations += 1
    return OptResult(x=best_x, fun=best_f, iterations=iterations,
                     converged=converged, grad_norm=gnorm)


def _two_loop(g, s_hist, y_hist, rho_hist) -> np.ndarray:
    """Two-loop recursion for the L-BFGS descent direction."""
    q = -g.copy()
    if not s_hist:
        return q
    alphas = []
    for s, yv, rho in zip(reversed(s_hist), reversed(y_hist),
                          reversed(rho_hist)):
        a = rho * float(s @ q)
        alphas.append(a)
        q -= a * yv
    s_last, y_last = s_hist[-1], y_hist[-1]
    gamma = float(s_last @ y_last) / float(y_last @ y_last)
    q *= gamma
    for (s, yv, rho), a in zip(zip(s_hist, y_hist, rho_hist),
                               reversed(alphas)):
        b = rho * float(yv @ q)
        q += (a - b) * s
    return q


def adam_minimize(gradient: Callable[[np.ndarray], np.ndarray], x0,
                  config: Optional[OptimizerConfig] = None,
                  objective: Optional[Callable[[np.ndarray], float]] = None,
                  ) -> OptResult:
    """Full-batch Adam with bias-corrected moments.

    ``gradient(x)`` returns the gradient vector. When ``objective`` is given
    the best iterate seen (by objective value) is returned and ``fun`` is its
    value; otherwise the final iterate is returned with ``fun=None``. Stops
    early when the update-step 2-norm drops to ``config.tolerance``. The very
    first update is bounded per-coordinate by ``learning_rate``.
    """
    cfg = config or OptimizerConfig()
    x = _check_x0(x0)
    m = np.zeros_like(x)
    v = np.zeros_like(x)
    best_x = x.copy()
    best_f: Optional[float] = None
    if objective is not None:
        best_f = float(objective(x))
        if not math.isfinite(best_f):
            raise NumericalFailure("objective not finite at the starting point")
    converged = False
    t = 0
    while t < cfg.max_iterations:
        t += 1
        g = np.asarray(gradient(x), dtype=np.float64)
        if not np.all(np.isfinite(g)):
            raise NumericalFailure(f"non-finite gradient at iteration {t}")
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * g
        v = cfg.beta2 * v + (1.0 - cfg.beta2) * (g * g)
        m_hat = m / (1.0 - cfg.beta1 ** t)
        v_hat = v / (1.0 - cfg.beta2 ** t)
        step = cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.epsilon)
        x = x - step
        if objective is not None:
            f = float(objective(x))
            if math.isfinite(f) and f < best_f:
                best_f = f
                best_x = x.copy()
        if float(np.linalg.norm(step)) <= cfg.tolerance:
            converged = True
            break
    if objective is None:
        best_x = x
    grad_norm = math.nan
    return OptResult(x=best_x, fun=best_f, iterations=t,
                     converged=converged, grad_norm=grad_norm)


@dataclass(frozen=True)
class DualSolution:
    """Solution of the box-constrained SVM dual."""

    alphas: np.ndarray = field(repr=False)
    bias: float
    support_indices: Tuple[int, ...]
    converged: bool
    iterations: int


def smo_solve(kernel, labels: Sequence[float], c: float = 1.0,
              tolerance: float = 1e-3, max_iterations: int = 200_000,
              ) -> DualSolution:
    """Solve ``min 1/2 a'Qa - sum(a)`` s.t. ``0 <= a <= c``, ``sum(a*y) = 0``.

    ``kernel`` is the Gram matrix of the training points, ``labels`` the
    +/-1 targets. Uses maximal-violating-pair SMO; when the iteration budget
    runs out the best iterate so far is returned with ``converged=False``
    rather than raising.
    """
    K = np.asarray(kernel, dtype=np.float64)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise DimensionMismatch("kernel matrix must be square")
    y = np.asarray(labels, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] != K.shape[0]:
        raise LengthMismatch("labels length must match the kernel size")
    if not np.all(np.abs(y) == 1.0):
        raise ValueError("labels must be +1 or -1")
    if c <= 0:
        raise ValueError("c must be > 0")
    if tolerance <= 0:
        raise ValueError("tolerance must be > 0")
    Q = (y[:, None] * y[None, :]) * K
    alpha, grad, iterations, converged = _core.smo_optimize(
        Q, y, float(c), float(tolerance), int(max_iterations))
    # Snap coefficients sitting a rounding error away from the box bounds.
    snap = 1e-12 * c
    alpha = alpha.copy()
    alpha[alpha < snap] = 0.0
    alpha[alpha > c - snap] = c
    yg = -y * grad
    free = (alpha > 0.0) & (alpha < c)
    if free.any():
        bias = float(np.mean(yg[free]))
    else:
        pos = y > 0.0
        up = np.where(pos, alpha < c, alpha > 0.0)
        low = np.where(pos, alpha > 0.0, alpha < c)
        hi = float(np.max(yg[up])) if up.any() else math.nan
        lo = float(np.min(yg[low])) if low.any() else math.nan
        if math.isfinite(hi) and math.isfinite(lo):
            bias = (hi + lo) / 2.0
        elif math.isfinite(hi):
            bias = hi
        elif math.isfinite(lo):
            bias = lo
        else:
            bias = 0.0
    support = tuple(int(i) for i in np.nonzero(alpha > 0.0)[0])
    return DualSolution(alphas=alpha, bias=bias, support_indices=support,
                        converged=bool(converged), iterations=int(iterations))
