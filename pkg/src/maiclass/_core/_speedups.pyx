# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pyfallback``.

The arithmetic (operations and their order on float64) mirrors the NumPy
module exactly; the extension is built with ``-ffp-contract=off`` so the
compiler cannot fuse multiply-adds and change results. Keep both files in
sync.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double _TAU = 1e-12
cdef double _INF = float("inf")


def smo_optimize(Q, y, double C, double tol, long max_iter):
    """See ``_pyfallback.smo_optimize``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] Qa = \
        np.ascontiguousarray(Q, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] ya = \
        np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = Qa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] alpha = \
        np.zeros(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] grad = \
        np.full(n, -1.0, dtype=np.float64)
    cdef bint converged = False
    cdef long it = 0
    cdef Py_ssize_t i, j, k
    cdef double m_val, M_val, v
    cdef bint have_up, have_low
    cdef double quad, delta, diff, total, ai, aj, old_ai, old_aj, dai, daj, tmp
    cdef bint is_up, is_low

    while it < max_iter:
        # Maximal-violating-pair selection on the scaled gradient -y*G.
        m_val = -_INF
        M_val = _INF
        i = -1
        j = -1
        have_up = False
        have_low = False
        for k in range(n):
            v = (-ya[k]) * grad[k]
            if ya[k] > 0.0:
                is_up = alpha[k] < C
                is_low = alpha[k] > 0.0
            else:
                is_up = alpha[k] > 0.0
                is_low = alpha[k] < C
            if is_up:
                have_up = True
                if v > m_val:
                    m_val = v
                    i = k
            if is_low:
                have_low = True
                if v < M_val:
                    M_val = v
                    j = k
        if not have_up or not have_low:
            converged = True
            break
        if m_val - M_val <= tol:
            converged = True
            break

        old_ai = alpha[i]
        old_aj = alpha[j]
        if ya[i] != ya[j]:
            quad = Qa[i, i] + Qa[j, j] + 2.0 * Qa[i, j]
            if quad <= 0.0:
                quad = _TAU
            delta = (-grad[i] - grad[j]) / quad
            diff = old_ai - old_aj
            ai = old_ai + delta
            aj = old_aj + delta
            if diff > 0.0:
                if aj < 0.0:
                    aj = 0.0
                    ai = diff
            else:
                if ai < 0.0:
                    ai = 0.0
                    aj = -diff
            if diff > 0.0:
                if ai > C:
                    ai = C
                    aj = C - diff
            else:
                if aj > C:
                    aj = C
                    ai = C + diff
        else:
            quad = Qa[i, i] + Qa[j, j] - 2.0 * Qa[i, j]
            if quad <= 0.0:
                quad = _TAU
            delta = (grad[i] - grad[j]) / quad
            total = old_ai + old_aj
            ai = old_ai - delta
            aj = old_aj + delta
            if total > C:
                if ai > C:
                    ai = C
                    aj = total - C
            else:
                if aj < 0.0:
                    aj = 0.0
                    ai = total
            if total > C:
                if aj > C:
                    aj = C
                    ai = total - C
            else:
                if ai < 0.0:
                    ai = 0.0
                    aj = total
        alpha[i] = ai
        alpha[j] = aj
        dai = ai - old_ai
        daj = aj - old_aj
        for k in range(n):
            tmp = dai * Qa[i, k]
            grad[k] = grad[k] + tmp
        for k in range(n):
            tmp = daj * Qa[j, k]
            grad[k] = grad[k] + tmp
        it += 1
    return np.asarray(alpha), np.asarray(grad), it, converged


def best_split(X, y, long n_classes):
    """See ``_pyfallback.best_split``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] Xa = \
        np.ascontiguousarray(X, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] ya = \
        np.ascontiguousarray(y, dtype=np.int64)
    cdef Py_ssize_t n = Xa.shape[0]
    cdef Py_ssize_t d = Xa.shape[1]
    cdef long best_feature = -1
    cdef double best_threshold = 0.0
    cdef double best_score = -_INF
    if n < 2:
        return best_feature, best_threshold, False

    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] left_counts = \
        np.zeros(n_classes, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] right_counts = \
        np.zeros(n_classes, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] order
    cdef Py_ssize_t f, p, idx, c
    cdef long long left_sq, right_sq, cnt
    cdef double score, v, v_next, thr, feat_score, feat_thr
    cdef bint feat_found
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] col = \
        np.empty(n, dtype=np.float64)

    for f in range(d):
        for p in range(n):
            col[p] = Xa[p, f]
        order = np.argsort(col, kind="stable")
        for c in range(n_classes):
            left_counts[c] = 0
            right_counts[c] = 0
        for p in range(n):
            right_counts[ya[order[p]]] += 1
        right_sq = 0
        for c in range(n_classes):
            cnt = right_counts[c]
            right_sq += cnt * cnt
        left_sq = 0
        feat_found = False
        feat_score = -_INF
        feat_thr = 0.0
        for p in range(n - 1):
            idx = order[p]
            c = ya[idx]
            # (k+1)^2 - k^2 and (k-1)^2 - k^2 updates keep the sums exact.
            left_sq += 2 * left_counts[c] + 1
            left_counts[c] += 1
            right_sq += -2 * right_counts[c] + 1
            right_counts[c] -= 1
            v = col[idx]
            v_next = col[order[p + 1]]
            if v == v_next:
                continue
            score = (<double> left_sq) / (<double> (p + 1)) + \
                (<double> right_sq) / (<double> (n - p - 1))
            if score > feat_score:
                feat_score = score
                thr = (v + v_next) / 2.0
                if thr >= v_next:
                    thr = v
                feat_thr = thr
                feat_found = True
        if feat_found and feat_score > best_score:
            best_score = feat_score
            best_feature = f
            best_threshold = feat_thr
    return best_feature, best_threshold, best_feature >= 0
