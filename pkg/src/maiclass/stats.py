"""Mann-Whitney U, percent agreement, and descriptive summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import EmptySample, EmptyTable, LengthMismatch


@dataclass(frozen=True)
class UTestResult:
    """Two-sided Mann-Whitney U outcome for samples x (1) and y (2)."""

    u1: float
    u2: float
    z: float
    p_two_sided: float
    n1: int
    n2: int
    tie_groups: int
    continuity_applied: bool
    method: str


def _midranks(pooled: np.ndarray) -> Tuple[np.ndarray, int, float]:
    """Midranks of the pooled sample, tie-group count, and tie correction.

    The correction term is ``sum(t^3 - t)`` over groups of size t."""
    order = np.argsort(pooled, kind="stable")
    ranks = np.empty(pooled.shape[0])
    tie_groups = 0
    correction = 0.0
    i = 0
    n = pooled.shape[0]
    while i < n:
        j = i
        while j + 1 < n and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        # Positions i..j (0-based) share ranks i+1..j+1; assign the average.
        avg = (i + j + 2) / 2.0
        ranks[order[i:j + 1]] = avg
        t = j - i + 1
        if t > 1:
            tie_groups += 1
            correction += t ** 3 - t
        i = j + 1
    return ranks, tie_groups, correction


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _exact_bigu_tail(n1: int, n2: int, bigu: float) -> float:
    """P(U >= bigu) under the exact tie-free null for max(U1, U2).

    Counts k-subsets of ranks {1..n} by rank sum with an integer DP, then
    converts rank sums of the first sample to U values.
    """
    n = n1 + n2
    max_sum = n1 * n + 1
    # ways[s] = number of n1-subsets of {1..considered} summing to s.
    ways = [[0] * max_sum for _ in range(n1 + 1)]
    ways[0][0] = 1
    for value in range(1, n + 1):
        for k in range(min(value, n1), 0, -1):
            row = ways[k]
            prev = ways[k - 1]
            for s in range(max_sum - 1, value - 1, -1):
                if prev[s - value]:
                    row[s] += prev[s - value]
    total = math.comb(n, n1)
    offset = n1 * (n1 + 1) // 2
    count = 0
    for s in range(max_sum):
        if ways[n1][s]:
            u1 = s - offset
            if max(u1, n1 * n2 - u1) >= bigu:
                count += ways[n1][s]
    return count / total


def mann_whitney_u(x: Sequence[float], y: Sequence[float],
                   continuity: bool = True, method: str = "auto",
                   ) -> UTestResult:
    """Two-sided Mann-Whitney U test.

    ``method`` is ``"normal"`` (tie-corrected normal approximation,
    optionally with the 0.5 continuity correction), ``"exact"``
    (enumeration of the tie-free null, only valid without ties), or
    ``"auto"`` which picks the exact path for tie-free samples with
    ``n1, n2 <= 8`` and the normal approximation otherwise.
    """
    xa = np.asarray(list(x), dtype=np.float64)
    ya = np.asarray(list(y), dtype=np.float64)
    if xa.size == 0 or ya.size == 0:
        raise EmptySample("both samples must be non-empty")
    if method not in ("auto", "normal", "exact"):
        raise ValueError(f"unknown method {method!r}")
    n1 = int(xa.size)
    n2 = int(ya.size)
    pooled = np.concatenate([xa, ya])
    ranks, tie_groups, correction = _midranks(pooled)
    r1 = float(np.sum(ranks[:n1]))
    u1 = r1 - n1 * (n1 + 1) / 2.0
    u2 = n1 * n2 - u1
    bigu = max(u1, u2)

    use_exact = method == "exact" or (
        method == "auto" and tie_groups == 0 and n1 <= 8 and n2 <= 8)
    if use_exact and tie_groups > 0:
        raise ValueError("exact method requires tie-free samples")

    n = n1 + n2
    var = n1 * n2 / 12.0 * ((n + 1) - correction / (n * (n - 1))) \
        if n > 1 else 0.0
    # z is measured on the larger U; with the continuity correction it can
    # dip slightly below zero when U1 and U2 almost coincide.
    if var <= 0.0:
        z = 0.0
    else:
        numer = bigu - n1 * n2 / 2.0
        if continuity:
            numer -= 0.5
        z = numer / math.sqrt(var)

    if use_exact:
        p = min(1.0, _exact_bigu_tail(n1, n2, bigu))
        meth = "exact"
    else:
        p = 1.0 if var <= 0.0 else min(1.0, 2.0 * _normal_sf(z))
        meth = "normal"
    return UTestResult(u1=u1, u2=u2, z=z, p_two_sided=p, n1=n1, n2=n2,
                       tie_groups=tie_groups,
                       continuity_applied=continuity and meth == "normal",
                       method=meth)


def percent_agreement(table) -> List[float]:
    """Share of 1-votes per column of a binary table, as percentages."""
    rows = [list(r) for r in table]
    if not rows or not rows[0]:
        raise EmptyTable("agreement table needs at least one row and column")
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise LengthMismatch("agreement table rows have unequal lengths")
        for v in r:
            if v not in (0, 1):
                raise ValueError(f"agreement cells must be 0 or 1, got {v!r}")
    out = []
    for col in range(width):
        ones = sum(r[col] for r in rows)
        out.append(100.0 * ones / len(rows))
    return out


@dataclass(frozen=True)
class DescriptiveStats:
    """Sum, mean and median of a sample, plus the sorted values."""

    total: float
    mean: float
    median: float
    values: Tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def count_of(self, value: float) -> int:
        return sum(1 for v in self.values if v == value)


def describe(scores: Sequence[float]) -> DescriptiveStats:
    vals = tuple(sorted(float(v) for v in scores))
    if not vals:
        raise EmptySample("cannot describe an empty sample")
    n = len(vals)
    total = math.fsum(vals)
    mean = total / n
    mid = n // 2
    median = vals[mid] if n % 2 else (vals[mid - 1] + vals[mid]) / 2.0
    return DescriptiveStats(total=total, mean=mean, median=median,
                            values=vals)
