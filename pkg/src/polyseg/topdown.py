"""Greedy top-down segmenters.

:func:`topdown_fixed` keeps splitting the interval with the largest error at
its best split point until the regressor budget is spent.
:func:`topdown_adaptive` runs it at the highest degree, then gives each
resulting interval one chance to become two lower-degree intervals of the
same total cost.

Given the prefix moments each split scans its interval once, so a run costs
O(k n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    InfeasibleBudgetError,
    Segment,
    Segmentation,
    SegmentationError,
    TimeSeries,
)
from .moments import PrefixMoments
from .polyfit import fit, range_sse

EXACT_FIT_TOL = 1e-12
SPLIT_CHUNK = 8192


@dataclass
class _Interval:
    start: int
    end: int
    degree: int
    sse: float


def best_split(m: PrefixMoments, i: int, j: int, d_left: int, d_right: int):
    """Split ``l`` in ``i+1 .. j-1`` minimizing ``E(i,l,d_left) + E(l,j,d_right)``.

    Returns ``(l, left_sse, right_sse)``; the smallest ``l`` wins ties.
    Candidates are scored in chunks so the temporaries stay in cache.
    """
    best = (np.inf, i + 1, 0.0, 0.0)
    for lo in range(i + 1, j, SPLIT_CHUNK):
        ls = np.arange(lo, min(lo + SPLIT_CHUNK, j))
        left = range_sse(m, i, ls, d_left)
        right = range_sse(m, ls, j, d_right)
        total = left + right
        idx = int(np.argmin(total))
        if total[idx] < best[0]:
            best = (total[idx], int(ls[idx]), float(left[idx]), float(right[idx]))
    return best[1:]


def _worst(intervals: list[_Interval]) -> int | None:
    """Index of the earliest splittable interval with maximal error."""
    best, best_sse = None, EXACT_FIT_TOL
    for idx, iv in enumerate(intervals):
        if iv.end - iv.start > 1 and iv.sse > best_sse:
            best, best_sse = idx, iv.sse
    return best


def _grow(m: PrefixMoments, d: int, k: int) -> list[_Interval]:
    n = m.n
    intervals = [_Interval(0, n, d, float(range_sse(m, 0, n, d)))]
    spent = d + 1
    while spent + d + 1 <= k:
        idx = _worst(intervals)
        if idx is None:
            break
        iv = intervals[idx]
        l, left, right = best_split(m, iv.start, iv.end, d, d)
        intervals[idx:idx + 1] = [
            _Interval(iv.start, l, d, left),
            _Interval(l, iv.end, d, right),
        ]
        spent += d + 1
    return intervals


def _to_segmentation(m: PrefixMoments, intervals: list[_Interval]) -> Segmentation:
    segments = []
    for iv in intervals:
        res = fit(m, iv.start, iv.end, iv.degree)
        segments.append(Segment(iv.start, iv.end, iv.degree, res.coefficients, res.sse))
    return Segmentation(tuple(segments), m.n)


def _check(series: TimeSeries, min_budget: int, k: int):
    if int(k) != k or k < min_budget:
        raise InfeasibleBudgetError(
            f"budget k={k!r} cannot pay for one interval costing {min_budget} regressors"
        )
    if series.n < 1:
        raise SegmentationError("cannot segment an empty series")


def topdown_fixed(
    series: TimeSeries, d: int, k: int, moments: PrefixMoments | None = None
) -> Segmentation:
    """Top-down segmentation where every interval has degree ``d``.

    Each split costs ``d + 1`` more regressors. Stops when the next split
    would exceed ``k`` or when no interval has error left to remove.
    """
    if d not in (0, 1, 2):
        raise SegmentationError(f"degree must be 0, 1 or 2, got {d!r}")
    _check(series, d + 1, k)
    m = moments if moments is not None else PrefixMoments(series, d + 1)
    return _to_segmentation(m, _grow(m, d, k))


def topdown_adaptive(
    series: TimeSeries, maxdeg: int, k: int, moments: PrefixMoments | None = None
) -> Segmentation:
    """Top-down at degree ``maxdeg - 1``, then one cost-neutral re-split per interval.

    An interval of degree ``q`` may become degrees ``d'`` and ``q - d' - 1``
    side by side, which costs the same ``q + 1`` regressors. The re-split is
    kept only when it strictly lowers that interval's error, so the total
    error never exceeds the fixed-degree result.
    """
    if maxdeg not in (1, 2, 3):
        raise SegmentationError(f"maxdeg must be 1, 2 or 3, got {maxdeg!r}")
    _check(series, maxdeg, k)
    m = moments if moments is not None else PrefixMoments(series, maxdeg)
    phase1 = _grow(m, maxdeg - 1, k)
    result: list[_Interval] = []
    for iv in phase1:
        q = iv.degree
        best = None
        if iv.end - iv.start > 1:
            for d_left in range(q):
                d_right = q - d_left - 1
                l, left, right = best_split(m, iv.start, iv.end, d_left, d_right)
                if best is None or left + right < best[0]:
                    best = (left + right, l, d_left, d_right, left, right)
        if best is not None and best[0] < iv.sse:
            _, l, d_left, d_right, left, right = best
            result.append(_Interval(iv.start, l, d_left, left))
            result.append(_Interval(l, iv.end, d_right, right))
        else:
            result.append(iv)
    return _to_segmentation(m, result)
