"""Optimal adaptive segmentation by dynamic programming.

Row ``r`` of the cost table holds, for every prefix ``[0, q)``, the least
total squared error reachable with at most ``r + 1`` regressors. A row only
depends on earlier rows, so the table is filled row by row and the optimal
segmentation is read back through the stored degrees and split points.

Work is O(n^2 N k). Fit errors do not depend on the row, so the columns are
processed in blocks: each block's error grid ``E(p, q, d)`` is computed once
and reused by every row.
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

BLOCK = 256


@dataclass(frozen=True, eq=False)
class CostTables:
    """``R[r, q]``: minimal error on ``[0, q)`` with at most ``r + 1`` regressors.

    ``D`` and ``P`` hold the degree and start index of the last interval of
    that optimum. An empty last interval (``P[r, q] == q``) only pads unused
    budget and is dropped on backtracking.
    """

    R: np.ndarray
    D: np.ndarray
    P: np.ndarray
    maxdeg: int

    @property
    def k(self) -> int:
        return self.R.shape[0]

    @property
    def n(self) -> int:
        return self.R.shape[1] - 1


def _check(series: TimeSeries, k: int, maxdeg: int):
    if series.n < 1:
        raise SegmentationError("cannot segment an empty series")
    if int(k) != k or k < 1:
        raise InfeasibleBudgetError(f"budget k must be an integer >= 1, got {k!r}")


def cost_tables(
    series: TimeSeries, k: int, maxdeg: int = 2, moments: PrefixMoments | None = None
) -> CostTables:
    _check(series, k, maxdeg)
    m = moments if moments is not None else PrefixMoments(series, maxdeg)
    if m.maxdeg < maxdeg:
        raise SegmentationError(f"moments built for maxdeg={m.maxdeg} < {maxdeg}")
    n = series.n
    # row 0 is the virtual row r = -1: only the empty prefix is free
    R = np.full((k + 1, n + 1), np.inf)
    R[0, 0] = 0.0
    D = np.zeros((k, n + 1), dtype=np.int8)
    P = np.zeros((k, n + 1), dtype=np.int64)

    for q0 in range(0, n + 1, BLOCK):
        q1 = min(q0 + BLOCK, n + 1)
        width = q1 - q0
        cols = np.arange(width)
        qs = np.arange(q0, q1)[:, None]
        ps = np.arange(q1)[None, :]
        invalid = ps > qs
        grids = []
        for d in range(maxdeg):
            # grid[c, p] = E(p, q0 + c, d); rows contiguous in p for the argmin
            E = range_sse(m, ps, qs, d)
            E[invalid] = np.inf
            grids.append(E)
        cand = np.empty((width, q1))
        for r in range(k):
            best = np.full(width, np.inf)
            best_d = np.zeros(width, dtype=np.int8)
            best_p = np.zeros(width, dtype=np.int64)
            for d in range(min(maxdeg, r + 1)):
                prev = R[r - d, :q1]  # table row r - 1 - d, shifted by the virtual row
                np.add(grids[d], prev, out=cand)
                p_arg = np.argmin(cand, axis=1)
                val = cand[cols, p_arg]
                better = val < best
                best[better] = val[better]
                best_d[better] = d
                best_p[better] = p_arg[better]
            R[r + 1, q0:q1] = best
            D[r, q0:q1] = best_d
            P[r, q0:q1] = best_p
    R = R[1:]
    for arr in (R, D, P):
        arr.flags.writeable = False
    return CostTables(R, D, P, maxdeg)


def backtrack(
    tables: CostTables, m: PrefixMoments, budget: int | None = None
) -> Segmentation:
    """Read the optimal segmentation for ``budget`` (default ``k``) regressors."""
    r = (budget if budget is not None else tables.k) - 1
    q = tables.n
    segments = []
    while q > 0:
        if r < 0:
            raise SegmentationError("cost tables are inconsistent: budget exhausted")
        p = int(tables.P[r, q])
        d = int(tables.D[r, q])
        if p < q:
            res = fit(m, p, q, d)
            segments.append(Segment(p, q, d, res.coefficients, res.sse))
        r -= d + 1
        q = p
    return Segmentation(tuple(reversed(segments)), tables.n)


def optimal_segmentation(series: TimeSeries, k: int, maxdeg: int = 2) -> Segmentation:
    """Least-error segmentation with total complexity at most ``k``.

    Interval degrees range over ``0 .. maxdeg - 1``. Ties prefer the smaller
    degree, then the earlier split point.
    """
    m = PrefixMoments(series, maxdeg)
    tables = cost_tables(series, k, maxdeg, moments=m)
    return backtrack(tables, m)


def optimal_cost_curve(series: TimeSeries, kmax: int, maxdeg: int = 2) -> list[float]:
    """Optimal total squared error for every budget ``1 .. kmax``."""
    tables = cost_tables(series, kmax, maxdeg)
    return [float(v) for v in tables.R[:, -1]]
