"""Prefix sums of ``x**j * y**l`` for constant-time range sums."""

from __future__ import annotations

import numpy as np

from .core import SegmentationError, TimeSeries

MAX_SUPPORTED_DEGREE = 3


def moment_pairs(maxdeg: int) -> list[tuple[int, int]]:
    """Exponent pairs ``(j, l)`` the fit and its error expansion need.

    ``(j, 0)`` for ``j < 2N - 1`` fills the normal matrix, ``(j, 1)`` for
    ``j < N`` the right-hand side, and ``(0, 2)`` closes the error formula.
    """
    return (
        [(j, 0) for j in range(2 * maxdeg - 1)]
        + [(j, 1) for j in range(maxdeg)]
        + [(0, 2)]
    )


class PrefixMoments:
    """Read-only prefix tables over one series.

    ``table(j, l)[q]`` is the sum of ``x_i**j * y_i**l`` over ``i < q``;
    entry 0 is zero and each table has ``n + 1`` entries. Accumulation is a
    plain left-to-right running sum.

    Parameters
    ----------
    series : TimeSeries
    maxdeg : int
        Number of regressors per interval the tables must support
        (2 for constant and linear models). At most 3.
    """

    def __init__(self, series: TimeSeries, maxdeg: int = 2):
        if int(maxdeg) != maxdeg or maxdeg < 1:
            raise SegmentationError(f"maxdeg must be an integer >= 1, got {maxdeg!r}")
        if maxdeg > MAX_SUPPORTED_DEGREE:
            raise SegmentationError(
                f"maxdeg must be <= {MAX_SUPPORTED_DEGREE}; higher degrees lose "
                f"too much precision with prefix sums, got {maxdeg}"
            )
        self.maxdeg = int(maxdeg)
        self.series = series
        self.n = series.n
        x, y = series.x, series.y
        self._tables: dict[tuple[int, int], np.ndarray] = {}
        for j, l in moment_pairs(self.maxdeg):
            table = np.zeros(self.n + 1)
            # np.cumsum accumulates sequentially, no pairwise reduction
            np.cumsum(x ** j * y ** l, out=table[1:])
            table.flags.writeable = False
            self._tables[(j, l)] = table

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(self._tables)

    def table(self, j: int, l: int) -> np.ndarray:
        try:
            return self._tables[(j, l)]
        except KeyError:
            raise SegmentationError(
                f"exponent pair ({j}, {l}) is not stored for maxdeg={self.maxdeg}"
            ) from None

    def range_sum(self, j: int, l: int, p, q):
        """Sum of ``x_i**j * y_i**l`` over ``p <= i < q``.

        ``p`` and ``q`` may be integer arrays; they broadcast.
        """
        table = self.table(j, l)
        p_arr = np.asarray(p)
        q_arr = np.asarray(q)
        if np.any(p_arr < 0) or np.any(q_arr > self.n) or np.any(p_arr > q_arr):
            raise SegmentationError(
                f"range indexes must satisfy 0 <= p <= q <= {self.n}"
            )
        out = table[q_arr] - table[p_arr]
        return float(out) if out.ndim == 0 else out

    def _unchecked(self, j: int, l: int, p, q):
        table = self._tables[(j, l)]
        return table[q] - table[p]


def build(series: TimeSeries, maxdeg: int = 2) -> PrefixMoments:
    return PrefixMoments(series, maxdeg)
