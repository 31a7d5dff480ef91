"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.utils.validation import check_array, check_consistent_length, column_or_1d

from .core import InfeasibleBudgetError, SegmentationError, TimeSeries


def check_x(X) -> np.ndarray:
    """Time coordinates as a float64 vector; accepts shape (n,) or (n, 1)."""
    X = check_array(X, ensure_2d=False, dtype=np.float64, ensure_all_finite=True)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(
                f"expected a single time column, got {X.shape[1]} features"
            )
        X = X[:, 0]
    return X


def check_series(X, y, sort: bool = True) -> TimeSeries:
    """Build a :class:`TimeSeries` from estimator-style inputs.

    Rows are sorted by ``x`` when ``sort`` is set; repeated ``x`` values are
    rejected either way.
    """
    x = check_x(X)
    y = column_or_1d(check_array(y, ensure_2d=False, dtype=np.float64), warn=True)
    check_consistent_length(x, y)
    if sort:
        order = np.argsort(x, kind="stable")
        x, y = x[order], y[order]
    if x.size > 1 and np.any(np.diff(x) <= 0):
        raise ValueError("x values must be distinct and strictly increasing")
    return TimeSeries(x, y)


def check_budget(k, minimum: int = 1) -> int:
    if not isinstance(k, numbers.Integral) or isinstance(k, bool):
        raise SegmentationError(f"k must be an integer, got {k!r}")
    if k < minimum:
        raise InfeasibleBudgetError(f"k={k} is below the minimum budget of {minimum}")
    return int(k)
