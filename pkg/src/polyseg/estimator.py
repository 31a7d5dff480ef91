"""scikit-learn front end for the segmenters."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_budget, check_series, check_x
from .core import TimeSeries, l2_error
from .evaluate import locate, predict
from .methods import canonical, get_segmenter, min_budget


class PiecewisePolynomialRegressor(RegressorMixin, BaseEstimator):
    """Piecewise polynomial model of a time series under a regressor budget.

    Each interval carries a polynomial of degree below ``max_degree``; a
    constant costs one regressor, a line two. The total cost never exceeds
    ``k``.

    Parameters
    ----------
    method : {"topdown-adaptive", "topdown-linear", "topdown-constant", "dp"}
        Segmenter to run. The short names ``td-adaptive``, ``td-linear``,
        ``td-const`` and ``optimal`` are accepted too.
    k : int, default=10
        Regressor budget.
    max_degree : int, default=2
        Regressors per interval at most, for ``dp`` and ``topdown-adaptive``
        (2 allows constant and linear intervals).

    Attributes
    ----------
    segmentation_ : Segmentation
        The fitted intervals, indexed over the x-sorted training points.
    series_ : TimeSeries
        Training data sorted by x.
    breakpoints_ : ndarray
        x value of the first point of every interval.
    fit_error_ : float
        Square root of the total squared residual on the training data.

    Examples
    --------
    >>> import numpy as np
    >>> from polyseg import PiecewisePolynomialRegressor
    >>> x = np.arange(4.0)
    >>> y = np.array([0.0, 0.0, 1.0, 1.0])
    >>> reg = PiecewisePolynomialRegressor(k=2).fit(x, y)
    >>> [(s.start, s.end, s.degree) for s in reg.segmentation_]
    [(0, 2, 0), (2, 4, 0)]
    >>> reg.predict([0.5, 2.5])
    array([0., 1.])
    """

    def __init__(self, method="topdown-adaptive", k=10, max_degree=2):
        self.method = method
        self.k = k
        self.max_degree = max_degree

    def fit(self, X, y):
        series = check_series(X, y)
        name = canonical(self.method)
        k = check_budget(self.k, min_budget(name, self.max_degree))
        self.series_ = series
        self.segmentation_ = get_segmenter(name, self.max_degree)(series, k)
        self.n_features_in_ = 1
        return self

    def fit_series(self, series: TimeSeries):
        return self.fit(series.x, series.y)

    @property
    def breakpoints_(self) -> np.ndarray:
        check_is_fitted(self, "segmentation_")
        return np.array([self.series_.x[s.start] for s in self.segmentation_])

    @property
    def fit_error_(self) -> float:
        check_is_fitted(self, "segmentation_")
        return l2_error(self.segmentation_)

    def predict(self, X):
        """Evaluate the interval polynomial that owns each x.

        An x between two intervals belongs to the left one; x outside the
        training range extrapolates the first or last interval.
        """
        check_is_fitted(self, "segmentation_")
        return predict(self.segmentation_, self.series_.x, check_x(X))

    def predict_segment(self, X):
        """Index of the interval used for each x."""
        check_is_fitted(self, "segmentation_")
        return locate(self.segmentation_, self.series_.x, check_x(X))
