import doctest

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.model_selection import GridSearchCV, KFold
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

import polyseg.estimator
from polyseg import PiecewisePolynomialRegressor
from polyseg.core import InfeasibleBudgetError, SegmentationError
from polyseg.dp import optimal_segmentation
from polyseg.synth import random_walk


def test_docstring_example():
    result = doctest.testmod(polyseg.estimator)
    assert result.failed == 0 and result.attempted > 0


def test_params_round_trip():
    reg = PiecewisePolynomialRegressor(method="dp", k=7)
    assert reg.get_params() == {"method": "dp", "k": 7, "max_degree": 2}
    reg.set_params(k=3)
    assert reg.k == 3
    twin = clone(reg)
    assert twin.get_params() == reg.get_params() and twin is not reg


def test_fit_matches_direct_call():
    s = random_walk(120, 4)
    reg = PiecewisePolynomialRegressor(method="dp", k=12).fit(s.x, s.y)
    assert reg.segmentation_ == optimal_segmentation(s, 12, 2)
    assert reg.fit_error_ == pytest.approx(np.sqrt(reg.segmentation_.total_sse))
    assert reg.breakpoints_[0] == 0.0
    assert reg.n_features_in_ == 1


def test_column_input_and_unsorted_x():
    x = np.array([3.0, 0.0, 2.0, 1.0])
    y = np.array([1.0, 0.0, 1.0, 0.0])
    reg = PiecewisePolynomialRegressor(k=2).fit(x.reshape(-1, 1), y)
    assert list(reg.series_.x) == [0.0, 1.0, 2.0, 3.0]
    assert list(reg.predict(x.reshape(-1, 1))) == pytest.approx(list(y), abs=1e-12)
    assert list(reg.predict_segment([0.0, 2.0])) == [0, 1]


def test_score_is_r2():
    s = random_walk(200, 1)
    reg = PiecewisePolynomialRegressor(k=30).fit(s.x, s.y)
    assert 0.8 < reg.score(s.x, s.y) <= 1.0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        PiecewisePolynomialRegressor().predict([1.0])


@pytest.mark.parametrize("X,y", [
    ([0.0, 1.0, 1.0], [1.0, 2.0, 3.0]),
    ([0.0, 1.0], [1.0, np.nan]),
    (np.zeros((3, 2)), [1.0, 2.0, 3.0]),
    ([0.0, 1.0, 2.0], [1.0, 2.0]),
])
def test_bad_input(X, y):
    with pytest.raises((SegmentationError, ValueError)):
        PiecewisePolynomialRegressor(k=2).fit(X, y)


def test_infeasible_budget():
    with pytest.raises(InfeasibleBudgetError):
        PiecewisePolynomialRegressor(method="td-linear", k=1).fit([0, 1, 2], [0, 1, 2])


def test_composes_with_pipeline_and_search():
    s = random_walk(150, 9)
    pipe = make_pipeline(FunctionTransformer(), PiecewisePolynomialRegressor(k=6))
    pipe.fit(s.x.reshape(-1, 1), s.y)
    assert pipe.predict(s.x[:3].reshape(-1, 1)).shape == (3,)
    search = GridSearchCV(
        PiecewisePolynomialRegressor(), {"k": [4, 16]}, cv=KFold(3, shuffle=True, random_state=0)
    )
    search.fit(s.x.reshape(-1, 1), s.y)
    assert search.best_params_["k"] == 16
