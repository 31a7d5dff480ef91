import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_optimum, naive_sse
from polyseg.core import InfeasibleBudgetError, SegmentationError, TimeSeries
from polyseg.dp import backtrack, cost_tables, optimal_cost_curve, optimal_segmentation
from polyseg.moments import build
from polyseg.topdown import topdown_adaptive, topdown_fixed

FLAT_RAMP = TimeSeries([0, 1, 2, 3, 4], [0, 0, 0, 1, 2])
STAIRCASE = TimeSeries([0, 1, 2, 3], [0, 0, 1, 1])


def test_flat_ramp_series_is_exact_at_three():
    seg = optimal_segmentation(FLAT_RAMP, 3, 2)
    assert seg.total_sse == pytest.approx(0.0, abs=1e-12)
    assert seg.total_complexity <= 3


def test_flat_ramp_series_needs_more_than_two():
    assert optimal_segmentation(FLAT_RAMP, 2, 2).total_sse > 1e-6


def test_one_constant_on_constant_series():
    seg = optimal_segmentation(TimeSeries.from_values([1.0, 1.0, 1.0]), 1, 2)
    assert [(s.start, s.end, s.degree) for s in seg] == [(0, 3, 0)]
    assert seg.segments[0].coefficients == (1.0,)
    assert seg.total_sse == 0.0


def test_staircase_cost_curve_hits_zero_at_two():
    curve = optimal_cost_curve(STAIRCASE, 4, 2)
    assert curve[1] == pytest.approx(0.0, abs=1e-12)
    assert curve[0] == pytest.approx(1.0, rel=1e-12)  # mean 0.5, four residuals 0.25


def test_budget_beyond_length_is_exact():
    y = np.random.default_rng(0).normal(size=9)
    seg = optimal_segmentation(TimeSeries.from_values(y), 9, 2)
    assert seg.total_sse == pytest.approx(0.0, abs=1e-12)


def test_quadratic_degrees_available_with_maxdeg_three():
    x = np.arange(12.0)
    seg = optimal_segmentation(TimeSeries(x, (x - 5) ** 2), 3, 3)
    assert [s.degree for s in seg] == [2]
    assert seg.total_sse == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("k", [0, -1, 2.5])
def test_bad_budget(k):
    with pytest.raises(InfeasibleBudgetError):
        optimal_segmentation(FLAT_RAMP, k, 2)


def test_empty_series():
    with pytest.raises(SegmentationError):
        optimal_segmentation(TimeSeries([], []), 2, 2)


def test_single_point():
    seg = optimal_segmentation(TimeSeries([3.0], [7.0]), 1, 2)
    assert seg.segments[0].coefficients == (7.0,)


@pytest.mark.parametrize("seed", range(220))
def test_matches_exhaustive_enumeration(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(1, 13))
    k = int(rng.integers(1, 6))
    y = rng.normal(size=n) * rng.choice([0.1, 1.0, 10.0])
    x = np.cumsum(rng.uniform(0.5, 2.0, size=n))
    got = optimal_segmentation(TimeSeries(x, y), k, 2)
    assert got.total_sse == pytest.approx(brute_force_optimum(x, y, k, 2), abs=1e-9)
    assert got.total_complexity <= k


@pytest.mark.parametrize("seed", range(20))
def test_matches_exhaustive_enumeration_with_quadratics(seed):
    rng = np.random.default_rng(5000 + seed)
    n = int(rng.integers(1, 10))
    k = int(rng.integers(1, 7))
    y = rng.normal(size=n)
    x = np.arange(float(n))
    got = optimal_segmentation(TimeSeries(x, y), k, 3)
    assert got.total_sse == pytest.approx(brute_force_optimum(x, y, k, 3), abs=1e-9)


walks = st.lists(st.floats(-5, 5), min_size=1, max_size=40).map(
    lambda steps: TimeSeries.from_values(np.cumsum(steps))
)


@settings(max_examples=40, deadline=None)
@given(series=walks, k=st.integers(1, 12))
def test_table_invariants(series, k):
    m = build(series, 2)
    t = cost_tables(series, k, 2, m)
    R = t.R
    assert np.all(R[:, 0] == 0.0)
    # more budget never hurts; a longer prefix never costs less
    assert np.all(np.diff(R, axis=0) <= 1e-9 * np.maximum(1.0, R[:-1]))
    finite = np.isfinite(R)
    assert np.all(finite[1:])  # two regressors reach any prefix
    assert np.all(np.diff(R[-1]) >= -1e-9 * np.maximum(1.0, R[-1, 1:]))
    for budget in {1, k}:
        seg = backtrack(t, m, budget)
        assert seg.total_complexity <= budget
        assert seg.total_sse == pytest.approx(R[budget - 1, -1], rel=1e-9, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(series=walks, k=st.integers(2, 10))
def test_no_heuristic_beats_the_optimum(series, k):
    best = optimal_segmentation(series, k, 2).total_sse
    slack = 1e-9 * max(1.0, best)
    assert best <= topdown_adaptive(series, 2, k).total_sse + slack
    assert best <= topdown_fixed(series, 1, k).total_sse + slack
    assert best <= topdown_fixed(series, 0, k).total_sse + slack


def test_cost_curve_is_non_increasing():
    y = np.cumsum(np.random.default_rng(9).normal(size=150))
    curve = optimal_cost_curve(TimeSeries.from_values(y), 30, 2)
    assert all(b <= a + 1e-9 for a, b in zip(curve, curve[1:]))


def test_stored_segment_errors_are_naive():
    y = np.cumsum(np.random.default_rng(4).normal(size=300))
    series = TimeSeries.from_values(y)
    seg = optimal_segmentation(series, 20, 2)
    for s in seg:
        assert s.sse == pytest.approx(naive_sse(series.x[s.start:s.end], y[s.start:s.end],
                                                s.degree), rel=1e-8, abs=1e-8)
