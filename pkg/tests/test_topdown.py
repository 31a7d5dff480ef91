import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_sse
from polyseg.core import InfeasibleBudgetError, SegmentationError, TimeSeries
from polyseg.dp import optimal_segmentation
from polyseg.moments import build
from polyseg.synth import random_walk
from polyseg.topdown import best_split, topdown_adaptive, topdown_fixed

FLAT_RAMP = TimeSeries([0, 1, 2, 3, 4], [0, 0, 0, 1, 2])
STAIRCASE = TimeSeries([0, 1, 2, 3], [0, 0, 1, 1])


def spans(seg):
    return [(s.start, s.end, s.degree) for s in seg]


def test_staircase_constants():
    seg = topdown_fixed(STAIRCASE, 0, 2)
    assert spans(seg) == [(0, 2, 0), (2, 4, 0)]
    assert seg.total_sse == 0.0


def test_staircase_single_line():
    seg = topdown_fixed(STAIRCASE, 1, 2)
    assert spans(seg) == [(0, 4, 1)]
    assert seg.total_sse == pytest.approx(0.2, rel=1e-9)


def test_staircase_adaptive_turns_the_line_into_two_constants():
    seg = topdown_adaptive(STAIRCASE, 2, 2)
    assert spans(seg) == [(0, 2, 0), (2, 4, 0)]
    assert seg.total_sse == pytest.approx(0.0, abs=1e-12)


def test_flat_ramp_adaptive_at_four():
    seg = topdown_adaptive(FLAT_RAMP, 2, 4)
    assert seg.total_sse == pytest.approx(0.0, abs=1e-12)
    assert seg.total_complexity <= 4


def test_one_interval_when_budget_covers_only_one():
    seg = topdown_fixed(FLAT_RAMP, 1, 3)
    assert spans(seg) == [(0, 5, 1)]


def test_stops_once_everything_is_exact():
    seg = topdown_fixed(TimeSeries.from_values([2.0] * 8), 0, 6)
    assert spans(seg) == [(0, 8, 0)]


def test_length_one_intervals_stop_splitting():
    seg = topdown_fixed(TimeSeries.from_values([0.0, 5.0, 1.0]), 0, 10)
    assert seg.total_sse == 0.0
    assert len(seg) == 3


def test_best_split_picks_the_step():
    l, left, right = best_split(build(STAIRCASE, 2), 0, 4, 0, 0)
    assert (l, left, right) == (2, 0.0, 0.0)


def test_best_split_earliest_on_ties():
    l, _, _ = best_split(build(TimeSeries.from_values([1.0] * 6), 2), 0, 6, 0, 0)
    assert l == 1


@pytest.mark.parametrize("call", [
    lambda s: topdown_fixed(s, 1, 1),
    lambda s: topdown_adaptive(s, 2, 1),
    lambda s: topdown_fixed(s, 0, 0),
    lambda s: topdown_adaptive(s, 3, 2),
])
def test_infeasible_budget(call):
    with pytest.raises(InfeasibleBudgetError):
        call(FLAT_RAMP)


def test_bad_degrees():
    with pytest.raises(SegmentationError):
        topdown_fixed(FLAT_RAMP, 3, 10)
    with pytest.raises(SegmentationError):
        topdown_adaptive(FLAT_RAMP, 4, 10)


def test_empty_series():
    with pytest.raises(SegmentationError):
        topdown_fixed(TimeSeries([], []), 0, 3)


walks = st.lists(st.floats(-5, 5), min_size=1, max_size=80).map(
    lambda steps: TimeSeries.from_values(np.cumsum(steps))
)


@settings(max_examples=60, deadline=None)
@given(series=walks, k=st.integers(2, 20), maxdeg=st.sampled_from([2, 3]))
def test_adaptive_respects_budget_and_never_loses(series, k, maxdeg):
    if k < maxdeg:
        k = maxdeg
    adaptive = topdown_adaptive(series, maxdeg, k)
    fixed = topdown_fixed(series, maxdeg - 1, k)
    assert adaptive.total_complexity <= k
    assert adaptive.total_sse <= fixed.total_sse
    assert all(s.degree < maxdeg for s in adaptive)


@settings(max_examples=40, deadline=None)
@given(series=walks, k=st.integers(1, 20), d=st.sampled_from([0, 1]))
def test_fixed_respects_budget_and_stored_errors(series, k, d):
    if k < d + 1:
        k = d + 1
    seg = topdown_fixed(series, d, k)
    assert seg.total_complexity <= k
    assert all(s.degree == d for s in seg)
    for s in seg:
        want = naive_sse(series.x[s.start:s.end], series.y[s.start:s.end], d)
        assert s.sse == pytest.approx(want, rel=1e-8, abs=1e-8)


def test_heuristic_close_to_optimal_on_random_walks():
    gaps = []
    for seed in range(10):
        series = random_walk(200, 300 + seed)
        best = optimal_segmentation(series, 20, 2).total_sse
        gaps.append(topdown_adaptive(series, 2, 20).total_sse / best - 1)
    assert 0.0 <= np.mean(gaps) <= 0.25


def test_large_series_is_fast_enough():
    series = random_walk(100_000, 1)
    seg = topdown_adaptive(series, 2, 20)
    assert seg.total_complexity <= 20


def test_chunked_split_scan_matches_full_scan(monkeypatch):
    import polyseg.topdown as td

    series = random_walk(3000, 12)
    m = build(series, 2)
    want = best_split(m, 5, 2900, 1, 0)
    monkeypatch.setattr(td, "SPLIT_CHUNK", 7)
    assert best_split(m, 5, 2900, 1, 0) == want


def test_chunked_split_scan_keeps_earliest_tie(monkeypatch):
    import polyseg.topdown as td

    monkeypatch.setattr(td, "SPLIT_CHUNK", 2)
    l, _, _ = best_split(build(TimeSeries.from_values([1.0] * 9), 2), 0, 9, 0, 0)
    assert l == 1
