"""Fit and cross-validation metrics, method comparisons and report tables."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .core import Segmentation, SegmentationError, TimeSeries, l2_error
from .methods import METHODS, canonical, get_segmenter

HEURISTICS = ("topdown-adaptive", "topdown-linear", "topdown-constant")


def locate(seg: Segmentation, x: np.ndarray, xq) -> np.ndarray:
    """Index of the segment used to predict at ``xq``.

    That is the last segment whose first point lies at or left of ``xq``;
    points left of the series use the first segment. A query strictly
    between two segments therefore goes to the left one.
    """
    starts = np.asarray([x[s.start] for s in seg.segments])
    idx = np.searchsorted(starts, xq, side="right") - 1
    return np.maximum(idx, 0)


def predict(seg: Segmentation, x: np.ndarray, xq) -> np.ndarray:
    xq = np.atleast_1d(np.asarray(xq, dtype=float))
    idx = locate(seg, x, xq)
    out = np.empty(xq.shape)
    for j in np.unique(idx):
        mask = idx == j
        out[mask] = seg.segments[j](xq[mask])
    return out


@dataclass(frozen=True)
class LooReport:
    """Leave-one-out errors ``|p(x_i) - y_i|`` for interior points ``1 .. n-2``."""

    method: str
    k: int
    per_point_errors: tuple[float, ...]

    @property
    def rms(self) -> float:
        errors = np.asarray(self.per_point_errors)
        return float(np.sqrt(np.mean(errors ** 2)))

    @property
    def mean_abs(self) -> float:
        return float(np.mean(self.per_point_errors))

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "k": self.k,
            "rms": self.rms,
            "per_point_errors": list(self.per_point_errors),
        }


def leave_one_out(
    series: TimeSeries, method: str, k: int, maxdeg: int = 2, threads: int = 1
) -> LooReport:
    """Delete each interior point, re-segment the rest and predict the point.

    Every deletion triggers a full refit, so this costs ``n - 2``
    segmentations.
    """
    if series.n < 3:
        raise SegmentationError(f"leave-one-out needs at least 3 points, got {series.n}")
    name = canonical(method)
    segmenter = get_segmenter(name, maxdeg)

    def one(i: int) -> float:
        train = series.drop(i)
        seg = segmenter(train, k)
        return abs(float(predict(seg, train.x, series.x[i])[0]) - series.y[i])

    indices = range(1, series.n - 1)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            errors = list(pool.map(one, indices))
    else:
        errors = [one(i) for i in indices]
    return LooReport(name, k, tuple(errors))


class DistanceBound(NamedTuple):
    lower: float
    upper: float
    actual: float

    @property
    def holds(self) -> bool:
        return self.lower <= self.actual <= self.upper


def distance_bound_check(
    a: TimeSeries, b: TimeSeries, seg_a: Segmentation, seg_b: Segmentation
) -> DistanceBound:
    """Bracket ``||a - b||`` using only the two piecewise approximations.

    With ``s(.)`` the model values, the triangle inequality gives
    ``||s(a) - s(b)|| -/+ (||s(a) - a|| + ||s(b) - b||)``.
    """
    if a.n != b.n or not np.array_equal(a.x, b.x):
        raise SegmentationError("both series must share the same x grid")
    sa = seg_a.model_values(a.x)
    sb = seg_b.model_values(b.x)
    between = float(np.linalg.norm(sa - sb))
    slack = float(np.linalg.norm(sa - a.y) + np.linalg.norm(sb - b.y))
    return DistanceBound(
        max(0.0, between - slack), between + slack, float(np.linalg.norm(a.y - b.y))
    )


def ratio(numerator: float, denominator: float) -> float | None:
    """``numerator / denominator``, or None when the denominator is zero."""
    if denominator == 0:
        return None
    return numerator / denominator


@dataclass
class MethodResult:
    method: str
    segmentation: Segmentation
    fit_error: float
    loo: LooReport | None = None

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "fit_error": self.fit_error,
            "sse": self.segmentation.total_sse,
            "complexity": self.segmentation.total_complexity,
            "segments": len(self.segmentation),
        }
        if self.loo is not None:
            out["loo_rms"] = self.loo.rms
        return out


@dataclass
class Comparison:
    k: int
    results: dict[str, MethodResult]

    @property
    def fit_ratio(self) -> float | None:
        """Linear over adaptive fit error."""
        return ratio(
            self.results["topdown-linear"].fit_error,
            self.results["topdown-adaptive"].fit_error,
        )

    @property
    def loo_ratio(self) -> float | None:
        lin = self.results["topdown-linear"].loo
        ada = self.results["topdown-adaptive"].loo
        if lin is None or ada is None:
            return None
        return ratio(lin.rms, ada.rms)

    def to_dict(self) -> dict:
        fit = self.fit_ratio
        loo = self.loo_ratio
        return {
            "k": self.k,
            "methods": {m: r.to_dict() for m, r in self.results.items()},
            "fit_ratio_linear_over_adaptive": fit,
            "fit_ratio_zero_denominator": fit is None,
            "loo_ratio_linear_over_adaptive": loo,
            "loo_ratio_zero_denominator": loo is None
            and self.results["topdown-adaptive"].loo is not None,
        }


def compare_methods(
    series: TimeSeries,
    k: int,
    with_loo: bool = False,
    maxdeg: int = 2,
    methods: Sequence[str] = METHODS,
    loo_methods: Sequence[str] = HEURISTICS,
    threads: int = 1,
) -> Comparison:
    """Run several segmenters at the same budget ``k`` and collect their errors.

    Leave-one-out runs only for ``loo_methods`` (the three heuristics by
    default) because it multiplies the cost by ``n``.
    """
    if k < 2:
        raise SegmentationError(f"comparing methods needs k >= 2, got {k}")
    results = {}
    loo_names = {canonical(m) for m in loo_methods}
    for method in methods:
        name = canonical(method)
        seg = get_segmenter(name, maxdeg)(series, k)
        loo = None
        if with_loo and name in loo_names and series.n >= 3:
            loo = leave_one_out(series, name, k, maxdeg, threads)
        results[name] = MethodResult(name, seg, l2_error(seg), loo)
    return Comparison(k, results)


@dataclass
class ExperimentRow:
    """Mean metrics of one table row (one ``k``, or one input file)."""

    label: str
    k: int
    fit: dict[str, float]
    loo: dict[str, float] = field(default_factory=dict)

    @property
    def fit_ratio(self) -> float | None:
        return ratio(self.fit["topdown-linear"], self.fit["topdown-adaptive"])

    @property
    def loo_ratio(self) -> float | None:
        if not self.loo:
            return None
        return ratio(self.loo["topdown-linear"], self.loo["topdown-adaptive"])

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "k": self.k,
            "fit_error": self.fit,
            "loo_rms": self.loo or None,
            "fit_ratio_linear_over_adaptive": self.fit_ratio,
            "loo_ratio_linear_over_adaptive": self.loo_ratio,
        }


def _mean_row(label: str, k: int, comparisons: list[Comparison]) -> ExperimentRow:
    methods = comparisons[0].results.keys()
    fit = {m: float(np.mean([c.results[m].fit_error for c in comparisons])) for m in methods}
    loo = {}
    for m in methods:
        reports = [c.results[m].loo for c in comparisons]
        if all(r is not None for r in reports):
            loo[m] = float(np.mean([r.rms for r in reports]))
    return ExperimentRow(label, k, fit, loo)


@dataclass
class ExperimentReport:
    """Rows in the shape of the adaptive / linear / constant comparison tables."""

    title: str
    rows: list[ExperimentRow]

    def to_dict(self) -> dict:
        return {"title": self.title, "rows": [r.to_dict() for r in self.rows]}

    def to_text(self) -> str:
        return format_table(self.title, self.rows)

    def plot_csv(self) -> str:
        """One row per (label, k, method) with the mean fit and LOO errors."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "k", "method", "fit_error", "loo_rms"])
        for row in self.rows:
            for m, value in row.fit.items():
                loo = row.loo.get(m)
                writer.writerow([row.label, row.k, m, repr(value),
                                 "" if loo is None else repr(loo)])
        return buf.getvalue()


def run_experiment(
    series_list: Sequence[TimeSeries],
    ks: Sequence[int],
    with_loo: bool = False,
    maxdeg: int = 2,
    labels: Sequence[str] | None = None,
    per_series_rows: bool = False,
    methods: Sequence[str] = METHODS,
    title: str = "experiment",
    threads: int = 1,
) -> ExperimentReport:
    """Compare all methods on every series for every ``k``.

    Synthetic suites average over the series, giving one row per ``k``.
    With ``per_series_rows`` each series gets its own row followed by an
    ``average`` row, like the per-stock and per-patient tables.
    """
    if not series_list:
        raise SegmentationError("experiment needs at least one series")
    labels = list(labels) if labels is not None else [str(i) for i in range(len(series_list))]
    rows = []
    for k in ks:
        comparisons = [
            compare_methods(s, k, with_loo, maxdeg, methods=methods, threads=threads)
            for s in series_list
        ]
        if per_series_rows:
            rows.extend(_mean_row(lab, k, [c]) for lab, c in zip(labels, comparisons))
            rows.append(_mean_row("average", k, comparisons))
        else:
            rows.append(_mean_row(f"k={k}", k, comparisons))
    return ExperimentReport(title, rows)


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.2f}"


def _pct(value: float | None) -> str:
    return "n/a" if value is None else f"{100 * value:.0f}%"


def format_table(title: str, rows: Sequence[ExperimentRow]) -> str:
    """Aligned text table: fit error block, then leave-one-out block if present."""
    columns = ["adaptive", "linear", "constant", "linear/adaptive"]
    has_dp = any("dp" in r.fit for r in rows)
    has_loo = any(r.loo for r in rows)

    def block(name: str, values_of, ratio_of, extra: bool) -> list[list[str]]:
        header = [name, "k"] + columns + (["optimal"] if extra else [])
        lines = [header]
        for r in rows:
            values = values_of(r)
            line = [r.label, str(r.k)] + [_fmt(values.get(m)) for m in HEURISTICS]
            line.append(_pct(ratio_of(r)))
            if extra:
                line.append(_fmt(values.get("dp")))
            lines.append(line)
        return lines

    blocks = [block("fit error", lambda r: r.fit, lambda r: r.fit_ratio, has_dp)]
    if has_loo:
        blocks.append(block("leave-one-out", lambda r: r.loo, lambda r: r.loo_ratio, False))
    out = [title]
    for lines in blocks:
        widths = [max(len(line[i]) for line in lines) for i in range(len(lines[0]))]
        rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
        out.append(rule)
        for line in lines:
            out.append("  ".join(cell.rjust(w) for cell, w in zip(line, widths)))
    return "\n".join(out) + "\n"

