"""Name registry for the four segmenters."""

from __future__ import annotations

from functools import partial
from typing import Callable

from .core import Segmentation, SegmentationError, TimeSeries
from .dp import optimal_segmentation
from .topdown import topdown_adaptive, topdown_fixed

Segmenter = Callable[[TimeSeries, int], Segmentation]

METHODS = ("dp", "topdown-constant", "topdown-linear", "topdown-adaptive")

ALIASES = {
    "optimal": "dp",
    "td-const": "topdown-constant",
    "td-constant": "topdown-constant",
    "constant": "topdown-constant",
    "td-linear": "topdown-linear",
    "linear": "topdown-linear",
    "td-adaptive": "topdown-adaptive",
    "adaptive": "topdown-adaptive",
}

SHORT_NAMES = {
    "dp": "optimal",
    "topdown-adaptive": "adaptive",
    "topdown-linear": "linear",
    "topdown-constant": "constant",
}


def canonical(method: str) -> str:
    name = ALIASES.get(method, method)
    if name not in METHODS:
        raise SegmentationError(
            f"unknown method {method!r}; choose from {METHODS + tuple(ALIASES)}"
        )
    return name


def get_segmenter(method: str, maxdeg: int = 2) -> Segmenter:
    """Callable ``(series, k) -> Segmentation`` for ``method``.

    ``maxdeg`` bounds the interval degrees of ``dp`` and ``topdown-adaptive``;
    the fixed-degree methods ignore it.
    """
    name = canonical(method)
    if name == "dp":
        return lambda series, k: optimal_segmentation(series, k, maxdeg)
    if name == "topdown-adaptive":
        return lambda series, k: topdown_adaptive(series, maxdeg, k)
    degree = 0 if name == "topdown-constant" else 1
    return partial(_fixed, degree)


def _fixed(degree: int, series: TimeSeries, k: int) -> Segmentation:
    return topdown_fixed(series, degree, k)


def min_budget(method: str, maxdeg: int = 2) -> int:
    name = canonical(method)
    if name == "topdown-constant" or name == "dp":
        return 1
    if name == "topdown-linear":
        return 2
    return maxdeg
