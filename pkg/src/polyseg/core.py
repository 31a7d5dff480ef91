"""Domain types shared by the segmenters.

Indexes are half-open everywhere: a segment ``[start, end)`` covers the
points ``start, start + 1, ..., end - 1``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P


class SegmentationError(ValueError):
    """Raised when inputs violate a segmenter's preconditions."""


class InfeasibleBudgetError(SegmentationError):
    """Raised when the regressor budget cannot pay for a single interval."""


def _frozen(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise SegmentationError(f"{name} values must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sorted ``(x, y)`` samples stored as read-only float64 arrays."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _frozen(self.x, "x")
        y = _frozen(self.y, "y")
        if x.shape != y.shape:
            raise SegmentationError(
                f"x and y must have the same length, got {x.size} and {y.size}"
            )
        if x.size > 1 and not np.all(np.diff(x) > 0):
            bad = int(np.argmin(np.diff(x) > 0)) + 1
            raise SegmentationError(
                f"x values must be strictly increasing (violated at index {bad})"
            )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_values(cls, y: Iterable[float]) -> "TimeSeries":
        """Series on the unit grid ``x_i = i``."""
        y = np.asarray(list(y) if not isinstance(y, np.ndarray) else y, dtype=float)
        return cls(np.arange(y.size, dtype=float), y)

    @property
    def n(self) -> int:
        return int(self.x.size)

    def __len__(self) -> int:
        return self.n

    def drop(self, i: int) -> "TimeSeries":
        """Copy of the series without point ``i``."""
        return TimeSeries(np.delete(self.x, i), np.delete(self.y, i))

    def window(self, start: int, length: int) -> "TimeSeries":
        if start < 0 or length < 1 or start + length > self.n:
            raise SegmentationError(
                f"window {start}:{length} does not fit a series of {self.n} points"
            )
        return TimeSeries(self.x[start:start + length], self.y[start:start + length])


@dataclass(frozen=True)
class Segment:
    """One interval ``[start, end)`` with its polynomial model.

    ``coefficients`` are in ascending order, ``a_0 + a_1 x + ...``, and always
    hold ``degree + 1`` entries; higher ones are zero when the interval has
    too few points to determine them.
    """

    start: int
    end: int
    degree: int
    coefficients: tuple[float, ...]
    sse: float

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise SegmentationError(
                f"segment needs 0 <= start < end, got [{self.start}, {self.end})"
            )
        if self.degree < 0:
            raise SegmentationError(f"degree must be >= 0, got {self.degree}")
        coefficients = tuple(float(c) for c in self.coefficients)
        if len(coefficients) != self.degree + 1:
            raise SegmentationError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(coefficients)}"
            )
        if not self.sse >= 0:
            raise SegmentationError(f"sse must be >= 0, got {self.sse}")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "sse", float(self.sse))

    @property
    def cost(self) -> int:
        """Number of regressors this interval spends."""
        return self.degree + 1

    @property
    def length(self) -> int:
        return self.end - self.start

    def __call__(self, x):
        return P.polyval(x, self.coefficients)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "degree": self.degree,
            "coefficients": list(self.coefficients),
            "sse": self.sse,
        }


@dataclass(frozen=True)
class Segmentation:
    """Ordered segments tiling ``[0, n)``."""

    segments: tuple[Segment, ...] = field(default_factory=tuple)
    n: int = 0

    def __post_init__(self):
        segments = tuple(self.segments)
        object.__setattr__(self, "segments", segments)
        if not segments:
            if self.n != 0:
                raise SegmentationError("a non-empty series needs at least one segment")
            return
        if segments[0].start != 0 or segments[-1].end != self.n:
            raise SegmentationError(
                f"segments must cover [0, {self.n}), got "
                f"[{segments[0].start}, {segments[-1].end})"
            )
        for prev, cur in zip(segments, segments[1:]):
            if cur.start != prev.end:
                raise SegmentationError(
                    f"segments must be contiguous: [{prev.start}, {prev.end}) "
                    f"followed by [{cur.start}, {cur.end})"
                )

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    @property
    def total_complexity(self) -> int:
        return sum(s.cost for s in self.segments)

    @property
    def total_sse(self) -> float:
        return math.fsum(s.sse for s in self.segments)

    @property
    def breakpoints(self) -> list[int]:
        """Segmentation indexes ``0 = z_0 < z_1 < ... < z_kappa = n``."""
        if not self.segments:
            return [0]
        return [self.segments[0].start] + [s.end for s in self.segments]

    def labels(self) -> np.ndarray:
        """Segment id of every point."""
        out = np.empty(self.n, dtype=int)
        for j, s in enumerate(self.segments):
            out[s.start:s.end] = j
        return out

    def model_values(self, x: np.ndarray) -> np.ndarray:
        """Evaluate each segment's polynomial on the points it covers."""
        x = np.asarray(x, dtype=float)
        if x.size != self.n:
            raise SegmentationError(f"expected {self.n} x values, got {x.size}")
        out = np.empty(self.n)
        for s in self.segments:
            out[s.start:s.end] = s(x[s.start:s.end])
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "segments": [s.to_dict() for s in self.segments],
            "total_complexity": self.total_complexity,
            "total_sse": self.total_sse,
            "l2_error": l2_error(self),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "Segmentation":
        segments = tuple(
            Segment(d["start"], d["end"], d["degree"], tuple(d["coefficients"]), d["sse"])
            for d in data["segments"]
        )
        return cls(segments, int(data["n"]))


def l2_error(seg: Segmentation) -> float:
    """Experimental error: square root of the summed squared fit errors."""
    return math.sqrt(seg.total_sse)


def model_complexity(seg: Segmentation) -> int:
    """Total regressor count; a constant costs 1, a line 2, and so on."""
    return seg.total_complexity


def naive_sse(x: Sequence[float], y: Sequence[float], degree: int) -> float:
    """Least-squares error computed directly from the points, in O(length)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    deg = min(degree, x.size - 1)
    if deg < 0:
        return 0.0
    coef = P.polyfit(x, y, deg)
    return float(np.sum((P.polyval(x, coef) - y) ** 2))


def to_plot_csv(series: TimeSeries, seg: Segmentation) -> str:
    """One row per point: ``x, y, model, segment_id``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "model", "segment_id"])
    model = seg.model_values(series.x)
    labels = seg.labels()
    for xi, yi, mi, li in zip(series.x, series.y, model, labels):
        writer.writerow([repr(float(xi)), repr(float(yi)), repr(float(mi)), int(li)])
    return buf.getvalue()
