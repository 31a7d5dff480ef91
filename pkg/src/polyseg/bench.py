"""Wall-clock scaling measurements for the segmenters."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from dataclasses import dataclass
from typing import Sequence

from .methods import canonical, get_segmenter
from .synth import random_walk

# runtime multiplier allowed when n doubles
LINEAR_MAX_RATIO = 2.6
QUADRATIC_RATIO = (3.3, 5.0)


@dataclass(frozen=True)
class BenchPoint:
    n: int
    seconds: float
    runs: tuple[float, ...]


@dataclass(frozen=True)
class BenchReport:
    method: str
    k: int
    points: tuple[BenchPoint, ...]

    def doubling_ratios(self) -> list[float]:
        """Runtime growth per doubling of ``n`` between consecutive sizes."""
        out = []
        for a, b in zip(self.points, self.points[1:]):
            exponent = math.log2(b.n / a.n)
            out.append((b.seconds / a.seconds) ** (1.0 / exponent))
        return out

    def verdict(self) -> bool | None:
        """True when every doubling ratio is in range; None with a single size."""
        ratios = self.doubling_ratios()
        if not ratios:
            return None
        if self.method == "dp":
            lo, hi = QUADRATIC_RATIO
            return all(lo <= r <= hi for r in ratios)
        return all(r <= LINEAR_MAX_RATIO for r in ratios)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method", "k", "n", "median_seconds", "runs"])
        for p in self.points:
            writer.writerow([self.method, self.k, p.n, repr(p.seconds),
                             " ".join(f"{t:.6g}" for t in p.runs)])
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"{self.method} k={self.k}"]
        for p in self.points:
            lines.append(f"  n={p.n:>9d}  median {p.seconds:.4f}s")
        ratios = self.doubling_ratios()
        if ratios:
            kind = "quadratic" if self.method == "dp" else "linear"
            shown = ", ".join(f"{r:.2f}" for r in ratios)
            verdict = "PASS" if self.verdict() else "FAIL"
            lines.append(f"  doubling ratios: {shown} -> {kind} growth {verdict}")
        return "\n".join(lines)


def run_bench(
    method: str,
    sizes: Sequence[int],
    k: int = 20,
    repeats: int = 3,
    seed: int = 0,
    maxdeg: int = 2,
) -> BenchReport:
    """Median wall time of ``method`` on seeded random walks of each size."""
    name = canonical(method)
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    segmenter = get_segmenter(name, maxdeg)
    points = []
    for n in sizes:
        series = random_walk(n, seed)
        runs = []
        for _ in range(repeats):
            start = time.perf_counter()
            segmenter(series, k)
            runs.append(time.perf_counter() - start)
        points.append(BenchPoint(n, statistics.median(runs), tuple(runs)))
    return BenchReport(name, k, tuple(points))
