"""Seeded synthetic series: Gaussian white noise and Gaussian random walks.

Deviates come from NumPy's ``Generator(PCG64(seed))`` through
``Generator.normal`` (ziggurat method). The same seed gives the same series
on any platform running the same NumPy release.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SegmentationError, TimeSeries

KINDS = ("white-noise", "random-walk")
_ALIASES = {"noise": "white-noise", "whitenoise": "white-noise",
            "walk": "random-walk", "randomwalk": "random-walk"}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise SegmentationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if int(self.n) != self.n or self.n < 1:
            raise SegmentationError(f"n must be an integer >= 1, got {self.n!r}")
        if not self.sigma > 0:
            raise SegmentationError(f"sigma must be > 0, got {self.sigma!r}")
        if not np.isfinite(self.mu):
            raise SegmentationError(f"mu must be finite, got {self.mu!r}")


def generate(spec: GeneratorSpec) -> TimeSeries:
    """Series on the grid ``x_i = i``.

    White noise draws every ``y_i`` from ``N(mu, sigma^2)``. A random walk
    starts at 0 and adds one such draw per step.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.kind == "white-noise":
        y = rng.normal(spec.mu, spec.sigma, size=spec.n)
    else:
        steps = rng.normal(spec.mu, spec.sigma, size=spec.n - 1)
        y = np.concatenate([[0.0], np.cumsum(steps)])
    return TimeSeries(np.arange(spec.n, dtype=float), y)


def white_noise(n: int, seed: int, mu: float = 0.0, sigma: float = 1.0) -> TimeSeries:
    return generate(GeneratorSpec("white-noise", n, seed, mu, sigma))


def random_walk(n: int, seed: int, mu: float = 0.0, sigma: float = 1.0) -> TimeSeries:
    return generate(GeneratorSpec("random-walk", n, seed, mu, sigma))
