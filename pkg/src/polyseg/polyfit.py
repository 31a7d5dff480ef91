"""Least-squares polynomial fits over index ranges in O(1).

Every quantity comes from range sums of :class:`~polyseg.moments.PrefixMoments`,
so the cost of a fit does not depend on the length of the range. The
functions broadcast over integer arrays of ``p`` and ``q`` so the
segmenters can score many candidate ranges in one call.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .core import SegmentationError
from .moments import PrefixMoments


class SingularFitError(ArithmeticError):
    """The normal matrix could not be inverted."""


@dataclass(frozen=True)
class FitResult:
    degree: int
    coefficients: tuple[float, ...]
    sse: float


def _centered_sums(m: PrefixMoments, p, q, d: int):
    """Range sums re-expressed in ``u = x - c`` with ``c`` the range midpoint.

    Solving in raw ``x`` squares the condition number of an already
    ill-conditioned system; shifting first keeps quadratics accurate.
    Returns ``(c, T0, T1)`` with ``T0[k] = sum u^k`` and ``T1[k] = sum u^k y``.
    """
    s = m._unchecked
    x = m.series.x
    c = 0.5 * (x[p] + x[q - 1])
    raw0 = [s(i, 0, p, q) for i in range(2 * d + 1)]
    raw1 = [s(i, 1, p, q) for i in range(d + 1)]

    def shift(raw, k):
        return sum(comb(k, i) * (-c) ** (k - i) * raw[i] for i in range(k + 1))

    T0 = [raw0[0]] + [shift(raw0, k) for k in range(1, 2 * d + 1)]
    T1 = [raw1[0]] + [shift(raw1, k) for k in range(1, d + 1)]
    return c, T0, T1


def _normal_system(T0, T1, d: int):
    size = d + 1
    A = [[T0[i + j] for j in range(size)] for i in range(size)]
    V = [T1[i] for i in range(size)]
    return A, V


def _unshift(a: list, c: float) -> list:
    """Coefficients of ``sum a_j (x - c)^j`` in powers of ``x``."""
    return [
        sum(a[j] * comb(j, k) * (-c) ** (j - k) for j in range(k, len(a)))
        for k in range(len(a))
    ]


def _gauss_solve(A: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Solve ``A a = V`` with partial pivoting, batched over leading axes."""
    m = A.shape[-1]
    aug = np.concatenate([A, V[..., None]], axis=-1)
    lead = aug.shape[:-2]
    for c in range(m):
        piv = c + np.argmax(np.abs(aug[..., c:, c]), axis=-1)
        order = np.broadcast_to(np.arange(m), lead + (m,)).copy()
        np.put_along_axis(order, np.asarray(piv)[..., None], c, axis=-1)
        order[..., c] = piv
        aug = np.take_along_axis(aug, order[..., None], axis=-2)
        for r in range(c + 1, m):
            factor = aug[..., r, c] / aug[..., c, c]
            aug[..., r, :] = aug[..., r, :] - factor[..., None] * aug[..., c, :]
    a = np.zeros(lead + (m,))
    for r in reversed(range(m)):
        acc = aug[..., r, m]
        for c in range(r + 1, m):
            acc = acc - aug[..., r, c] * a[..., c]
        a[..., r] = acc / aug[..., r, r]
    return a


def _solve(A, V, d: int) -> list:
    if d == 0:
        return [V[0] / A[0][0]]
    if d == 1:
        count, sx, sxx = A[0][0], A[0][1], A[1][1]
        sy, sxy = V[0], V[1]
        slope = (count * sxy - sx * sy) / (count * sxx - sx * sx)
        return [(sy - slope * sx) / count, slope]
    A_arr = np.stack([np.stack(np.broadcast_arrays(*row), axis=-1) for row in A], axis=-2)
    V_arr = np.stack(np.broadcast_arrays(*V), axis=-1)
    a = _gauss_solve(A_arr, V_arr)
    return [a[..., i] for i in range(d + 1)]


def _expanded_sse(T0, T1, syy, a: list):
    """``sum_j sum_l a_j a_l T0[j+l] - 2 sum_j a_j T1[j] + sum y^2``."""
    size = len(a)
    total = syy
    for j in range(size):
        total = total - 2.0 * a[j] * T1[j]
        for l in range(size):
            total = total + a[j] * a[l] * T0[j + l]
    return total


def _check_degree(m: PrefixMoments, d: int):
    if int(d) != d or not 0 <= d < m.maxdeg:
        raise SegmentationError(
            f"degree must be in [0, {m.maxdeg - 1}] for maxdeg={m.maxdeg}, got {d!r}"
        )


def fit(m: PrefixMoments, p: int, q: int, d: int) -> FitResult:
    """Best degree-``d`` polynomial over points ``p <= i < q``.

    A range with fewer than ``d + 1`` points is fitted with degree
    ``q - p - 1`` and the unused higher coefficients are zero.
    """
    _check_degree(m, d)
    if not 0 <= p < q <= m.n:
        raise SegmentationError(f"fit needs 0 <= p < q <= {m.n}, got p={p}, q={q}")
    length = q - p
    eff = min(d, length - 1)
    c, T0, T1 = _centered_sums(m, p, q, eff)
    with np.errstate(divide="ignore", invalid="ignore"):
        local = [float(v) for v in _solve(*_normal_system(T0, T1, eff), eff)]
    if not all(np.isfinite(local)):
        raise SingularFitError(f"singular normal matrix on range [{p}, {q})")
    if length <= d + 1:
        sse = 0.0
    else:
        syy = m._unchecked(0, 2, p, q)
        sse = max(0.0, float(_expanded_sse(T0, T1, syy, local)))
    coef = [float(v) for v in _unshift(local, float(c))] + [0.0] * (d - eff)
    return FitResult(d, tuple(coef), sse)


def fit_error(m: PrefixMoments, p: int, q: int, d: int) -> float:
    """Squared error of the best degree-``d`` fit on ``[p, q)``; 0 when empty."""
    if p == q:
        _check_degree(m, d)
        if not 0 <= p <= m.n:
            raise SegmentationError(f"index {p} outside [0, {m.n}]")
        return 0.0
    return fit(m, p, q, d).sse


def range_sse(m: PrefixMoments, p, q, d: int) -> np.ndarray:
    """Vectorized :func:`fit_error` over broadcast index arrays.

    Entries with ``q - p <= d + 1`` are exactly zero (interpolation or empty
    range). Entries with ``p > q`` are undefined and returned as zero;
    callers mask them. Negative round-off is clamped to zero.
    """
    p = np.asarray(p)
    q = np.asarray(q)
    if m.n < d + 2:
        return np.zeros(np.broadcast(p, q).shape)
    exact = (q - p) <= d + 1
    # keep the solver away from singular systems on masked entries
    q_safe = np.where(exact, np.minimum(p + d + 2, m.n), q)
    p_safe = np.where(exact, q_safe - d - 2, p)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        _, T0, T1 = _centered_sums(m, p_safe, q_safe, d)
        coef = _solve(*_normal_system(T0, T1, d), d)
        sse = _expanded_sse(T0, T1, m._unchecked(0, 2, p_safe, q_safe), coef)
    sse = np.where(exact, 0.0, np.maximum(sse, 0.0))
    # a numerically singular system must never look like a perfect fit
    return np.nan_to_num(sse, nan=np.inf)
