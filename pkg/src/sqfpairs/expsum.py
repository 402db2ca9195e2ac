"""Exponential sums over primes and the empirical bound harness.

The dyadic-block aggregates and the discrepancy/uniformity inequalities both
carry unspecified absolute constants, so nothing here asserts a bound with an
invented constant: reports record the lhs/rhs ratio and the test suite
freezes first-run values as regressions.

Per-query prime iteration is single threaded with ascending p and pairwise
summation (numpy's reduction), so results are deterministic; independent
(h, d, t) queries could run in parallel without changing any output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .alpha import AlgebraicAlpha
from .errors import BudgetExceededError, ConfigError, InvalidRangeError, RangeCapError
from .sieves import DEFAULT_SEGMENT_CAP, iter_prime_segments, prime_count

#: Per-call cap on the number of evaluated (h, d, t, p) tuples.
DEFAULT_BUDGET = 10 ** 6

#: Caps keeping phase arithmetic well inside the exact range.
MAX_PHASE_MODULUS = 1 << 40
MAX_H = 1 << 20

#: Per-term phase precision of the fractional-part evaluation.
PHASE_EPS = 1e-12

_TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class ExpSumQuery:
    """Parameters of a single prime exponential sum with phase alpha*h*p/(d^2 t^2)."""

    h: int
    d: int
    t: int
    N: int


@dataclass(frozen=True)
class DyadicQuery:
    """Dyadic blocks (H, 2H], (D, 2D], (T, 2T] aggregated over primes p <= N."""

    H: float
    D: float
    T: float
    N: int


@dataclass(frozen=True)
class BoundReport:
    """lhs vs rhs of a bound, with the four rhs summands and the recorded ratio.

    For the uniformity (interval-count) harness only the first two rhs_terms
    are meaningful (K/H and the weighted sum); the rest are zero.
    """

    lhs: float
    rhs_terms: tuple
    rhs: float
    ratio: float
    eps_used: float


def _check_query(q: ExpSumQuery) -> int:
    if q.h < 1 or q.d < 1 or q.t < 1:
        raise InvalidRangeError(f"need h, d, t >= 1, got {q}")
    if q.N < 2:
        raise InvalidRangeError(f"need N >= 2, got N={q.N}")
    if q.h > MAX_H:
        raise RangeCapError(f"h={q.h} exceeds cap {MAX_H}")
    m = (q.d * q.t) ** 2
    if m > MAX_PHASE_MODULUS:
        raise RangeCapError(f"modulus {m} exceeds cap {MAX_PHASE_MODULUS}")
    return m


def exp_sum_primes(alpha: AlgebraicAlpha, q: ExpSumQuery,
                   segment_cap: int = DEFAULT_SEGMENT_CAP) -> complex:
    """Sum of e(alpha*h*p/(d^2 t^2)) over primes p <= N.

    Each phase is evaluated to PHASE_EPS, so the accumulated error stays
    below pi(N) * 2*pi * PHASE_EPS.
    """
    m = _check_query(q)
    total = 0j
    for ps in iter_prime_segments(2, q.N + 1, segment_cap):
        if not ps.size:
            continue
        fr = alpha.frac_parts(q.h, ps.tolist(), m)
        total += complex(np.exp(_TWO_PI_I * fr).sum())
    return total


def _dyadic_range(x: float) -> range:
    return range(int(math.floor(x)) + 1, int(math.floor(2.0 * x)) + 1)


def dyadic_block_sum(alpha: AlgebraicAlpha, q: DyadicQuery,
                     budget: int = DEFAULT_BUDGET,
                     segment_cap: int = DEFAULT_SEGMENT_CAP) -> float:
    """Sum of |exp_sum_primes| over all integer (h, d, t) in the dyadic blocks."""
    if q.H < 1 or q.D < 1 or q.T < 1:
        raise InvalidRangeError(f"need H, D, T >= 1, got {q}")
    if q.N < 2:
        raise InvalidRangeError(f"need N >= 2, got N={q.N}")
    hs = _dyadic_range(q.H)
    ds = _dyadic_range(q.D)
    ts = _dyadic_range(q.T)
    work = len(hs) * len(ds) * len(ts) * prime_count(q.N, segment_cap)
    if work > budget:
        raise BudgetExceededError(
            f"{work} term evaluations exceed budget {budget}; shrink the blocks"
        )
    moduli = [
        abs(exp_sum_primes(alpha, ExpSumQuery(h, d, t, q.N), segment_cap))
        for h in hs for d in ds for t in ts
    ]
    return math.fsum(moduli)


def dyadic_bound_rhs(q: DyadicQuery, eps: float) -> BoundReport:
    """The four-power bound for the dyadic block sum, times (HDTN)^eps.

    rhs-only report: lhs and ratio are zeroed; ratio_scan fills them in.
    """
    if not 0.0 < eps <= 0.5:
        raise ConfigError(f"need eps in (0, 0.5], got {eps}")
    H, D, T, N = q.H, q.D, q.T, float(q.N)
    terms = (
        H ** 0.5 * D ** 2 * T ** 2 * N ** 0.5,
        H ** 0.6 * D * T * N ** 0.8,
        H * D * T * N ** 0.75,
        H ** 0.75 * D ** 1.5 * T ** 1.5 * N ** 0.75,
    )
    rhs = (H * D * T * N) ** eps * math.fsum(terms)
    return BoundReport(lhs=0.0, rhs_terms=terms, rhs=rhs, ratio=0.0, eps_used=eps)


def ratio_scan(alpha: AlgebraicAlpha, grid: Sequence[DyadicQuery], eps: float,
               budget: int = DEFAULT_BUDGET,
               segment_cap: int = DEFAULT_SEGMENT_CAP) -> list[BoundReport]:
    """One BoundReport per dyadic query; ratios are recorded, never asserted."""
    out = []
    for q in grid:
        rhs_rep = dyadic_bound_rhs(q, eps)
        lhs = dyadic_block_sum(alpha, q, budget, segment_cap)
        out.append(BoundReport(lhs=lhs, rhs_terms=rhs_rep.rhs_terms,
                               rhs=rhs_rep.rhs, ratio=lhs / rhs_rep.rhs,
                               eps_used=eps))
    return out


def _check_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        raise InvalidRangeError("points must be nonempty")
    if np.any(pts < 0.0) or np.any(pts >= 1.0):
        raise ConfigError("points must lie in [0, 1)")
    return pts


def star_discrepancy(points) -> float:
    """Exact star discrepancy via the sorted-points formula."""
    pts = np.sort(_check_points(points))
    K = pts.size
    i = np.arange(1, K + 1, dtype=np.float64)
    return float(max((i / K - pts).max(), (pts - (i - 1.0) / K).max()))


def erdos_turan_bound(points, H: int, interval) -> BoundReport:
    """Interval-count deviation vs the truncated weighted exponential sums.

    lhs = |#{k: t_k in [a, b)} - K(b-a)|, rhs = K/H + Sum_{h<=H} |S(h)|/h.
    Membership is half-open so the full interval [0, 1) gives lhs = 0 for any
    admissible points.  The recorded ratio is a regression quantity; the true
    absolute constant is not claimed.
    """
    pts = _check_points(points)
    a, b = interval
    if not (0.0 <= a < b <= 1.0):
        raise ConfigError(f"need 0 <= a < b <= 1, got ({a}, {b})")
    if H < 1:
        raise InvalidRangeError(f"need H >= 1, got H={H}")
    K = pts.size
    count = int(np.count_nonzero((pts >= a) & (pts < b)))
    lhs = abs(count - K * (b - a))
    leading = K / H
    weighted = math.fsum(
        abs(complex(np.exp(_TWO_PI_I * h * pts).sum())) / h for h in range(1, H + 1)
    )
    rhs = leading + weighted
    return BoundReport(lhs=lhs, rhs_terms=(leading, weighted, 0.0, 0.0),
                       rhs=rhs, ratio=lhs / rhs, eps_used=0.0)


def beatty_frac_points(alpha: AlgebraicAlpha, K: int, m: int = 1) -> np.ndarray:
    """The sequence {alpha*k/m} for k = 1..K, as float64 phases."""
    if K < 1:
        raise InvalidRangeError(f"need K >= 1, got K={K}")
    return alpha.frac_parts(1, range(1, K + 1), m)
