"""Certified enclosures for the density constants and reference exponents.

Products over primes are accumulated in log space with directed rounding
(every intermediate is nudged outward by a couple of ulps), so each Enclosure
is guaranteed to contain the exact value.  Summation orders are fixed and the
heavy sums go through math.fsum, whose result is exactly rounded and hence
bit-reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRangeError
from .sieves import DEFAULT_SEGMENT_CAP, iter_prime_segments, sieve_segment

_INF = math.inf


def _dn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _dn2(x: float) -> float:
    return _dn(_dn(x))


def _up2(x: float) -> float:
    return _up(_up(x))


@dataclass(frozen=True)
class Enclosure:
    """A closed interval [lo, hi] certified to contain an exact real value."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise InvalidRangeError(f"enclosure needs lo <= hi, got [{self.lo}, {self.hi}]")

    def width(self) -> float:
        return self.hi - self.lo

    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


def sigma_enclosure(P: int) -> Enclosure:
    """Enclosure of the full product over all primes of (1 - 2/p^2).

    Finite product over p <= P in directed-rounded log space, plus a certified
    tail: with x = 2/p^2, -x/(1-x) <= log(1-x) <= -x and
    Sum_{p > P} 1/p^2 < 1/(P-1).  Width shrinks as P grows.
    """
    if P < 3:
        raise InvalidRangeError(f"need P >= 3, got P={P}")
    lo_sum = 0.0
    hi_sum = 0.0
    for seg in iter_prime_segments(2, P + 1):
        for p in seg.tolist():
            x = 2.0 / (p * p)
            t_lo = _dn2(math.log1p(-_up(x)))
            t_hi = _up2(math.log1p(-_dn(x)))
            lo_sum = _dn(lo_sum + t_lo)
            hi_sum = _up(hi_sum + t_hi)
    # tail over p > P: upper bound 0 (every factor is below 1), lower bound
    # -Sum x/(1-x) >= -(Sum x) / (1 - max x)
    tail_x = _up(2.0 / (P - 1))
    denom = _dn(1.0 - _up(2.0 / (P * P)))
    tail_lo = _dn(-tail_x / denom)
    lo_sum = _dn(lo_sum + tail_lo)
    return Enclosure(_dn2(math.exp(lo_sum)), _up2(math.exp(hi_sum)))


def sigma_partial_product(P: int) -> float:
    """Plain float product of (1 - 2/p^2) over p <= P, in ascending order.

    Independent of the log-space enclosure path; used as the recomputation
    oracle in the tests.
    """
    if P < 2:
        raise InvalidRangeError(f"need P >= 2, got P={P}")
    prod = 1.0
    for seg in iter_prime_segments(2, P + 1):
        for p in seg.tolist():
            prod *= 1.0 - 2.0 / (p * p)
    return prod


def basel_density_enclosure() -> Enclosure:
    """Enclosure of 6/pi^2 with width below 1e-12.

    math.pi is the correctly rounded double, so the true pi lies strictly
    between its float neighbours.
    """
    pi_lo = _dn(math.pi)
    pi_hi = _up(math.pi)
    lo = _dn(6.0 / _up(pi_hi * pi_hi))
    hi = _up(6.0 / _dn(pi_lo * pi_lo))
    return Enclosure(lo, hi)


def zeta2_enclosure(terms: int = 10_000) -> Enclosure:
    """Enclosure of zeta(2) from a finite sum plus the integral tail.

    Sum_{n > M} 1/n^2 lies strictly between 1/(M+1) and 1/M.
    """
    if terms < 1:
        raise InvalidRangeError(f"need terms >= 1, got {terms}")
    partial = math.fsum(1.0 / (n * n) for n in range(1, terms + 1))
    lo = _dn(_dn2(partial) + _dn(1.0 / (terms + 1)))
    hi = _up(_up2(partial) + _up(1.0 / terms))
    return Enclosure(lo, hi)


def coprime_double_sum(L: int) -> float:
    """Sum of mu(d) mu(t) / (d t)^2 over 1 <= d, t <= L with gcd(d, t) = 1.

    Terms are enumerated row-major ascending and accumulated exactly with
    math.fsum, so the result is deterministic across platforms.
    """
    if L < 1:
        raise InvalidRangeError(f"need L >= 1, got L={L}")
    mu = sieve_segment(1, L + 1, {"mu"}, segment_cap=max(DEFAULT_SEGMENT_CAP, L)).mu
    nz = [i + 1 for i in range(L) if mu[i]]
    weight = {t: mu[t - 1] / (t * t) for t in nz}
    gcd = math.gcd
    terms: list[float] = []
    for d in nz:
        wd = weight[d]
        terms.extend(wd * weight[t] for t in nz if gcd(d, t) == 1)
    return math.fsum(terms)


def tail_tau_sum(z: int, Z: int) -> float:
    """Sum of tau(n)/n^2 over z < n <= Z (empirical truncation-tail mass)."""
    if not 1 <= z < Z:
        raise InvalidRangeError(f"need 1 <= z < Z, got z={z}, Z={Z}")
    pieces: list[float] = []
    cur = z + 1
    while cur <= Z:
        top = min(cur + DEFAULT_SEGMENT_CAP, Z + 1)
        seg = sieve_segment(cur, top, {"tau"})
        n = np.arange(cur, top, dtype=np.float64)
        pieces.extend((seg.tau / (n * n)).tolist())
        cur = top
    return math.fsum(pieces)


def reference_exponents() -> dict[str, float]:
    """Historical and target error exponents for the consecutive-pair counts."""
    return {
        "carlitz": 2.0 / 3.0,
        "reuss": (26.0 + math.sqrt(433.0)) / 81.0,
        "main": 0.9,
    }
