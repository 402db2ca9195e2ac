import math

import pytest

import oracles
from sqfpairs import (
    basel_density_enclosure,
    coprime_double_sum,
    reference_exponents,
    sigma_enclosure,
    sigma_partial_product,
    tail_tau_sum,
    zeta2_enclosure,
)
from sqfpairs.errors import InvalidRangeError

# Product over all primes of (1 - 2/p^2), recorded once from a P = 10^8 run
# of the direct product with the certified tail factored out (the partial
# product at 10^8 is 0.322634099272306; the tail shifts digit 10).
SIGMA_REF = 0.3226340989


def test_sigma_enclosure_small_truncation_contains_reference():
    enc = sigma_enclosure(3)
    assert enc.contains(SIGMA_REF)
    assert enc.width() > 0


def test_sigma_enclosure_width_and_containment_at_1e6():
    enc = sigma_enclosure(10 ** 6)
    assert enc.width() < 1e-5
    assert enc.contains(SIGMA_REF)


def test_sigma_partial_product_single_factor():
    assert sigma_partial_product(2) == 0.5


def test_sigma_enclosures_nest():
    outer = sigma_enclosure(10 ** 3)
    middle = sigma_enclosure(10 ** 4)
    inner = sigma_enclosure(10 ** 5)
    assert outer.encloses(middle)
    assert middle.encloses(inner)


def test_sigma_enclosure_contains_direct_partial_product():
    # partial products decrease toward sigma, staying inside looser enclosures
    enc = sigma_enclosure(10 ** 4)
    assert enc.contains(sigma_partial_product(10 ** 5))


def test_sigma_requires_p_at_least_3():
    with pytest.raises(InvalidRangeError):
        sigma_enclosure(2)


def test_basel_density_enclosure():
    enc = basel_density_enclosure()
    assert enc.width() < 1e-12
    assert enc.contains(oracles.basel_density())
    assert abs(enc.midpoint() - 0.607927101854) < 1e-12


def test_basel_times_zeta2_contains_one():
    b = basel_density_enclosure()
    z = zeta2_enclosure()
    assert b.lo * z.lo <= 1.0 <= b.hi * z.hi


def test_coprime_double_sum_tiny_cases():
    assert coprime_double_sum(1) == 1.0
    assert coprime_double_sum(2) == 0.5


def test_coprime_double_sum_bridges_to_sigma():
    # |sum(L) - sigma| <= tail tau mass over (L, 100L] plus the analytic
    # remainder for n > 100L (tau(n) < 2 sqrt(n) gives Sum < 4/sqrt(100L))
    enc = sigma_enclosure(10 ** 6)
    for L in (100, 500, 2000):
        gap = abs(coprime_double_sum(L) - enc.midpoint())
        bound = tail_tau_sum(L, 100 * L) + 4.0 / math.sqrt(100 * L) + enc.width()
        assert gap <= bound, L


def test_coprime_double_sum_near_sigma_at_2000():
    assert abs(coprime_double_sum(2000) - SIGMA_REF) < 1e-4


def test_tail_tau_sum_single_term():
    assert tail_tau_sum(1, 2) == 0.5


def test_tail_tau_sum_halving():
    t10 = tail_tau_sum(10, 10 ** 6)
    t20 = tail_tau_sum(20, 10 ** 6)
    assert 1.5 < t10 / t20 < 2.6


def test_tail_tau_sum_is_small_past_1e3():
    assert tail_tau_sum(10 ** 3, 10 ** 6) < 0.02


def test_tail_tau_sum_range_check():
    with pytest.raises(InvalidRangeError):
        tail_tau_sum(5, 5)


def test_reference_exponents():
    exps = reference_exponents()
    assert exps["carlitz"] == 2.0 / 3.0
    assert abs(exps["reuss"] - (26 + math.sqrt(433)) / 81) < 1e-15
    assert abs(exps["reuss"] - 0.577884593169) < 1e-12
    assert exps["main"] == 0.9
