import cmath
import math

import numpy as np
import pytest

from sqfpairs import (
    DyadicQuery,
    ExpSumQuery,
    beatty_frac_points,
    dyadic_block_sum,
    erdos_turan_bound,
    exp_sum_primes,
    dyadic_bound_rhs,
    prime_count,
    ratio_scan,
    star_discrepancy,
)
from sqfpairs.errors import BudgetExceededError, ConfigError, InvalidRangeError

# Regression fixtures, frozen from the first run of this implementation.
EXPSUM_1E5_MODULUS = 32.359302544378
DSTAR_SQRT2_1E4 = 0.0002646979
ET_Q0_LHS = 0.2222222222
ET_Q0_RHS = 112.6861579848


def test_single_prime_has_unit_modulus(sqrt2):
    assert abs(abs(exp_sum_primes(sqrt2, ExpSumQuery(1, 1, 1, 2))) - 1.0) < 1e-12


def test_triangle_inequality(sqrt2):
    for N in (100, 1000):
        s = exp_sum_primes(sqrt2, ExpSumQuery(1, 1, 1, N))
        assert abs(s) <= prime_count(N)


def test_expsum_regression_fixture(sqrt2):
    s = exp_sum_primes(sqrt2, ExpSumQuery(1, 1, 1, 10 ** 5))
    assert abs(abs(s) - EXPSUM_1E5_MODULUS) < 1e-6


def test_expsum_segment_cap_invariance(sqrt2):
    a = exp_sum_primes(sqrt2, ExpSumQuery(3, 2, 1, 3000))
    b = exp_sum_primes(sqrt2, ExpSumQuery(3, 2, 1, 3000), segment_cap=256)
    assert abs(a - b) < 1e-9


def test_phase_periodicity(sqrt2):
    # e(x) == e(x + 1) for the actually evaluated phases
    fr = sqrt2.frac_parts(1, range(2, 200), 36)
    for x in fr.tolist():
        assert abs(cmath.exp(2j * math.pi * x) - cmath.exp(2j * math.pi * (x + 1.0))) < 1e-10


def test_dyadic_unit_blocks_contain_single_query(sqrt2):
    # H = D = T = 1 selects exactly (h, d, t) = (2, 2, 2)
    lhs = dyadic_block_sum(sqrt2, DyadicQuery(1, 1, 1, 1000))
    single = abs(exp_sum_primes(sqrt2, ExpSumQuery(2, 2, 2, 1000)))
    assert abs(lhs - single) < 1e-12


def test_dyadic_matches_per_query_sum(sqrt2):
    q = DyadicQuery(2, 1, 1, 1000)
    total = dyadic_block_sum(sqrt2, q)
    manual = math.fsum(
        abs(exp_sum_primes(sqrt2, ExpSumQuery(h, 2, 2, 1000)))
        for h in (3, 4)
    )
    # blocks: h in (2,4] -> {3,4}; d,t in (1,2] -> {2}
    assert abs(total - manual) < 1e-8


def test_dyadic_budget_enforced(sqrt2):
    with pytest.raises(BudgetExceededError):
        dyadic_block_sum(sqrt2, DyadicQuery(4, 2, 2, 10 ** 5), budget=1000)


def test_dyadic_rejects_blocks_below_one(sqrt2):
    with pytest.raises(InvalidRangeError):
        dyadic_block_sum(sqrt2, DyadicQuery(0.5, 1, 1, 100))


def test_dyadic_bound_rhs_all_ones():
    rep = dyadic_bound_rhs(DyadicQuery(1, 1, 1, 1), 0.01)
    assert rep.rhs_terms == (1.0, 1.0, 1.0, 1.0)
    assert rep.rhs == 4.0


def test_dyadic_bound_rhs_n16():
    rep = dyadic_bound_rhs(DyadicQuery(1, 1, 1, 16), 1e-9)
    assert abs(rep.rhs_terms[0] - 4.0) < 1e-6
    assert abs(rep.rhs_terms[1] - 16 ** 0.8) < 1e-6
    assert abs(rep.rhs_terms[2] - 8.0) < 1e-6
    assert abs(rep.rhs_terms[3] - 8.0) < 1e-6
    assert abs(rep.rhs - (4 + 16 ** 0.8 + 8 + 8)) < 1e-4


def test_dyadic_bound_rhs_power_law_in_n():
    r1 = dyadic_bound_rhs(DyadicQuery(1, 1, 1, 4096), 1e-12)
    r2 = dyadic_bound_rhs(DyadicQuery(1, 1, 1, 8192), 1e-12)
    assert abs(r2.rhs_terms[1] / r1.rhs_terms[1] - 2 ** 0.8) < 1e-6


def test_dyadic_bound_rhs_eps_validation():
    with pytest.raises(ConfigError):
        dyadic_bound_rhs(DyadicQuery(1, 1, 1, 10), 0.0)
    with pytest.raises(ConfigError):
        dyadic_bound_rhs(DyadicQuery(1, 1, 1, 10), 0.6)


def test_star_discrepancy_examples():
    assert star_discrepancy([0.5]) == 0.5
    assert abs(star_discrepancy([0.0, 0.25, 0.5, 0.75]) - 0.25) < 1e-15


def test_star_discrepancy_range_validation():
    with pytest.raises(ConfigError):
        star_discrepancy([0.5, 1.0])
    with pytest.raises(InvalidRangeError):
        star_discrepancy([])


def test_star_discrepancy_duplicate_point_shift():
    pts = [0.05, 0.25, 0.45, 0.65, 0.85]
    base = star_discrepancy(pts)
    dup = star_discrepancy(pts + [0.25])
    assert 0.0 < dup <= 1.0
    assert abs(dup - base) <= 1.0 / len(pts)


def test_star_discrepancy_beatty_fixture(sqrt2):
    d = star_discrepancy(beatty_frac_points(sqrt2, 10 ** 4))
    assert d < 0.01
    assert abs(d - DSTAR_SQRT2_1E4) < 1e-8


def test_erdos_turan_point_mass():
    rep = erdos_turan_bound([0.5] * 200, 1, (0.4, 0.6))
    assert abs(rep.lhs - 0.8 * 200) < 1e-9
    assert rep.rhs >= 200.0
    assert rep.ratio <= 0.8


def test_erdos_turan_full_interval_is_exact():
    pts = [0.0, 0.1, 0.33, 0.74, 0.99]
    rep = erdos_turan_bound(pts, 5, (0.0, 1.0))
    assert rep.lhs == 0.0


def test_erdos_turan_regression_fixture(sqrt2):
    pts = beatty_frac_points(sqrt2, 10 ** 4, 36)
    rep = erdos_turan_bound(pts, 100, (0.0, 1.0 / 36.0))
    assert abs(rep.lhs - ET_Q0_LHS) < 1e-6
    assert abs(rep.rhs - ET_Q0_RHS) < 1e-6
    assert rep.lhs <= 4.0 * rep.rhs


def test_erdos_turan_interval_validation(sqrt2):
    pts = beatty_frac_points(sqrt2, 100)
    with pytest.raises(ConfigError):
        erdos_turan_bound(pts, 10, (0.5, 0.5))
    with pytest.raises(ConfigError):
        erdos_turan_bound(pts, 10, (0.2, 1.1))
    with pytest.raises(InvalidRangeError):
        erdos_turan_bound(pts, 0, (0.2, 0.4))


def test_ratio_scan_plumbing(sqrt2):
    assert ratio_scan(sqrt2, [], 0.01) == []
    reps = ratio_scan(sqrt2, [DyadicQuery(1, 1, 1, 100)], 0.01)
    assert len(reps) == 1
    assert reps[0].ratio == reps[0].lhs / reps[0].rhs
    assert reps[0].eps_used == 0.01
    assert math.isfinite(reps[0].ratio)


def test_beatty_frac_points_shape(sqrt2):
    pts = beatty_frac_points(sqrt2, 500, 36)
    assert isinstance(pts, np.ndarray)
    assert pts.shape == (500,)
    assert pts.min() >= 0.0 and pts.max() < 1.0
