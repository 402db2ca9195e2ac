"""Desk-verification lab for consecutive squarefree values along prime Beatty sequences."""

from .alpha import AlgebraicAlpha, parse_alpha
from .constants import (
    Enclosure,
    basel_density_enclosure,
    coprime_double_sum,
    reference_exponents,
    sigma_enclosure,
    sigma_partial_product,
    tail_tau_sum,
    zeta2_enclosure,
)
from .counting import (
    DecompositionReport,
    ErrorTable,
    PairCountReport,
    carlitz_count,
    congruence_pair_count,
    decompose,
    error_table,
    pair_count,
    single_count,
)
from .expsum import (
    BoundReport,
    DyadicQuery,
    ExpSumQuery,
    beatty_frac_points,
    dyadic_block_sum,
    erdos_turan_bound,
    exp_sum_primes,
    dyadic_bound_rhs,
    ratio_scan,
    star_discrepancy,
)
from .sieves import (
    SieveSegment,
    crt_residue,
    prime_count,
    primes_in,
    sieve_segment,
    squarefree_flags,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicAlpha",
    "BoundReport",
    "DecompositionReport",
    "DyadicQuery",
    "Enclosure",
    "ErrorTable",
    "ExpSumQuery",
    "PairCountReport",
    "SieveSegment",
    "basel_density_enclosure",
    "beatty_frac_points",
    "carlitz_count",
    "congruence_pair_count",
    "coprime_double_sum",
    "crt_residue",
    "decompose",
    "dyadic_block_sum",
    "erdos_turan_bound",
    "error_table",
    "exp_sum_primes",
    "dyadic_bound_rhs",
    "pair_count",
    "parse_alpha",
    "prime_count",
    "primes_in",
    "ratio_scan",
    "reference_exponents",
    "sieve_segment",
    "sigma_enclosure",
    "sigma_partial_product",
    "single_count",
    "squarefree_flags",
    "star_discrepancy",
    "tail_tau_sum",
    "zeta2_enclosure",
]
