"""Modulus-size thresholds for multilinear zero bounds over composite
moduli: exact beta-tail evaluation, a greedy prime-power knapsack engine,
and brute-force verification oracles."""

from .betafn import (
    BetaParams,
    beta_tail,
    corollary_bound,
    lemma1_bound_holds,
    lemma2_bound_holds,
    negbin_ccdf_oracle,
    reg_beta,
)
from .exactnum import (
    DEFAULT_PRECISION,
    LogInterval,
    Rational,
    binomial,
    log2_interval,
    rational_pow,
)
from .oracle import (
    Factorization,
    LcszCheckReport,
    MonteCarloEstimate,
    MultilinearPoly,
    ScaleError,
    count_zeros,
    exhaustive_lcsz_check,
    factorize,
    is_coprime_poly,
    lcsz_bound,
    monte_carlo_prob,
    product_poly_prob,
)
from .primes import is_prime, next_prime, primes_below
from .threshold import (
    Item,
    MonotonicityReport,
    PrecisionExhausted,
    ThresholdResult,
    analytic_threshold,
    check_density_monotonicity,
    feasible_value,
    greedy_threshold,
    marginal_density,
    marginal_weight,
)

__version__ = "0.1.0"
