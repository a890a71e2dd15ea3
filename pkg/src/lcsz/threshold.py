"""Greedy prime-power knapsack engine for modulus-size thresholds.

The engine answers: how many bits must a modulus N have so that the
multi-prime tail product  prod_{(p,r) | N} I_{1/p}(r, mu)  is certainly
at most 2^-lambda?  Equivalently it upper-bounds the constrained maximum

    max log2 N   subject to   sum -log2 I_{1/p}(r, mu) <= lambda.

Each prime-power step (p, r) is an item with marginal value log2 p and
marginal weight log2(I_{1/p}(r-1, mu) / I_{1/p}(r, mu)) > 0.  Density
(value over weight) is decreasing in r for fixed p and non-increasing in
p at r = 1, so a max-heap seeded with (2, 1), pushing (p, r+1) on every
pop and (next_prime, 1) whenever the largest seen prime is popped, emits
items in globally non-increasing density order.  Greedily consuming them
until the weight budget lambda is exhausted yields a certified upper
bound on the constrained maximum.

Soundness under inexact logarithms: weights accumulate by their lower
interval endpoints (so the loop never stops too early) and value by the
upper endpoints (so the reported bit count never undershoots).  Pop order
is certified per pop from the enclosures; if two candidates cannot be
separated the whole run restarts at doubled precision and eventually
fails loudly rather than risk a misordered pop.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .betafn import beta_tail, tail_numerator_range, _tail_numerator
from .exactnum import DEFAULT_PRECISION, LogInterval, exp2_upper, log2_interval
from .primes import is_prime, next_prime, primes_below

__all__ = [
    "Item",
    "ThresholdResult",
    "MonotonicityReport",
    "PrecisionExhausted",
    "next_prime",
    "marginal_weight",
    "marginal_density",
    "greedy_threshold",
    "analytic_threshold",
    "check_density_monotonicity",
    "feasible_value",
]

_MAX_ESCALATIONS = 4


class PrecisionExhausted(RuntimeError):
    """Raised when two queue items stay density-ambiguous after escalation."""


@dataclass(frozen=True)
class Item:
    """One prime-power step (p, r) with its marginal enclosures."""

    p: int
    r: int
    dval: LogInterval      # log2 p
    dweight: LogInterval   # log2(I(r-1)/I(r)) > 0
    density: LogInterval   # dval / dweight


@dataclass(frozen=True)
class ThresholdResult:
    """Greedy output: threshold bits and the witness factorization."""

    mu: int
    lam: int
    v_exact: LogInterval
    v_bits: int
    items: tuple[tuple[int, int], ...]  # (p, max multiplicity), increasing p
    w_consumed: LogInterval

    def modulus(self) -> int:
        n = 1
        for p, r in self.items:
            n *= p**r
        return n


_LOG2_CACHE: dict[tuple[int, int], LogInterval] = {}


def _log2_int(n: int, precision: int) -> LogInterval:
    key = (n, precision)
    got = _LOG2_CACHE.get(key)
    if got is None:
        got = _LOG2_CACHE[key] = log2_interval(Fraction(n), precision)
    return got


@lru_cache(maxsize=None)
def marginal_weight(
    p: int, r: int, mu: int, precision: int = DEFAULT_PRECISION
) -> LogInterval:
    """Enclosure of log2(I_{1/p}(r-1, mu) / I_{1/p}(r, mu)).

    The quotient is formed exactly in rational arithmetic and enclosed by
    a single log, not as a difference of two log enclosures.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if mu < 1:
        raise ValueError("mu must be positive")
    # I(r-1)/I(r) = p * N(r-1) / N(r) with shared power-of-p denominators.
    quotient = Fraction(p * _tail_numerator(p, r - 1, mu), _tail_numerator(p, r, mu))
    if quotient == p:
        return _log2_int(p, precision)
    return log2_interval(quotient, precision)


@lru_cache(maxsize=None)
def _total_weight_log(p: int, r: int, mu: int, precision: int) -> LogInterval:
    # -log2 I_{1/p}(r, mu), one log of the exact reciprocal.
    return log2_interval(1 / beta_tail(p, r, mu), precision)


def marginal_density(
    p: int, r: int, mu: int, precision: int = DEFAULT_PRECISION
) -> LogInterval:
    """Enclosure of log2(p) / marginal_weight(p, r, mu); exactly 1 when the
    weight equals the value (the single-variable case)."""
    return _log2_int(p, precision).ratio(marginal_weight(p, r, mu, precision))


def make_item(p: int, r: int, mu: int, precision: int = DEFAULT_PRECISION) -> Item:
    dval = _log2_int(p, precision)
    dweight = marginal_weight(p, r, mu, precision)
    return Item(p=p, r=r, dval=dval, dweight=dweight, density=dval.ratio(dweight))


def _greedy_run(
    mu: int, lam: int, precision: int
) -> tuple[ThresholdResult, list[Item]]:
    """Run the greedy loop, restarting at doubled precision when the pop
    order cannot be certified.  Returns the result and the pop sequence."""
    prec = precision
    for _ in range(_MAX_ESCALATIONS + 1):
        outcome = _greedy_attempt(mu, lam, prec)
        if not isinstance(outcome, _Ambiguous):
            result, pops = outcome
            return result, pops
        prec *= 2
    a, b = outcome.first, outcome.second
    raise PrecisionExhausted(
        f"density order of items (p={a.p}, r={a.r}) and (p={b.p}, r={b.r}) "
        f"for mu={mu} is still ambiguous after {_MAX_ESCALATIONS} precision "
        f"escalations (reached {prec // 2} bits)"
    )


@dataclass
class _Ambiguous:
    first: Item
    second: Item


def _greedy_attempt(mu, lam, prec):
    heap: list[tuple[Fraction, int, int, Item]] = []
    max_halfwidth = Fraction(0)

    def push(p: int, r: int) -> None:
        nonlocal max_halfwidth
        item = make_item(p, r, mu, prec)
        half = item.density.width / 2
        if half > max_halfwidth:
            max_halfwidth = half
        heapq.heappush(heap, (-item.density.midpoint, p, r, item))

    push(2, 1)
    pmax = 2
    v_lo = v_hi = Fraction(0)
    w_lo = w_hi = Fraction(0)
    multiplicity: dict[int, int] = {}
    pops: list[Item] = []

    while w_lo < lam:
        _, p, r, item = heapq.heappop(heap)
        if heap:
            # Certify item is the true maximum: every remaining enclosure's
            # upper end is at most (largest midpoint) + max halfwidth.
            next_mid = -heap[0][0]
            if item.density.lo < next_mid + max_halfwidth:
                return _Ambiguous(item, heap[0][3])
        pops.append(item)
        multiplicity[p] = r
        v_lo += item.dval.lo
        v_hi += item.dval.hi
        w_lo += item.dweight.lo
        w_hi += item.dweight.hi
        push(p, r + 1)
        if p == pmax:
            pmax = next_prime(p)
            push(pmax, 1)

    result = ThresholdResult(
        mu=mu,
        lam=lam,
        v_exact=LogInterval(v_lo, v_hi, prec),
        v_bits=math.ceil(v_hi),
        items=tuple(sorted(multiplicity.items())),
        w_consumed=LogInterval(w_lo, w_hi, prec),
    )
    return result, pops


def greedy_threshold(
    mu: int, lam: int, precision: int = DEFAULT_PRECISION
) -> ThresholdResult:
    """Upper bound on the threshold bit count for (mu, lam).

    Any modulus N with at least ``v_bits`` bits drives the tail product
    below 2^-lam.  The single-variable case is exact: the tail product is
    1/N, so the threshold is exactly lam bits.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    if lam < 1:
        raise ValueError("lambda must be positive")
    if precision < 8:
        raise ValueError("precision below 8 bits is not useful")
    if mu == 1:
        exact = LogInterval.point(lam, precision)
        return ThresholdResult(
            mu=1,
            lam=lam,
            v_exact=exact,
            v_bits=lam,
            items=((2, lam),),
            w_consumed=exact,
        )
    result, _ = _greedy_run(mu, lam, precision)
    return result


def analytic_threshold(mu: int, lam: int, epsilon=None) -> Fraction:
    """Closed-form threshold bit bound 4*mu^(2+eps) + (1 + 1/eps)*lam,
    evaluated with upward rounding.

    ``epsilon`` defaults to 1/log2(mu), the choice that collapses the
    bound to 8*mu^2 + (1 + log2(mu))*lam.  Values certifiably below that
    default are rejected: the bound only holds for mu^epsilon >= 2.
    """
    if mu < 2:
        raise ValueError("analytic bound requires mu >= 2")
    if lam < 1:
        raise ValueError("lambda must be positive")
    l2mu = _log2_int(mu, DEFAULT_PRECISION)
    if epsilon is None:
        return 8 * mu * mu + (1 + l2mu.hi) * lam
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    # Requirement eps >= 1/log2(mu); tolerate one double-precision ulp so
    # the boundary value survives a round trip through float.
    if eps * l2mu.hi < 1 - Fraction(1, 1 << 40):
        raise ValueError(f"epsilon={epsilon} is below 1/log2({mu})")
    if eps.denominator == 1:
        power = Fraction(mu) ** (2 + eps)
    else:
        power = exp2_upper((2 + eps) * l2mu.hi, DEFAULT_PRECISION)
    return 4 * power + (1 + 1 / eps) * lam


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of the density monotonicity scan."""

    mu: int
    p_max: int
    r_max: int
    applicable: bool
    comparisons: int
    violation: str | None

    @property
    def ok(self) -> bool:
        return self.violation is None


def check_density_monotonicity(
    mu: int, p_max: int, r_max: int, precision: int = DEFAULT_PRECISION
) -> MonotonicityReport:
    """Verify density(p, r) strictly decreases in r (exact integer
    comparisons of I(r)^2 > I(r-1) I(r+1)) and density(p, 1) never
    increases across consecutive primes up to p_max (interval comparison
    with precision escalation).

    With one variable the density is constant 1 and the scan reports
    inapplicable.
    """
    if mu == 1:
        return MonotonicityReport(mu, p_max, r_max, False, 0, None)
    if mu < 1:
        raise ValueError("mu must be positive")
    primes = primes_below(p_max + 1)
    comparisons = 0

    for p in primes:
        nums = tail_numerator_range(p, mu, r_max)
        for r in range(1, r_max):
            comparisons += 1
            # Shared denominators p^(mu+r-1) make this I(r)^2 vs I(r-1)I(r+1).
            if nums[r] * nums[r] <= nums[r - 1] * nums[r + 1]:
                return MonotonicityReport(
                    mu, p_max, r_max, True, comparisons,
                    f"density(p={p}, r) fails to decrease at r={r}",
                )

    prev_p = None
    prev_density = None
    for p in primes:
        density = marginal_density(p, 1, mu, precision)
        if prev_density is not None:
            comparisons += 1
            verdict = _certify_not_below(prev_density, density, p=prev_p, q=p,
                                         mu=mu, precision=precision)
            if verdict is not None:
                return MonotonicityReport(mu, p_max, r_max, True, comparisons, verdict)
        prev_p, prev_density = p, density
    return MonotonicityReport(mu, p_max, r_max, True, comparisons, None)


def _certify_not_below(a: LogInterval, b: LogInterval, p, q, mu, precision):
    # Certify a >= b, escalating precision while the enclosures overlap.
    prec = precision
    for _ in range(_MAX_ESCALATIONS + 1):
        if a.lo >= b.hi:
            return None
        if a.hi < b.lo:
            return f"density({p}, 1) < density({q}, 1) for mu={mu}"
        prec *= 2
        a = marginal_density(p, 1, mu, prec)
        b = marginal_density(q, 1, mu, prec)
    return (
        f"density({p}, 1) and density({q}, 1) for mu={mu} unresolved at {prec} bits"
    )


def feasible_value(
    items, mu: int, precision: int = DEFAULT_PRECISION
) -> tuple[LogInterval, LogInterval]:
    """Objective and constraint enclosures for a candidate factorization.

    Returns (sum r*log2 p, sum -log2 I_{1/p}(r, mu)) for the modulus
    prod p^r.  Primes must be distinct and the multiplicities positive.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    seen: set[int] = set()
    value = LogInterval.zero(precision)
    weight = LogInterval.zero(precision)
    for p, r in items:
        if p in seen:
            raise ValueError(f"prime {p} appears more than once")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError("multiplicities must be positive")
        seen.add(p)
        value = value + _log2_int(p, precision).scaled(r)
        weight = weight + _total_weight_log(p, r, mu, precision)
    return value, weight
