"""Ground-truth verification of the zero-probability bound by exhaustive
root counting over integer boxes, plus Monte Carlo sampling for instances
beyond enumeration scale.

The headline fact being checked: for a mu-linear integer polynomial f
coprime to N and x drawn uniformly from [0, m)^mu,

    P[f(x) = 0 mod N]  <=  mu/m + prod_{(p,r) | N} I_{1/p}(r, mu).

The product polynomial X_1 * ... * X_mu at m = N attains the product term
exactly, which pins the bound's tightness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .betafn import beta_tail
from .primes import factor_pairs

MAX_BOX_POINTS = 10**8
MAX_MODULUS = 1 << 32
MAX_ENUM_VECTORS = 10**6


class ScaleError(ValueError):
    """Raised when a request exceeds exhaustive-verification scale."""

    def __init__(self, message: str, estimate: int):
        super().__init__(f"{message} (work estimate: {estimate})")
        self.estimate = estimate


@dataclass(frozen=True)
class MultilinearPoly:
    """Integer polynomial of degree at most one in each of mu variables.

    ``coeffs[b]`` is the coefficient of the monomial prod_{i: bit i of b
    set} X_{i+1}; the vector has exactly 2^mu entries.
    """

    mu: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.mu < 1:
            raise ValueError("mu must be positive")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != 1 << self.mu:
            raise ValueError(
                f"expected {1 << self.mu} coefficients, got {len(self.coeffs)}"
            )

    def content(self) -> int:
        """gcd of all coefficients; 0 for the zero polynomial."""
        return math.gcd(*self.coeffs)

    def evaluate(self, point, modulus: int | None = None) -> int:
        """f(point), optionally reduced mod ``modulus``."""
        if len(point) != self.mu:
            raise ValueError(f"expected {self.mu} coordinates")
        vals = list(self.coeffs)
        for x in reversed(point):
            half = len(vals) // 2
            if modulus is None:
                vals = [vals[i] + x * vals[half + i] for i in range(half)]
            else:
                vals = [(vals[i] + x * vals[half + i]) % modulus for i in range(half)]
        return vals[0]

    @classmethod
    def product_poly(cls, mu: int) -> "MultilinearPoly":
        """X_1 * X_2 * ... * X_mu."""
        coeffs = [0] * (1 << mu)
        coeffs[-1] = 1
        return cls(mu, tuple(coeffs))


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (p, multiplicity) pairs with increasing p."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(tuple(pr) for pr in self.pairs))
        last = 1
        for p, r in self.pairs:
            if p <= last or r < 1:
                raise ValueError("pairs must have strictly increasing primes")
            last = p

    def modulus(self) -> int:
        n = 1
        for p, r in self.pairs:
            n *= p**r
        return n


def factorize(n: int) -> Factorization:
    """Complete prime factorization of 2 <= n < 2^64."""
    return Factorization(tuple(factor_pairs(n)))


def is_coprime_poly(f: MultilinearPoly, n: int) -> bool:
    """True when gcd(content(f), n) = 1."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    return math.gcd(f.content(), n) == 1


def count_zeros(f: MultilinearPoly, n: int, m: int) -> int:
    """Exact number of points x in [0, m)^mu with f(x) = 0 mod n.

    Walks the box in odometer order, specializing one variable per level
    and updating coefficient vectors incrementally, so the cost per point
    is a constant number of modular additions.
    """
    if not 2 <= n <= MAX_MODULUS:
        raise ScaleError(f"modulus {n} outside [2, 2^32]", n)
    if m <= 1:
        raise ValueError("box size m must exceed 1")
    points = m**f.mu
    if points > MAX_BOX_POINTS:
        raise ScaleError(f"box [0,{m})^{f.mu} too large to enumerate", points)
    return _count_rec([c % n for c in f.coeffs], n, m)


def _count_rec(coeffs: list[int], n: int, m: int) -> int:
    if len(coeffs) == 2:
        a, b = coeffs
        count = 0
        v = a
        for _ in range(m):
            if v == 0:
                count += 1
            v += b
            if v >= n:
                v -= n  # b < n, so one subtraction renormalizes
        return count
    half = len(coeffs) // 2
    low = coeffs[:half]
    high = coeffs[half:]
    total = 0
    cur = list(low)
    for step in range(m):
        total += _count_rec(cur, n, m)
        if step + 1 < m:
            cur = [(a + b) % n for a, b in zip(cur, high)]
    return total


def lcsz_bound(n: int, m: int, mu: int) -> Fraction:
    """mu/m plus the tail product over the prime powers of n, exactly."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if m <= 1:
        raise ValueError("box size m must exceed 1")
    if mu < 1:
        raise ValueError("mu must be positive")
    product = Fraction(1)
    for p, r in factorize(n).pairs:
        product *= beta_tail(p, r, mu)
    return Fraction(mu, m) + product


def product_poly_prob(n: int, mu: int) -> Fraction:
    """P[X_1 * ... * X_mu = 0 mod n] over [0, n)^mu, exactly.

    Uses exhaustive counting inside the box-size limit and an exact
    per-prime-power divisor-class convolution beyond it.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if mu < 1:
        raise ValueError("mu must be positive")
    if n**mu <= MAX_BOX_POINTS and n <= MAX_MODULUS:
        zeros = count_zeros(MultilinearPoly.product_poly(mu), n, n)
        return Fraction(zeros, n**mu)
    return _product_prob_classes(n, mu)


def _product_prob_classes(n: int, mu: int) -> Fraction:
    # P[sum of capped p-adic valuations >= r], independently per prime
    # power by CRT.  No binomial identities involved.
    result = Fraction(1)
    for p, r in factor_pairs(n):
        block = p**r
        # counts[k] = #{x in [0, p^r) with min(v_p(x), r) = k}
        counts = [block // p**k - block // p ** (k + 1) for k in range(r)]
        counts.append(1)  # x = 0
        dp = [0] * (r + 1)
        dp[0] = 1
        for _ in range(mu):
            new = [0] * (r + 1)
            for s, ways in enumerate(dp):
                if ways:
                    for k, cnt in enumerate(counts):
                        new[min(s + k, r)] += ways * cnt
            dp = new
        result *= Fraction(dp[r], block**mu)
    return result


@dataclass(frozen=True)
class LcszCheckReport:
    """Result of exhausting all coprime coefficient vectors mod n."""

    mu: int
    modulus: int
    m_values: tuple[int, ...]
    polys_checked: int
    violations: tuple[str, ...]
    max_by_m: dict[int, tuple[Fraction, tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def max_ratio(self, m: int) -> Fraction:
        return self.max_by_m[m][0]

    def maximizer(self, m: int) -> tuple[int, ...]:
        return self.max_by_m[m][1]


def exhaustive_lcsz_check(mu: int, n: int, m_range) -> LcszCheckReport:
    """Check the probability bound for every coprime coefficient vector in
    [0, n)^(2^mu) and every box size in m_range.

    Coefficients act modulo n, so the enumeration is exhaustive up to
    equivalence.  Non-coprime vectors (including the zero polynomial) are
    skipped; the bound does not apply to them.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    m_values = tuple(m_range)
    if not m_values or any(m <= 1 for m in m_values):
        raise ValueError("box sizes must all exceed 1")
    width = 1 << mu
    vectors = n**width
    if vectors > MAX_ENUM_VECTORS:
        raise ScaleError(
            f"{vectors} coefficient vectors for mu={mu}, n={n}", vectors
        )
    bounds = {m: lcsz_bound(n, m, mu) for m in m_values}
    boxes = {m: m**mu for m in m_values}
    checked = 0
    violations: list[str] = []
    max_by_m: dict[int, tuple[Fraction, tuple[int, ...]]] = {}

    coeffs = [0] * width
    while True:
        if math.gcd(math.gcd(*coeffs), n) == 1:
            checked += 1
            for m in m_values:
                zeros = _count_rec([c for c in coeffs], n, m)
                ratio = Fraction(zeros, boxes[m])
                if ratio > bounds[m]:
                    violations.append(
                        f"coeffs={tuple(coeffs)} m={m}: {ratio} > {bounds[m]}"
                    )
                best = max_by_m.get(m)
                if best is None or ratio > best[0]:
                    max_by_m[m] = (ratio, tuple(coeffs))
        # odometer increment over [0, n)^width
        for i in range(width):
            coeffs[i] += 1
            if coeffs[i] < n:
                break
            coeffs[i] = 0
        else:
            break

    return LcszCheckReport(
        mu=mu,
        modulus=n,
        m_values=m_values,
        polys_checked=checked,
        violations=tuple(violations),
        max_by_m=max_by_m,
    )


# SplitMix64 generator; constants from the reference design.  The state
# advances by the odd gamma each draw, so distinct seeds produce distinct
# orbits rather than shifted copies of one stream.
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB
_U64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _SM_MIX1) & _U64
    z = ((z ^ (z >> 27)) * _SM_MIX2) & _U64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sampled zero-probability estimate with a 99% confidence half-width."""

    hits: int
    samples: int
    estimate: Fraction
    half_width: float


# Two-sided 99% normal quantile.
_Z99 = 2.5758293035489004


def _wilson_cc_half_width(hits: int, n: int) -> float:
    # Continuity-corrected Wilson score interval at 99%, symmetrized
    # around hits/n.  Conservative: its coverage stays at or above the
    # nominal level for essentially all (n, p).
    z = _Z99
    p = hits / n
    denom = 2 * (n + z * z)
    if hits == 0:
        lower = 0.0
    else:
        disc = z * z - 2 - 1 / n + 4 * p * (n * (1 - p) + 1)
        lower = max(0.0, (2 * n * p + z * z - 1 - z * math.sqrt(disc)) / denom)
    if hits == n:
        upper = 1.0
    else:
        disc = z * z + 2 - 1 / n + 4 * p * (n * (1 - p) - 1)
        upper = min(1.0, (2 * n * p + z * z + 1 + z * math.sqrt(disc)) / denom)
    return max(p - lower, upper - p)


def monte_carlo_prob(
    f: MultilinearPoly, n: int, m: int, samples: int, seed: int
) -> MonteCarloEstimate:
    """Estimate P[f(x) = 0 mod n] over [0, m)^mu by seeded sampling.

    The pseudorandom stream is SplitMix64 seeded with ``seed``;
    coordinates are drawn by 64-bit rejection sampling, so the point
    distribution is exactly uniform and the estimate is unbiased.  The
    reported half-width is the symmetrized 99% continuity-corrected
    Wilson score interval.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if n < 2 or m <= 1:
        raise ValueError("need modulus >= 2 and box size > 1")
    bound = (1 << 64) - ((1 << 64) % m)
    state = seed & _U64
    hits = 0
    point = [0] * f.mu
    coeffs = [c % n for c in f.coeffs]
    reduced = MultilinearPoly(f.mu, tuple(coeffs))
    for _ in range(samples):
        for i in range(f.mu):
            while True:
                state = (state + _SM_GAMMA) & _U64
                word = _mix64(state)
                if word < bound:
                    point[i] = word % m
                    break
        if reduced.evaluate(point, n) == 0:
            hits += 1
    return MonteCarloEstimate(
        hits=hits,
        samples=samples,
        estimate=Fraction(hits, samples),
        half_width=_wilson_cc_half_width(hits, samples),
    )
