"""Exact evaluation of the regularized incomplete beta function at integer
parameters, its closed-form bounds, and an independent negative-binomial
convolution oracle.

For rational eps in (0, 1) and integers k >= 0, mu >= 1, the tail value

    I_eps(k, mu) = 1 - (1 - eps)^mu * sum_{j<k} C(mu+j-1, j) eps^j

is the probability that a sum of mu i.i.d. geometric variables, each with
P[Z >= t] = eps^t, reaches at least k.  The complement form terminates
exactly in rational arithmetic.  ``negbin_ccdf_oracle`` computes the same
probability by direct pmf convolution, sharing no identity with the series
above, and is the cross-check used by the verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .primes import is_prime

Rational = Fraction


@dataclass(frozen=True)
class BetaParams:
    """Arguments of the tail value I_eps(k, mu)."""

    eps: Fraction
    k: int
    mu: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie strictly between 0 and 1")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.mu < 1:
            raise ValueError("mu must be positive")


def reg_beta(params: BetaParams) -> Rational:
    """I_eps(k, mu) as an exact rational in [0, 1]."""
    eps, k, mu = params.eps, params.k, params.mu
    if k == 0:
        return Fraction(1)
    total = Fraction(1)  # j = 0 term: C(mu-1, 0) eps^0
    c = 1
    epow = Fraction(1)
    for j in range(1, k):
        c = c * (mu + j - 1) // j
        epow *= eps
        total += c * epow
    return 1 - (1 - eps) ** mu * total


@lru_cache(maxsize=None)
def _tail_numerator(p: int, r: int, mu: int) -> int:
    """Integer N with I_{1/p}(r, mu) = N / p^(mu+r-1).

    N = p^(mu+r-1) - (p-1)^mu * T where T = sum_{j<r} C(mu+j-1, j) p^(r-1-j).
    Shared power-of-p denominators make grid comparisons pure integer work.
    """
    t = 0
    c = 1
    ppow = p ** (r - 1) if r > 0 else 0
    for j in range(r):
        if j > 0:
            c = c * (mu + j - 1) // j
            ppow //= p
        t += c * ppow
    return p ** (mu + r - 1) - (p - 1) ** mu * t


def beta_tail(p: int, r: int, mu: int) -> Rational:
    """I_{1/p}(r, mu) for a prime power step, via the integer core.

    ``p`` is assumed prime; callers that accept untrusted moduli validate
    primality themselves.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if mu < 1:
        raise ValueError("mu must be positive")
    return Fraction(_tail_numerator(p, r, mu), p ** (mu + r - 1))


def tail_numerator_range(p: int, mu: int, r_max: int) -> list[int]:
    """[N(0), ..., N(r_max)] with I_{1/p}(r, mu) = N(r) / p^(mu+r-1).

    Incremental: T(r+1) = T(r)*p + C(mu+r-1, r), so the whole range costs
    O(r_max) big-integer operations instead of O(r_max^2).
    """
    nums = []
    t = 0
    c = 1
    q = (p - 1) ** mu
    ppow = p ** (mu - 1)
    for r in range(r_max + 1):
        nums.append(ppow - q * t)
        t = t * p + c
        c = c * (mu + r) // (r + 1)
        ppow *= p
    return nums


def negbin_ccdf_oracle(p: int, r: int, mu: int) -> Rational:
    """P[sum of mu geometrics >= r] by explicit pmf convolution.

    Each variable has P[Z >= t] = (1/p)^t, i.e. pmf (1-eps) eps^t with
    eps = 1/p.  The distribution of the sum is convolved mu times over
    support {0, ..., r-1} and the tail is 1 minus the retained mass.
    Independent of the binomial-series identity used by :func:`reg_beta`.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if mu < 1:
        raise ValueError("mu must be positive")
    if r == 0:
        return Fraction(1)
    eps = Fraction(1, p)
    pmf = [(1 - eps) * eps**t for t in range(r)]
    dp = [Fraction(0)] * r
    dp[0] = Fraction(1)
    for _ in range(mu):
        new = [Fraction(0)] * r
        for s in range(r):
            acc = Fraction(0)
            for t in range(s + 1):
                acc += dp[s - t] * pmf[t]
            new[s] = acc
        dp = new
    return 1 - sum(dp)


def corollary_bound(p: int, r: int, mu: int) -> Rational:
    """Piecewise closed-form upper bound on I_{1/p}(r, mu).

    Branches: r^mu / p^r when r >= 2*mu, (mu/p)^r when p >= 2*mu, else 1.
    When both conditions hold each branch is a valid bound, so the
    minimum of the two is returned.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if mu < 1:
        raise ValueError("mu must be positive")
    candidates = []
    if r >= 2 * mu:
        candidates.append(Fraction(r**mu, p**r))
    if p >= 2 * mu:
        candidates.append(Fraction(mu, p) ** r)
    return min(candidates) if candidates else Fraction(1)


def lemma1_bound_holds(params: BetaParams) -> bool | None:
    """Whether I_eps(k, mu) <= (eps*mu)^k; None when eps*mu > 1/2."""
    if params.eps * params.mu > Fraction(1, 2):
        return None
    return reg_beta(params) <= (params.eps * params.mu) ** params.k


def lemma2_bound_holds(params: BetaParams) -> bool | None:
    """Whether I_eps(k, mu) <= eps^k * k^mu; None outside k >= 2*mu, eps <= 1/2."""
    if params.k < 2 * params.mu or params.eps > Fraction(1, 2):
        return None
    return reg_beta(params) <= params.eps**params.k * params.k**params.mu
