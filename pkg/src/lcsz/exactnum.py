"""Exact numeric substrate: rationals, binomials, and directed-rounding
base-2 logarithm enclosures.

Everything in this module is exact integer or rational arithmetic.
Logarithms are the only inexact quantities anywhere in the package, and
they are returned as two-sided enclosures (:class:`LogInterval`) whose
endpoints are dyadic rationals with at most ``precision`` fractional
bits.  Enclosures are derived from exact rationals only, never from
floats, so their soundness does not depend on libm or the hardware
rounding mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

DEFAULT_PRECISION = 128

# Digits extracted beyond the requested precision before outward rounding,
# and extra working bits on top of that.  One shift-and-square step at W
# working bits loses at most ~2 ulps and at most quadruples the absolute
# error, so W = 2L + 64 keeps the final drift below 2^-(L+60) after L steps.
_EXTRA_DIGITS = 64
_EXTRA_WORK = 64


def binomial(n: int, k: int) -> int:
    """C(n, k) exactly; zero when k > n."""
    return math.comb(n, k)


def rational_pow(q: Rational, e: int) -> Rational:
    """Exact q**e for integer e; rejects 0 raised to a negative power."""
    q = Fraction(q)
    if e < 0 and q == 0:
        raise ValueError("zero base with negative exponent")
    return q**e


@dataclass(frozen=True)
class LogInterval:
    """Directed enclosure [lo, hi] of a real value, usually a base-2 log.

    Endpoints produced by :func:`log2_interval` are dyadic with at most
    ``precision`` fractional bits; derived quantities (sums, scalings,
    ratios) keep exact rational endpoints.  The enclosed value is always
    inside [lo, hi].
    """

    lo: Fraction
    hi: Fraction
    precision: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, value, precision: int = DEFAULT_PRECISION) -> "LogInterval":
        v = Fraction(value)
        return cls(v, v, precision)

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION) -> "LogInterval":
        return cls.point(0, precision)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def encloses(self, other: "LogInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "LogInterval") -> "LogInterval":
        return LogInterval(
            self.lo + other.lo,
            self.hi + other.hi,
            min(self.precision, other.precision),
        )

    def scaled(self, c: int) -> "LogInterval":
        """Enclosure of c times the value, for a nonnegative integer c."""
        if c < 0:
            raise ValueError("scaled() expects a nonnegative integer")
        return LogInterval(self.lo * c, self.hi * c, self.precision)

    def widened(self, slack) -> "LogInterval":
        s = Fraction(slack)
        return LogInterval(self.lo - s, self.hi + s, self.precision)

    def ratio(self, other: "LogInterval") -> "LogInterval":
        """Enclosure of self/other for a strictly positive denominator.

        Identical numerator and denominator enclosures denote the same
        underlying value, so the quotient collapses to exactly one.
        """
        if other.lo <= 0:
            raise ValueError(
                "ratio denominator enclosure touches zero; increase precision"
            )
        prec = min(self.precision, other.precision)
        if self.lo == other.lo and self.hi == other.hi:
            return LogInterval.point(1, prec)
        return LogInterval(self.lo / other.hi, self.hi / other.lo, prec)


def _floor_log2(num: int, den: int) -> int:
    # floor(log2(num/den)); num/den lies in (2^(e0-1), 2^(e0+1)) for
    # e0 = bit_length difference, so one comparison settles it.
    e0 = num.bit_length() - den.bit_length()
    if e0 >= 0:
        return e0 if num >= (den << e0) else e0 - 1
    return e0 if (num << -e0) >= den else e0 - 1


def log2_interval(q, precision: int = DEFAULT_PRECISION) -> LogInterval:
    """Enclosure of log2(q) for a positive rational q.

    Exact powers of two yield a width-zero interval.  Otherwise the
    fractional part of the log is extracted digit by digit: the mantissa
    m in [1, 2) is tracked as a floor-rounded integer x ~ m * 2^W and
    repeatedly squared, emitting binary digit 1 (and halving) whenever
    x >= 2^(W+1).  Because x never overestimates the true residual, the
    emitted digit string D is a certified lower bound of log2(m); the
    working-precision error analysis bounds the residual below 4, so
    D + 2^-(L-1) is a certified upper bound.  Both endpoints are then
    rounded outward to ``precision`` fractional bits.

    Deterministic for fixed (q, precision).
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log2 requires a positive argument")
    if precision < 1:
        raise ValueError("precision must be at least 1 bit")
    num, den = q.numerator, q.denominator
    e = _floor_log2(num, den)
    # mantissa m = q / 2^e in [1, 2)
    if e >= 0:
        mnum, mden = num, den << e
    else:
        mnum, mden = num << -e, den
    if mnum == mden:
        return LogInterval(Fraction(e), Fraction(e), precision)

    L = precision + _EXTRA_DIGITS
    W = 2 * L + _EXTRA_WORK
    x = (mnum << W) // mden  # floor(m * 2^W), in [2^W, 2^(W+1))
    top = 1 << (W + 1)
    digits = 0
    for _ in range(L):
        x = (x * x) >> W
        digits <<= 1
        if x >= top:
            digits |= 1
            x >>= 1
    # log2(m) lies in [digits, digits + 2] at scale 2^-L; round outward.
    frac_lo = digits >> _EXTRA_DIGITS
    frac_hi = -((-(digits + 2)) >> _EXTRA_DIGITS)
    scale = 1 << precision
    return LogInterval(
        e + Fraction(frac_lo, scale), e + Fraction(frac_hi, scale), precision
    )


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def exp2_upper(t, precision: int = DEFAULT_PRECISION) -> Fraction:
    """Certified upper bound on 2**t for a nonnegative rational t.

    Uses a square-root ladder over the fractional bits of t with every
    step rounded up, so the result never undershoots.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError("exp2_upper expects a nonnegative exponent")
    n = math.floor(t)
    frac = t - n
    L = precision
    W = precision + _EXTRA_WORK
    bits = -((-frac.numerator << L) // frac.denominator)  # ceil(frac * 2^L)
    if bits >= (1 << L):
        n += 1
        bits = 0
    acc = 1 << W
    cur = 2 << W  # 2^(2^0), exact at scale 2^W
    for i in range(1, L + 1):
        cur = _ceil_sqrt(cur << W)  # upper bound on 2^(2^-i) at scale 2^W
        if (bits >> (L - i)) & 1:
            acc = -((-acc * cur) >> W)  # ceil of the product
    return Fraction(acc, 1 << W) * Fraction(2) ** n
