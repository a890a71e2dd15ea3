import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lcsz.betafn import beta_tail
from lcsz.oracle import (
    Factorization,
    MultilinearPoly,
    ScaleError,
    count_zeros,
    exhaustive_lcsz_check,
    factorize,
    is_coprime_poly,
    lcsz_bound,
    monte_carlo_prob,
    product_poly_prob,
    _product_prob_classes,
)

X1X2 = MultilinearPoly(2, (0, 0, 0, 1))


def test_poly_validation():
    with pytest.raises(ValueError):
        MultilinearPoly(2, (1, 2, 3))
    with pytest.raises(ValueError):
        MultilinearPoly(0, (1,))
    assert MultilinearPoly.product_poly(3).coeffs[-1] == 1


def test_content():
    assert MultilinearPoly(2, (4, 0, 0, 2)).content() == 2
    assert MultilinearPoly(1, (0, 0)).content() == 0
    assert MultilinearPoly(2, (3, 0, 2, 0)).content() == 1


def test_factorize_examples():
    assert factorize(4).pairs == ((2, 2),)
    assert factorize(12).pairs == ((2, 2), (3, 1))
    assert factorize(1134).pairs == ((2, 1), (3, 4), (7, 1))
    assert factorize(1134).modulus() == 1134
    with pytest.raises(ValueError):
        factorize(1)


def test_factorization_type_validation():
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))  # not increasing
    with pytest.raises(ValueError):
        Factorization(((2, 0),))


def test_factorize_against_sympy():
    for n in list(range(2, 500)) + [2**40 + 1, 3**20, 10**12 + 39]:
        assert factorize(n).pairs == tuple(sorted(sympy.factorint(n).items()))


def test_is_coprime_poly():
    assert is_coprime_poly(MultilinearPoly(2, (4, 0, 0, 2)), 4) is False
    assert is_coprime_poly(MultilinearPoly(1, (0, 1)), 6) is True
    assert is_coprime_poly(MultilinearPoly(2, (0, 3, 2, 0)), 6) is True
    assert is_coprime_poly(MultilinearPoly(1, (0, 0)), 5) is False


def test_count_zeros_examples():
    assert count_zeros(X1X2, 4, 4) == 8
    assert count_zeros(MultilinearPoly(1, (0, 1)), 5, 5) == 1
    assert count_zeros(MultilinearPoly(1, (1, 2)), 4, 4) == 0


def test_count_zeros_matches_pointwise_evaluation():
    f = MultilinearPoly(3, (1, 4, 2, 0, 3, 0, 5, 1))
    n, m = 6, 5
    brute = sum(
        1
        for point in itertools.product(range(m), repeat=3)
        if f.evaluate(point, n) == 0
    )
    assert count_zeros(f, n, m) == brute


@given(
    coeffs=st.lists(st.integers(min_value=-9, max_value=9), min_size=4, max_size=4),
    n=st.integers(min_value=2, max_value=12),
    m=st.integers(min_value=2, max_value=9),
)
@settings(max_examples=80)
def test_count_zeros_random_vs_brute(coeffs, n, m):
    f = MultilinearPoly(2, tuple(coeffs))
    brute = sum(
        1
        for point in itertools.product(range(m), repeat=2)
        if f.evaluate(point, n) == 0
    )
    assert count_zeros(f, n, m) == brute


def test_count_zeros_variable_permutation_invariance():
    # relabeling variables permutes coefficient indices bitwise
    f = MultilinearPoly(3, (2, 7, 1, 0, 5, 3, 0, 4))
    perm = (2, 0, 1)
    relabeled = [0] * 8
    for idx, c in enumerate(f.coeffs):
        new_idx = 0
        for bit in range(3):
            if idx >> bit & 1:
                new_idx |= 1 << perm[bit]
        relabeled[new_idx] = c
    g = MultilinearPoly(3, tuple(relabeled))
    for n, m in ((9, 4), (6, 3), (11, 5)):
        assert count_zeros(f, n, m) == count_zeros(g, n, m)


def test_count_zeros_scale_refusal():
    with pytest.raises(ScaleError):
        count_zeros(MultilinearPoly(2, (0, 0, 0, 1)), 4, 100_000)
    with pytest.raises(ScaleError):
        count_zeros(X1X2, 1 << 33, 4)
    with pytest.raises(ValueError):
        count_zeros(X1X2, 4, 1)


def test_univariate_coprime_linear_has_at_most_one_root():
    for n in range(2, 101):
        for b in range(n):
            for c in range(n):
                f = MultilinearPoly(1, (c, b))
                if not is_coprime_poly(f, n):
                    continue
                assert count_zeros(f, n, n) <= 1


def test_lcsz_bound_examples():
    # prime modulus: mu/m + 1 - (1 - 1/p)^mu
    assert lcsz_bound(7, 10, 3) == Fraction(3, 10) + 1 - Fraction(6, 7) ** 3
    assert lcsz_bound(4, 4, 2) == 1
    # single variable: 1/N + 1/m
    for n in (6, 12, 30):
        assert lcsz_bound(n, 9, 1) == Fraction(1, n) + Fraction(1, 9)


def test_product_poly_prob_examples():
    assert product_poly_prob(4, 2) == Fraction(1, 2)
    assert product_poly_prob(2, 1) == Fraction(1, 2)
    expected = beta_tail(2, 1, 2) * beta_tail(3, 1, 2)
    assert product_poly_prob(6, 2) == expected


def test_tightness_identity_grid():
    for n in range(2, 31):
        for mu in (1, 2, 3):
            product = Fraction(1)
            for p, r in factorize(n).pairs:
                product *= beta_tail(p, r, mu)
            assert product_poly_prob(n, mu) == product


def test_divisor_class_path_matches_exhaustive():
    for n in (4, 6, 8, 9, 12, 18, 30):
        for mu in (1, 2, 3):
            zeros = count_zeros(MultilinearPoly.product_poly(mu), n, n)
            assert _product_prob_classes(n, mu) == Fraction(zeros, n**mu)
    # the class path also works far beyond enumeration scale
    big = 2**20 * 3**10
    assert 0 < _product_prob_classes(big, 4) < 1


def test_exhaustive_check_n4():
    report = exhaustive_lcsz_check(2, 4, [4])
    assert report.ok
    assert report.polys_checked == 240  # 4^4 minus the 16 all-even vectors
    assert report.max_ratio(4) == Fraction(1, 2)
    assert report.maximizer(4) == (0, 0, 0, 1)  # the product polynomial


def test_exhaustive_check_univariate():
    report = exhaustive_lcsz_check(1, 5, [5])
    assert report.ok
    assert report.max_ratio(5) == Fraction(1, 5)


def test_exhaustive_check_n6_all_m():
    report = exhaustive_lcsz_check(2, 6, range(2, 13))
    assert report.ok


def test_exhaustive_check_univariate_sweep():
    for n in range(2, 31):
        report = exhaustive_lcsz_check(1, n, range(2, 31))
        assert report.ok, (n, report.violations[:3])


def test_exhaustive_check_scale_refusal():
    with pytest.raises(ScaleError):
        exhaustive_lcsz_check(3, 16, [4])


def test_monte_carlo_deterministic_and_exact_on_rootless_poly():
    f = MultilinearPoly(1, (1, 2))  # odd values only, never 0 mod 4
    est = monte_carlo_prob(f, 4, 4, 2000, seed=5)
    assert est.hits == 0 and est.estimate == 0
    again = monte_carlo_prob(f, 4, 4, 2000, seed=5)
    assert est == again


def test_monte_carlo_matches_known_probabilities():
    est = monte_carlo_prob(X1X2, 4, 4, 100_000, seed=1)
    assert abs(float(est.estimate) - 0.5) <= est.half_width

    est = monte_carlo_prob(MultilinearPoly(1, (0, 1)), 5, 5, 100_000, seed=2)
    assert abs(float(est.estimate) - 0.2) <= est.half_width


def test_monte_carlo_coverage():
    # the reported 99% half-width should cover the exact probability for
    # at least 99% of seeds
    instances = [
        (X1X2, 4, 4),
        (MultilinearPoly(2, (1, 1, 1, 0)), 6, 6),
        (MultilinearPoly(1, (3, 1)), 10, 10),
    ]
    for f, n, m in instances:
        exact = float(Fraction(count_zeros(f, n, m), m**f.mu))
        covered = 0
        for seed in range(200):
            est = monte_carlo_prob(f, n, m, 2000, seed)
            if abs(float(est.estimate) - exact) <= est.half_width:
                covered += 1
        assert covered >= 198, (f, n, m, covered)


def test_monte_carlo_validation():
    with pytest.raises(ValueError):
        monte_carlo_prob(X1X2, 4, 4, 0, seed=0)
