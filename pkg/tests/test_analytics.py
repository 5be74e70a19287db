import math
from fractions import Fraction

import pytest

from tcm.analytics import (
    char_euler_product,
    char_sum_S,
    character_table,
    l1_from_class_number,
    landau_liminf_check,
    mertens_product,
    phi_bound_scan,
)
from tcm.ideal_arith import ideal_norm, phi_K, principal_ideal
from tcm.primes import EULER_GAMMA, factorize, primes_up_to
from tcm.quad_core import Splitting, kronecker


def test_mertens_single_factor():
    est = mertens_product(2)
    assert est.value == 0.5
    assert est.terms == 1


def test_mertens_small_exact_rational_oracle():
    exact = Fraction(1)
    for p in primes_up_to(10):
        exact *= Fraction(p - 1, p)
    assert exact == Fraction(8, 35)
    est = mertens_product(10)
    assert est.value == pytest.approx(float(exact), rel=1e-12)
    assert est.terms == 4


def test_mertens_asymptotic_at_million():
    est = mertens_product(10**6)
    scaled = est.value * math.exp(EULER_GAMMA) * math.log(10**6)
    assert 0.99 <= scaled <= 1.01
    assert est.terms == 78498


def test_char_product_examples():
    assert char_euler_product(-4, 2).value == 1.0
    est = char_euler_product(-4, 5)
    assert est.value == pytest.approx(16 / 15, rel=1e-12)


def test_char_product_small_exact_rational_oracle():
    for d in (-4, -7, -23):
        exact = Fraction(1)
        for p in primes_up_to(50):
            exact *= Fraction(p - kronecker(d, p), p)
        assert char_euler_product(d, 50).value == pytest.approx(float(exact), rel=1e-12)


def test_char_product_converges_to_inverse_l1():
    est = char_euler_product(-163, 10**4)
    l1 = l1_from_class_number(-163)
    assert abs(1.0 / est.value - l1) / l1 < 0.10


def test_l1_examples():
    assert l1_from_class_number(-4) == pytest.approx(math.pi / 4, rel=1e-15)
    assert l1_from_class_number(-3) == pytest.approx(2 * math.pi / (6 * math.sqrt(3)), rel=1e-15)
    assert l1_from_class_number(-23) == pytest.approx(3 * math.pi / math.sqrt(23), rel=1e-15)


def test_character_table_is_periodic():
    for d in (-4, -7, -23):
        table = character_table(d)
        m = -d
        for n in range(1, 3 * m):
            assert table[n % m] == kronecker(d, n)


def test_char_sum_examples():
    assert char_sum_S(-4, 2) == 0.0
    assert char_sum_S(-4, 5) == pytest.approx(-math.log(3) + math.log(5), rel=1e-12)


def test_char_sum_cancellation():
    s = char_sum_S(-4, 10**5)
    assert abs(s) / 10**5 < 0.05


def test_phi_bound_scan_single_candidate():
    result = phi_bound_scan(-4, 4)
    assert result.min_value == pytest.approx(2 * math.log(math.log(4)) / 4, rel=1e-12)
    assert ideal_norm(result.argmin_ideal) == 4


def test_phi_bound_scan_examples():
    result = phi_bound_scan(-4, 100)
    assert result.min_value > 0
    # the minimizer is built from the smallest ramified/split primes
    assert all(P.splitting != Splitting.INERT for P, _ in result.argmin_ideal.factors)
    assert phi_bound_scan(-3, 100).min_value > 0


def test_phi_bound_scan_empty_window():
    # no ideal of Q(i) has norm exactly 3
    with pytest.raises(ValueError):
        phi_bound_scan(-4, 3)


def test_landau_liminf_directional_check():
    result = landau_liminf_check(-4, 10**4)
    assert result.target == pytest.approx(
        math.exp(-EULER_GAMMA) / l1_from_class_number(-4), rel=1e-15
    )
    ratio = result.empirical_min_tail / result.target
    # at this cutoff the tail minimum sits a bit below the limit value
    assert 0.75 <= ratio <= 3.0
    assert result.empirical_min_tail < result.target

    both = landau_liminf_check(-3, 10**4)
    assert both.empirical_min_tail > 0 and both.target > 0


def test_split_squarefree_density():
    # squarefree products of split primes: phi/norm = prod (1 - 1/p)^2
    cases = {-4: [5, 13, 5 * 13], -7: [2, 11, 2 * 11 * 23]}
    for d, values in cases.items():
        for n in values:
            ideal = principal_ideal(d, n)
            assert all(P.splitting == Splitting.SPLIT for P, _ in ideal.factors)
            expected = Fraction(1)
            for p, _ in factorize(n):
                expected *= Fraction(p - 1, p) ** 2
            assert Fraction(phi_K(ideal), ideal_norm(ideal)) == expected


def test_input_validation():
    with pytest.raises(ValueError):
        mertens_product(1)
    with pytest.raises(ValueError):
        char_euler_product(-12, 100)
    with pytest.raises(ValueError):
        char_sum_S(-4, 1)
    with pytest.raises(ValueError):
        phi_bound_scan(-4, 2)
    with pytest.raises(ValueError):
        landau_liminf_check(-4, 99)
