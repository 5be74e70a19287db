import pytest

from tcm.errors import CapExceededError
from tcm.ideal_arith import (
    FactoredIdeal,
    brute_force_phi,
    ideal_count_oracle,
    ideal_norm,
    ideals_up_to_norm,
    merge,
    phi_K,
    phi_K_of_N,
    primes_above,
    principal_ideal,
    unit_ideal,
)
from tcm.quad_core import Splitting, fundamental_discriminants, kronecker

from conftest import naive_phi


def test_primes_above_split_inert_ramified():
    two_above_five = primes_above(-4, 5)
    assert [P.norm for P in two_above_five] == [5, 5]
    assert {P.conjugate_index for P in two_above_five} == {0, 1}
    assert all(P.splitting == Splitting.SPLIT for P in two_above_five)

    (inert,) = primes_above(-4, 3)
    assert inert.norm == 9 and inert.splitting == Splitting.INERT

    (ramified,) = primes_above(-4, 2)
    assert ramified.norm == 2 and ramified.splitting == Splitting.RAMIFIED


def test_primes_above_rejects_composite_and_nonfundamental():
    with pytest.raises(ValueError):
        primes_above(-4, 6)
    with pytest.raises(ValueError):
        primes_above(-12, 5)


def test_principal_ideal_examples():
    one = principal_ideal(-4, 1)
    assert one.factors == () and ideal_norm(one) == 1

    two = principal_ideal(-4, 2)
    assert len(two.factors) == 1
    assert two.factors[0][1] == 2  # ramified prime squared
    assert ideal_norm(two) == 4

    five = principal_ideal(-4, 5)
    assert len(five.factors) == 2
    assert ideal_norm(five) == 25


@pytest.mark.parametrize("d", [-4, -23])
def test_principal_ideal_norm_is_square(d):
    for n in range(1, 1001):
        assert ideal_norm(principal_ideal(d, n)) == n * n


def test_phi_examples():
    assert phi_K(unit_ideal(-4)) == 1
    assert phi_K(principal_ideal(-4, 5)) == 16
    assert phi_K(principal_ideal(-4, 2)) == 2
    assert phi_K_of_N(-4, 12) == 64
    assert phi_K_of_N(-3, 3) == 6
    assert phi_K_of_N(-7, 1) == 1


def test_phi_multiplicative_over_coprime_supports():
    for d in (-4, -7, -23):
        parts = [principal_ideal(d, n) for n in (2, 3, 5, 7)]
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                product = merge(parts[i], parts[j])
                assert phi_K(product) == phi_K(parts[i]) * phi_K(parts[j])


def test_phi_prime_power_rule():
    for d in (-4, -7):
        disc = unit_ideal(d).disc
        for p in (2, 3, 5):
            for P in primes_above(d, p):
                ideal = FactoredIdeal(disc=disc, factors=((P, 3),))
                assert phi_K(ideal) == P.norm**2 * (P.norm - 1)


def test_inert_prime_power_norm():
    (inert,) = primes_above(-4, 3)
    squared = FactoredIdeal(disc=unit_ideal(-4).disc, factors=((inert, 2),))
    assert ideal_norm(squared) == 81


def test_brute_force_phi_examples_and_cap():
    assert brute_force_phi(-4, 5) == 16
    assert brute_force_phi(-4, 1) == 1
    assert brute_force_phi(-7, 3) == 8
    with pytest.raises(CapExceededError):
        brute_force_phi(-4, 301)
    assert brute_force_phi(-4, 301, cap=301) > 0


def test_brute_force_phi_accepts_order_discriminants():
    # the residue count sees the non-maximal ring, not its fraction field
    assert brute_force_phi(-12, 5) == 24


def test_formula_matches_brute_force_small_grid():
    for d in fundamental_discriminants(40):
        for n in range(1, 26):
            assert phi_K_of_N(d, n) == brute_force_phi(d, n), (d, n)


@pytest.mark.parametrize("d", [-3, -4, -7])
def test_phi_dominates_classical_phi_squared(d):
    for n in range(1, 61):
        value = phi_K_of_N(d, n)
        classical = naive_phi(n)
        assert value >= classical * classical
        all_split = all(kronecker(d, p) == 1 for p in range(2, n + 1) if n % p == 0 and _is_prime(p))
        assert (value == classical * classical) == all_split, (d, n)


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % q for q in range(2, int(p**0.5) + 1))


def test_ideals_up_to_norm_example():
    norms = [ideal_norm(ideal) for ideal in ideals_up_to_norm(-4, 5)]
    assert norms == [1, 2, 4, 5, 5]
    assert next(iter(ideals_up_to_norm(-4, 1))).factors == ()


@pytest.mark.parametrize("d", [-4, -23])
def test_ideal_counts_match_divisor_sum_oracle(d):
    by_norm: dict[int, int] = {}
    seen = set()
    for ideal in ideals_up_to_norm(d, 500):
        assert ideal not in seen
        seen.add(ideal)
        by_norm[ideal_norm(ideal)] = by_norm.get(ideal_norm(ideal), 0) + 1
    for n in range(1, 501):
        assert by_norm.get(n, 0) == ideal_count_oracle(d, n), (d, n)


def test_ideals_stream_is_sorted_and_restartable():
    first = list(ideals_up_to_norm(-7, 200))
    second = list(ideals_up_to_norm(-7, 200))
    assert first == second
    keys = [(ideal_norm(i), i.sort_key()) for i in first]
    assert keys == sorted(keys)
