"""Integral ideals of imaginary quadratic maximal orders, in factored form.

An ideal is carried as its multiset of prime-ideal factors; every
quantity needed downstream (norm, the ideal Euler function, splitting
data) depends only on that factorization, so there is no element-level
ideal arithmetic here.  A residue-ring brute-force count doubles as the
oracle for the Euler-function formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import CapExceededError
from .primes import cached_primes, factorize, is_prime
from .quad_core import (
    Discriminant,
    Splitting,
    as_discriminant,
    require_fundamental,
    splitting_type,
)

BRUTE_FORCE_CAP = 300


def _factor_key(entry: "tuple[PrimeIdeal, int]") -> tuple[int, int]:
    return (entry[0].p, entry[0].conjugate_index)


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of the maximal order, keyed by the rational prime below it.

    conjugate_index distinguishes the two conjugate primes above a split
    rational prime; it is 0 for inert and ramified primes.
    """

    p: int
    conjugate_index: int
    splitting: Splitting
    norm: int


@dataclass(frozen=True)
class FactoredIdeal:
    """A nonzero integral ideal as sorted (prime ideal, exponent) pairs."""

    disc: Discriminant
    factors: tuple[tuple[PrimeIdeal, int], ...]

    def sort_key(self) -> tuple:
        return tuple((P.p, P.conjugate_index, e) for P, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "(1)"
        parts = []
        for P, e in self.factors:
            tag = f"P{P.p}" if P.splitting != Splitting.SPLIT else f"P{P.p}.{P.conjugate_index}"
            parts.append(tag if e == 1 else f"{tag}^{e}")
        return "*".join(parts)


def primes_above(d: int | Discriminant, p: int) -> list[PrimeIdeal]:
    """The prime ideals over the rational prime p, by splitting type."""
    disc = require_fundamental(d)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    kind = splitting_type(disc, p)
    if kind == Splitting.SPLIT:
        return [
            PrimeIdeal(p=p, conjugate_index=0, splitting=kind, norm=p),
            PrimeIdeal(p=p, conjugate_index=1, splitting=kind, norm=p),
        ]
    if kind == Splitting.INERT:
        return [PrimeIdeal(p=p, conjugate_index=0, splitting=kind, norm=p * p)]
    return [PrimeIdeal(p=p, conjugate_index=0, splitting=kind, norm=p)]


def unit_ideal(d: int | Discriminant) -> FactoredIdeal:
    return FactoredIdeal(disc=require_fundamental(d), factors=())


def principal_ideal(d: int | Discriminant, n: int) -> FactoredIdeal:
    """Factorization of the principal ideal generated by the integer n >= 1.

    A split p^e contributes both conjugates with exponent e; a ramified
    p^e contributes the unique prime with exponent 2e.
    """
    disc = require_fundamental(d)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    factors: list[tuple[PrimeIdeal, int]] = []
    for p, e in factorize(n):
        for P in primes_above(disc, p):
            factors.append((P, 2 * e if P.splitting == Splitting.RAMIFIED else e))
    return FactoredIdeal(disc=disc, factors=tuple(sorted(factors, key=_factor_key)))


def ideal_norm(a: FactoredIdeal) -> int:
    result = 1
    for P, e in a.factors:
        result *= P.norm**e
    return result


def phi_K(a: FactoredIdeal) -> int:
    """Number of invertible residues mod a: prod over primes of q^(e-1)(q-1)."""
    result = 1
    for P, e in a.factors:
        result *= P.norm ** (e - 1) * (P.norm - 1)
    return result


def phi_K_of_N(d: int | Discriminant, n: int) -> int:
    """phi_K of the principal ideal (n); always an exact integer."""
    return phi_K(principal_ideal(d, n))


def merge(a: FactoredIdeal, b: FactoredIdeal) -> FactoredIdeal:
    """Product of two ideals of the same field, by merging factorizations."""
    if a.disc != b.disc:
        raise ValueError("ideals live in different fields")
    exps: dict[PrimeIdeal, int] = dict(a.factors)
    for P, e in b.factors:
        exps[P] = exps.get(P, 0) + e
    return FactoredIdeal(disc=a.disc, factors=tuple(sorted(exps.items(), key=_factor_key)))


def brute_force_phi(d: int | Discriminant, n: int, cap: int = BRUTE_FORCE_CAP) -> int:
    """Count invertible residues of O/nO by direct enumeration.

    Residues are pairs (x, y) in the integral basis 1, (D + sqrt(D))/2;
    such a pair is invertible iff its norm x^2 + D x y + ((D^2 - D)/4) y^2
    is a unit mod n.  Accepts any valid (also non-maximal) discriminant.
    """
    disc = as_discriminant(d)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n > cap:
        raise CapExceededError("n", n, cap)
    delta = disc.value
    quad = (delta * delta - delta) // 4  # exact: delta = 0 or 1 mod 4
    count = 0
    for x in range(n):
        xx = x * x
        dx = delta * x
        for y in range(n):
            if gcd((xx + dx * y + quad * y * y) % n, n) == 1:
                count += 1
    return count


def ideals_up_to_norm(d: int | Discriminant, x: int):
    """Yield every integral ideal of norm <= x exactly once.

    Ordered by norm, ties broken lexicographically on the factorization;
    a fresh generator restarts the same deterministic stream.
    """
    disc = require_fundamental(d)
    if x < 1:
        raise ValueError(f"need x >= 1, got {x}")
    prime_ideals = []
    for p in cached_primes(x):
        for P in primes_above(disc, p):
            if P.norm <= x:
                prime_ideals.append(P)
    # (norm, factor list) pairs, extended one prime ideal at a time
    partial: list[tuple[int, tuple[tuple[PrimeIdeal, int], ...]]] = [(1, ())]
    for P in prime_ideals:
        grown = []
        for norm, factors in partial:
            e = 1
            norm *= P.norm
            while norm <= x:
                grown.append((norm, factors + ((P, e),)))
                e += 1
                norm *= P.norm
        partial.extend(grown)
    ideals = [FactoredIdeal(disc=disc, factors=tuple(sorted(f, key=_factor_key))) for _, f in partial]
    ideals.sort(key=lambda ideal: (ideal_norm(ideal), ideal.sort_key()))
    yield from ideals


def ideal_count_oracle(d: int | Discriminant, n: int) -> int:
    """Number of ideals of norm exactly n, as the divisor sum of chi."""
    from .quad_core import kronecker

    return sum(kronecker(d, m) for m in range(1, n + 1) if n % m == 0)


__all__ = [
    "BRUTE_FORCE_CAP",
    "FactoredIdeal",
    "PrimeIdeal",
    "brute_force_phi",
    "ideal_count_oracle",
    "ideal_norm",
    "ideals_up_to_norm",
    "merge",
    "phi_K",
    "phi_K_of_N",
    "primes_above",
    "principal_ideal",
    "unit_ideal",
]
