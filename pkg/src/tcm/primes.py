"""Prime generation and elementary factorization helpers.

Everything here is exact integer arithmetic.  The sieve is segmented so
that large limits do not allocate one giant odd-composite table.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

_SEGMENT = 1 << 17

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

EULER_GAMMA = 0.5772156649015329


def _simple_sieve(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i, f in enumerate(flags) if f]


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, via a segmented Eratosthenes sieve."""
    if limit < 2:
        return []
    if limit <= _SEGMENT:
        return _simple_sieve(limit)
    base = _simple_sieve(isqrt(limit))
    primes = list(base)
    lo = isqrt(limit) + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        flags = bytearray([1]) * (hi - lo + 1)
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start > hi:
                continue
            flags[start - lo :: p] = b"\x00" * ((hi - start) // p + 1)
        primes.extend(lo + i for i, f in enumerate(flags) if f)
        lo = hi + 1
    return primes


@lru_cache(maxsize=8)
def cached_primes(limit: int) -> tuple[int, ...]:
    """Memoized tuple of primes <= limit (read-only after creation)."""
    return tuple(primes_up_to(limit))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set covers all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as sorted (prime, exponent) pairs."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # wheel over 6k+-1
    p = 7
    step = 4
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    """Classical Euler totient, by trial-division factorization."""
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def squarefree(n: int) -> bool:
    """True iff no prime square divides n (n >= 1)."""
    return all(e == 1 for _, e in factorize(n))


def phi_sieve(limit: int) -> list[int]:
    """Totient table phi[0..limit] (phi[0] = 0) via the in-place prime sieve."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # untouched, hence prime
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return phi
