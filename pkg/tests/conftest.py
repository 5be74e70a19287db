"""Shared test helpers: slow-but-simple oracles independent of the library."""

from __future__ import annotations

# the discriminant grid used by the exhaustive group scans
GRID_DISCS = (-3, -4, -7, -8, -11, -15, -20)


def naive_phi(n: int) -> int:
    """Totient by gcd counting; quadratic, for small oracle work only."""
    from math import gcd

    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def sieve_phi(limit: int) -> list[int]:
    """Totient table by the multiply-out-(1 - 1/p) sweep over a bool sieve."""
    phi = list(range(limit + 1))
    is_comp = bytearray(limit + 1)
    for p in range(2, limit + 1):
        if is_comp[p]:
            continue
        for m in range(p, limit + 1, p):
            if m > p:
                is_comp[m] = 1
            phi[m] = phi[m] // p * (p - 1)
    return phi


def trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out
