"""Numerical product estimates and empirical constant scans.

Mertens products, quadratic-character Euler products, L(1, chi) from the
class number formula, the weighted character sum over primes, and scans
measuring the observed constant in the uniform lower bound for the ideal
Euler function.  Values here are floating point; everything rigorous
lives upstream in the exact modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ideal_arith import FactoredIdeal, ideal_norm, ideals_up_to_norm, phi_K
from .primes import EULER_GAMMA, cached_primes
from .quad_core import Discriminant, field_constants, kronecker, require_fundamental

# below this cutoff a plain sequential product is exact enough; above it,
# logs are accumulated with numpy's pairwise summation to bound drift
_LOG_ACCUM_THRESHOLD = 10**5


@dataclass(frozen=True)
class ProductEstimate:
    x: int
    value: float
    terms: int


@dataclass(frozen=True)
class ScanResult:
    disc: Discriminant
    x: int
    min_value: float
    argmin_ideal: FactoredIdeal


@dataclass(frozen=True)
class LandauCheck:
    empirical_min_tail: float
    target: float


def character_table(d: int | Discriminant) -> list[int]:
    """chi(r) for r = 0 .. |d|-1 (the character has period |d|)."""
    disc = require_fundamental(d)
    m = -disc.value
    return [0] + [kronecker(disc, r) for r in range(1, m)]


def mertens_product(x: int) -> ProductEstimate:
    """prod over primes p <= x of (1 - 1/p)."""
    if x < 2:
        raise ValueError(f"need x >= 2, got {x}")
    ps = cached_primes(x)
    if x <= _LOG_ACCUM_THRESHOLD:
        value = 1.0
        for p in ps:
            value *= 1.0 - 1.0 / p
    else:
        arr = np.array(ps, dtype=np.float64)
        value = float(np.exp(np.log1p(-1.0 / arr).sum()))
    return ProductEstimate(x=x, value=value, terms=len(ps))


def char_euler_product(d: int | Discriminant, x: int) -> ProductEstimate:
    """prod over primes p <= x of (1 - chi(p)/p) for the field character chi."""
    disc = require_fundamental(d)
    if x < 2:
        raise ValueError(f"need x >= 2, got {x}")
    ps = cached_primes(x)
    m = -disc.value
    table = character_table(disc)
    if x <= _LOG_ACCUM_THRESHOLD:
        value = 1.0
        for p in ps:
            value *= 1.0 - table[p % m] / p
    else:
        arr = np.array(ps, dtype=np.int64)
        chi = np.array(table, dtype=np.float64)[arr % m]
        value = float(np.exp(np.log1p(-chi / arr).sum()))
    return ProductEstimate(x=x, value=value, terms=len(ps))


def l1_from_class_number(d: int | Discriminant) -> float:
    """L(1, chi) as the exact rearrangement 2 pi h / (w sqrt|d|)."""
    return field_constants(d).l1


def char_sum_S(d: int | Discriminant, t: int) -> float:
    """Weighted character sum over primes: sum of chi(p) log p for p <= t.

    Diagnostic only; the quantity of interest is how much cancellation
    the character forces at large cutoffs.
    """
    disc = require_fundamental(d)
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    ps = cached_primes(t)
    m = -disc.value
    table = character_table(disc)
    if t <= _LOG_ACCUM_THRESHOLD:
        return sum(table[p % m] * math.log(p) for p in ps)
    arr = np.array(ps, dtype=np.int64)
    chi = np.array(table, dtype=np.float64)[arr % m]
    return float((chi * np.log(arr)).sum())


def phi_bound_scan(d: int | Discriminant, x: int) -> ScanResult:
    """Minimum of phi_K(c) * loglog|c| / |c| over ideals with 3 <= |c| <= x.

    Multiplied by the class number this is the observed constant in the
    uniform lower bound phi_K(c) >= (C/h) |c| / loglog|c|.
    """
    disc = require_fundamental(d)
    if x < 3:
        raise ValueError(f"need x >= 3, got {x}")
    best_value: float | None = None
    best_ideal: FactoredIdeal | None = None
    for ideal in ideals_up_to_norm(disc, x):
        norm = ideal_norm(ideal)
        if norm < 3:
            continue
        value = phi_K(ideal) * math.log(math.log(norm)) / norm
        if best_value is None or value < best_value:
            best_value = value
            best_ideal = ideal
    if best_ideal is None:
        raise ValueError(f"no ideals with norm in [3, {x}] for discriminant {disc.value}")
    return ScanResult(disc=disc, x=x, min_value=best_value, argmin_ideal=best_ideal)


def landau_liminf_check(d: int | Discriminant, x: int) -> LandauCheck:
    """Tail minimum of phi_K(a) loglog|a| / |a| against e^-gamma / L(1, chi).

    The tail runs over norms in [x/10, x]; the comparison is directional
    (the limit is approached from above along norm-rich ideals), not a
    convergence proof.
    """
    disc = require_fundamental(d)
    if x < 100:
        raise ValueError(f"need x >= 100, got {x}")
    lo = x // 10
    best: float | None = None
    for ideal in ideals_up_to_norm(disc, x):
        norm = ideal_norm(ideal)
        if norm < lo:
            continue
        value = phi_K(ideal) * math.log(math.log(norm)) / norm
        if best is None or value < best:
            best = value
    target = math.exp(-EULER_GAMMA) / l1_from_class_number(disc)
    return LandauCheck(empirical_min_tail=best, target=target)


__all__ = [
    "LandauCheck",
    "ProductEstimate",
    "ScanResult",
    "char_euler_product",
    "char_sum_S",
    "character_table",
    "l1_from_class_number",
    "landau_liminf_check",
    "mertens_product",
    "phi_bound_scan",
]
