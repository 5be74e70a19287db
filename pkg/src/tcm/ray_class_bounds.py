"""Degree bounds for ray class fields over imaginary quadratic fields.

Only the sandwich h*phi/6 <= h*phi/w <= [K^(c):K] <= h*phi is encoded,
never the field itself; bounds are exact rationals until a caller
chooses to format them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ideal_arith import FactoredIdeal, phi_K, phi_K_of_N
from .quad_core import Discriminant, class_number, require_fundamental, unit_count


@dataclass(frozen=True)
class DegreeBounds:
    """Two-sided bounds on the degree of a ray class field over K.

    lower_weak is the uniform /6 variant that is independent of which
    field K is (w divides 6 for every imaginary quadratic field).
    """

    lower_weak: Fraction
    lower: Fraction
    upper: int


def degree_bounds(d: int | Discriminant, c: FactoredIdeal) -> DegreeBounds:
    disc = require_fundamental(d)
    if c.disc != disc:
        raise ValueError("ideal belongs to a different field")
    h = class_number(disc)
    w = unit_count(disc)
    phi = phi_K(c)
    return DegreeBounds(
        lower_weak=Fraction(h * phi, 6),
        lower=Fraction(h * phi, w),
        upper=h * phi,
    )


def min_absolute_degree_with_full_N_torsion(d: int | Discriminant, n: int) -> Fraction:
    """Lower bound on [F:Q] forced by full n-torsion over FK.

    Full n-torsion over FK puts the ray class field of modulus (n) inside
    FK, so 2*[F:Q] >= [FK:Q] >= 2 * h * phi_K((n)) / 6; dividing by two
    leaves h * phi_K((n)) / 6.
    """
    disc = require_fundamental(d)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    h = class_number(disc)
    return Fraction(h * phi_K_of_N(disc, n), 6)


__all__ = ["DegreeBounds", "degree_bounds", "min_absolute_degree_with_full_N_torsion"]
