"""Exact arithmetic of negative quadratic discriminants.

Fundamentality, the Kronecker character, unit counts, splitting of
rational primes, and class numbers computed by two independent exact
methods: counting reduced binary quadratic forms, and the finite
character sum of the analytic class number formula.  The two are kept
permanently wired together so silent corruption of either is detectable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import gcd, isqrt

from .primes import is_prime, squarefree


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Discriminant:
    """A negative integer congruent to 0 or 1 mod 4."""

    value: int
    is_fundamental: bool

    def __post_init__(self):
        if self.is_fundamental != is_fundamental(self.value):
            raise ValueError(
                f"is_fundamental={self.is_fundamental} is wrong for {self.value}"
            )

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """Coefficients (a, b, c) of the positive-definite form ax^2 + bxy + cy^2."""

    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if a <= 0:
            return False
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


@dataclass(frozen=True)
class FieldConstants:
    """Class number h, root-of-unity count w, and L(1, chi) for one field.

    l1 is the exact rearrangement 2*pi*h / (w * sqrt(|D|)) of the class
    number formula; it is the only non-integer field here.
    """

    h: int
    w: int
    l1: float


def _check_discriminant_shape(value: int) -> None:
    if value >= 0:
        raise ValueError(f"discriminant must be negative, got {value}")
    if value % 4 not in (0, 1):
        raise ValueError(f"discriminant must be 0 or 1 mod 4, got {value}")


def is_fundamental(value: int) -> bool:
    """Whether value is the discriminant of a maximal order.

    Raises ValueError if value is not a valid discriminant at all
    (nonnegative, or not 0/1 mod 4); returns False for valid
    non-maximal order discriminants such as -12.
    """
    _check_discriminant_shape(value)
    if value % 4 == 1:
        return squarefree(-value)
    q = value // 4
    return squarefree(-q) and q % 4 in (2, 3)


def as_discriminant(d: int | Discriminant) -> Discriminant:
    """Coerce an int (validating it) or pass a Discriminant through."""
    if isinstance(d, Discriminant):
        return d
    return Discriminant(d, is_fundamental(d))


def require_fundamental(d: int | Discriminant) -> Discriminant:
    disc = as_discriminant(d)
    if not disc.is_fundamental:
        raise ValueError(f"{disc.value} is not a fundamental discriminant")
    return disc


def kronecker(d: int | Discriminant, n: int) -> int:
    """Kronecker symbol (d|n) for n >= 1.

    Completely multiplicative in n, with period dividing |d|.  Implemented
    by the reciprocity recursion with the explicit rule at 2: (d|2) is 0
    for even d, +1 for d = +-1 mod 8 and -1 for d = +-3 mod 8.
    """
    a = as_discriminant(d).value
    if n < 1:
        raise ValueError(f"kronecker symbol defined here for n >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi recursion; n odd >= 1, top argument reduced mod n.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def reduced_forms(d: int | Discriminant) -> set[BinaryQuadraticForm]:
    """One reduced primitive positive-definite form per ideal class.

    Valid for any (fundamental or order) discriminant.  The scan covers
    |b| <= a <= sqrt(|d|/3), which contains every reduced form.
    """
    value = as_discriminant(d).value
    forms: set[BinaryQuadraticForm] = set()
    for a in range(1, isqrt(-value // 3) + 1):
        for b in range(-a, a + 1):
            if (b * b - value) % (4 * a):
                continue
            c = (b * b - value) // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            forms.add(BinaryQuadraticForm(a, b, c))
    return forms


def class_number(d: int | Discriminant) -> int:
    """h(d) as the count of reduced primitive forms of discriminant d."""
    return len(reduced_forms(d))


def class_number_dirichlet(d: int | Discriminant) -> int:
    """h(d) from the finite character sum (w / 2|d|) * |sum chi(k) k|.

    Only valid for fundamental d (the sum as written needs the primitive
    character); serves as the independent oracle for class_number.
    """
    disc = require_fundamental(d)
    m = -disc.value
    total = sum(kronecker(disc, k) * k for k in range(1, m + 1))
    w = unit_count(disc)
    num = w * abs(total)
    if num % (2 * m):
        raise ArithmeticError(f"character sum for {disc.value} is not an integer multiple")
    return num // (2 * m)


def unit_count(d: int | Discriminant) -> int:
    """Number of roots of unity: 6 for -3, 4 for -4, else 2."""
    value = as_discriminant(d).value
    if value == -3:
        return 6
    if value == -4:
        return 4
    return 2


def splitting_type(d: int | Discriminant, p: int) -> Splitting:
    """Behavior of the rational prime p: split, inert, or ramified."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    chi = kronecker(d, p)
    if chi == 1:
        return Splitting.SPLIT
    if chi == -1:
        return Splitting.INERT
    return Splitting.RAMIFIED


def field_constants(d: int | Discriminant) -> FieldConstants:
    """Bundle (h, w, L(1,chi)) for a fundamental discriminant."""
    disc = require_fundamental(d)
    h = class_number(disc)
    w = unit_count(disc)
    l1 = 2.0 * math.pi * h / (w * math.sqrt(-disc.value))
    return FieldConstants(h=h, w=w, l1=l1)


def fundamental_discriminants(bound: int) -> list[int]:
    """All fundamental d with |d| <= bound, sorted by |d|."""
    out = []
    for value in range(-3, -bound - 1, -1):
        if value % 4 in (0, 1) and is_fundamental(value):
            out.append(value)
    return out


def order_discriminants(bound: int) -> list[int]:
    """All valid (fundamental or not) d with |d| <= bound, sorted by |d|."""
    return [v for v in range(-3, -bound - 1, -1) if v % 4 in (0, 1)]


__all__ = [
    "BinaryQuadraticForm",
    "Discriminant",
    "FieldConstants",
    "Splitting",
    "as_discriminant",
    "class_number",
    "class_number_dirichlet",
    "field_constants",
    "fundamental_discriminants",
    "is_fundamental",
    "kronecker",
    "order_discriminants",
    "reduced_forms",
    "require_fundamental",
    "splitting_type",
    "unit_count",
]
