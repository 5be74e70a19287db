"""Per-degree upper bounds on CM torsion by exhaustive feasibility search.

A torsion shape Z/a x Z/ab over a degree-d field must satisfy
h * phi_K((ab)) <= 6 b d.  Relaxing with h >= 1 and the everywhere-split
minimum phi_K((n)) >= phi(n)^2 leaves the field-independent test
phi(ab)^2 <= 6 b d, whose maximal surviving size a^2 b is the rigorous
bound B(d).  The search region is finite by explicit totient lower
bounds; all feasibility comparisons are exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .galois_image import squaring_degree_bound
from .ideal_arith import phi_K_of_N, principal_ideal
from .primes import EULER_GAMMA, euler_phi, phi_sieve
from .quad_core import (
    Discriminant,
    class_number,
    fundamental_discriminants,
    require_fundamental,
)
from .ray_class_bounds import degree_bounds

_ENV_SCALE = math.exp(EULER_GAMMA)


@dataclass(frozen=True)
class TorsionShape:
    """Group structure Z/a x Z/ab; its size is a^2 b."""

    a: int
    b: int

    @property
    def size(self) -> int:
        return self.a * self.a * self.b


@dataclass(frozen=True)
class BoundRecord:
    """Feasibility outcome for one degree: B(d) and a maximizing shape.

    ratio is B(d) / (d * log log d), defined only for d >= 3.
    """

    d: int
    best_shape: TorsionShape
    bound: int
    ratio: float | None


@dataclass(frozen=True)
class FeasibilityRow:
    """Exact left-hand side h * phi_K((ab)) / (6b) for one (field, shape)."""

    disc: Discriminant
    a: int
    b: int
    lhs: Fraction
    feasible: bool


@dataclass(frozen=True)
class ConstantEstimate:
    """Sup of B(d)/(d log log d) over a degree window, with its argmax."""

    value: float
    argmax_d: int


@dataclass(frozen=True)
class ChainStep:
    label: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


@dataclass(frozen=True)
class ChainAudit:
    d: int
    disc: Discriminant
    a: int
    b: int
    steps: tuple[ChainStep, ...]

    @property
    def first_failure(self) -> str | None:
        for step in self.steps:
            if not step.holds:
                return step.label
        return None

    @property
    def holds(self) -> bool:
        return self.first_failure is None


def relaxed_feasible(d: int, a: int, b: int) -> bool:
    """Field-independent necessary condition phi(ab)^2 <= 6 b d."""
    if d < 1 or a < 1 or b < 1:
        raise ValueError("need d, a, b >= 1")
    f = euler_phi(a * b)
    return f * f <= 6 * b * d


def _totient_envelope(n: float) -> float:
    # n / phi(n) < e^gamma loglog n + 3/loglog n for all n >= 3
    ll = math.log(math.log(n))
    return _ENV_SCALE * ll + 3.0 / ll


def feasible_product_cutoff(d: int) -> int:
    """Bound M such that phi(n)^2 <= 6 n d forces n <= M.

    Two passes: double until the envelope bound 6 d (e^g loglog n + 3/loglog n)^2
    drops below n (beyond that point n/phi(n)^2-feasibility is impossible,
    the envelope being monotone there), then refine once by evaluating the
    envelope at the over-approximation.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    limit = 64
    while limit <= 6 * d * _totient_envelope(limit) ** 2:
        limit *= 2
    return int(6 * d * _totient_envelope(limit) ** 2) + 1


def bound_records(d_min: int, d_max: int) -> list[BoundRecord]:
    """BoundRecords for every degree in [d_min, d_max], in one sweep.

    Each feasible pair (a, b) first becomes feasible at the degree
    ceil(phi(ab)^2 a / (6 ab)); scattering pairs into their activation
    degree and taking a running maximum yields B(d) for all d at once.
    Ties are broken toward the smallest a (then b is determined).
    """
    if not 1 <= d_min <= d_max:
        raise ValueError(f"need 1 <= d_min <= d_max, got [{d_min}, {d_max}]")
    n_max = feasible_product_cutoff(d_max)
    phi = phi_sieve(n_max)
    slots: list[tuple[int, int, int] | None] = [None] * (d_max + 1)
    for a in range(1, 12 * d_max + 1):  # feasible needs a <= 12 d
        for n in range(a, n_max + 1, a):
            f = phi[n]
            six_n = 6 * n
            activation = (f * f * a + six_n - 1) // six_n
            if activation > d_max:
                continue
            size = a * n
            cur = slots[activation]
            if cur is None or size > cur[0] or (size == cur[0] and a < cur[1]):
                slots[activation] = (size, a, n // a)
    records: list[BoundRecord] = []
    best: tuple[int, int, int] | None = None
    for d in range(1, d_max + 1):
        cand = slots[d]
        if cand is not None and (
            best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1] < best[1])
        ):
            best = cand
        if d >= d_min:
            assert best is not None  # (a, b) = (1, 1) activates at d = 1
            size, a, b = best
            ratio = size / (d * math.log(math.log(d))) if d >= 3 else None
            records.append(
                BoundRecord(d=d, best_shape=TorsionShape(a=a, b=b), bound=size, ratio=ratio)
            )
    return records


def torsion_bound(d: int) -> BoundRecord:
    """B(d) = max a^2 b over the relaxed-feasible region, with its shape."""
    return bound_records(d, d)[0]


def constant_over(records: list[BoundRecord]) -> ConstantEstimate:
    """Sup of the ratio field over records with d >= 3 (smallest argmax wins)."""
    best_value = None
    best_d = None
    for rec in records:
        if rec.ratio is None:
            continue
        if best_value is None or rec.ratio > best_value:
            best_value = rec.ratio
            best_d = rec.d
    if best_value is None:
        raise ValueError("no degrees >= 3 in the record list")
    return ConstantEstimate(value=best_value, argmax_d=best_d)


def explicit_constant(d_min: int, d_max: int) -> ConstantEstimate:
    """Empirical constant sup B(d)/(d log log d) over [d_min, d_max]."""
    if not 3 <= d_min <= d_max:
        raise ValueError(f"need 3 <= d_min <= d_max, got [{d_min}, {d_max}]")
    return constant_over(bound_records(d_min, d_max))


def relaxed_pairs(d: int) -> list[tuple[int, int]]:
    """Every (a, b) with phi(ab)^2 <= 6 b d, via the proven cutoffs."""
    if d < 1:
        raise ValueError("need d >= 1")
    n_max = feasible_product_cutoff(d)
    phi = phi_sieve(n_max)
    pairs: list[tuple[int, int]] = []
    for a in range(1, 12 * d + 1):
        for n in range(a, n_max + 1, a):
            if phi[n] ** 2 * a <= 6 * n * d:
                pairs.append((a, n // a))
    pairs.sort()
    return pairs


def refined_table(
    d: int, D_cap: int, class_numbers: "dict[int, int] | None" = None
) -> list[FeasibilityRow]:
    """Exact per-field feasibility of every relaxed-feasible shape.

    Diagnostic only: restricting the fields to |D| <= D_cap does not by
    itself certify an upper bound over all fields.
    """
    if D_cap < 3:
        raise ValueError("need D_cap >= 3")
    pairs = relaxed_pairs(d)
    rows: list[FeasibilityRow] = []
    for value in fundamental_discriminants(D_cap):
        disc = require_fundamental(value)
        h = class_numbers[value] if class_numbers is not None else class_number(disc)
        for a, b in pairs:
            lhs = Fraction(h * phi_K_of_N(disc, a * b), 6 * b)
            rows.append(FeasibilityRow(disc=disc, a=a, b=b, lhs=lhs, feasible=lhs <= d))
    rows.sort(key=lambda r: (-r.a * r.a * r.b, -r.disc.value, r.a, r.b))
    return rows


def chain_audit(d: int, D: int | Discriminant, a: int, b: int) -> ChainAudit:
    """Evaluate each inequality of the degree chain exactly, in order.

    Steps: the ray-class degree forced by full a-torsion must fit in 2d;
    after the squaring extension of degree <= b, the level-ab ray class
    degree must fit in 2bd; finally the combined bound d >= h phi_K((ab))/(6b).
    """
    if d < 1 or a < 1 or b < 1:
        raise ValueError("need d, a, b >= 1")
    disc = require_fundamental(D)
    lower_a = 2 * degree_bounds(disc, principal_ideal(disc, a)).lower_weak
    lower_ab = 2 * degree_bounds(disc, principal_ideal(disc, a * b)).lower_weak
    ext = squaring_degree_bound(a, b)
    steps = (
        ChainStep(label="2d >= h*phi_K(aO)/3", lhs=Fraction(2 * d), rhs=lower_a),
        ChainStep(label="2bd >= h*phi_K(abO)/3", lhs=Fraction(2 * ext * d), rhs=lower_ab),
        ChainStep(label="d >= h*phi_K(abO)/(6b)", lhs=Fraction(d), rhs=lower_ab / (2 * ext)),
    )
    return ChainAudit(d=d, disc=disc, a=a, b=b, steps=steps)


__all__ = [
    "BoundRecord",
    "ChainAudit",
    "ChainStep",
    "ConstantEstimate",
    "FeasibilityRow",
    "TorsionShape",
    "bound_records",
    "chain_audit",
    "constant_over",
    "explicit_constant",
    "feasible_product_cutoff",
    "refined_table",
    "relaxed_feasible",
    "relaxed_pairs",
    "torsion_bound",
]
