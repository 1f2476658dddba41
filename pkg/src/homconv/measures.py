"""Rho-functions and the quotient measures they induce on coset spaces.

With counting Haar measure on ``G`` and normalised Haar measure on ``H``
the coset ``xH`` carries weight ``|H| * rho(x)``. That choice makes the
Weil formula hold exactly for ``T_H``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cosets import CosetSpace, build_cosets
from .errors import FormatError, MeasureError
from .groups import FiniteGroup, Subgroup, modular_function
from .scalars import format_fraction, to_fraction


@dataclass(frozen=True, eq=False)
class RhoFunction:
    group: FiniteGroup
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise MeasureError(f"rho has {len(self.values)} values for a group of order {self.group.order}")

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    def to_json(self) -> dict:
        return {"values": [format_fraction(v) for v in self.values]}


def make_rho(group: FiniteGroup, values: Sequence) -> RhoFunction:
    return RhoFunction(group, tuple(to_fraction(v) for v in values))


def constant_rho(group: FiniteGroup, c=1) -> RhoFunction:
    return RhoFunction(group, tuple(to_fraction(c) for _ in group.elements))


def rho_from_json(group: FiniteGroup, payload: dict) -> RhoFunction:
    if not isinstance(payload, dict) or "values" not in payload:
        raise FormatError("rho JSON needs a 'values' list")
    return make_rho(group, payload["values"])


@dataclass(frozen=True)
class RhoCheck:
    valid: bool
    relatively_invariant: bool
    # first (x, h) breaking rho(xh) = rho(x), resp. first (x, y) breaking the
    # multiplicative identity; None when the property holds
    invalid_pair: Optional[tuple[int, int]] = None
    non_multiplicative_pair: Optional[tuple[int, int]] = None


def verify_rho(group: FiniteGroup, sub: Subgroup, rho: RhoFunction, side: str = "left") -> RhoCheck:
    """Check the rho identity on ``H`` and relative invariance.

    Left side: ``rho(xh) = Delta_H(h) Delta_G(h)^-1 rho(x)``. Right cosets
    use ``rho(hx)`` instead. Relative invariance is
    ``rho(xy) = rho(x) rho(y) / rho(e)`` for all pairs.
    """
    if any(v <= 0 for v in rho.values):
        bad = next(i for i, v in enumerate(rho.values) if v <= 0)
        raise MeasureError(f"rho({group.labels[bad]}) = {rho.values[bad]} is not positive")
    t = group.table
    delta = modular_function(group)
    invalid = None
    for x in group.elements:
        for h in sub:
            # Delta_H == 1 on a finite subgroup
            expected = rho(x) / delta[h]
            y = t[x][h] if side == "left" else t[h][x]
            if rho(y) != expected:
                invalid = (x, h)
                break
        if invalid:
            break
    e = rho(0)
    nonmult = None
    for x in group.elements:
        for y in group.elements:
            if rho(t[x][y]) * e != rho(x) * rho(y):
                nonmult = (x, y)
                break
        if nonmult:
            break
    return RhoCheck(invalid is None, nonmult is None, invalid, nonmult)


@dataclass(frozen=True, eq=False)
class QuotientMeasure:
    space: CosetSpace
    weights: tuple[Fraction, ...]
    rho: RhoFunction
    g_invariant: bool

    @property
    def group(self) -> FiniteGroup:
        return self.space.group

    @property
    def side(self) -> str:
        return self.space.side

    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def compatible(self, other: QuotientMeasure) -> bool:
        return self is other or (self.space.compatible(other.space) and self.rho.values == other.rho.values)


def measure_from_rho(space: CosetSpace, rho: Optional[RhoFunction] = None) -> QuotientMeasure:
    """Quotient measure with ``weight(xH) = |H| rho(rep(xH))``.

    Rejects rho maps that are not relatively invariant; the convolution
    theory needs that hypothesis.
    """
    group, sub = space.group, space.subgroup
    if rho is None:
        rho = constant_rho(group)
    check = verify_rho(group, sub, rho, space.side)
    if not check.valid:
        x, h = check.invalid_pair
        raise MeasureError(f"rho is not a rho-function: rho({group.labels[x]}*{group.labels[h]}) != rho({group.labels[x]})")
    if not check.relatively_invariant:
        x, y = check.non_multiplicative_pair
        raise MeasureError(f"rho is not relatively invariant: fails at ({group.labels[x]}, {group.labels[y]})")
    constant = rho.is_constant()
    if not constant:
        # positive characters of a finite group are trivial
        raise AssertionError("relatively invariant rho on a finite group must be constant")
    weights = tuple(sub.order * rho(r) for r in space.reps)
    m = QuotientMeasure(space, weights, rho, g_invariant=constant)
    if m.total_mass() != sum(rho.values, Fraction(0)):
        raise AssertionError("total quotient mass differs from the rho mass of G")
    return m


def invariant_measure(group: FiniteGroup, sub: Subgroup, side: str = "left") -> QuotientMeasure:
    """G-invariant measure (rho == 1) on ``G/H``."""
    return measure_from_rho(build_cosets(group, sub, side))


def translation_factor(x: int, c: int, measure: QuotientMeasure) -> Fraction:
    """Radon-Nikodym factor ``rho(x rep) / rho(rep)`` of the translated measure."""
    rep = measure.space.reps[c]
    t = measure.group.table
    y = t[x][rep] if measure.side == "left" else t[rep][x]
    return measure.rho(y) / measure.rho(rep)
