"""Seeded random exact inputs for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .groups import FiniteGroup
from .measures import QuotientMeasure
from .scalars import QQi

NUM_RANGE = 9
DEN_RANGE = 6


def random_fraction(rng: random.Random, nonnegative: bool = False) -> Fraction:
    lo = 0 if nonnegative else -NUM_RANGE
    return Fraction(rng.randint(lo, NUM_RANGE), rng.randint(1, DEN_RANGE))


def random_qqi(rng: random.Random, complex_values: bool = True, nonnegative: bool = False) -> QQi:
    re = random_fraction(rng, nonnegative)
    im = random_fraction(rng) if complex_values and not nonnegative else Fraction(0)
    return QQi(re, im)


def random_gfunction(group: FiniteGroup, rng: random.Random, complex_values: bool = True,
                     nonnegative: bool = False):
    from .transfer import GFunction

    return GFunction(group, tuple(random_qqi(rng, complex_values, nonnegative) for _ in group.elements))


def random_qfunction(measure: QuotientMeasure, rng: random.Random, complex_values: bool = True,
                     nonnegative: bool = False):
    from .transfer import QuotientFunction

    n = len(measure.space)
    return QuotientFunction(measure, tuple(random_qqi(rng, complex_values, nonnegative) for _ in range(n)))
