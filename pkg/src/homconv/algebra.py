"""Group convolution and the quotient convolution ``phi * psi = T_H(phi_pi * psi_pi)``."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

from .cosets import act
from .errors import HypothesisError, InvariantError, NormError
from .measures import QuotientMeasure
from .scalars import QQi
from .transfer import (
    GFunction,
    QuotientFunction,
    coset_delta,
    delta,
    l1_norm,
    lift,
    lp_norm,
    lp_power,
    project,
)
from .sampling import random_qfunction


def _integer_parts(values) -> tuple[list[int], list[int], int]:
    den = 1
    for v in values:
        den = math.lcm(den, v.re.denominator, v.im.denominator)
    re = [v.re.numerator * (den // v.re.denominator) for v in values]
    im = [v.im.numerator * (den // v.im.denominator) for v in values]
    return re, im, den


def group_convolve(f: GFunction, g: GFunction) -> GFunction:
    """``(f*g)(x) = sum_y f(y) g(y^-1 x)`` under counting Haar measure."""
    if not f.group.same_as(g.group):
        raise ValueError("cannot convolve functions on different groups")
    grp = f.group
    t, inv = grp.table, grp.inverse
    n = grp.order
    # exact: integer numerators over one common denominator per factor
    fr, fi, fd = _integer_parts(f.values)
    gr, gi, gd = _integer_parts(g.values)
    support = [y for y in range(n) if fr[y] or fi[y]]
    rows = [t[inv[y]] for y in support]
    den = fd * gd
    out = []
    for x in range(n):
        sr = si = 0
        for y, row in zip(support, rows):
            k = row[x]
            a, b, c, d = fr[y], fi[y], gr[k], gi[k]
            sr += a * c - b * d
            si += a * d + b * c
        out.append(QQi(Fraction(sr, den), Fraction(si, den)))
    return GFunction(grp, tuple(out))


def _same_measure(phi: QuotientFunction, psi: QuotientFunction) -> QuotientMeasure:
    if not phi.measure.compatible(psi.measure):
        raise ValueError("quotient functions carry different measures")
    return phi.measure


def quotient_convolve(phi: QuotientFunction, psi: QuotientFunction) -> QuotientFunction:
    """``T_H(phi_pi * psi_pi)``; on right cosets this is the ``*_r`` product."""
    m = _same_measure(phi, psi)
    return project(group_convolve(lift(phi), lift(psi)), m)


def convolve_via_any_lift(phi: QuotientFunction, g: GFunction) -> QuotientFunction:
    """``T_H(phi_pi * g)``; depends on ``g`` only through ``T_H(g)``."""
    return project(group_convolve(lift(phi), g), phi.measure)


def left_translate(x: int, phi: QuotientFunction) -> QuotientFunction:
    """``(L_x phi)(yH) = phi(x^-1 yH)``."""
    space = phi.space
    if space.side != "left":
        raise ValueError("left translation acts on the left coset space")
    xi = space.group.inverse[x]
    return QuotientFunction(phi.measure, tuple(phi.values[act(xi, c, space)] for c in range(len(space))))


def _require_invariant(measure: QuotientMeasure, what: str) -> None:
    if not measure.g_invariant:
        raise HypothesisError(f"{what} needs a G-invariant measure")


def covariance_check(x: int, phi: QuotientFunction, psi: QuotientFunction) -> bool:
    """``L_x(phi*psi) == (L_x phi)*psi`` exactly."""
    _require_invariant(_same_measure(phi, psi), "covariance_check")
    return left_translate(x, quotient_convolve(phi, psi)) == quotient_convolve(left_translate(x, phi), psi)


def module_action(phi: QuotientFunction, psi: QuotientFunction, p=1) -> QuotientFunction:
    """L1 acting on Lp; checks ``||phi*psi||_p <= ||phi||_1 ||psi||_p``."""
    m = _same_measure(phi, psi)
    _require_invariant(m, "module_action")
    if p != math.inf and Fraction(p) < 1:
        raise NormError(f"p must be >= 1, got {p}")
    out = quotient_convolve(phi, psi)
    if not _norm_bound_holds(out, phi, psi, p):
        raise InvariantError(f"module bound fails for p={p}")
    return out


def _norm_bound_holds(out, phi, psi, p) -> bool:
    l1 = l1_norm(phi)
    if p != math.inf and Fraction(p).denominator == 1 and l1.is_rational():
        k = int(p)
        if k % 2 == 0 or (out.is_real() and psi.is_real()):
            return lp_power(out, k) <= l1.as_fraction() ** k * lp_power(psi, k)
    lhs = float(lp_norm(out, p))
    rhs = float(l1) * float(lp_norm(psi, p))
    return lhs <= rhs * (1 + 1e-12) + 1e-300


def submultiplicative(phi: QuotientFunction, psi: QuotientFunction) -> bool:
    """``||phi*psi||_1 <= ||phi||_1 ||psi||_1``; exact when all norms are rational."""
    out = quotient_convolve(phi, psi)
    a, b, c = l1_norm(out), l1_norm(phi), l1_norm(psi)
    if a.is_rational() and b.is_rational() and c.is_rational():
        return a.as_fraction() <= b.as_fraction() * c.as_fraction()
    return float(a) <= float(b) * float(c) * (1 + 1e-12)


def right_identity(measure: QuotientMeasure) -> QuotientFunction:
    """``T_H(delta_e)``, an exact right identity for the quotient convolution."""
    psi0 = project(delta(measure.group, 0), measure)
    for c in range(len(measure.space)):
        phi = coset_delta(measure, c)
        if quotient_convolve(phi, psi0) != phi:
            raise InvariantError(f"T_H(delta_e) is not a right identity on coset {c}")
    return psi0


def left_identity_failure(measure: QuotientMeasure, seed: int = 0, trials: int = 20) -> Optional[QuotientFunction]:
    """A ``phi`` with ``psi0*phi != phi``, searching deltas first; None if none found."""
    psi0 = project(delta(measure.group, 0), measure)
    for c in range(len(measure.space)):
        phi = coset_delta(measure, c)
        if quotient_convolve(psi0, phi) != phi:
            return phi
    rng = random.Random(seed)
    for _ in range(trials):
        phi = random_qfunction(measure, rng)
        if quotient_convolve(psi0, phi) != phi:
            return phi
    return None
