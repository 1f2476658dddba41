"""Functions on G and on G/H, the fibre operators P_H, T_H, T_H^r, and lifts.

Scalars are exact Gaussian rationals (:class:`~homconv.scalars.QQi`).
Norms on ``G`` use counting measure; norms on ``G/H`` use the weights of
the attached :class:`~homconv.measures.QuotientMeasure`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .cosets import CosetSpace
from .errors import FormatError, NormError
from .groups import FiniteGroup, Subgroup
from .linalg import nullspace
from .measures import QuotientMeasure, measure_from_rho
from .scalars import ONE, ZERO, QQi, SurdSum, sqrt_rational

_ZQ = Fraction(0)


def _coerce_values(values: Iterable) -> tuple[QQi, ...]:
    return tuple(QQi.coerce(v) for v in values)


class _Vector:
    values: tuple[QQi, ...]

    def _new(self, values):  # pragma: no cover - overridden
        raise NotImplementedError

    def _check(self, other):
        raise NotImplementedError

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __add__(self, other):
        self._check(other)
        return self._new(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return self._new(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return self._new(tuple(-a for a in self.values))

    def scale(self, c) -> "_Vector":
        c = QQi.coerce(c)
        return self._new(tuple(c * a for a in self.values))

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, QQi)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self):
        return self._new(tuple(a.conjugate() for a in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_real(self) -> bool:
        return all(v.is_real for v in self.values)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v]

    def to_complex(self) -> list[complex]:
        return [complex(v) for v in self.values]


@dataclass(frozen=True, eq=False)
class GFunction(_Vector):
    """A function on a finite group, indexed by element id."""

    group: FiniteGroup
    values: tuple[QQi, ...]

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise FormatError(f"{len(self.values)} values for a group of order {self.group.order}")

    def _new(self, values):
        return GFunction(self.group, values)

    def _check(self, other):
        if not isinstance(other, GFunction) or not self.group.same_as(other.group):
            raise ValueError("functions live on different groups")

    def __eq__(self, other):
        if not isinstance(other, GFunction):
            return NotImplemented
        return self.group.same_as(other.group) and self.values == other.values

    __hash__ = None

    def __repr__(self):
        return f"GFunction({self.group.name}, [{', '.join(map(str, self.values))}])"


@dataclass(frozen=True, eq=False)
class QuotientFunction(_Vector):
    """A function on a coset space, indexed by coset index, with its measure."""

    measure: QuotientMeasure
    values: tuple[QQi, ...]

    def __post_init__(self):
        if len(self.values) != len(self.measure.space):
            raise FormatError(f"{len(self.values)} values for {len(self.measure.space)} cosets")

    @property
    def space(self) -> CosetSpace:
        return self.measure.space

    @property
    def group(self) -> FiniteGroup:
        return self.measure.space.group

    def _new(self, values):
        return QuotientFunction(self.measure, values)

    def _check(self, other):
        if not isinstance(other, QuotientFunction) or not self.measure.compatible(other.measure):
            raise ValueError("functions live on different quotient measures")

    def __eq__(self, other):
        if not isinstance(other, QuotientFunction):
            return NotImplemented
        return self.measure.compatible(other.measure) and self.values == other.values

    __hash__ = None

    def __repr__(self):
        return f"QuotientFunction({self.space.side}, [{', '.join(map(str, self.values))}])"


AnyFunction = Union[GFunction, QuotientFunction]


# ---------------------------------------------------------------------------
# constructors


def gfunction(group: FiniteGroup, values: Sequence) -> GFunction:
    return GFunction(group, _coerce_values(values))


def qfunction(measure: QuotientMeasure, values: Sequence) -> QuotientFunction:
    return QuotientFunction(measure, _coerce_values(values))


def delta(group: FiniteGroup, a: int = 0) -> GFunction:
    return GFunction(group, tuple(ONE if x == a else ZERO for x in group.elements))


def coset_delta(measure: QuotientMeasure, c: int) -> QuotientFunction:
    return QuotientFunction(measure, tuple(ONE if k == c else ZERO for k in range(len(measure.space))))


def constant(domain, value=1) -> AnyFunction:
    v = QQi.coerce(value)
    if isinstance(domain, FiniteGroup):
        return GFunction(domain, (v,) * domain.order)
    return QuotientFunction(domain, (v,) * len(domain.space))


def indicator(group: FiniteGroup, ids: Iterable[int]) -> GFunction:
    s = set(ids)
    return GFunction(group, tuple(ONE if x in s else ZERO for x in group.elements))


# ---------------------------------------------------------------------------
# fibre operators


def p_h(f: GFunction, space: CosetSpace, measure: QuotientMeasure | None = None) -> QuotientFunction:
    """``P_H(f)(xH) = (1/|H|) sum_h f(xh)``; representative independent."""
    if space.side != "left":
        raise ValueError("P_H is defined on the left coset space")
    if measure is None:
        measure = measure_from_rho(space)
    t, sub = f.group.table, space.subgroup
    inv_h = Fraction(1, sub.order)
    vals = []
    for rep in space.reps:
        acc = ZERO
        for h in sub:
            acc = acc + f.values[t[rep][h]]
        vals.append(acc * inv_h)
    return QuotientFunction(measure, tuple(vals))


def _fibre_average(f: GFunction, measure: QuotientMeasure) -> QuotientFunction:
    space = measure.space
    if not f.group.same_as(space.group):
        raise ValueError("function and measure live on different groups")
    t, sub, rho = f.group.table, space.subgroup, measure.rho
    inv_h = Fraction(1, sub.order)
    left = space.side == "left"
    flat = rho.is_constant()
    if flat:
        inv_h /= rho.values[0]
    vals = []
    for rep in space.reps:
        re = im = _ZQ
        for h in sub:
            y = t[rep][h] if left else t[h][rep]
            z = f.values[y]
            if flat:
                re += z.re
                im += z.im
            else:
                r = rho.values[y]
                re += z.re / r
                im += z.im / r
        vals.append(QQi(re * inv_h, im * inv_h))
    return QuotientFunction(measure, tuple(vals))


def t_h(f: GFunction, measure: QuotientMeasure) -> QuotientFunction:
    """``T_H(f)(xH) = (1/|H|) sum_h f(xh) / rho(xh)``."""
    if measure.side != "left":
        raise ValueError("t_h needs a measure on the left coset space; use t_h_r for right cosets")
    return _fibre_average(f, measure)


def t_h_r(f: GFunction, measure: QuotientMeasure) -> QuotientFunction:
    """``T_H^r(f)(Hx) = (1/|H|) sum_h f(hx)`` on the right coset space."""
    if measure.side != "right":
        raise ValueError("t_h_r needs a measure on the right coset space")
    return _fibre_average(f, measure)


def project(f: GFunction, measure: QuotientMeasure) -> QuotientFunction:
    """``T_H`` or ``T_H^r`` depending on the side of ``measure``."""
    return _fibre_average(f, measure)


def lift(phi: QuotientFunction) -> GFunction:
    """``phi_pi(x) = rho(x) * phi(pi(x))``; right-H-invariant for left cosets."""
    m = phi.measure
    coset_of, rho = m.space.coset_of, m.rho.values
    return GFunction(m.group, tuple(phi.values[coset_of[x]] * rho[x] for x in m.group.elements))


def kernel_basis(measure: QuotientMeasure) -> list[GFunction]:
    """Rational basis of ``{f : T_H f = 0}`` by Gaussian elimination."""
    space, group = measure.space, measure.group
    hs = space.subgroup.order
    rows = []
    for k in range(len(space)):
        row = [_ZQ] * group.order
        for y in space.members[k]:
            row[y] = 1 / (hs * measure.rho.values[y])
        rows.append(row)
    basis = nullspace(rows, group.order)
    return [GFunction(group, tuple(QQi(v) for v in vec)) for vec in basis]


# ---------------------------------------------------------------------------
# translations and invariance on G


def left_translate_g(x: int, f: GFunction) -> GFunction:
    """``(L_x f)(y) = f(x^-1 y)``."""
    g = f.group
    xi = g.inverse[x]
    return GFunction(g, tuple(f.values[g.table[xi][y]] for y in g.elements))


def right_translate_g(h: int, f: GFunction) -> GFunction:
    """``(R_h f)(y) = f(yh)``."""
    g = f.group
    return GFunction(g, tuple(f.values[g.table[y][h]] for y in g.elements))


def is_right_invariant(f: GFunction, sub: Subgroup) -> bool:
    return all(right_translate_g(h, f) == f for h in sub)


def is_left_invariant(f: GFunction, sub: Subgroup) -> bool:
    return all(left_translate_g(h, f) == f for h in sub)


def right_invariant_part(f: GFunction, sub: Subgroup) -> GFunction:
    """Average of ``R_h f`` over ``h`` in ``H``; fixes exactly the lifts."""
    g = f.group
    w = Fraction(1, sub.order)
    return GFunction(g, tuple(sum((f.values[g.table[y][h]] for h in sub), ZERO) * w for y in g.elements))


# ---------------------------------------------------------------------------
# Weil formula and norms


@dataclass(frozen=True)
class WeilResult:
    lhs: QQi
    rhs: QQi
    equal: bool


def weil_check(f: GFunction, measure: QuotientMeasure) -> WeilResult:
    """Compare ``sum_c T_H(f)(c) weight(c)`` with ``sum_x f(x)`` exactly."""
    phi = project(f, measure)
    lhs = sum((v * w for v, w in zip(phi.values, measure.weights)), ZERO)
    rhs = sum(f.values, ZERO)
    return WeilResult(lhs, rhs, lhs == rhs)


def weights(fn: AnyFunction) -> tuple[Fraction, ...]:
    if isinstance(fn, GFunction):
        return (Fraction(1),) * len(fn.values)
    return fn.measure.weights


def l1_norm(fn: AnyFunction) -> SurdSum:
    """Exact L1 norm as a rational combination of square roots."""
    terms: dict[int, Fraction] = {}
    for v, w in zip(fn.values, weights(fn)):
        if not v:
            continue
        if v.is_real:
            c, r = abs(v.re), 1
        else:
            c, r = sqrt_rational(v.abs2())
        terms[r] = terms.get(r, _ZQ) + c * w
    return SurdSum(terms)


def _check_p(p):
    if p == math.inf or p == "inf":
        return math.inf
    try:
        p = Fraction(p)
    except (TypeError, ValueError):
        raise NormError(f"bad exponent {p!r}") from None
    if p < 1:
        raise NormError(f"p must be >= 1, got {p}")
    return p


def lp_power(fn: AnyFunction, p) -> Fraction:
    """Exact ``sum w |v|^p`` for integer ``p`` (even ``p`` for complex values)."""
    p = _check_p(p)
    if p == math.inf or p.denominator != 1:
        raise NormError("exact p-th power sums need an integer exponent")
    k = int(p)
    total = _ZQ
    for v, w in zip(fn.values, weights(fn)):
        if not v:
            continue
        if k % 2 == 0:
            total += w * v.abs2() ** (k // 2)
        elif v.is_real:
            total += w * abs(v.re) ** k
        else:
            raise NormError("odd p on complex values has no exact power sum")
    return total


def _exact_root(q: Fraction, k: int):
    def iroot(n):
        r = round(n ** (1.0 / k)) if n < 2**1000 else int(math.exp(math.log(n) / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == n:
                return cand
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def lp_norm(fn: AnyFunction, p=1):
    """Weighted p-norm; ``Fraction`` when the value is rational, ``float`` otherwise."""
    p = _check_p(p)
    if p == math.inf:
        if not fn.values:
            return _ZQ
        m = max(v.abs2() for v in fn.values)
        c, r = sqrt_rational(m)
        return c if r == 1 else math.sqrt(m)
    if p == 1:
        s = l1_norm(fn)
        return s.as_fraction() if s.is_rational() else float(s)
    if p.denominator == 1 and (int(p) % 2 == 0 or fn.is_real()):
        power = lp_power(fn, p)
        root = _exact_root(power, int(p))
        return root if root is not None else float(power) ** (1.0 / float(p))
    pf = float(p)
    return sum(float(w) * abs(v) ** pf for v, w in zip(fn.values, weights(fn))) ** (1.0 / pf)


# ---------------------------------------------------------------------------
# JSON


def function_to_json(fn: AnyFunction) -> dict:
    out = {"values": [v.to_json() for v in fn.values]}
    if isinstance(fn, GFunction):
        out["domain"] = "group"
    else:
        out["domain"] = "quotient"
        out["side"] = fn.space.side
    return out


def function_from_json(payload: dict, group: FiniteGroup | None = None,
                       measure: QuotientMeasure | None = None) -> AnyFunction:
    if not isinstance(payload, dict) or "values" not in payload:
        raise FormatError("function JSON needs a 'values' list")
    domain = payload.get("domain", "quotient" if measure is not None else "group")
    values = payload["values"]
    if not isinstance(values, list) or not values:
        raise FormatError("function JSON has no values")
    if domain == "group":
        if group is None:
            raise FormatError("a group is needed to read a group function")
        return gfunction(group, values)
    if domain == "quotient":
        if measure is None:
            raise FormatError("a quotient measure is needed to read a quotient function")
        side = payload.get("side", measure.side)
        if side != measure.side:
            raise FormatError(f"function is on the {side} coset space, measure on the {measure.side}")
        return qfunction(measure, values)
    raise FormatError(f"unknown function domain {domain!r}")
