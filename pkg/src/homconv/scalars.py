"""Exact scalars: Gaussian rationals and sums of rational square roots.

Complex values of the finite backend are pairs of ``Fraction``. Moduli
``|z|`` are irrational in general, so exact L1 norms are carried as
:class:`SurdSum` (a rational combination of square roots of integers).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import FormatError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``.

    Floats are rejected: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise FormatError("empty rational string")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational string {value!r}") from exc
    raise FormatError(f"not a rational: {value!r}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QQi:
    """Gaussian rational ``re + i*im`` with ``Fraction`` components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_fraction(re)
        self.im = to_fraction(im)

    @classmethod
    def coerce(cls, value) -> QQi:
        if isinstance(value, QQi):
            return value
        if isinstance(value, (tuple, list)):
            if len(value) != 2:
                raise FormatError(f"complex rational needs [re, im], got {value!r}")
            return cls(value[0], value[1])
        if isinstance(value, complex):
            raise FormatError("float complex values are not exact")
        return cls(value)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return _mk(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return _mk(a * c, _ZERO)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return _mk(self.re / o.re, self.im / o.re)
        n = o.abs2()
        return self * o.conjugate() * _mk(1 / n, _ZERO)

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> QQi:
        return _mk(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QQi({format_fraction(self.re)!r}, {format_fraction(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_fraction(self.re)
        return f"{format_fraction(self.re)}{'+' if self.im >= 0 else '-'}{format_fraction(abs(self.im))}i"

    def to_json(self) -> list[str]:
        return [format_fraction(self.re), format_fraction(self.im)]


def _mk(re: Fraction, im: Fraction) -> QQi:
    z = QQi.__new__(QQi)
    z.re = re
    z.im = im
    return z


def _maybe(value):
    if isinstance(value, QQi):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return _mk(Fraction(value), _ZERO)
    return None


ZERO = _mk(_ZERO, _ZERO)
ONE = _mk(_ONE, _ZERO)
I = _mk(_ZERO, _ONE)


# --------------------------------------------------------------------------
# exact square roots

_SMALL_PRIMES: list[int] = []


def _primes(limit: int = 2000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, int(limit**0.5) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _SMALL_PRIMES.extend(i for i, flag in enumerate(sieve) if flag)
    return _SMALL_PRIMES


def split_square(n: int) -> tuple[int, int]:
    """Write ``n = a*a*r`` with ``r`` free of small squared primes.

    ``r`` is squarefree unless ``n`` has a repeated prime factor above the
    trial-division bound; the decomposition is deterministic either way, so
    equal inputs always map to equal keys.
    """
    if n <= 0:
        raise ValueError("split_square needs a positive integer")
    a, r = 1, 1
    for p in _primes():
        if p * p > n:
            break
        pp = p * p
        while n % pp == 0:
            n //= pp
            a *= p
        if n % p == 0:
            n //= p
            r *= p
    root = math.isqrt(n)
    if root * root == n:
        return a * root, r
    return a, r * n


def sqrt_rational(q: Fraction) -> tuple[Fraction, int]:
    """Return ``(c, r)`` with ``sqrt(q) == c * sqrt(r)`` exactly."""
    if q < 0:
        raise ValueError("square root of a negative rational")
    if not q:
        return _ZERO, 1
    # sqrt(p/d) = sqrt(p*d)/d
    a, r = split_square(q.numerator * q.denominator)
    return Fraction(a, q.denominator), r


class SurdSum:
    """Exact value ``sum_r c_r * sqrt(r)`` with rational ``c_r``.

    Used for L1 norms of complex rational functions. Equality is exact:
    square roots of distinct squarefree integers are linearly independent
    over the rationals.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for r, c in (terms or {}).items():
            if c:
                clean[r] = clean.get(r, _ZERO) + to_fraction(c)
        self.terms = {r: c for r, c in clean.items() if c}

    @classmethod
    def rational(cls, q) -> SurdSum:
        return cls({1: to_fraction(q)})

    @classmethod
    def sqrt_of(cls, q: Fraction, coefficient=_ONE) -> SurdSum:
        c, r = sqrt_rational(to_fraction(q))
        return cls({r: c * to_fraction(coefficient)})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out.get(r, _ZERO) + c
        return SurdSum(out)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SurdSum({r: c * other for r, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __float__(self):
        return float(sum(float(c) * math.sqrt(r) for r, c in self.terms.items()))

    def is_rational(self) -> bool:
        return set(self.terms) <= {1}

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, _ZERO)

    def __repr__(self):
        return f"SurdSum({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for r in sorted(self.terms):
            c = format_fraction(self.terms[r])
            parts.append(c if r == 1 else f"{c}*sqrt({r})")
        return " + ".join(parts)
