"""Gaussian elimination over the rationals (and Gaussian rationals)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; pivots chosen as the first nonzero entry.

    Works for any field-like scalars (``Fraction``, ``QQi``). Returns the
    reduced rows and the pivot column list.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, zero=Fraction(0), one=Fraction(1)) -> list[list]:
    """Basis of ``{v : A v = 0}``, one vector per free column, in column order."""
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])
