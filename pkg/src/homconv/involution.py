"""Involutions on quotient algebras.

* the standard involution on ``L1(G)``;
* ``A^1`` (left-H-invariant functions on ``G/H``) with
  ``phi* = T_H((phi_pi)*)``, a genuine Banach *-algebra;
* the left/right involution-type maps ``phi -> T_H^r(f*)`` between the two
  coset spaces;
* membership in the set ``P(G/H)`` of functions with
  ``phi(x^-1 H) = eta(xH) conj(phi(xH))``;
* the kernel obstruction showing that ``T_H(f) -> T_H(f*)`` is well defined
  on all of ``L1(G/H)`` exactly when ``H`` is normal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import group_convolve, quotient_convolve
from .cosets import act, side_identification
from .errors import DomainError, HypothesisError, InvariantError
from .groups import double_cosets, is_normal, modular_function
from .linalg import nullspace, rank
from .measures import QuotientMeasure
from .sampling import random_gfunction
from .scalars import ONE, ZERO, QQi
from .transfer import (
    GFunction,
    QuotientFunction,
    kernel_basis,
    left_translate_g,
    lift,
    project,
)


def group_involution(f: GFunction) -> GFunction:
    """``f*(x) = Delta(x^-1) conj(f(x^-1))``."""
    g = f.group
    delta = modular_function(g)
    inv = g.inverse
    return GFunction(g, tuple(f.values[inv[x]].conjugate() * delta[inv[x]] for x in g.elements))


def _require_invariant(measure: QuotientMeasure, what: str) -> None:
    if not measure.g_invariant:
        raise HypothesisError(f"{what} needs a G-invariant measure")


# ---------------------------------------------------------------------------
# involution on A^1


@dataclass(frozen=True, eq=False)
class ApSpace:
    p: object
    measure: QuotientMeasure
    basis: tuple[QuotientFunction, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def is_left_h_invariant(phi: QuotientFunction) -> bool:
    """``L_h phi == phi`` for every ``h`` in ``H``."""
    space = phi.space
    if space.side != "left":
        raise ValueError("A^p lives on the left coset space")
    for h in space.subgroup:
        for c in range(len(space)):
            if phi.values[act(h, c, space)] != phi.values[c]:
                return False
    return True


def ap_space(measure: QuotientMeasure, p=1) -> ApSpace:
    """Basis of ``A^p``: indicators of the double cosets ``HxH`` as sets of cosets."""
    _require_invariant(measure, "ap_space")
    space = measure.space
    if space.side != "left":
        raise ValueError("A^p lives on the left coset space")
    basis = []
    for cls in double_cosets(space.group, space.subgroup):
        cosets = {space.coset_of[x] for x in cls}
        basis.append(QuotientFunction(measure, tuple(ONE if c in cosets else ZERO for c in range(len(space)))))
    for b in basis:
        if not is_left_h_invariant(b):
            raise InvariantError("double coset indicator is not left-H-invariant")
    return ApSpace(p, measure, tuple(basis))


def a1_involution(phi: QuotientFunction) -> QuotientFunction:
    """``phi* = T_H((phi_pi)*)`` on ``A^1``; raises ``DomainError`` off ``A^1``."""
    _require_invariant(phi.measure, "a1_involution")
    if not is_left_h_invariant(phi):
        raise DomainError("a1_involution is only defined on left-H-invariant functions")
    return project(group_involution(lift(phi)), phi.measure)


def quotient_group_involution(phi: QuotientFunction) -> QuotientFunction:
    """Standard involution of ``L1(G/H)`` when ``G/H`` is a group (``H`` normal)."""
    space = phi.space
    if not is_normal(space.group, space.subgroup):
        raise HypothesisError("G/H is a group only for normal H")
    inv = space.group.inverse
    return QuotientFunction(phi.measure, tuple(
        phi.values[space.coset_of[inv[rep]]].conjugate() for rep in space.reps))


# ---------------------------------------------------------------------------
# left/right involution-type maps


def _check_pair(source: QuotientMeasure, target: QuotientMeasure) -> None:
    _require_invariant(source, "the involution-type map")
    _require_invariant(target, "the involution-type map")
    if source.side == target.side:
        raise ValueError("the involution-type map goes between opposite coset sides")
    if not source.space.subgroup.same_as(target.space.subgroup):
        raise ValueError("coset spaces are built over different (G, H)")


def _cross_involution(phi: QuotientFunction, target: QuotientMeasure, f: Optional[GFunction]) -> QuotientFunction:
    _check_pair(phi.measure, target)
    if f is None:
        f = lift(phi)
    elif project(f, phi.measure) != phi:
        raise DomainError("supplied f does not project onto phi")
    return project(group_involution(f), target)


def lr_involution(phi: QuotientFunction, right: QuotientMeasure, f: Optional[GFunction] = None) -> QuotientFunction:
    """``phi^{*l,r} = T_H^r(f*)`` for any ``f`` with ``T_H(f) = phi``."""
    if phi.measure.side != "left":
        raise ValueError("lr_involution takes a left coset function")
    return _cross_involution(phi, right, f)


def rl_involution(phi: QuotientFunction, left: QuotientMeasure, f: Optional[GFunction] = None) -> QuotientFunction:
    """``phi^{*r,l} = T_H(f*)`` for any ``f`` with ``T_H^r(f) = phi``."""
    if phi.measure.side != "right":
        raise ValueError("rl_involution takes a right coset function")
    return _cross_involution(phi, left, f)


def identify_sides(phi: QuotientFunction, target: QuotientMeasure) -> QuotientFunction:
    """Re-index ``phi`` onto the opposite coset space; valid only for normal ``H``."""
    mapping = side_identification(phi.space, target.space)
    vals = [ZERO] * len(target.space)
    for c, d in enumerate(mapping):
        vals[d] = phi.values[c]
    return QuotientFunction(target, tuple(vals))


# ---------------------------------------------------------------------------
# P(G/H)


@dataclass(frozen=True)
class PSetResult:
    member: bool
    eta: Optional[tuple[QQi, ...]] = None
    reason: str = ""


def p_set_check(phi: QuotientFunction) -> PSetResult:
    """Decide whether some ``eta`` gives ``phi(x^-1 H) = eta(xH) conj(phi(xH))`` for all x.

    ``eta`` is solved where ``phi`` is nonzero and set to 0 elsewhere.
    """
    space = phi.space
    if space.side != "left":
        raise ValueError("P(G/H) is defined on the left coset space")
    g = space.group
    eta: list[Optional[QQi]] = [None] * len(space)
    for x in g.elements:
        c = space.coset_of[x]
        a = phi.values[space.coset_of[g.inverse[x]]]
        b = phi.values[c]
        if not b:
            if a:
                return PSetResult(False, None, f"phi vanishes on {space.label(c)} but not at x^-1 H for x={g.labels[x]}")
            continue
        cand = a / b.conjugate()
        if eta[c] is None:
            eta[c] = cand
        elif eta[c] != cand:
            return PSetResult(False, None, f"eta({space.label(c)}) is not consistent across representatives")
    result = PSetResult(True, tuple(ZERO if e is None else e for e in eta))
    if not is_left_h_invariant(phi):
        raise InvariantError("a member of P(G/H) is not left-H-invariant")
    return result


def p_set_family(measure: QuotientMeasure) -> list[QuotientFunction]:
    """Deterministic spanning family probed for ``P(G/H)`` membership.

    Coset deltas, pairwise sums ``delta_c + delta_d`` and ``delta_c + i delta_d``,
    double-coset indicators and the constant function.
    """
    n = len(measure.space)
    deltas = [tuple(ONE if k == c else ZERO for k in range(n)) for c in range(n)]
    fam = [QuotientFunction(measure, d) for d in deltas]
    i = QQi(0, 1)
    for c in range(n):
        for d in range(c + 1, n):
            fam.append(QuotientFunction(measure, tuple(a + b for a, b in zip(deltas[c], deltas[d]))))
            fam.append(QuotientFunction(measure, tuple(a + i * b for a, b in zip(deltas[c], deltas[d]))))
    if measure.g_invariant:
        fam.extend(ap_space(measure).basis)
    fam.append(QuotientFunction(measure, (ONE,) * n))
    return fam


def span_dimension(functions) -> int:
    return rank([list(f.values) for f in functions])


@dataclass
class PSetSummary:
    members: list[QuotientFunction]
    member_span_dim: int
    a1_dim: int
    quotient_dim: int


def p_set_analysis(measure: QuotientMeasure) -> PSetSummary:
    members = [phi for phi in p_set_family(measure) if p_set_check(phi).member]
    return PSetSummary(members, span_dimension(members), ap_space(measure).dim, len(measure.space))


# ---------------------------------------------------------------------------
# normality probe


@dataclass
class StarProbe:
    normal: bool
    kernel_star_stable: bool
    witness: Optional[GFunction]
    dims: dict = field(default_factory=dict)
    lemma_checked: int = 0
    star_homomorphism_checked: int = 0


def _kernel_stable_witness(measure: QuotientMeasure) -> Optional[GFunction]:
    basis = kernel_basis(measure)
    for f in basis:
        if not project(group_involution(f), measure).is_zero():
            return f
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            f = basis[i] + basis[j]
            if not project(group_involution(f), measure).is_zero():
                return f
    return None


def self_adjoint_lift_basis(measure: QuotientMeasure) -> list[GFunction]:
    """Real lifts ``f = phi_pi`` with ``f - f*`` in the kernel of ``T_H``.

    For real ``phi`` the condition ``T_H((phi_pi)*) = phi`` is rational-linear,
    so the solutions form the nullspace of ``M - I``.
    """
    space = measure.space
    n = len(space)
    cols = []
    for c in range(n):
        e = QuotientFunction(measure, tuple(ONE if k == c else ZERO for k in range(n)))
        cols.append([v.re for v in project(group_involution(lift(e)), measure).values])
    rows = [[cols[c][r] - (1 if r == c else 0) for c in range(n)] for r in range(n)]
    out = []
    for vec in nullspace(rows, n):
        out.append(lift(QuotientFunction(measure, tuple(QQi(v) for v in vec))))
    return out


def star_probe(measure: QuotientMeasure, seed: int = 0, samples: int = 5) -> StarProbe:
    """Kernel-star-stability versus normality, plus the supporting identities.

    * ``kernel_star_stable``: ``T_H f = 0`` implies ``T_H f* = 0`` on a kernel
      basis (and pairwise sums); a failing ``f`` is returned as ``witness``.
    * For random ``f`` in the span of self-adjoint lifts, ``L_h f - f`` lies
      in the kernel for every ``h`` in ``H``.
    * For normal ``H``, ``T_H`` is checked to be a *-homomorphism onto the
      quotient group algebra on random inputs.
    """
    _require_invariant(measure, "star_probe")
    if measure.side != "left":
        raise ValueError("star_probe works on the left coset space")
    space = measure.space
    g, sub = space.group, space.subgroup
    normal = is_normal(g, sub)
    witness = _kernel_stable_witness(measure)
    stable = witness is None
    if stable != normal:
        raise InvariantError(f"kernel-star-stability ({stable}) disagrees with normality ({normal})")
    if witness is not None:
        if not project(witness, measure).is_zero():
            raise InvariantError("witness is not in the kernel")

    rng = random.Random(seed)
    lemma = 0
    basis = self_adjoint_lift_basis(measure)
    if basis:
        for _ in range(samples):
            f = GFunction(g, (ZERO,) * g.order)
            for b in basis:
                f = f + b.scale(Fraction(rng.randint(-9, 9), rng.randint(1, 6)))
            if not project(f - group_involution(f), measure).is_zero():
                raise InvariantError("self-adjoint lift basis element fails f - f* in ker T_H")
            for h in sub:
                if not project(left_translate_g(h, f) - f, measure).is_zero():
                    raise InvariantError("L_h f - f is not in the kernel of T_H")
            lemma += 1

    homs = 0
    if normal:
        for _ in range(samples):
            f = random_gfunction(g, rng)
            k = random_gfunction(g, rng)
            if project(group_involution(f), measure) != quotient_group_involution(project(f, measure)):
                raise InvariantError("T_H does not intertwine the involutions for normal H")
            if project(group_convolve(f, k), measure) != quotient_convolve(project(f, measure), project(k, measure)):
                raise InvariantError("T_H is not multiplicative for normal H")
            homs += 1

    dims = {
        "quotient": len(space),
        "a1": ap_space(measure).dim,
        "double_cosets": len(double_cosets(g, sub)),
        "kernel": g.order - len(space),
    }
    return StarProbe(normal, stable, witness, dims, lemma, homs)
