"""Verification suites for one (G, H) pair, shared by the CLI and the tests.

Every check returns a :class:`Check` record. A failing check carries a
witness payload (function JSON) that reproduces the failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    convolve_via_any_lift,
    group_convolve,
    covariance_check,
    left_identity_failure,
    module_action,
    quotient_convolve,
    right_identity,
    submultiplicative,
)
from .errors import HomconvError
from .groups import FiniteGroup, Subgroup, double_cosets, is_normal
from .involution import (
    a1_involution,
    group_involution,
    ap_space,
    identify_sides,
    is_left_h_invariant,
    lr_involution,
    p_set_analysis,
    quotient_group_involution,
    rl_involution,
    star_probe,
)
from .measures import invariant_measure
from .sampling import random_fraction, random_gfunction, random_qfunction, random_qqi
from .transfer import (
    QuotientFunction,
    function_to_json,
    kernel_basis,
    l1_norm,
    lift,
    lp_power,
    project,
    t_h,
    weil_check,
)

SUITES = ("weil", "algebra", "involution-I", "involution-II", "probe")


@dataclass
class Check:
    name: str
    reference: str
    status: str  # pass | fail | skipped
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "reference": self.reference, "status": self.status, "details": self.details}


class _Failed(Exception):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


def _run(name: str, reference: str, body: Callable[[], dict]) -> Check:
    try:
        details = body() or {}
    except _Failed as exc:
        return Check(name, reference, "fail", {"error": str(exc), "witness": exc.witness})
    except HomconvError as exc:
        return Check(name, reference, "fail", {"error": f"{type(exc).__name__}: {exc}"})
    return Check(name, reference, "pass", details)


@dataclass
class PairContext:
    group: FiniteGroup
    subgroup: Subgroup
    seed: int = 0
    samples: int = 10

    def __post_init__(self):
        self.left = invariant_measure(self.group, self.subgroup, "left")
        self.right = invariant_measure(self.group, self.subgroup, "right")

    def rng(self, tag: str) -> random.Random:
        # one stream per check so selecting suites does not shift the others
        return random.Random(f"{self.seed}:{tag}")


def _fn(*fs) -> dict:
    return {f"f{k}": function_to_json(f) for k, f in enumerate(fs)}


# ---------------------------------------------------------------------------
# weil


def _weil_identity(ctx: PairContext) -> dict:
    rng = ctx.rng("weil")
    for _ in range(ctx.samples):
        f = random_gfunction(ctx.group, rng)
        res = weil_check(f, ctx.left)
        if not res.equal:
            raise _Failed(f"sum T_H f dmu = {res.lhs} but sum f = {res.rhs}", _fn(f))
    return {"samples": ctx.samples}


def _contraction(ctx: PairContext) -> dict:
    rng = ctx.rng("contraction")
    for _ in range(ctx.samples):
        f = random_gfunction(ctx.group, rng, complex_values=False)
        lhs, rhs = l1_norm(t_h(f, ctx.left)).as_fraction(), l1_norm(f).as_fraction()
        if lhs > rhs:
            raise _Failed(f"||T_H f||_1 = {lhs} exceeds ||f||_1 = {rhs}", _fn(f))
    return {"samples": ctx.samples}


def _total_mass(ctx: PairContext) -> dict:
    m = ctx.left.total_mass()
    if m != ctx.group.order:
        raise _Failed(f"quotient mass {m} != |G| = {ctx.group.order}")
    return {"total_mass": str(m)}


# ---------------------------------------------------------------------------
# algebra


def _associativity(ctx: PairContext) -> dict:
    rng = ctx.rng("assoc")
    for _ in range(ctx.samples):
        a, b, c = (random_qfunction(ctx.left, rng) for _ in range(3))
        if quotient_convolve(quotient_convolve(a, b), c) != quotient_convolve(a, quotient_convolve(b, c)):
            raise _Failed("(a*b)*c != a*(b*c)", _fn(a, b, c))
    return {"samples": ctx.samples}


def _covariance(ctx: PairContext) -> dict:
    rng = ctx.rng("covariance")
    a, b = random_qfunction(ctx.left, rng), random_qfunction(ctx.left, rng)
    for x in ctx.group.elements:
        if not covariance_check(x, a, b):
            raise _Failed(f"L_x(a*b) != (L_x a)*b at x={ctx.group.labels[x]}", _fn(a, b))
    return {"translations": ctx.group.order}


def _lift_identities(ctx: PairContext) -> dict:
    rng = ctx.rng("lift")
    for _ in range(ctx.samples):
        a, b = random_qfunction(ctx.left, rng), random_qfunction(ctx.left, rng)
        if project(lift(a), ctx.left) != a:
            raise _Failed("T_H(lift a) != a", _fn(a))
        if lift(quotient_convolve(a, b)) != group_convolve(lift(a), lift(b)):
            raise _Failed("lift(a*b) != lift(a)*lift(b)", _fn(a, b))
        if l1_norm(lift(a)) != l1_norm(a):
            raise _Failed("||lift a||_1 != ||a||_1", _fn(a))
        if lp_power(lift(a), 2) != lp_power(a, 2):
            raise _Failed("||lift a||_2 != ||a||_2", _fn(a))
    return {"samples": ctx.samples}


def _well_defined(ctx: PairContext) -> dict:
    rng = ctx.rng("welldef")
    basis = kernel_basis(ctx.left)
    a, b = random_qfunction(ctx.left, rng), random_qfunction(ctx.left, rng)
    ref = convolve_via_any_lift(a, lift(b))
    if ref != quotient_convolve(a, b):
        raise _Failed("T_H(a_pi * b_pi) differs from the quotient product", _fn(a, b))
    for k in basis:
        g = lift(b) + k.scale(random_fraction(rng) or 1)
        if convolve_via_any_lift(a, g) != ref:
            raise _Failed("result depends on the lift chosen", {**_fn(a, b), "kernel_element": function_to_json(k)})
    return {"kernel_dim": len(basis)}


def _submultiplicative(ctx: PairContext) -> dict:
    rng = ctx.rng("submult")
    for _ in range(ctx.samples):
        a = random_qfunction(ctx.left, rng, nonnegative=True)
        b = random_qfunction(ctx.left, rng, nonnegative=True)
        if not submultiplicative(a, b):
            raise _Failed("||a*b||_1 > ||a||_1 ||b||_1", _fn(a, b))
    return {"samples": ctx.samples}


def _module_action(ctx: PairContext) -> dict:
    rng = ctx.rng("module")
    for _ in range(ctx.samples):
        a, b = random_qfunction(ctx.left, rng), random_qfunction(ctx.left, rng)
        for p in (1, 2):
            try:
                module_action(a, b, p)
            except HomconvError as exc:
                raise _Failed(str(exc), _fn(a, b)) from exc
    return {"samples": ctx.samples, "p": [1, 2]}


def _right_identity(ctx: PairContext) -> dict:
    e = right_identity(ctx.left)
    return {"identity": function_to_json(e)}


def _left_identity(ctx: PairContext) -> dict:
    w = left_identity_failure(ctx.left, seed=ctx.seed)
    normal = is_normal(ctx.group, ctx.subgroup)
    if normal and w is not None:
        raise _Failed("T_H(delta_e) is not a two-sided identity although H is normal", _fn(w))
    if not normal and w is None:
        raise _Failed("no left-identity counterexample found for non-normal H")
    return {"two_sided": w is None, "witness": None if w is None else function_to_json(w)}


# ---------------------------------------------------------------------------
# involution-I


def _random_a1(rng: random.Random, basis) -> QuotientFunction:
    out = basis[0].scale(random_qqi(rng))
    for b in basis[1:]:
        out = out + b.scale(random_qqi(rng))
    return out


def _a1_dimension(ctx: PairContext) -> dict:
    dim = ap_space(ctx.left).dim
    dc = len(double_cosets(ctx.group, ctx.subgroup))
    if dim != dc:
        raise _Failed(f"dim A^1 = {dim} but there are {dc} double cosets")
    return {"dim": dim}


def _a1_closure(ctx: PairContext) -> dict:
    basis = ap_space(ctx.left).basis
    for a in basis:
        for b in basis:
            if not is_left_h_invariant(quotient_convolve(a, b)):
                raise _Failed("A^1 is not closed under convolution", _fn(a, b))
    return {"pairs": len(basis) ** 2}


def _a1_star_axioms(ctx: PairContext) -> dict:
    rng = ctx.rng("a1")
    basis = ap_space(ctx.left).basis
    for _ in range(ctx.samples):
        a, b = _random_a1(rng, basis), _random_a1(rng, basis)
        sa = a1_involution(a)
        if not is_left_h_invariant(sa):
            raise _Failed("phi* left A^1", _fn(a))
        if a1_involution(sa) != a:
            raise _Failed("phi** != phi", _fn(a))
        if a1_involution(quotient_convolve(a, b)) != quotient_convolve(a1_involution(b), sa):
            raise _Failed("(a*b)* != b* * a*", _fn(a, b))
        if l1_norm(sa) != l1_norm(a):
            raise _Failed("||phi*||_1 != ||phi||_1", _fn(a))
    return {"samples": ctx.samples}


# ---------------------------------------------------------------------------
# involution-II


def _double_involution(ctx: PairContext) -> dict:
    rng = ctx.rng("lr")
    for _ in range(ctx.samples):
        a = random_qfunction(ctx.left, rng)
        r = random_qfunction(ctx.right, rng)
        if rl_involution(lr_involution(a, ctx.right), ctx.left) != a:
            raise _Failed("(phi^{*l,r})^{*r,l} != phi", _fn(a))
        if lr_involution(rl_involution(r, ctx.left), ctx.right) != r:
            raise _Failed("(phi^{*r,l})^{*l,r} != phi", _fn(r))
    return {"samples": ctx.samples}


def _anti_homomorphism(ctx: PairContext) -> dict:
    rng = ctx.rng("lr-anti")
    for _ in range(ctx.samples):
        a, b = random_qfunction(ctx.left, rng), random_qfunction(ctx.left, rng)
        lhs = lr_involution(quotient_convolve(a, b), ctx.right)
        rhs = quotient_convolve(lr_involution(b, ctx.right), lr_involution(a, ctx.right))
        if lhs != rhs:
            raise _Failed("(a*b)^{*l,r} != b^{*l,r} *_r a^{*l,r}", _fn(a, b))
    return {"samples": ctx.samples}


def _lr_isometry(ctx: PairContext) -> dict:
    rng = ctx.rng("lr-iso")
    for _ in range(ctx.samples):
        a = random_qfunction(ctx.left, rng)
        if l1_norm(lr_involution(a, ctx.right)) != l1_norm(a):
            raise _Failed("||phi^{*l,r}||_1 != ||phi||_1", _fn(a))
    return {"samples": ctx.samples}


def _abelian_agreement(ctx: PairContext) -> Check:
    name, ref = "lr_matches_standard_involution", "left/right involution, abelian case"
    if not ctx.group.is_abelian():
        return Check(name, ref, "skipped", {"reason": "group is not abelian"})

    def body():
        rng = ctx.rng("lr-abelian")
        for _ in range(ctx.samples):
            a = random_qfunction(ctx.left, rng)
            if identify_sides(lr_involution(a, ctx.right), ctx.left) != quotient_group_involution(a):
                raise _Failed("lr involution differs from the quotient group involution", _fn(a))
        return {"samples": ctx.samples}

    return _run(name, ref, body)


# ---------------------------------------------------------------------------
# probe


def _star_probe(ctx: PairContext) -> dict:
    res = star_probe(ctx.left, seed=ctx.seed)
    out = {
        "normal": res.normal,
        "kernel_star_stable": res.kernel_star_stable,
        "dims": res.dims,
        "witness": None if res.witness is None else function_to_json(res.witness),
    }
    if res.witness is not None:
        if not project(res.witness, ctx.left).is_zero():
            raise _Failed("witness is not in the kernel of T_H")
        out["witness_star_image"] = function_to_json(project(group_involution(res.witness), ctx.left))
    return out


def _p_set(ctx: PairContext) -> dict:
    summary = p_set_analysis(ctx.left)
    for phi in summary.members:
        if not is_left_h_invariant(phi):
            raise _Failed("member of P(G/H) outside A^p", _fn(phi))
    return {
        "members": len(summary.members),
        "member_span_dim": summary.member_span_dim,
        "a1_dim": summary.a1_dim,
        "quotient_dim": summary.quotient_dim,
    }


_TABLE: dict[str, list[tuple[str, str, Callable]]] = {
    "weil": [
        ("weil_formula", "Weil formula", _weil_identity),
        ("t_h_contraction", "T_H is an L1 contraction", _contraction),
        ("total_mass", "quotient measure normalisation", _total_mass),
    ],
    "algebra": [
        ("associativity", "Banach algebra", _associativity),
        ("submultiplicativity", "Banach algebra", _submultiplicative),
        ("covariance", "left translation covariance", _covariance),
        ("lift_identities", "lift is an isometric homomorphism", _lift_identities),
        ("well_defined", "independence of the lift", _well_defined),
        ("module_action", "L1 acting on Lp", _module_action),
        ("right_identity", "right identity T_H(delta_e)", _right_identity),
        ("left_identity", "left identity fails off normal H", _left_identity),
    ],
    "involution-I": [
        ("a1_dimension", "A^1 indexed by double cosets", _a1_dimension),
        ("a1_closure", "A^1 is a subalgebra", _a1_closure),
        ("a1_star_axioms", "A^1 is a Banach *-algebra", _a1_star_axioms),
    ],
    "involution-II": [
        ("double_involution", "left/right involution is order two", _double_involution),
        ("anti_homomorphism", "left/right involution reverses products", _anti_homomorphism),
        ("isometry", "left/right involution is isometric", _lr_isometry),
    ],
    "probe": [
        ("kernel_star_dichotomy", "kernel star-stability iff normal", _star_probe),
        ("p_set", "P(G/H) lies in A^p", _p_set),
    ],
}


def run_suite(ctx: PairContext, suite: str) -> list[Check]:
    if suite not in _TABLE:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    checks = [_run(name, ref, lambda fn=fn: fn(ctx)) for name, ref, fn in _TABLE[suite]]
    if suite == "involution-II":
        checks.append(_abelian_agreement(ctx))
    return checks


def run_suites(ctx: PairContext, suites) -> list[Check]:
    out = []
    for s in suites:
        out.extend(run_suite(ctx, s))
    return out


def check_names(suite: str) -> list[str]:
    names = [name for name, _, _ in _TABLE[suite]]
    if suite == "involution-II":
        names.append("lr_matches_standard_involution")
    return names

