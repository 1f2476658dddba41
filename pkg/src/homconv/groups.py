"""Finite groups as Cayley tables.

Element ids are dense integers ``0..order-1`` and id 0 is always the
identity. Haar measure on a group is counting measure; on a subgroup it is
normalised (weight ``1/|H|`` per element).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, GroupConstructionError, SubgroupError

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 256
SAMPLED_TRIPLES = 1000
SAMPLING_SEED = 0


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = "group"
    identity: int = 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, h: int) -> int:
        """``x h x^-1``."""
        return self.table[self.table[x][h]][self.inverse[x]]

    @property
    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def same_as(self, other: FiniteGroup) -> bool:
        return self is other or self.table == other.table

    def parse_element(self, token: str | int) -> int:
        """Resolve an element given by id or by label (spaces ignored)."""
        if isinstance(token, int):
            if not 0 <= token < self.order:
                raise SubgroupError(f"element id {token} out of range for order {self.order}")
            return token
        text = token.strip().replace(" ", "")
        for i, lab in enumerate(self.labels):
            if lab.replace(" ", "") == text:
                return i
        if text in ("e", "1", "id") and text not in self.labels:
            return 0
        try:
            return self.parse_element(int(text))
        except ValueError:
            raise SubgroupError(f"unknown element {token!r} in {self.name}") from None

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "labels": list(self.labels)}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    _member_set: frozenset = field(repr=False, default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def same_as(self, other: Subgroup) -> bool:
        return self.parent.same_as(other.parent) and self.members == other.members

    def __repr__(self):
        labs = ",".join(self.parent.labels[m] for m in self.members)
        return f"Subgroup({self.parent.name}, {{{labs}}})"


# ---------------------------------------------------------------------------
# construction


def group_from_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                     name: str = "group") -> FiniteGroup:
    """Validate a Cayley table and wrap it.

    Raises ``GroupConstructionError`` naming the failing row, column or
    triple when the table is not a group with identity at id 0.
    """
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise GroupConstructionError(f"table is not an integer matrix: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupConstructionError(f"table must be a non-empty square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise GroupConstructionError(f"table entries must lie in 0..{n - 1}")
    want = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), want):
            raise GroupConstructionError(f"row {i} is not a permutation (not a Latin square)")
        if not np.array_equal(np.sort(arr[:, i]), want):
            raise GroupConstructionError(f"column {i} is not a permutation (not a Latin square)")
    if not (np.array_equal(arr[0], want) and np.array_equal(arr[:, 0], want)):
        raise GroupConstructionError("element 0 is not a two-sided identity")
    _check_associative(arr)
    inverse = tuple(int(np.flatnonzero(arr[i] == 0)[0]) for i in range(n))
    for i, j in enumerate(inverse):
        if arr[j, i] != 0:
            raise GroupConstructionError(f"element {j} is a right but not a left inverse of {i}")
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise GroupConstructionError(f"{len(labels)} labels for a group of order {n}")
    return FiniteGroup(order=n, table=tuple(tuple(int(v) for v in row) for row in arr),
                       inverse=inverse, labels=tuple(str(s) for s in labels), name=name)


def _check_associative(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        left = arr[arr[:, :, None], np.arange(n)[None, None, :]]
        # left[i, j, k] = (i*j)*k ; right[i, j, k] = i*(j*k)
        right = arr[np.arange(n)[:, None, None], arr[None, :, :]]
        bad = np.argwhere(left != right)
        if bad.size:
            i, j, k = (int(v) for v in bad[0])
            raise GroupConstructionError(f"associativity fails for triple ({i}, {j}, {k})")
        return
    rng = np.random.default_rng(SAMPLING_SEED)
    trip = rng.integers(0, n, size=(SAMPLED_TRIPLES, 3))
    i, j, k = trip.T
    bad = np.flatnonzero(arr[arr[i, j], k] != arr[i, arr[j, k]])
    if bad.size:
        a, b, c = (int(v) for v in trip[bad[0]])
        raise GroupConstructionError(f"associativity fails for triple ({a}, {b}, {c})")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupConstructionError("cyclic group needs n >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(table, [str(i) for i in range(n)], name=f"cyclic:{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: ids ``k`` = r^k, ``n+k`` = s r^k."""
    if n < 1:
        raise GroupConstructionError("dihedral group needs n >= 1")

    def mul(a, b):
        sa, ka = divmod(a, n)
        sb, kb = divmod(b, n)
        # r^a s = s r^-a
        k = (kb - ka) % n if sb else (ka + kb) % n
        return ((sa ^ sb) * n) + k

    table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
    labels = ["e"] + [f"r{k}" for k in range(1, n)] + ["s"] + [f"sr{k}" for k in range(1, n)]
    return group_from_table(table, labels, name=f"dihedral:{n}")


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        out.append("(" + "".join(cyc) + ")")
    return "".join(out) or "e"


def symmetric(n: int) -> FiniteGroup:
    """Permutations of {1..n}; ``(s t)(i) = s(t(i))``, labels in cycle notation."""
    if not 1 <= n <= 5:
        raise GroupConstructionError("symmetric groups are supported for 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    return group_from_table(table, [_cycle_label(p) for p in perms], name=f"symmetric:{n}")


def quaternion8() -> FiniteGroup:
    units = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}
    elems, labels = [], []
    for name, q in units.items():
        elems.append(q)
        labels.append(name)
        elems.append(tuple(-c for c in q))
        labels.append("-" + name)

    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    index = {q: i for i, q in enumerate(elems)}
    table = [[index[qmul(p, q)] for q in elems] for p in elems]
    return group_from_table(table, labels, name="quaternion:8")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    nb = b.order
    n = a.order * nb
    table = [[a.table[i // nb][j // nb] * nb + b.table[i % nb][j % nb] for j in range(n)] for i in range(n)]
    labels = [f"({a.labels[i // nb]},{b.labels[i % nb]})" for i in range(n)]
    return group_from_table(table, labels, name=f"product:{a.name},{b.name}")


def build_group(spec) -> FiniteGroup:
    """Build a group from a family string, a JSON dict, or a group.

    Family strings: ``cyclic:4``, ``dihedral:5``, ``symmetric:4``,
    ``quaternion:8``, ``product:cyclic:2,cyclic:3``.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, dict):
        if "table" not in spec:
            raise FormatError("group JSON needs a 'table' field")
        g = group_from_table(spec["table"], spec.get("labels"), name=spec.get("name", "explicit"))
        if "order" in spec and spec["order"] != g.order:
            raise GroupConstructionError(f"declared order {spec['order']} != table size {g.order}")
        return g
    if not isinstance(spec, str):
        raise FormatError(f"unsupported group spec {spec!r}")
    text = spec.strip()
    if text.startswith("{"):
        try:
            return build_group(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad group JSON: {exc}") from exc
    family, _, arg = text.partition(":")
    if family == "product":
        parts = _split_product(arg)
        if len(parts) < 2:
            raise FormatError(f"product needs at least two factors: {spec!r}")
        g = build_group(parts[0])
        for p in parts[1:]:
            g = direct_product(g, build_group(p))
        return g
    try:
        k = int(arg)
    except ValueError:
        raise FormatError(f"bad group spec {spec!r}") from None
    if family == "cyclic":
        return cyclic(k)
    if family == "dihedral":
        return dihedral(k)
    if family == "symmetric":
        return symmetric(k)
    if family == "quaternion":
        if k != 8:
            raise FormatError("only quaternion:8 is supported")
        return quaternion8()
    raise FormatError(f"unknown group family {family!r}")


def _split_product(arg: str) -> list[str]:
    return [p.strip() for p in arg.split(",") if p.strip()]


# ---------------------------------------------------------------------------
# subgroups


def is_subgroup(group: FiniteGroup, ids: Iterable[int]) -> bool:
    s = set(ids)
    if not s or any(not 0 <= x < group.order for x in s):
        raise SubgroupError("subset must be non-empty with valid ids")
    t, inv = group.table, group.inverse
    return all(inv[a] in s for a in s) and all(t[a][b] in s for a in s for b in s)


def make_subgroup(group: FiniteGroup, ids: Iterable[int | str]) -> Subgroup:
    members = sorted({group.parse_element(x) for x in ids})
    if not is_subgroup(group, members):
        raise SubgroupError(f"{[group.labels[m] for m in members]} is not a subgroup of {group.name}")
    return Subgroup(group, tuple(members))


def parse_subgroup(group: FiniteGroup, text: str) -> Subgroup:
    """Parse ``"0,2"`` or ``"e,(12)"`` into a subgroup; labels win over ids."""
    tokens = [t for t in _split_outside_parens(text) if t.strip()]
    if not tokens:
        raise SubgroupError("empty subgroup list")
    return make_subgroup(group, tokens)


def _split_outside_parens(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def generated_subgroup(group: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    members = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.table[x][g]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def all_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, members)."""
    found = {generated_subgroup(group, [g]) for g in group.elements}
    frontier = list(found)
    while frontier:
        nxt = []
        for sub in frontier:
            for g in group.elements:
                if g in sub:
                    continue
                bigger = generated_subgroup(group, list(sub) + [g])
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [Subgroup(group, tuple(sorted(s))) for s in subs]


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (0,))


def whole_group(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(group.elements))


def is_normal(group: FiniteGroup, sub: Subgroup) -> bool:
    return all(group.conj(x, h) in sub for x in group.elements for h in sub)


def double_cosets(group: FiniteGroup, sub: Subgroup) -> list[tuple[int, ...]]:
    """Partition of ``G`` into classes ``HxH``; the class of the identity comes first."""
    t = group.table
    seen: set[int] = set()
    classes = []
    for x in group.elements:
        if x in seen:
            continue
        cls = sorted({t[t[h1][x]][h2] for h1 in sub for h2 in sub})
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


def modular_function(group: FiniteGroup) -> tuple[Fraction, ...]:
    """Finite groups are unimodular; kept explicit so formulas can cite it."""
    return tuple(Fraction(1) for _ in group.elements)
