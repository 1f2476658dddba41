"""Left and right coset spaces, the G-action on them, and the map xH -> Hx^-1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import SubgroupError
from .groups import FiniteGroup, Subgroup, is_subgroup

Side = Literal["left", "right"]


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Cosets ``xH`` (side="left") or ``Hx`` (side="right").

    ``reps[k]`` is the smallest element id of coset ``k`` and ``coset_of``
    maps every element to its coset index; coset 0 contains the identity.
    """

    side: Side
    group: FiniteGroup
    subgroup: Subgroup
    reps: tuple[int, ...]
    coset_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def size(self) -> int:
        return len(self.reps)

    def project(self, x: int) -> int:
        return self.coset_of[x]

    def compatible(self, other: CosetSpace) -> bool:
        return self is other or (self.side == other.side and self.subgroup.same_as(other.subgroup))

    def label(self, c: int) -> str:
        rep = self.group.labels[self.reps[c]]
        return f"{rep}H" if self.side == "left" else f"H{rep}"

    def __repr__(self):
        return f"CosetSpace({self.side}, {self.group.name}, |H|={self.subgroup.order}, n={len(self)})"


def build_cosets(group: FiniteGroup, sub: Subgroup, side: Side = "left") -> CosetSpace:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not sub.parent.same_as(group) or not is_subgroup(group, sub.members):
        raise SubgroupError(f"{sub!r} is not a subgroup of {group!r}")
    t = group.table
    coset_of = [-1] * group.order
    reps, members = [], []
    for x in group.elements:
        if coset_of[x] >= 0:
            continue
        k = len(reps)
        cos = sorted(t[x][h] for h in sub) if side == "left" else sorted(t[h][x] for h in sub)
        for y in cos:
            coset_of[y] = k
        reps.append(x)
        members.append(tuple(cos))
    return CosetSpace(side, group, sub, tuple(reps), tuple(coset_of), tuple(members))


def act(x: int, c: int, space: CosetSpace) -> int:
    """Left spaces: ``yH -> xyH``. Right spaces: ``Hy -> Hyx``."""
    t = space.group.table
    rep = space.reps[c]
    return space.coset_of[t[x][rep] if space.side == "left" else t[rep][x]]


def q_map(c: int, left: CosetSpace, right: CosetSpace) -> int:
    """``Q(xH) = Hx^-1``."""
    _check_pair(left, right)
    return right.coset_of[left.group.inverse[left.reps[c]]]


def q_map_inverse(c: int, left: CosetSpace, right: CosetSpace) -> int:
    """``Hx -> x^-1 H``, the inverse of :func:`q_map`."""
    _check_pair(left, right)
    return left.coset_of[right.group.inverse[right.reps[c]]]


def _check_pair(left: CosetSpace, right: CosetSpace) -> None:
    if left.side != "left" or right.side != "right":
        raise ValueError("q_map needs a (left, right) pair of coset spaces")
    if not left.subgroup.same_as(right.subgroup):
        raise ValueError("coset spaces are built over different (G, H)")


def side_identification(source: CosetSpace, target: CosetSpace) -> tuple[int, ...]:
    """Index map between coset spaces with identical member sets.

    For normal ``H`` every left coset ``xH`` is the right coset ``Hx``;
    the returned tuple sends a source index to the target index with the
    same members. Raises ``SubgroupError`` when the partitions differ.
    """
    lookup = {m: k for k, m in enumerate(target.members)}
    try:
        return tuple(lookup[m] for m in source.members)
    except KeyError:
        raise SubgroupError("left and right cosets differ: H is not normal") from None
