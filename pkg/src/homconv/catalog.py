"""The fixed test catalog of (G, H) pairs: every subgroup of a small group list."""

from __future__ import annotations

from functools import lru_cache

from .groups import FiniteGroup, Subgroup, all_subgroups, cyclic, dihedral, quaternion8, symmetric


@lru_cache(maxsize=None)
def catalog_groups() -> tuple[FiniteGroup, ...]:
    groups = [cyclic(n) for n in range(2, 13)]
    groups += [dihedral(n) for n in range(3, 7)]
    groups += [symmetric(3), symmetric(4), quaternion8()]
    return tuple(groups)


@lru_cache(maxsize=None)
def catalog_pairs() -> tuple[tuple[FiniteGroup, Subgroup], ...]:
    return tuple((g, h) for g in catalog_groups() for h in all_subgroups(g))


def pair_id(group: FiniteGroup, sub: Subgroup) -> str:
    members = ",".join(group.labels[m] for m in sorted(sub.members))
    return f"{group.name}/{{{members}}}"
