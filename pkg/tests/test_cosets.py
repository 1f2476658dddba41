import pytest

from homconv.catalog import catalog_pairs
from homconv.cosets import act, build_cosets, q_map, q_map_inverse, side_identification
from homconv.errors import SubgroupError
from homconv.groups import is_normal, parse_subgroup, whole_group


def test_z4_left_cosets(z4):
    sp = build_cosets(z4, parse_subgroup(z4, "0,2"))
    assert len(sp) == 2 and sp.reps == (0, 1)


def test_s3_left_cosets(s3):
    assert len(build_cosets(s3, parse_subgroup(s3, "e,(12)"))) == 3


def test_whole_group_has_one_coset(s3):
    sp = build_cosets(s3, whole_group(s3))
    assert sp.reps == (0,)


def test_act_examples(z4, s3):
    sp = build_cosets(z4, parse_subgroup(z4, "0,2"))
    assert act(1, sp.coset_of[0], sp) == sp.coset_of[1]
    sp3 = build_cosets(s3, parse_subgroup(s3, "e,(12)"))
    r = s3.parse_element("(123)")
    assert act(r, 0, sp3) == sp3.coset_of[r]
    assert all(act(0, c, sp3) == c for c in range(len(sp3)))


def test_q_map_examples(z4, s3):
    h = parse_subgroup(z4, "0,2")
    left, right = build_cosets(z4, h, "left"), build_cosets(z4, h, "right")
    assert q_map(left.coset_of[1], left, right) == right.coset_of[3] == right.coset_of[1]
    assert q_map(0, left, right) == 0
    h3 = parse_subgroup(s3, "e,(12)")
    left, right = build_cosets(s3, h3, "left"), build_cosets(s3, h3, "right")
    c = left.coset_of[s3.parse_element("(123)")]
    assert q_map(c, left, right) == right.coset_of[s3.parse_element("(132)")]


def test_mismatched_pair_rejected(s3):
    a = build_cosets(s3, parse_subgroup(s3, "e,(12)"), "left")
    b = build_cosets(s3, parse_subgroup(s3, "e,(13)"), "right")
    with pytest.raises(ValueError):
        q_map(0, a, b)


def test_side_identification_needs_normal(s3):
    h = parse_subgroup(s3, "e,(12)")
    with pytest.raises(SubgroupError):
        side_identification(build_cosets(s3, h, "left"), build_cosets(s3, h, "right"))


@pytest.mark.parametrize("g,h", catalog_pairs(), ids=lambda v: getattr(v, "name", None) or str(sorted(v.members)))
def test_coset_invariants(g, h):
    left, right = build_cosets(g, h, "left"), build_cosets(g, h, "right")
    n = g.order // h.order
    assert len(left) == len(right) == n
    assert left.reps[0] == 0 and right.reps[0] == 0
    for sp in (left, right):
        assert all(sp.coset_of[r] == k for k, r in enumerate(sp.reps))
        assert all(r == min(m) for r, m in zip(sp.reps, sp.members))
    inv = g.inverse
    for x in g.elements:
        for y in (0, x, inv[x]):
            assert (left.coset_of[x] == left.coset_of[y]) == (g.mul(inv[x], y) in h)
    # action, transitivity
    for x in g.elements:
        for y in g.elements:
            for c in range(n):
                assert act(g.mul(x, y), c, left) == act(x, act(y, c, left), left)
    assert {act(x, 0, left) for x in g.elements} == set(range(n))
    assert {act(x, 0, right) for x in g.elements} == set(range(n))
    # Q is a well-defined bijection with inverse
    images = [q_map(c, left, right) for c in range(n)]
    assert sorted(images) == list(range(n))
    assert all(q_map_inverse(images[c], left, right) == c for c in range(n))
    for x in g.elements:
        assert q_map(left.coset_of[x], left, right) == right.coset_of[inv[x]]
    if is_normal(g, h):
        assert {frozenset(m) for m in left.members} == {frozenset(m) for m in right.members}
