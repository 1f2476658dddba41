import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homconv.catalog import catalog_groups, catalog_pairs
from homconv.errors import FormatError, GroupConstructionError, SubgroupError
from homconv.groups import (
    all_subgroups,
    build_group,
    double_cosets,
    group_from_table,
    is_normal,
    is_subgroup,
    make_subgroup,
    modular_function,
    parse_subgroup,
    trivial_subgroup,
    whole_group,
)
from homconv.cosets import build_cosets


def test_trivial_group():
    g = build_group("cyclic:1")
    assert g.order == 1
    assert g.table == ((0,),)


def test_cyclic_table_is_modular_addition():
    g = build_group("cyclic:4")
    assert all(g.table[i][j] == (i + j) % 4 for i in range(4) for j in range(4))


def test_s3_has_three_involutions():
    g = build_group("symmetric:3")
    # oracle: count permutations of {0,1,2} that square to the identity
    oracle = sum(1 for p in itertools.permutations(range(3))
                 if p != (0, 1, 2) and all(p[p[i]] == i for i in range(3)))
    assert oracle == 3
    assert sum(1 for x in g.elements if g.element_order(x) == 2) == oracle


@pytest.mark.parametrize("spec,order", [
    ("dihedral:5", 10), ("symmetric:4", 24), ("quaternion:8", 8), ("product:cyclic:2,cyclic:3", 6),
])
def test_family_orders(spec, order):
    assert build_group(spec).order == order


def test_json_group_round_trip():
    g = build_group("dihedral:3")
    h = build_group(g.to_json())
    assert h.table == g.table and h.labels == g.labels
    assert build_group('{"order": 2, "table": [[0, 1], [1, 0]]}').order == 2


def test_non_latin_table_is_rejected():
    with pytest.raises(GroupConstructionError, match="row"):
        group_from_table([[0, 1], [1, 1]])


def test_non_associative_table_names_triple():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupConstructionError, match="associativ"):
        group_from_table(table)


def test_bad_specs():
    for spec in ("cyclic:x", "nonsense:3", "quaternion:16", "product:cyclic:2", '{"order": 2}'):
        with pytest.raises(FormatError):
            build_group(spec)


def test_is_subgroup_examples(z4, s3):
    assert is_subgroup(z4, {0, 2})
    # (12)^2 = e by direct multiplication
    t = s3.parse_element("(12)")
    assert s3.mul(t, t) == 0
    assert is_subgroup(s3, {0, t})
    assert not is_subgroup(z4, {0, 1})  # 1 + 1 = 2 is missing
    with pytest.raises(SubgroupError):
        make_subgroup(z4, [0, 1])


def test_is_normal_examples(z4, s3):
    assert is_normal(z4, parse_subgroup(z4, "0,2"))
    h = parse_subgroup(s3, "e,(12)")
    r = s3.parse_element("(123)")
    assert s3.conj(r, s3.parse_element("(12)")) not in h
    assert not is_normal(s3, h)
    assert is_normal(s3, parse_subgroup(s3, "e,(123),(132)"))


def test_double_coset_examples(z4, s3):
    sizes = sorted(len(c) for c in double_cosets(s3, parse_subgroup(s3, "e,(12)")))
    assert sizes == [2, 4]
    assert [len(c) for c in double_cosets(z4, parse_subgroup(z4, "0,2"))] == [2, 2]
    assert len(double_cosets(s3, whole_group(s3))) == 1


@pytest.mark.parametrize("spec", ["cyclic:4", "symmetric:3", "quaternion:8"])
def test_modular_function_is_one(spec):
    assert set(modular_function(build_group(spec))) == {Fraction(1)}


@pytest.mark.parametrize("g", catalog_groups(), ids=lambda g: g.name)
def test_inverse_of_product(g):
    inv, t = g.inverse, g.table
    assert all(inv[t[x][y]] == t[inv[y]][inv[x]] for x in g.elements for y in g.elements)


@pytest.mark.parametrize("g,h", catalog_pairs(), ids=lambda v: getattr(v, "name", None) or str(sorted(v.members)))
def test_double_cosets_partition_and_normality(g, h):
    classes = double_cosets(g, h)
    assert sorted(x for c in classes for x in c) == list(g.elements)
    assert set(classes[0]) == set(h.members)
    left, right = build_cosets(g, h, "left"), build_cosets(g, h, "right")
    for c in classes:
        assert set(c) == {y for x in c for y in left.members[left.coset_of[x]]}
        assert set(c) == {y for x in c for y in right.members[right.coset_of[x]]}
    assert is_normal(g, h) == all(len(c) == h.order for c in classes)


def test_all_subgroups_counts():
    # subgroup counts of S4 and Q8 are classical: 30 and 6
    assert len(all_subgroups(build_group("symmetric:4"))) == 30
    assert len(all_subgroups(build_group("quaternion:8"))) == 6
    assert len(all_subgroups(build_group("cyclic:12"))) == 6


def test_parse_subgroup_labels(s3):
    h = parse_subgroup(s3, " e , (12) ")
    assert sorted(h.members) == sorted([0, s3.parse_element("(12)")])
    assert trivial_subgroup(s3).members == (0,)


@given(st.integers(min_value=2, max_value=12), st.data())
def test_cyclic_subgroups_are_divisor_lattices(n, data):
    g = build_group(f"cyclic:{n}")
    orders = sorted(h.order for h in all_subgroups(g))
    assert orders == [d for d in range(1, n + 1) if n % d == 0]
    x = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert g.mul(x, g.inv(x)) == 0


def test_labels_take_precedence_over_ids():
    q8 = build_group("quaternion:8")
    assert parse_subgroup(q8, "1,-1").members == (0, 1)
    assert parse_subgroup(build_group("symmetric:3"), "0,2").members == (0, 2)
