from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homconv.catalog import catalog_pairs
from homconv.cosets import build_cosets
from homconv.errors import MeasureError
from homconv.groups import parse_subgroup, whole_group
from homconv.measures import (
    constant_rho,
    invariant_measure,
    make_rho,
    measure_from_rho,
    rho_from_json,
    translation_factor,
    verify_rho,
)


def test_constant_rho_is_valid_and_relatively_invariant(s3):
    h = parse_subgroup(s3, "e,(12)")
    for c in (1, 3, "5/2"):
        chk = verify_rho(s3, h, constant_rho(s3, c))
        assert chk.valid and chk.relatively_invariant


def test_z4_rho_valid_but_not_relatively_invariant(z4):
    h = parse_subgroup(z4, "0,2")
    rho = make_rho(z4, [1, 2, 1, 2])
    # direct check of the multiplicative identity at (1, 1)
    assert rho(z4.mul(1, 1)) * rho(0) != rho(1) * rho(1)
    chk = verify_rho(z4, h, rho)
    assert chk.valid and not chk.relatively_invariant
    with pytest.raises(MeasureError, match="relatively invariant"):
        measure_from_rho(build_cosets(z4, h), rho)


def test_rho_not_constant_on_cosets_is_invalid(z4):
    h = parse_subgroup(z4, "0,2")
    rho = make_rho(z4, [1, 1, 2, 2])
    chk = verify_rho(z4, h, rho)
    assert not chk.valid and chk.invalid_pair is not None
    with pytest.raises(MeasureError, match="not a rho-function"):
        measure_from_rho(build_cosets(z4, h), rho)


def test_nonpositive_rho_rejected(z4):
    with pytest.raises(MeasureError, match="positive"):
        verify_rho(z4, parse_subgroup(z4, "0,2"), make_rho(z4, [1, 0, 1, 0]))


def test_measure_weights(z4, s3):
    m = invariant_measure(z4, parse_subgroup(z4, "0,2"))
    assert m.weights == (2, 2) and m.g_invariant
    whole = invariant_measure(s3, whole_group(s3))
    assert whole.weights == (6,)
    h = parse_subgroup(s3, "e,(12)")
    m3 = measure_from_rho(build_cosets(s3, h), constant_rho(s3, 3))
    assert m3.weights == (6, 6, 6)


def test_translation_factor_is_one(s3):
    h = parse_subgroup(s3, "e,(12)")
    for rho in (constant_rho(s3), constant_rho(s3, "7/3")):
        m = measure_from_rho(build_cosets(s3, h), rho)
        assert all(translation_factor(x, c, m) == 1 for x in s3.elements for c in range(3))


def test_rho_json(z4):
    rho = rho_from_json(z4, {"values": ["1", "1", "1", "1"]})
    assert rho.to_json() == {"values": ["1", "1", "1", "1"]}


@given(st.lists(st.integers(min_value=1, max_value=5), min_size=6, max_size=6))
def test_relatively_invariant_rho_is_constant(s3, values):
    # positive characters of a finite group are trivial
    rho = make_rho(s3, values)
    for h in ("e", "e,(12)", "e,(123),(132)"):
        chk = verify_rho(s3, parse_subgroup(s3, h), rho)
        if chk.relatively_invariant:
            assert len(set(values)) == 1


@pytest.mark.parametrize("g,h", catalog_pairs()[::7], ids=lambda v: getattr(v, "name", None) or str(sorted(v.members)))
def test_total_mass_matches_group(g, h):
    for side in ("left", "right"):
        m = invariant_measure(g, h, side)
        assert m.total_mass() == g.order
        assert set(m.weights) == {Fraction(h.order)}
