from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from homconv import build_group, invariant_measure, parse_subgroup
from homconv.scalars import QQi

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def qqi_values(draw, real=False):
    re = draw(small_fractions)
    im = Fraction(0) if real else draw(small_fractions)
    return QQi(re, im)


def value_lists(n, real=False):
    return st.lists(qqi_values(real=real), min_size=n, max_size=n)


@pytest.fixture(scope="session")
def z4():
    return build_group("cyclic:4")


@pytest.fixture(scope="session")
def s3():
    return build_group("symmetric:3")


@pytest.fixture(scope="session")
def z4_half(z4):
    return invariant_measure(z4, parse_subgroup(z4, "0,2"))


@pytest.fixture(scope="session")
def s3_12(s3):
    return invariant_measure(s3, parse_subgroup(s3, "e,(12)"))


@pytest.fixture(scope="session")
def s3_12_right(s3):
    return invariant_measure(s3, parse_subgroup(s3, "e,(12)"), "right")
