from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from eulerfan.model import witness_candidate, witness_data, witness_law
from eulerfan.quadratic import QuadExt

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)
quad = st.builds(QuadExt, small_fractions, small_fractions)
nonzero_quad = quad.filter(lambda x: x != 0)


@pytest.fixture
def data():
    return witness_data()


@pytest.fixture
def law():
    return witness_law()


@pytest.fixture
def cand():
    return witness_candidate()


RHO1 = Fraction(15, 7)
DELTA2 = Fraction(51, 35)
DELTA1 = Fraction(559, 105)
