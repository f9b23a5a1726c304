import pytest
from hypothesis import strategies as st
from sympy.external.gmpy import MPQ

from engine.clifford import Multivector
from engine.poly import Poly, monomials_up_to
from engine.scalar_field import Coefficient
from verify.schemas import SuiteParams, SweepMode

# --- Strategies ---

rationals = st.builds(MPQ, st.integers(-6, 6), st.integers(1, 4))

coefficients = st.builds(Coefficient, rationals, rationals, rationals, rationals)

small_coefficients = st.builds(Coefficient, st.integers(-2, 2), st.integers(-2, 2))


def multivectors(m: int, max_terms: int = 3):
    """Sparse multivectors over the 4^m blades of dimension m."""
    return st.dictionaries(st.integers(0, 4 ** m - 1), small_coefficients, max_size=max_terms).map(Multivector)


def polys(m: int, max_degree: int = 3, max_terms: int = 3):
    keys = st.tuples(st.sampled_from(monomials_up_to(m, max_degree)), st.integers(0, 4 ** m - 1))
    return st.dictionaries(keys, small_coefficients, max_size=max_terms).map(lambda terms: Poly(m, terms))


# --- Fixtures ---

@pytest.fixture
def exhaustive_params():
    return SuiteParams(mode=SweepMode.exhaustive)


@pytest.fixture
def sample_params():
    return SuiteParams(mode=SweepMode.sample, sample_size=24, seed=7)


@pytest.fixture
def ground2():
    return Poly.ground(2)
