import pytest
from hypothesis import assume, given
from sympy.external.gmpy import MPQ

from conftest import coefficients
from core.errors import DomainError
from engine.scalar_field import HALF, I, INV_SQRT2, ONE, SQRT2, ZERO, Coefficient, add, fstr, inv, mul, neg


def test_units():
    assert I * I == -1
    assert SQRT2 * SQRT2 == 2
    assert INV_SQRT2 * SQRT2 == ONE
    assert (I * SQRT2) * (I * SQRT2) == -2
    assert HALF + HALF == ONE


@given(coefficients, coefficients, coefficients)
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(coefficients)
def test_inverse(x):
    assume(not x.is_zero())
    assert x * x.inv() == ONE
    assert x / x == ONE


def test_inverse_of_zero():
    with pytest.raises(DomainError):
        ZERO.inv()


def test_rational_queries():
    assert Coefficient(MPQ(3, 2)).rational() == MPQ(3, 2)
    assert not I.is_rational()
    with pytest.raises(DomainError):
        I.rational()


def test_conjugate():
    x = Coefficient(1, 2, 3, 4)
    assert x.conjugate() == Coefficient(1, -2, 3, -4)
    assert (x * x.conjugate()).b == 0


def test_text():
    assert str(Coefficient(MPQ(1, 2), -1)) == "1/2 - i"
    assert str(-I * SQRT2) == "-i*r2"
    assert str(ZERO) == "0"
    assert Coefficient.parse("3/2 - i*r2") == Coefficient(MPQ(3, 2), 0, 0, -1)
    assert Coefficient.parse("2*r2 + i") == Coefficient(0, 1, 2, 0)
    assert fstr(MPQ(-4, 2)) == "-2"


@pytest.mark.parametrize("text", ["", "1/0", "x", "i/2"])
def test_malformed_text(text):
    with pytest.raises(DomainError):
        Coefficient.parse(text)


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.a = 2


def test_hash_matches_int():
    assert hash(Coefficient(3)) == hash(MPQ(3))
    assert Coefficient(3) == 3


def test_named_operations():
    assert add(1, I) == Coefficient(1, 1)
    assert mul(I, SQRT2) == Coefficient(0, 0, 0, 1)
    assert neg(HALF) == Coefficient(MPQ(-1, 2))
    assert inv(SQRT2) == INV_SQRT2
