import pytest
from hypothesis import given, settings

from conftest import polys
from core.errors import DomainError, NotPassable
from engine.clifford import MINUS, PLUS, Multivector, e_vec, e_wedge
from engine.poly import (
    Poly,
    d_apply,
    dirac,
    euler,
    f_poly,
    g_poly,
    laplacian,
    left_mul_passable,
    monomials,
    monomials_up_to,
    right_mul,
    xi_mul,
    xi_vector,
)


def mono(*alpha, coef=1, mask=0):
    return Poly.monomial(alpha, mask, coef)


def test_monomials():
    assert monomials(2, 2) == ((0, 2), (1, 1), (2, 0))
    assert len(monomials_up_to(3, 2)) == 1 + 3 + 6


def test_xi_anticommute():
    assert xi_mul(2, mono(1, 0)) == mono(1, 1, coef=-1)
    assert xi_mul(1, mono(0, 1)) == mono(1, 1)
    assert xi_mul(1, xi_mul(2, Poly.ground(2))) == -xi_mul(2, xi_mul(1, Poly.ground(2)))


def test_d_on_ground_state():
    assert d_apply(1, Poly.ground(2)).is_zero()
    assert d_apply(1, mono(1, 0)) == Poly.ground(2)
    assert d_apply(2, mono(1, 1)) == mono(1, 0, coef=-1)
    assert d_apply(1, mono(3, 0)) == mono(2, 0, coef=3)


@settings(max_examples=60, deadline=None)
@given(polys(3))
def test_skew_weyl(f):
    for j in range(1, 4):
        assert d_apply(j, xi_mul(j, f)) - xi_mul(j, d_apply(j, f)) == f


@settings(max_examples=60, deadline=None)
@given(polys(3))
def test_distinct_coordinates_anticommute(f):
    for j, l in ((1, 2), (1, 3), (2, 3)):
        assert (xi_mul(j, xi_mul(l, f)) + xi_mul(l, xi_mul(j, f))).is_zero()
        assert (d_apply(j, d_apply(l, f)) + d_apply(l, d_apply(j, f))).is_zero()
        assert (d_apply(j, xi_mul(l, f)) + xi_mul(l, d_apply(j, f))).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys(2))
def test_euler_counts_degree(f):
    total = Poly.zero(2)
    for j in (1, 2):
        total = total + xi_mul(j, d_apply(j, f))
    assert euler(f) == total


def test_laplacian_on_square():
    assert laplacian(mono(0, 2, 0)) == Poly.ground(3).scale(2)
    assert laplacian(mono(1, 1)).is_zero()


def test_g2_expansion():
    assert g_poly(2, 2) == mono(0, 2) - mono(1, 1).scale(2) - mono(2, 0)
    assert g_poly(0, 3) == Poly.ground(3)
    assert f_poly(1, 2) == mono(0, 1) + mono(1, 0)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("k", range(6))
def test_g_is_monogenic(m, k):
    g = g_poly(k, m)
    assert dirac(g).is_zero()
    assert euler(g) == g.scale(k)
    assert g.degrees() <= {k}


@pytest.mark.parametrize("k", range(1, 6))
def test_partial_derivatives_of_g(k):
    g, f = g_poly(k, 3), f_poly(k - 1, 3)
    assert d_apply(1, g) == f.scale(-k)
    assert d_apply(2, g) == f.scale(k)
    assert xi_mul(2, f) - xi_mul(1, f) == g


def test_builders_need_two_coordinates():
    with pytest.raises(DomainError):
        g_poly(1, 1)
    with pytest.raises(DomainError):
        f_poly(-1, 2)


def test_right_multiplication():
    w = e_vec(1)
    f = mono(1, 0)
    assert right_mul(f, w) == f * w
    assert right_mul(right_mul(f, w), w) == f


def test_left_multiplication_passes_with_sign():
    f = mono(1, 0)
    assert left_mul_passable(e_wedge(1), f) == -(f * e_wedge(1))
    assert left_mul_passable(e_wedge(1), mono(0, 1)) == mono(0, 1) * e_wedge(1)
    with pytest.raises(NotPassable):
        left_mul_passable(Multivector.gen(1, PLUS), f)


def test_xi_vector():
    assert xi_vector(Poly.ground(2)) == mono(1, 0) + mono(0, 1)


def test_text():
    f = mono(1, 2, coef=3, mask=Multivector.gen(1, MINUS).blades()[0])
    assert str(f) == "(3) * x1 x2^2 [1] | e1-"
    assert Poly.parse("(3) * x1 x2^2 [1] | e1-", 2) == f
    assert str(Poly.zero(2)) == "0"
    with pytest.raises(DomainError):
        Poly.parse("3 x1", 2)


def test_mismatched_dimensions():
    with pytest.raises(DomainError):
        Poly.monomial((1, 0)) + Poly.monomial((1, 0, 0))
