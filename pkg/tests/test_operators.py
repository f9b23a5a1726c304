import pytest
from hypothesis import given, settings

from conftest import polys
from core.errors import DomainError
from engine.clifford import e_perp, e_vec, e_wedge
from engine.operators import (
    IDENTITY,
    ZERO_OP,
    LeftMulPassable,
    RightMul,
    L_op,
    agree_on_basis,
    agree_on_elements,
    anticommutator,
    bracket,
    d_op,
    dirac_op,
    euler_op,
    euler_shift_op,
    expand_table,
    first_disagreement,
    laplacian_op,
    scaled,
    sum_of,
    xi_op,
)
from engine.poly import Poly, dirac, euler, laplacian, left_mul_passable, monomials_up_to, right_mul
from engine.scalar_field import HALF, I

BASIS3 = monomials_up_to(3, 3)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_skew_weyl(j):
    skew = d_op(j) @ xi_op(j) - xi_op(j) @ d_op(j)
    assert first_disagreement(skew, IDENTITY, BASIS3) is None


def test_cross_anticommutators():
    assert agree_on_basis(anticommutator(xi_op(1), xi_op(3)), ZERO_OP, BASIS3)
    assert agree_on_basis(anticommutator(d_op(2), xi_op(1)), ZERO_OP, BASIS3)
    assert not agree_on_basis(anticommutator(d_op(2), xi_op(2)), ZERO_OP, BASIS3)


@settings(max_examples=40, deadline=None)
@given(polys(3))
def test_builders_match_direct_evaluation(f):
    assert dirac_op(3).apply(f) == dirac(f)
    assert laplacian_op(3).apply(f) == laplacian(f)
    assert euler_op(3).apply(f) == euler(f)
    assert euler_shift_op(3)(f) == euler(f) + f.scale(HALF * 3)


@settings(max_examples=40, deadline=None)
@given(polys(2))
def test_clifford_primitives_match_direct_evaluation(f):
    assert RightMul(e_vec(2)).apply(f) == right_mul(f, e_vec(2))
    assert LeftMulPassable(e_wedge(1)).apply(f) == left_mul_passable(e_wedge(1), f)


def test_right_multiplications_compose():
    square = RightMul(e_perp(1)) @ RightMul(e_perp(1))
    assert agree_on_basis(square, scaled(-1, IDENTITY), BASIS3)


def test_tables_are_normalised():
    # the same map written with a scaled Clifford factor collapses to one key
    lhs = RightMul(e_vec(1).scale(2))
    rhs = scaled(2, RightMul(e_vec(1)))
    alpha = (1, 0, 0)
    assert lhs.table(alpha) == rhs.table(alpha)
    assert expand_table(lhs.table(alpha)) == expand_table(rhs.table(alpha))


def test_bracket_of_commuting_operators():
    assert agree_on_basis(bracket(xi_op(1) @ xi_op(1), xi_op(2) @ xi_op(2)), ZERO_OP, BASIS3)


def test_first_disagreement_witness():
    found = first_disagreement(xi_op(1), xi_op(2), monomials_up_to(2, 1))
    assert found is not None
    assert found.alpha == (0, 0)
    assert found.render().startswith("at (1) * [1] | 1")
    assert "lhs" in found.render() and "rhs" in found.render()


def test_agree_on_elements():
    assert agree_on_elements(xi_op(1), xi_op(1), [((0, 0), 0), ((1, 1), 5)]) is None
    witness = agree_on_elements(xi_op(1), scaled(I, xi_op(1)), [((0, 1), 3)])
    assert witness is not None and "lhs" in witness


def test_l_operator():
    g = Poly.monomial((0, 1)) - Poly.monomial((1, 0))
    assert L_op(1, 2, 2).apply(g) == -g
    assert L_op(2, 2, 2).apply(g).is_zero()
    with pytest.raises(DomainError):
        L_op(1, 3, 2)


def test_coordinate_out_of_range():
    with pytest.raises(DomainError):
        xi_op(3).apply(Poly.ground(2))


def test_empty_sum_is_zero():
    assert sum_of([]) is ZERO_OP
    assert scaled(0, xi_op(1)) is ZERO_OP
    assert scaled(1, xi_op(1)) is xi_op(1)
