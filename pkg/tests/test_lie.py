import itertools

import pytest
from sympy.external.gmpy import MPQ

from core.errors import DomainError, NotEigen
from engine.clifford import IdempotentSpec
from engine.lie import (
    Classification,
    bracket_table,
    candidate_image,
    cartan,
    cartan_basis,
    cartan_basis_rank,
    classify_direct,
    classify_idempotent,
    dR,
    enumerate_idempotents,
    expected_hwv_count,
    expected_orbit_dimension,
    hwv_candidate,
    hwv_count,
    hwv_count_direct,
    minus_weight,
    omega,
    plus_weight,
    positive_roots,
    spinor_orbit,
    submodule_closure,
    uroot,
    weight_of,
    weight_str,
    xroot,
)
from engine.operators import ZERO_OP, agree_on_basis, bracket, dirac_op, scaled
from engine.poly import Poly, monomials_up_to

HALF = MPQ(1, 2)


def spec(text):
    return IdempotentSpec.parse(text)


def test_index_checks():
    with pytest.raises(DomainError):
        omega(1, 1, 3)
    with pytest.raises(DomainError):
        dR(1, 4, 3)
    with pytest.raises(DomainError):
        cartan(2, 3)
    with pytest.raises(DomainError):
        xroot(1, 1, 4)
    with pytest.raises(DomainError):
        uroot(1, 4)
    assert dR(2, 2, 3).apply(Poly.monomial((1, 0, 0))).is_zero()


def test_rotation_bracket_relation():
    basis = monomials_up_to(3, 2)
    lhs = bracket(dR(1, 2, 3), dR(2, 3, 3))
    assert agree_on_basis(lhs, dR(1, 3, 3), basis)
    assert agree_on_basis(dR(2, 1, 3), scaled(-1, dR(1, 2, 3)), basis)


def test_rotations_commute_with_dirac():
    basis = monomials_up_to(3, 2)
    for a, b in itertools.combinations(range(1, 4), 2):
        assert agree_on_basis(bracket(dR(a, b, 3), dirac_op(3)), ZERO_OP, basis)


def test_cartan_operators_commute():
    basis = monomials_up_to(4, 2)
    assert agree_on_basis(bracket(cartan(1, 4), cartan(2, 4)), ZERO_OP, basis)


def test_basis_sizes():
    assert len(cartan_basis(4)) == 6
    assert len(cartan_basis(5)) == 10
    assert len(positive_roots(4)) == 2
    assert len(positive_roots(5)) == 4
    assert cartan_basis_rank(3, 2) == 3


def test_bracket_table_closes():
    entries = bracket_table(3, 1)
    assert len(entries) == 3
    assert all(e.combination is not None for e in entries)
    assert all(e.render().startswith("[") for e in entries)


@pytest.mark.parametrize("k", range(4))
def test_weight_of_uniform_plus(k):
    f = hwv_candidate(IdempotentSpec.uniform(4), k)
    sign = -1 if k % 2 else 1
    assert weight_of(f, 4) == (sign * MPQ(2 * k + 1, 2), HALF)


def test_weight_of_rejects():
    with pytest.raises(DomainError):
        weight_of(Poly.zero(4), 4)
    with pytest.raises(NotEigen):
        weight_of(Poly.monomial((1, 0, 0, 0)), 4)


def test_weight_helpers():
    assert plus_weight(2, 4) == (MPQ(5, 2), HALF)
    assert minus_weight(2, 4) == (MPQ(5, 2), -HALF)
    assert minus_weight(0, 2) == (-HALF,)
    assert weight_str(plus_weight(1, 6)) == "(3/2, 1/2, 1/2)"
    assert weight_str(None) == "-"


def test_classification_examples():
    assert classify_idempotent(spec("L+ L+"), 0, 2) is Classification.PLUS
    assert classify_idempotent(spec("L+ L+"), 1, 2) is Classification.MINUS
    assert classify_idempotent(spec("L+ L- L+ L+"), 0, 4) is Classification.OTHER
    assert classify_idempotent(spec("L+ L- L+ L+"), 1, 4) is Classification.PLUS
    assert classify_idempotent(spec("L+ L+ L+ L-"), 0, 4) is Classification.MINUS
    assert classify_idempotent(spec("L+ L+ L+ L- M+"), 0, 5) is Classification.OTHER
    with pytest.raises(DomainError):
        classify_idempotent(spec("L+ L+"), 0, 3)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("k", range(4))
def test_counts(m, k):
    expected = expected_hwv_count(m)
    plus, minus = hwv_count(m, k)
    assert plus == expected
    assert minus == (expected if m % 2 == 0 else 0)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_parity_rule_matches_eigencomputation_m2(k):
    for s in enumerate_idempotents(2):
        kind, _ = classify_direct(s, k, 2)
        assert kind is classify_idempotent(s, k, 2), str(s)


def test_parity_rule_matches_eigencomputation_m3():
    assert hwv_count_direct(3, 1) == hwv_count(3, 1)


def test_orbit_even():
    orbit = spinor_orbit(IdempotentSpec.uniform(4), 4)
    assert orbit.dimension == expected_orbit_dimension(4) == 2
    assert sorted(orbit.nodes) == ["L+ L+ L+ L+", "L+ L- L- L+"]
    assert orbit.minus_parities() == {0}
    assert orbit.parity_constant()
    assert orbit.to_dot().startswith('digraph "orbit" {')


def test_orbit_odd_reaches_every_sign_vector():
    orbit = spinor_orbit(IdempotentSpec.uniform(5), 5)
    assert orbit.dimension == expected_orbit_dimension(5) == 4
    expected = {(s * HALF, t * HALF) for s in (1, -1) for t in (1, -1)}
    assert set(orbit.weights) == expected
    assert orbit.minus_parities() == {0, 1}


def test_orbit_start_must_match_dimension():
    with pytest.raises(DomainError):
        spinor_orbit(IdempotentSpec.uniform(4), 5)


def test_submodule_closure_dimension():
    f = hwv_candidate(IdempotentSpec.uniform(3), 1)
    assert len(submodule_closure(f, 3)) == 2 * 2


def test_root_vectors_annihilate_highest_weight_vectors():
    f = hwv_candidate(IdempotentSpec.uniform(4), 2)
    for op in positive_roots(4):
        assert op.apply(f).is_zero(), str(op)

@pytest.mark.parametrize("m,k", [(4, 1), (5, 2)])
def test_candidate_image_matches_direct_application(m, k):
    ops = [cartan(1, m)] + positive_roots(m)
    for word in ("L+ " * m, "L+ L- M+ " + "M- " * (m - 3)):
        start = spec(word.strip())
        f = hwv_candidate(start, k)
        for op in ops:
            assert candidate_image(op, start, k) == op.apply(f)
