import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_coefficients
from engine.linalg import (
    EchelonBasis,
    MatrixExact,
    kernel_basis,
    rank_of,
    rref,
    solve_combination,
    span_insert,
)
from engine.scalar_field import I, ONE, SQRT2, ZERO, Coefficient

dense_matrices = st.integers(1, 4).flatmap(
    lambda cols: st.lists(st.lists(small_coefficients, min_size=cols, max_size=cols), min_size=1, max_size=4)
)


def test_rref_small():
    m = MatrixExact.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    reduced, rank = rref(m)
    assert rank == 2
    assert reduced.to_dense() == [[ONE, ZERO, ONE], [ZERO, ONE, ONE], [ZERO, ZERO, ZERO]]


def test_rref_over_extension_field():
    m = MatrixExact.from_dense([[SQRT2, I], [I * SQRT2, Coefficient(-1)]])
    assert m.rank() == 1


def test_identity():
    assert rref(MatrixExact.identity(3)) == (MatrixExact.identity(3), 3)
    assert kernel_basis(MatrixExact.identity(3)) == []


def test_column_range_checked():
    with pytest.raises(ValueError):
        MatrixExact(1, 2, [{2: ONE}])
    with pytest.raises(ValueError):
        MatrixExact(2, 2, [{}])


@settings(max_examples=60, deadline=None)
@given(dense_matrices)
def test_rank_nullity(data):
    m = MatrixExact.from_dense(data)
    kernel = kernel_basis(m)
    assert m.rank() + len(kernel) == m.n_cols
    for v in kernel:
        assert all(x.is_zero() for x in m.mul_vector(v))


@settings(max_examples=60, deadline=None)
@given(dense_matrices)
def test_rref_is_idempotent(data):
    reduced, rank = rref(MatrixExact.from_dense(data))
    assert rref(reduced) == (reduced, rank)


@settings(max_examples=60, deadline=None)
@given(dense_matrices)
def test_row_rank_matches_echelon_span(data):
    rows = [{j: v for j, v in enumerate(row) if v} for row in data]
    assert rank_of(rows) == MatrixExact.from_dense(data).rank()


def test_echelon_basis():
    basis = EchelonBasis()
    assert basis.insert({"a": ONE, "b": ONE}, tag=0)
    assert basis.insert({"b": ONE}, tag=1)
    assert not basis.insert({"a": Coefficient(2)}, tag=2)
    assert len(basis) == 2
    assert basis.contains({"a": ONE})
    assert basis.express({"a": ONE}) == {0: ONE, 1: -ONE}
    assert basis.express({"c": ONE}) is None
    assert basis.reduce({"c": ONE}) == {"c": ONE}


def test_solve_combination():
    vectors = [{0: ONE}, {1: ONE}, {0: ONE, 1: ONE}]
    coefs = solve_combination(vectors, {0: Coefficient(3), 1: I})
    assert coefs == [Coefficient(3), I, ZERO]
    assert solve_combination(vectors, {2: ONE}) is None
    assert solve_combination(vectors, {}) == [ZERO, ZERO, ZERO]


def test_span_insert():
    basis, inserted = span_insert(EchelonBasis(), {0: ONE})
    assert inserted
    basis, inserted = span_insert(basis, {0: I})
    assert not inserted
    assert len(basis) == 1
