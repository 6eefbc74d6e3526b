from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ranklab import ExactScalar, FieldSpec, Matrix, SingularMatrixError, UsageError, block, hstack, vstack
from ranklab.matrix import (bareiss_rank, naive_rank, nullspace_equal, range_contained, range_equal,
                            range_intersection_basis, range_intersection_dim, solve_linear_matrix_system)
from ranklab.rng import make_rng, random_nonsingular, random_rank_matrix
from strategies import matrices, rng_for, seeds

I = ExactScalar(0, 1)


def M(rows, field=FieldSpec(0)):
    return Matrix.from_rows(rows, field)


def e(n, i):
    return Matrix.unit(n, i)


def test_rank_examples():
    assert Matrix.zeros(3, 3).rank() == 0
    assert Matrix.identity(3).rank() == 3
    assert M([[1, 2], [2, 4]]).rank() == 1


def test_empty_matrix_rank():
    assert Matrix.zeros(0, 3).rank() == 0
    assert Matrix.zeros(3, 0).rank() == 0


def test_block_examples():
    I2, Z2 = Matrix.identity(2), Matrix.zeros(2, 2)
    assert block([[I2, Z2], [Z2, I2]]) == Matrix.identity(4)
    X = Y = Matrix.identity(1)
    N = block([[-X, Matrix.zeros(1, 1), X], [Matrix.zeros(1, 1), Y, Y], [X, Y, Matrix.zeros(1, 1)]])
    assert N == M([[-1, 0, 1], [0, 1, 1], [1, 1, 0]])
    A = M([[1, 2], [3, 4]])
    assert block([[A]]) == A


def test_block_shape_mismatch():
    with pytest.raises(UsageError):
        block([[Matrix.identity(2), Matrix.zeros(1, 1)]])


def test_conj_transpose_examples():
    assert M([[I]]).H == M([[-I]])
    assert M([[1, 2], [0, 1]]).H == M([[1, 0], [2, 1]])


def test_inverse_examples():
    assert M([[1, 1], [0, 1]]).inverse() == M([[1, -1], [0, 1]])
    assert Matrix.identity(3).inverse() == Matrix.identity(3)
    assert M([[2, 0], [0, Fraction(1, 2)]]).inverse() == M([[Fraction(1, 2), 0], [0, 2]])
    with pytest.raises(SingularMatrixError):
        M([[1, 2], [2, 4]]).inverse()


def test_kernel_examples():
    assert Matrix.zeros(2, 2).kernel().cols == 2
    assert Matrix.identity(2).kernel().cols == 0
    A = M([[1, 1], [1, 1]])
    K = A.kernel()
    assert K.cols == 1 and (A @ K).is_zero()
    assert range_equal(K, M([[1], [-1]]))


def test_subspace_examples():
    I3 = Matrix.identity(3)
    assert range_intersection_dim(I3, I3) == 3
    assert range_intersection_dim(e(3, 0), e(3, 1)) == 0
    assert range_intersection_dim(hstack(e(3, 0), e(3, 1)), hstack(e(3, 1), e(3, 2))) == 1
    assert range_contained(Matrix.zeros(3, 1), e(3, 0))
    assert not range_equal(e(2, 0), e(2, 1))


def test_intersection_basis_is_independent():
    S = range_intersection_basis(hstack(e(3, 0), e(3, 1)), hstack(e(3, 1), e(3, 2)))
    assert S.cols == S.rank() == 1
    assert range_equal(S, e(3, 1))


def test_nullspace_equal():
    A = M([[1, 1], [0, 0]])
    assert nullspace_equal(A, 3 * A)
    assert not nullspace_equal(A, Matrix.identity(2))


def test_solve_vacuous_and_forced():
    rng = make_rng(1, "solve")
    I3 = Matrix.identity(3)
    # MX = X  <=>  (M - I) X = 0
    (X,) = solve_linear_matrix_system([([(0, I3 - I3, Matrix.identity(2))], Matrix.zeros(3, 2))], [(3, 2)], rng)
    assert X.shape == (3, 2)
    (X,) = solve_linear_matrix_system([([(0, Matrix.zeros(3, 3) - I3, Matrix.identity(2))], Matrix.zeros(3, 2))],
                                      [(3, 2)], rng)
    assert X.is_zero()


def test_in_field_embedding():
    A = M([[1, I], [0, 2]])
    B = A.in_field(FieldSpec(5))
    assert B.field == FieldSpec(5) and B.rank() == 2
    with pytest.raises(UsageError):
        B.in_field(FieldSpec(2))


def test_json_roundtrip():
    A = Matrix.from_rows([[ExactScalar(1, 2, 3, 4, FieldSpec(5)), 0]], FieldSpec(5))
    assert Matrix.from_json(A.to_json()) == A


@given(matrices())
def test_rank_oracle_agrees(A):
    assert A.rank() == naive_rank(A.tolist(), A.field)


@given(matrices())
def test_conj_transpose_involution_and_rank(A):
    assert A.H.H == A
    assert A.H.rank() == A.rank()


@given(seeds, st.integers(1, 5), st.integers(1, 5), st.data())
def test_constructed_rank(seed, rows, cols, data):
    r = data.draw(st.integers(0, min(rows, cols)))
    A = random_rank_matrix(rng_for(seed), rows, cols, r)
    assert A.rank() == r


@given(seeds, st.integers(1, 4))
def test_column_operations_preserve_range(seed, n):
    rng = rng_for(seed)
    A = random_rank_matrix(rng, 4, n, int(rng.integers(0, n + 1)))
    assert range_equal(A, A @ random_nonsingular(rng, n))


@given(matrices(square=True))
def test_kernel_dimension(A):
    K = A.kernel()
    assert (A @ K).is_zero()
    assert K.cols == A.cols - A.rank()


def test_bareiss_integer_rows():
    assert bareiss_rank([[2, 4, 6], [1, 2, 3], [0, 0, 1]]) == 2
