from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ranklab import Matrix, NotGroupInvertibleError
from ranklab.generators import random_index_matrix
from ranklab.geninv import (drazin, gen_inverse_from, group_inverse, matrix_index, moore_penrose,
                            moore_penrose_by_solving, penrose_residuals, projector_triple, sample_gen_inverse)
from ranklab.rng import random_nonsingular, random_rank_matrix
from strategies import matrices, rng_for, seeds

h = Fraction(1, 2)
ALL = {1: True, 2: True, 3: True, 4: True}


def M(rows):
    return Matrix.from_rows(rows)


def test_mp_examples():
    assert moore_penrose(Matrix.diag([1, 0])) == Matrix.diag([1, 0])
    A = M([[1], [1]])
    assert moore_penrose(A) == M([[h, h]])
    assert penrose_residuals(A, moore_penrose(A)) == ALL
    assert moore_penrose(Matrix.zeros(2, 3)) == Matrix.zeros(3, 2)


def test_projector_triples():
    t = projector_triple(Matrix.identity(2))
    assert t.P == Matrix.identity(2) and t.E.is_zero() and t.F.is_zero()
    t = projector_triple(M([[1], [1]]))
    assert t.P == M([[h, h], [h, h]]) and t.E == Matrix.identity(2) - t.P and t.F == Matrix.zeros(1, 1)
    t = projector_triple(Matrix.zeros(2, 3))
    assert t.P.is_zero() and t.E == Matrix.identity(2) and t.F == Matrix.identity(3)


def test_zero_parameters_give_mp():
    A = M([[1, 2], [2, 4], [0, 0]])
    assert gen_inverse_from(A, Matrix.zeros(2, 3), Matrix.zeros(2, 3)) == moore_penrose(A)


@given(seeds)
def test_nonsingular_inverse_is_unique(seed):
    rng = rng_for(seed)
    A = random_nonsingular(rng, 3)
    assert sample_gen_inverse(A, "1", rng).inverse == A.inverse()


@given(seeds, st.sampled_from(["1", "13", "14"]))
def test_sampled_inverse_classes(seed, cls):
    rng = rng_for(seed, cls)
    A = random_rank_matrix(rng, 3, 2, 1)
    g = sample_gen_inverse(A, cls, rng)
    res = penrose_residuals(A, g.inverse)
    assert res[1]
    if cls == "13":
        assert res[3]
    if cls == "14":
        assert res[4]
    assert g.inverse == gen_inverse_from(A, g.U, g.V)


@given(matrices(max_dim=4))
def test_mp_penrose_equations(A):
    assert penrose_residuals(A, moore_penrose(A)) == ALL


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_mp_two_routes_agree(seed, rows, cols):
    rng = rng_for(seed)
    A = random_rank_matrix(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)))
    assert moore_penrose(A) == moore_penrose_by_solving(A, rng)


def test_index_examples():
    assert matrix_index(Matrix.identity(2)) == 0
    assert matrix_index(Matrix.zeros(3, 3)) == 1
    assert matrix_index(M([[0, 1], [0, 0]])) == 2


def test_drazin_examples():
    assert drazin(M([[0, 1], [0, 0]])).is_zero()
    A = M([[2, 1], [1, 1]])
    assert drazin(A) == A.inverse()
    P = M([[1, 1], [0, 0]])
    assert drazin(P) == P


def test_group_inverse_examples():
    assert group_inverse(Matrix.diag([2, 0])) == Matrix.diag([h, 0])
    assert group_inverse(Matrix.identity(2)) == Matrix.identity(2)
    with pytest.raises(NotGroupInvertibleError):
        group_inverse(M([[0, 1], [0, 0]]))


@given(seeds, st.integers(1, 5))
def test_drazin_equations(seed, m):
    A = random_index_matrix(m, rng_for(seed))
    t = matrix_index(A)
    X = drazin(A)
    assert A ** t @ X @ A == A ** t
    assert X @ A @ X == X
    assert A @ X == X @ A
    assert drazin(A, t + 1) == X
