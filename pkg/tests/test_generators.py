import pytest
from hypothesis import given, strategies as st

from ranklab import ExactScalar, Matrix, PreconditionError, UsageError
from ranklab.generators import (PAIR_MODES, TRIPLE_MODES, derived_idempotent, generate_instance,
                                idempotent_pair, idempotent_triple, projector_onto, projector_pair,
                                random_idempotent, random_projector, sample_equation_solutions)
from ranklab.geninv import moore_penrose
from ranklab.matrix import range_contained
from ranklab.rng import make_rng, random_rank_matrix
from strategies import rng_for, seeds

I = ExactScalar(0, 1)


def is_idem(X):
    return X @ X == X


def test_idempotent_edge_ranks():
    rng = make_rng(0)
    assert random_idempotent(3, 0, rng).is_zero()
    assert random_idempotent(3, 3, rng) == Matrix.identity(3)
    assert random_projector(3, 3, rng) == Matrix.identity(3)
    assert random_projector(3, 0, rng).is_zero()
    with pytest.raises(UsageError):
        random_idempotent(2, 3, rng)


def test_idempotent_with_given_conjugator():
    P = Matrix.from_rows([[1, 1], [0, 1]])
    A = random_idempotent(2, 1, None, P=P)
    assert A == Matrix.from_rows([[1, -1], [0, 0]])
    assert is_idem(A) and A.rank() == 1


def test_projector_onto_column():
    h = ExactScalar(1) / 2
    assert projector_onto(Matrix.from_rows([[1], [1]])) == Matrix.from_rows([[h, h], [h, h]])


def test_derived_rules():
    S = Matrix.diag([1, -1])
    assert derived_idempotent(S, "involution-plus") == Matrix.diag([1, 0])
    assert derived_idempotent(Matrix.diag([I, -I]), "skew-involution") == Matrix.diag([0, 1])
    with pytest.raises(PreconditionError):
        derived_idempotent(Matrix.identity(2) * 2, "involution-plus")


@given(seeds)
def test_product_rule(seed):
    rng = rng_for(seed)
    A = random_rank_matrix(rng, 2, 3, int(rng.integers(0, 3)))
    B = random_rank_matrix(rng, 3, 2, int(rng.integers(0, 3)))
    X = derived_idempotent(A, "product-BA", B)
    assert X == B @ moore_penrose(A @ B) @ A and is_idem(X)


@given(seeds, st.integers(1, 5), st.sampled_from(sorted(set(PAIR_MODES))))
def test_pairs_are_idempotent(seed, m, mode):
    A, B = idempotent_pair(m, rng_for(seed, mode), mode=mode)
    assert is_idem(A) and is_idem(B)


@given(seeds, st.integers(1, 4), st.sampled_from(sorted(set(TRIPLE_MODES))))
def test_triples_are_idempotent(seed, m, mode):
    assert all(is_idem(X) for X in idempotent_triple(m, rng_for(seed, mode), mode=mode))


@given(seeds, st.integers(1, 4))
def test_projector_pairs(seed, m):
    for X in projector_pair(m, rng_for(seed)):
        assert is_idem(X) and X.H == X


@given(seeds, st.integers(1, 4))
def test_equation_systems(seed, m):
    rng = rng_for(seed)
    M, X, Y = sample_equation_solutions("z1", m, rng)
    assert M @ X == X and Y @ M == Y and M @ Y == X @ M
    A, B, X, Y = sample_equation_solutions("z8", m, rng)
    assert A @ X == X and Y @ B == Y and A @ Y == X @ B
    A, B, X, Y = sample_equation_solutions("z11", m, rng)
    assert A @ X == X and B @ Y == Y
    assert range_contained(A @ Y, X) and range_contained(B @ X, Y)


def test_z11_products():
    rng = make_rng(3)
    A, B = idempotent_pair(3, rng, mode="generic")
    X, Y = A @ B, B @ A
    assert A @ X == X and B @ Y == Y
    assert range_contained(A @ Y, X) and range_contained(B @ X, Y)


def test_generate_instance_ranks():
    out = generate_instance("idempotent-pair", 3, make_rng(9), ranks=[1, 2])
    assert [X.rank() for X in out.values()] == [1, 2]
    out = generate_instance("star-pair", 2, make_rng(1))
    assert out["B"] == out["A"].H
    with pytest.raises(UsageError):
        generate_instance("nosuch", 2, make_rng(1))
