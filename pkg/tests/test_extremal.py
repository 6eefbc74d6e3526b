import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ranklab import Matrix, UsageError, hstack
from ranklab.extremal import (FAMILIES, Bounds, PencilInstance, certify_bounds, eval_lmvf_route,
                              eval_one_term_ginverse_bounds, eval_pencil_bounds, eval_two_term_lmvf_bounds,
                              run_extremal, sample_pencil_rank, z44_intersection_dim)
from ranklab.generators import matrix_pair
from ranklab.geninv import gen_inverse_from, sample_gen_inverse
from ranklab.matrix import range_equal
from ranklab.rng import gauss_int_matrix, make_rng, random_nonsingular, random_rank_matrix
from strategies import rng_for, seeds

e1, e2 = Matrix.unit(2, 0), Matrix.unit(2, 1)


def inst(fid, lam=None, shared=False, **mats):
    return PencilInstance(fid, mats, lam, shared)


def grid_ranks_tn44_e1e2():
    """Every rank of AA^- + BB^- for A = e1, B = e2 with V entries in {-1, 0, 1}.

    Both A and B have full column rank, so F = 0 and only V (1 x 2) matters.
    """
    vals = (-1, 0, 1)
    out = set()
    for v in itertools.product(vals, repeat=4):
        G1 = gen_inverse_from(e1, Matrix.zeros(1, 2), Matrix.from_rows([v[:2]]))
        G2 = gen_inverse_from(e2, Matrix.zeros(1, 2), Matrix.from_rows([v[2:]]))
        out.add((e1 @ G1 + e2 @ G2).rank())
    return out


def test_tn44_branch_b_against_grid_oracle():
    assert grid_ranks_tn44_e1e2() == {1, 2}
    assert eval_pencil_bounds(inst("TN44", 0, A=e1, B=e2)) == Bounds(2, 1)


def test_tn44_zero_inputs():
    Z = Matrix.zeros(3, 2)
    assert eval_pencil_bounds(inst("TN44", Fraction(3, 2), A=Z, B=Z)) == Bounds(3, 3)
    cert = certify_bounds(inst("TN44", 0, A=Z, B=Z), 4, make_rng(1))
    assert cert["bounds"] == {"max": 0, "min": 0} and cert["maxAttained"] and cert["minAttained"]
    assert all(sample_pencil_rank(inst("TN44", 0, A=Z, B=Z), make_rng(i)) == 0 for i in range(5))


def test_excluded_lambda_has_no_branch():
    with pytest.raises(UsageError):
        eval_pencil_bounds(inst("T7", 1, A=e1, C=e1.H))
    with pytest.raises(UsageError):
        eval_pencil_bounds(inst("TN44", None, A=e1, B=e2))
    with pytest.raises(UsageError):
        eval_pencil_bounds(inst("Z39", 1, A=e1, B=e2))


def test_t9_nonsingular_collapses():
    I3 = Matrix.identity(3)
    assert eval_pencil_bounds(inst("T9", 0, A=I3)) == Bounds(0, 0)


def test_mp_point_and_unique_inverse():
    fam = FAMILIES["TN44"]
    G = [gen_inverse_from(X, Matrix.zeros(1, 2), Matrix.zeros(1, 2)) for X in (e1, e2)]
    assert fam.pencil({"A": e1, "B": e2}, 0, G, False).rank() == 2
    A = random_nonsingular(make_rng(5), 3)
    ranks = {sample_pencil_rank(inst("T8", Fraction(-1), shared=s, A=A), make_rng(i))
             for i in range(4) for s in (True, False)}
    assert len(ranks) == 1


def test_certify_tn44_e1e2():
    cert = certify_bounds(inst("TN44", 0, A=e1, B=e2), 16, make_rng(3), seed=3)
    assert {cert["observed"]["min"], cert["observed"]["max"]} <= {1, 2}
    assert cert["maxAttained"] and not cert["violations"]


def test_certification_schema(validate):
    cert = certify_bounds(inst("T8", -2, shared=True, A=Matrix.diag([1, 0, 0])), 3, make_rng(0), seed=0)
    validate(cert, "certification.json")
    assert cert["inverseMode"] == "shared"


@pytest.mark.parametrize("lam", [1, Fraction(5, 2)])
def test_t10_block_diagonal_collapses(lam):
    rng = make_rng(8)
    A, D = random_rank_matrix(rng, 3, 2, 1), random_rank_matrix(rng, 2, 3, 2)
    mats = dict(A=A, B=Matrix.zeros(3, 3), C=Matrix.zeros(2, 2), D=D)
    b = eval_pencil_bounds(inst("T10", lam, **mats))
    assert b.max == b.min == 5
    cert = certify_bounds(inst("T10", lam, **mats), 6, rng)
    assert cert["observed"] == {"max": 5, "min": 5}


def test_t10_lambda_zero_does_not_collapse():
    A = Matrix.diag([1, 0])
    mats = dict(A=A, B=Matrix.zeros(2, 2), C=Matrix.zeros(2, 2), D=A)
    b = eval_pencil_bounds(inst("T10", 0, **mats))
    assert b == Bounds(2, 0)
    cert = certify_bounds(inst("T10", 0, **mats), 16, make_rng(2))
    assert cert["maxAttained"] and cert["minAttained"]


# -- the two generic formulas ---------------------------------------------------------

def test_lmvf_constant_function():
    rng = make_rng(4)
    A = random_rank_matrix(rng, 3, 4, 2)
    Z = Matrix.zeros(3, 1)
    assert eval_two_term_lmvf_bounds(A, Z, Matrix.identity(4)[0:1] if False else Matrix.zeros(1, 4), Z,
                                     Matrix.zeros(1, 4)) == Bounds(2, 2)


def test_lmvf_free_additive_term():
    # A + X over all X: rank 0 at X = -A, and generically min(m, n)
    rng = make_rng(6)
    A = random_rank_matrix(rng, 3, 2, 1)
    b = eval_two_term_lmvf_bounds(A, Matrix.identity(3), Matrix.identity(2), Matrix.zeros(3, 1), Matrix.zeros(1, 2))
    assert b == Bounds(2, 0)
    assert (A - A).rank() == 0
    assert max((A + gauss_int_matrix(rng, 3, 2)).rank() for _ in range(10)) == 2


@given(seeds)
@settings(max_examples=15)
def test_lmvf_brackets_samples(seed):
    rng = rng_for(seed)
    m, n = int(rng.integers(2, 5)), int(rng.integers(2, 5))

    def rnd(r, c):
        return random_rank_matrix(rng, r, c, int(rng.integers(0, min(r, c) + 1)))

    A, B1, C1, B2, C2 = rnd(m, n), rnd(m, 2), rnd(2, n), rnd(m, 1), rnd(2, n)
    b = eval_two_term_lmvf_bounds(A, B1, C1, B2, C2)
    ranks = [(A + B1 @ gauss_int_matrix(rng, 2, 2) @ C1 + B2 @ gauss_int_matrix(rng, 1, 2) @ C2).rank()
             for _ in range(40)]
    assert b.min <= min(ranks) and max(ranks) == b.max


def test_lmvf_shape_check():
    with pytest.raises(UsageError):
        eval_two_term_lmvf_bounds(Matrix.zeros(2, 2), Matrix.zeros(3, 1), Matrix.zeros(1, 2),
                                  Matrix.zeros(2, 1), Matrix.zeros(1, 2))


def _one_term_samples(A, B, C, D, rng, n=30):
    return [(D - C @ sample_gen_inverse(A, "1", rng).inverse @ B).rank() for _ in range(n)]


def test_one_term_examples():
    rng = make_rng(10)
    A, B, D = random_rank_matrix(rng, 3, 2, 1), random_rank_matrix(rng, 3, 2, 2), random_rank_matrix(rng, 2, 2, 1)
    assert eval_one_term_ginverse_bounds(A, B, Matrix.zeros(2, 2), D) == Bounds(1, 1)
    An = random_nonsingular(rng, 3)
    C = random_rank_matrix(rng, 2, 3, 2)
    r = (D - C @ An.inverse() @ B).rank()
    assert eval_one_term_ginverse_bounds(An, B, C, D) == Bounds(r, r)
    Z = Matrix.zeros(3, 3)
    b = eval_one_term_ginverse_bounds(Z, B, C, D)
    ranks = _one_term_samples(Z, B, C, D, rng)
    assert b.min <= min(ranks) and max(ranks) == b.max
    with pytest.raises(UsageError):
        eval_one_term_ginverse_bounds(Z, B, C, Matrix.zeros(3, 3))


@given(seeds)
@settings(max_examples=20)
def test_one_term_specializes_to_z39(seed):
    A, B = matrix_pair(int(rng_for(seed).integers(2, 5)), rng_for(seed, "pair"))
    # A A^- B = -(0 - A A^- B)
    b = eval_one_term_ginverse_bounds(A, B, A, Matrix.zeros(A.rows, B.cols))
    assert b == eval_pencil_bounds(inst("Z39", A=A, B=B))


# -- families ------------------------------------------------------------------------------

@given(seeds, st.sampled_from(sorted(FAMILIES)), st.integers(2, 4))
@settings(max_examples=60)
def test_routes_agree_and_draws_in_bounds(seed, fid, m):
    fam = FAMILIES[fid]
    rng = rng_for(seed, fid)
    reg = fam.regimes[int(rng.integers(len(fam.regimes)))]
    lam = None if reg is None else (Fraction(7, 3) if reg == "generic" else Fraction(reg))
    if lam in [Fraction(x) for x in fam.excluded]:
        lam = Fraction(7, 3)
    p = PencilInstance(fid, fam.build(m, rng), lam, bool(rng.integers(2)))
    b = eval_pencil_bounds(p)
    other = eval_lmvf_route(p)
    assert other is None or other == b
    for _ in range(3):
        assert b.min <= sample_pencil_rank(p, rng) <= b.max


@given(seeds, st.integers(2, 4))
@settings(max_examples=20)
def test_z44_min_is_triple_intersection(seed, m):
    p = PencilInstance("Z44", FAMILIES["Z44"].build(m, rng_for(seed)))
    assert eval_pencil_bounds(p).min == z44_intersection_dim(p.mats)


@given(seeds, st.integers(2, 4))
@settings(max_examples=25)
def test_tn44_nonsingular_for_all_iff_nested_ranges(seed, m):
    rng = rng_for(seed)
    A, B = matrix_pair(m, rng)
    cert = certify_bounds(inst("TN44", Fraction(1, 3), A=A, B=B), 8, rng)
    AB = hstack(A, B)
    if range_equal(A, AB) or range_equal(B, AB):
        assert cert["bounds"]["min"] == cert["observed"]["min"] == m
    else:
        assert cert["bounds"]["min"] < m
        assert cert["observed"]["min"] < m  # a deficient draw within the budget


def test_tn44_printed_condition_counterexample():
    # R(A) = {0} differs from R(B), yet every draw of lambda I + BB^- is nonsingular
    A, B = Matrix.zeros(2, 1), e1
    cert = certify_bounds(inst("TN44", Fraction(1, 3), A=A, B=B), 16, make_rng(0))
    assert not range_equal(A, B)
    assert cert["bounds"] == {"max": 2, "min": 2} and cert["observed"]["min"] == 2


def test_shared_and_independent_give_same_bounds():
    rng = make_rng(12)
    for _ in range(5):
        mats = FAMILIES["T9"].build(3, rng)
        a = certify_bounds(PencilInstance("T9", mats, 0, True), 8, rng)
        b = certify_bounds(PencilInstance("T9", mats, 0, False), 8, rng)
        assert a["bounds"] == b["bounds"]


def test_run_extremal_report(validate):
    rep = run_extremal(["TW28", "T8"], [2, 3], 2, 2, 5)
    validate(rep, "extremal-report.json")
    assert rep["summary"] == {"violations": 0, "maxAnomalies": 0}
    modes = {(r["family"], r.get("inverseMode")) for r in rep["runs"]}
    assert ("T8", "shared") in modes and ("T8", "independent") in modes
    assert rep == run_extremal(["TW28", "T8"], [2, 3], 2, 2, 5)
