"""Max/min ranks of matrix pencils in generalized inverses, and a sampler that certifies them.

Each family exposes two independent evaluations of its bounds:

* ``closed_form`` -- the theorem's formula written in ranks of the inputs
  and their block concatenations;
* ``lmvf`` -- the pencil rewritten as A0 + B1 X1 C1 + B2 X2 C2 (using
  A^- = A^+ + F_A U + V E_A) and fed to :func:`eval_two_term_lmvf_bounds`.

Z41 and Z44 are not linear in the free parameters, so they only have the
closed form (Z44 is also cross-checked against a triple range intersection).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import flint

from .errors import NoSolutionError, UsageError
from .generators import matrix_pair, matrix_triple, random_idempotent, random_index_matrix, random_square
from .geninv import E_, F_, moore_penrose
from .matrix import Matrix, block, hstack, range_intersection_basis, vstack
from .rng import gauss_int_matrix, make_rng, random_rank_matrix, small_rational
from .scalar import ExactScalar

__all__ = ["Bounds", "FAMILIES", "Family", "PencilInstance", "certify_bounds", "eval_one_term_ginverse_bounds",
           "eval_pencil_bounds", "eval_two_term_lmvf_bounds", "run_extremal", "sample_pencil_rank"]

DEFAULT_TRIALS = 16
GREEDY_BUDGET = 96


@dataclass(frozen=True)
class Bounds:
    max: int
    min: int

    def __post_init__(self):
        if self.min > self.max:
            raise ValueError(f"min {self.min} exceeds max {self.max}")

    def as_dict(self) -> dict:
        return {"max": self.max, "min": self.min}


def _r(X: Matrix) -> int:
    return X.rank()


def _z(rows: int, cols: int, like: Matrix) -> Matrix:
    return Matrix.zeros(rows, cols, like.field)


# -- the two generic formulas ----------------------------------------------------

def eval_two_term_lmvf_bounds(A: Matrix, B1: Matrix, C1: Matrix, B2: Matrix, C2: Matrix) -> Bounds:
    """Max and min rank of A + B1 X1 C1 + B2 X2 C2 over free X1, X2."""
    m, n = A.shape
    if B1.rows != m or B2.rows != m or C1.cols != n or C2.cols != n:
        raise UsageError(f"shape mismatch: A {A.shape}, B1 {B1.shape}, C1 {C1.shape}, "
                         f"B2 {B2.shape}, C2 {C2.shape}")
    k1, k2 = B1.cols, B2.cols
    p1, p2 = C1.rows, C2.rows
    row = _r(hstack(A, B1, B2))
    col = _r(vstack(A, C1, C2))
    r12 = _r(block([[A, B1], [C2, _z(p2, k1, A)]]))
    r21 = _r(block([[A, B2], [C1, _z(p1, k2, A)]]))
    hi = min(row, col, r12, r21)
    t1 = (r12 - _r(block([[A, B1, B2], [C2, _z(p2, k1, A), _z(p2, k2, A)]]))
          - _r(block([[A, B1], [C1, _z(p1, k1, A)], [C2, _z(p2, k1, A)]])))
    t2 = (r21 - _r(block([[A, B1, B2], [C1, _z(p1, k1, A), _z(p1, k2, A)]]))
          - _r(block([[A, B2], [C1, _z(p1, k2, A)], [C2, _z(p2, k2, A)]])))
    return Bounds(hi, col + row + max(t1, t2))


def eval_one_term_ginverse_bounds(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> Bounds:
    """Max and min rank of D - C A^- B over all inner inverses A^-."""
    m, n = A.shape
    if B.rows != m or C.cols != n or D.shape != (C.rows, B.cols):
        raise UsageError(f"shape mismatch: A {A.shape}, B {B.shape}, C {C.shape}, D {D.shape}")
    l, k = D.shape
    rA = _r(A)
    rCD = _r(hstack(C, D))
    rBD = _r(vstack(B, D))
    rM = _r(block([[A, B], [C, D]]))
    hi = min(rCD, rBD, rM - rA)
    lo = (rA + rCD + rBD + rM
          - _r(block([[A, _z(m, n, A), B], [_z(l, n, A), C, D]]))
          - _r(block([[A, _z(m, k, A)], [_z(m, n, A), B], [C, D]])))
    return Bounds(hi, lo)


# -- families ----------------------------------------------------------------------

@dataclass
class PencilInstance:
    family: str
    mats: dict
    lam: object = None
    shared: bool = False

    @property
    def m(self) -> int:
        return self.family_def.order(self.mats)

    @property
    def family_def(self) -> "Family":
        return FAMILIES[self.family]


@dataclass(frozen=True)
class Family:
    id: str
    text: str
    regimes: tuple  # "generic" or a fixed lambda value
    excluded: tuple  # lambda values the generic branch avoids
    build: Callable  # (m, rng) -> dict of matrices
    bases: Callable  # (mats, shared) -> matrices whose inner inverses are drawn
    pencil: Callable  # (mats, lam, inverses, shared) -> Matrix
    closed_form: Callable  # (mats, lam) -> Bounds
    lmvf: Callable | None  # (mats, lam) -> (A0, B1, C1, B2, C2)
    order: Callable = None
    shared_modes: tuple = (False,)


def _eye(m, like):
    return Matrix.identity(m, like.field)


def _lam_eye(lam, m, like):
    return _eye(m, like).scale(lam)


def _regime_of(lam, family: Family):
    if lam is None:
        return None
    for reg in family.regimes:
        if reg != "generic" and Fraction(reg) == lam:
            return reg
    if lam in [Fraction(x) for x in family.excluded]:
        raise UsageError(f"lambda = {lam} is excluded for {family.id} and has no branch")
    return "generic"


# ---- TN44 / TN45: lambda I + AA^- +/- BB^-

def _build_pair(m, rng):
    A, B = matrix_pair(m, rng)
    return {"A": A, "B": B}


def _pair_ranks(d):
    A, B = d["A"], d["B"]
    return A.rows, _r(A), _r(B), _r(hstack(A, B))


def _tn44_closed(d, lam):
    m, rA, rB, rAB = _pair_ranks(d)
    reg = _regime_of(lam, FAMILIES["TN44"])
    if reg == "generic":
        return Bounds(m, max(m + rA - rAB, m + rB - rAB))
    if reg == 0:
        return Bounds(rAB, max(rA, rB))
    if reg == -1:
        return Bounds(m - abs(rA - rB), m + rA + rB - 2 * rAB)
    return Bounds(m + rAB - rA - rB, max(m - rA, m - rB))


def _tn45_closed(d, lam):
    m, rA, rB, rAB = _pair_ranks(d)
    reg = _regime_of(lam, FAMILIES["TN45"])
    if reg == "generic":
        return Bounds(m, max(m + rA - rAB, m + rB - rAB))
    if reg == 1:
        return Bounds(min(m, m + rA - rB), m + rA - rAB)
    if reg == 0:
        return Bounds(min(rAB, m + rAB - rA - rB), max(rAB - rA, rAB - rB))
    # lambda = -1: the lambda = 1 branch with A and B swapped, up to sign
    return Bounds(min(m, m + rB - rA), m + rB - rAB)


def _pair_pencil(sign):
    def pencil(d, lam, G, shared):
        A, B = d["A"], d["B"]
        return _lam_eye(lam, A.rows, A) + A @ G[0] + (B @ G[1]) * sign
    return pencil


def _pair_lmvf(sign):
    def lmvf(d, lam):
        A, B = d["A"], d["B"]
        A0 = _lam_eye(lam, A.rows, A) + A @ moore_penrose(A) + (B @ moore_penrose(B)) * sign
        return A0, A, E_(A), B * sign, E_(B)
    return lmvf


# ---- TN46 / T7: lambda I + AA^- +/- C^-C

def _build_left_right(m, rng):
    n = int(rng.integers(1, m + 2))
    p = int(rng.integers(1, m + 2))
    mode = int(rng.integers(6))
    A = random_rank_matrix(rng, m, n, int(rng.integers(0, min(m, n) + 1)))
    if mode == 0:
        C = gauss_int_matrix(rng, p, m, 2) @ E_(A)  # CA = 0
    elif mode == 1:
        C = Matrix.zeros(p, m)
    elif mode == 2:
        A = Matrix.zeros(m, n)
        C = random_rank_matrix(rng, p, m, int(rng.integers(0, min(m, p) + 1)))
    elif mode == 3:
        C = random_rank_matrix(rng, p, m, min(m, p))
    else:
        C = random_rank_matrix(rng, p, m, int(rng.integers(0, min(m, p) + 1)))
    return {"A": A, "C": C}


def _lr_ranks(d):
    A, C = d["A"], d["C"]
    return A.rows, _r(A), _r(C), _r(C @ A)


def _tn46_closed(d, lam):
    m, rA, rC, rCA = _lr_ranks(d)
    reg = _regime_of(lam, FAMILIES["TN46"])
    return _sum_branch(reg, m, rA, rC, rCA)


def _sum_branch(reg, m, rA, rC, rCA):
    if reg == "generic":
        return Bounds(m, max(m - rCA, rA + rC - rCA))
    if reg == 0:
        return Bounds(min(m, rA + rC), rA + rC - rCA)
    if reg == -1:
        return Bounds(min(m + rCA - rA, m + rCA - rC), max(m + rCA - rA - rC, rCA))
    return Bounds(min(m, 2 * m - rA - rC), m - rCA)


def _diff_branch(reg, m, rA, rC, rCA):
    if reg == "generic":
        return Bounds(m, max(m - rCA, rA + rC - rCA))
    if reg == 0:
        return Bounds(m - abs(rA + rC - m), rA + rC - 2 * rCA)
    return Bounds(m - rA + rCA, max(m - rA, rC))


def _t7_closed(d, lam):
    m, rA, rC, rCA = _lr_ranks(d)
    return _diff_branch(_regime_of(lam, FAMILIES["T7"]), m, rA, rC, rCA)


def _lr_pencil(sign):
    def pencil(d, lam, G, shared):
        A, C = d["A"], d["C"]
        return _lam_eye(lam, A.rows, A) + A @ G[0] + (G[1] @ C) * sign
    return pencil


def _lr_lmvf(sign):
    def lmvf(d, lam):
        A, C = d["A"], d["C"]
        A0 = _lam_eye(lam, A.rows, A) + A @ moore_penrose(A) + (moore_penrose(C) @ C) * sign
        return A0, A, E_(A), F_(C) * sign, C
    return lmvf


# ---- T8 / T9: lambda I + AA^- +/- A^-A

def _build_square(m, rng):
    mode = int(rng.integers(6))
    if mode == 0:
        A = random_index_matrix(m, rng)
    elif mode == 1:
        A = random_idempotent(m, int(rng.integers(0, m + 1)), rng)
    elif mode == 2:
        A = Matrix.zeros(m, m) if rng.integers(2) else Matrix.identity(m)
    else:
        A = random_square(m, rng)
    return {"A": A}


def _sq_ranks(d):
    A = d["A"]
    return A.rows, _r(A), _r(A @ A)


def _t8_closed(d, lam):
    m, rA, rA2 = _sq_ranks(d)
    return _sum_branch(_regime_of(lam, FAMILIES["T8"]), m, rA, rA, rA2)


def _t9_closed(d, lam):
    m, rA, rA2 = _sq_ranks(d)
    return _diff_branch(_regime_of(lam, FAMILIES["T9"]), m, rA, rA, rA2)


def _sq_pencil(sign):
    def pencil(d, lam, G, shared):
        A = d["A"]
        left, right = G[0], G[0] if shared else G[1]
        return _lam_eye(lam, A.rows, A) + A @ left + (right @ A) * sign
    return pencil


def _sq_lmvf(sign):
    # AA^- only sees V and A^-A only sees U, so one shared A^- still gives two free terms
    def lmvf(d, lam):
        A = d["A"]
        X = moore_penrose(A)
        A0 = _lam_eye(lam, A.rows, A) + A @ X + (X @ A) * sign
        return A0, A, E_(A), F_(A) * sign, A
    return lmvf


# ---- T10: lambda I + MM^- - NN^-, M = [[A, B], [C, D]], N = diag(A, D)

def _build_blocks(m, rng):
    l = int(rng.integers(1, m + 1))
    n = int(rng.integers(1, m + 2))
    k = int(rng.integers(1, m + 2))

    def rnd(rows, cols):
        return random_rank_matrix(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)))

    A, B, C, D = rnd(m, n), rnd(m, k), rnd(l, n), rnd(l, k)
    mode = int(rng.integers(5))
    if mode == 0:
        B, C = Matrix.zeros(m, k), Matrix.zeros(l, n)
    elif mode == 1:
        D = Matrix.zeros(l, k)
    elif mode == 2:
        # [C, D] inside the row space of [A, B]
        C, D = gauss_int_matrix(rng, l, m, 1) @ A, gauss_int_matrix(rng, l, m, 1) @ B
    return {"A": A, "B": B, "C": C, "D": D}


def _mn(d):
    A, B, C, D = d["A"], d["B"], d["C"], d["D"]
    M = block([[A, B], [C, D]])
    N = block([[A, _z(A.rows, D.cols, A)], [_z(D.rows, A.cols, A), D]])
    return M, N


def _t10_closed(d, lam):
    A, B, C, D = d["A"], d["B"], d["C"], d["D"]
    M, _ = _mn(d)
    ml = M.rows
    rM, rA, rD = _r(M), _r(A), _r(D)
    rAB, rCD = _r(hstack(A, B)), _r(hstack(C, D))
    reg = _regime_of(lam, FAMILIES["T10"])
    if reg == "generic":
        return Bounds(ml, ml - rAB - rCD + max(rM, rA + rD))
    if reg == 1:
        return Bounds(min(ml, ml + rM - rA - rD), ml + rM - rAB - rCD)
    return Bounds(rAB + rCD + min(0, ml - rM - rA - rD), rAB + rCD - min(rM, rA + rD))


def _t10_pencil(d, lam, G, shared):
    M, N = _mn(d)
    return _lam_eye(lam, M.rows, M) + M @ G[0] - N @ G[1]


def _t10_lmvf(d, lam):
    M, N = _mn(d)
    A0 = _lam_eye(lam, M.rows, M) + M @ moore_penrose(M) - N @ moore_penrose(N)
    return A0, M, E_(M), -N, E_(N)


# ---- TW28: [A, B] - [A, B][A^-; B^-][A, B]

def _tw28_closed(d, lam):
    m, rA, rB, rAB = _pair_ranks(d)
    return Bounds(rAB - abs(rA - rB), rA + rB - rAB)


def _tw28_pencil(d, lam, G, shared):
    T = hstack(d["A"], d["B"])
    return T - T @ vstack(G[0], G[1]) @ T


def _tw28_lmvf(d, lam):
    A, B = d["A"], d["B"]
    T = hstack(A, B)
    A0 = T - (A @ moore_penrose(A) + B @ moore_penrose(B)) @ T
    return A0, -A, E_(A) @ T, -B, E_(B) @ T


# ---- Z39: AA^-B

def _z39_closed(d, lam):
    m, rA, rB, rAB = _pair_ranks(d)
    return Bounds(min(rA, rB), rA + rB - rAB)


def _z39_pencil(d, lam, G, shared):
    return d["A"] @ G[0] @ d["B"]


def _z39_lmvf(d, lam):
    A, B = d["A"], d["B"]
    A0 = A @ moore_penrose(A) @ B
    return A0, A, E_(A) @ B, _z(A.rows, 1, A), _z(1, B.cols, A)


# ---- Z41: [AA^-BB^-, BB^-AA^-]

def _z41_closed(d, lam):
    m, rA, rB, rAB = _pair_ranks(d)
    return Bounds(rAB - abs(rA - rB), rA + rB - rAB)


def _z41_pencil(d, lam, G, shared):
    A, B = d["A"], d["B"]
    P, Q = A @ G[0], B @ G[1]
    return hstack(P @ Q, Q @ P)


# ---- Z44: [AA^-[B, C], BB^-[A, C], CC^-[A, B]]

def _build_triple(m, rng):
    return dict(zip("ABC", matrix_triple(m, rng)))


def _z44_closed(d, lam):
    A, B, C = d["A"], d["B"], d["C"]
    rA, rB, rC = _r(A), _r(B), _r(C)
    rAB, rAC, rBC = _r(hstack(A, B)), _r(hstack(A, C)), _r(hstack(B, C))
    rABC = _r(hstack(A, B, C))
    lo = rAB + rAC + rBC - 2 * rABC
    # each block AA^-[B, C] ranges independently over [rA + r[B,C] - rABC, min(rA, r[B,C])]
    hi = rABC - rA - rB - rC + min(rA, rBC) + min(rB, rAC) + min(rC, rAB)
    return Bounds(hi, lo)


def _z44_pencil(d, lam, G, shared):
    A, B, C = d["A"], d["B"], d["C"]
    return hstack(A @ G[0] @ hstack(B, C), B @ G[1] @ hstack(A, C), C @ G[2] @ hstack(A, B))


def z44_intersection_dim(d) -> int:
    """dim(R[A, B] & R[A, C] & R[B, C]) from explicit bases."""
    A, B, C = d["A"], d["B"], d["C"]
    S = range_intersection_basis(hstack(A, B), hstack(A, C))
    if S.cols == 0:
        return 0
    return range_intersection_basis(S, hstack(B, C)).cols


def _rows(d):
    return next(iter(d.values())).rows


FAMILIES: dict[str, Family] = {}


def _add(*args, **kw):
    f = Family(*args, **kw)
    FAMILIES[f.id] = f


_AB = lambda d, shared: [d["A"], d["B"]]  # noqa: E731
_AC = lambda d, shared: [d["A"], d["C"]]  # noqa: E731

_add("TN44", "lambda I + AA^- + BB^-", ("generic", 0, -1, -2), (0, -1, -2), _build_pair, _AB,
     _pair_pencil(1), _tn44_closed, _pair_lmvf(1), _rows)
_add("TN45", "lambda I + AA^- - BB^-", ("generic", 1, 0, -1), (1, 0, -1), _build_pair, _AB,
     _pair_pencil(-1), _tn45_closed, _pair_lmvf(-1), _rows)
_add("TN46", "lambda I + AA^- + C^-C", ("generic", 0, -1, -2), (0, -1, -2), _build_left_right, _AC,
     _lr_pencil(1), _tn46_closed, _lr_lmvf(1), _rows)
_add("T7", "lambda I + AA^- - C^-C", ("generic", 0, -1), (1, 0, -1), _build_left_right, _AC,
     _lr_pencil(-1), _t7_closed, _lr_lmvf(-1), _rows)
_add("T8", "lambda I + AA^- + A^-A", ("generic", 0, -1, -2), (0, -1, -2), _build_square,
     lambda d, shared: [d["A"]] if shared else [d["A"], d["A"]],
     _sq_pencil(1), _t8_closed, _sq_lmvf(1), _rows, (True, False))
_add("T9", "lambda I + AA^- - A^-A", ("generic", 0, -1), (1, 0, -1), _build_square,
     lambda d, shared: [d["A"]] if shared else [d["A"], d["A"]],
     _sq_pencil(-1), _t9_closed, _sq_lmvf(-1), _rows, (True, False))
_add("T10", "lambda I + MM^- - NN^-", ("generic", 1, 0), (1, 0, -1), _build_blocks,
     lambda d, shared: list(_mn(d)), _t10_pencil, _t10_closed, _t10_lmvf,
     lambda d: d["A"].rows + d["C"].rows)
_add("TW28", "[A, B] - [A, B][A^-; B^-][A, B]", (None,), (), _build_pair, _AB,
     _tw28_pencil, _tw28_closed, _tw28_lmvf, _rows)
_add("Z39", "AA^-B", (None,), (), _build_pair, lambda d, shared: [d["A"]],
     _z39_pencil, _z39_closed, _z39_lmvf, _rows)
_add("Z41", "[AA^-BB^-, BB^-AA^-]", (None,), (), _build_pair, _AB, _z41_pencil, _z41_closed, None, _rows)
_add("Z44", "[AA^-[B, C], BB^-[A, C], CC^-[A, B]]", (None,), (), _build_triple,
     lambda d, shared: [d["A"], d["B"], d["C"]], _z44_pencil, _z44_closed, None, _rows)


def _family(fid: str) -> Family:
    try:
        return FAMILIES[fid]
    except KeyError:
        raise UsageError(f"unknown family {fid!r}; known: {', '.join(FAMILIES)}") from None


def _as_lambda(lam):
    if lam is None or isinstance(lam, ExactScalar):
        return lam
    return Fraction(lam)


def eval_pencil_bounds(inst: PencilInstance) -> Bounds:
    fam = _family(inst.family)
    lam = _as_lambda(inst.lam)
    if fam.regimes == (None,):
        if lam is not None:
            raise UsageError(f"{fam.id} takes no lambda")
    elif lam is None:
        raise UsageError(f"{fam.id} needs a lambda")
    return fam.closed_form(inst.mats, lam)


def eval_lmvf_route(inst: PencilInstance) -> Bounds | None:
    """The same bounds via the two-term LMVF formulas, or None for Z41/Z44."""
    fam = _family(inst.family)
    if fam.lmvf is None:
        return None
    return eval_two_term_lmvf_bounds(*fam.lmvf(inst.mats, _as_lambda(inst.lam)))


# -- sampling ------------------------------------------------------------------------

class _Draw:
    """Inner inverses A^+ + F_A U + V E_A for each base, with editable U and V."""

    def __init__(self, bases, rng=None):
        self.bases = bases
        self.parts = [(moore_penrose(X), F_(X), E_(X)) for X in bases]
        self.U = [gauss_int_matrix(rng, X.cols, X.rows, 2, X.field) if rng is not None
                  else Matrix.zeros(X.cols, X.rows, X.field) for X in bases]
        self.V = [gauss_int_matrix(rng, X.cols, X.rows, 2, X.field) if rng is not None
                  else Matrix.zeros(X.cols, X.rows, X.field) for X in bases]

    def inverses(self):
        return [mp + F @ U + V @ E for (mp, F, E), U, V in zip(self.parts, self.U, self.V)]

    def copy(self):
        c = object.__new__(_Draw)
        c.bases, c.parts, c.U, c.V = self.bases, self.parts, list(self.U), list(self.V)
        return c


def _rank_of(inst: PencilInstance, fam: Family, draw: _Draw) -> int:
    return fam.pencil(inst.mats, _as_lambda(inst.lam), draw.inverses(), inst.shared).rank()


def sample_pencil_rank(inst: PencilInstance, rng) -> int:
    """Rank of the pencil at one random choice of every inner inverse."""
    fam = _family(inst.family)
    return _rank_of(inst, fam, _Draw(fam.bases(inst.mats, inst.shared), rng))


def _set_entry(X: Matrix, i: int, j: int, v) -> Matrix:
    rows = X.tolist()
    rows[i][j] = v
    return Matrix.from_rows(rows, X.field, cols=X.cols)


def _rank_one_root(P0: Matrix, W: Matrix):
    """x with r(P0 + x W) = r(P0) - 1 when W has rank one, else None.

    Writing W = u v^T, the rank drops exactly when u lies in R(P0), v^T in the
    row space of P0 and 1 + x v^T P0^+ u = 0.
    """
    if W.rank() != 1:
        return None
    i0, j0 = next((i, j) for i in range(W.rows) for j in range(W.cols) if not W[i, j].is_zero())
    u = W.submatrix(range(W.rows), [j0])
    vT = W.submatrix([i0], range(W.cols)).scale(1 / W[i0, j0])
    X = moore_penrose(P0)
    if P0 @ X @ u != u or vT @ X @ P0 != vT:
        return None
    s = (vT @ X @ u)[0, 0]
    if s.is_zero():
        return None
    return -1 / s


def _greedy_min(inst, fam, start: _Draw, start_rank: int, target: int, rng) -> int:
    """Zero whole U/V blocks, then coordinate descent over single entries.

    Each entry enters the pencil affinely, so besides a few small integers the
    descent also tries the exact value at which a rank-one change drops the rank.
    """
    best, best_rank = start, start_rank
    budget = [GREEDY_BUDGET]

    def rank(draw):
        budget[0] -= 1
        return _rank_of(inst, fam, draw)

    candidates = [_Draw(start.bases)]  # the Moore-Penrose point
    for attr in ("U", "V"):
        for i in range(len(start.bases)):
            c = best.copy()
            getattr(c, attr)[i] = Matrix.zeros(*getattr(c, attr)[i].shape, field=c.bases[i].field)
            candidates.append(c)
    for c in candidates:
        if best_rank <= target or budget[0] <= 0:
            return best_rank
        rk = rank(c)
        if rk < best_rank:
            best, best_rank = c, rk
    slots = [(attr, b, i, j) for attr in ("U", "V") for b in range(len(best.bases))
             for i in range(getattr(best, attr)[b].rows) for j in range(getattr(best, attr)[b].cols)]
    lam = _as_lambda(inst.lam)
    improved = True
    while improved and slots:
        improved = False
        for s in rng.permutation(len(slots)):
            if best_rank <= target or budget[0] <= 0:
                return best_rank
            attr, b, i, j = slots[int(s)]
            cur = getattr(best, attr)[b][i, j]
            P0 = fam.pencil(inst.mats, lam, best.inverses(), inst.shared)
            bumped = best.copy()
            getattr(bumped, attr)[b] = _set_entry(getattr(best, attr)[b], i, j, cur + 1)
            W = fam.pencil(inst.mats, lam, bumped.inverses(), inst.shared) - P0
            budget[0] -= 1
            values = [0, 1, -1]
            x = _rank_one_root(P0, W)
            if x is not None:
                values.insert(0, cur + x)
            for v in values:
                c = best.copy()
                getattr(c, attr)[b] = _set_entry(getattr(best, attr)[b], i, j, v)
                rk = rank(c)
                if rk < best_rank:
                    best, best_rank, improved = c, rk, True
                    break
    return best_rank


def _slots(draw: _Draw):
    return [(attr, b, i, j) for attr in ("U", "V") for b in range(len(draw.bases))
            for i in range(getattr(draw, attr)[b].rows) for j in range(getattr(draw, attr)[b].cols)]


def _with(draw: _Draw, values, slots) -> _Draw:
    c = draw.copy()
    for (attr, b, i, j), v in zip(slots, values):
        getattr(c, attr)[b] = _set_entry(getattr(c, attr)[b], i, j, v)
    return c


def _null_growth(inst, fam, bases, target: int, rng, only=None) -> int | None:
    """Grow a common null space K with P(theta) K = 0, one candidate vector at a time.

    P is affine in theta (all U and V entries) for every family except Z41,
    so each step is a linear system in theta.  Z41 is affine in the entries of
    one inverse at a time; ``only`` restricts theta to that inverse.
    Candidates are unit vectors and null vectors of the pencil at the
    Moore-Penrose point.  Returns the rank reached, or None when nothing was
    solvable or the pencil is not affine in theta.
    """
    lam = _as_lambda(inst.lam)
    zero = _Draw(bases)
    base_inv = zero.inverses()
    slots = [t for t in _slots(zero) if only is None or t[1] == only]
    if not slots:
        return None

    def at(b, delta):
        G = list(base_inv)
        G[b] = G[b] + delta
        return fam.pencil(inst.mats, lam, G, inst.shared)

    P0 = fam.pencil(inst.mats, lam, base_inv, inst.shared)
    W = []
    for attr, b, i, j in slots:
        X = bases[b]
        unit = Matrix.unit(X.cols, i, X.field) @ Matrix.unit(X.rows, j, X.field).T
        _mp, F, E = zero.parts[b]
        W.append(at(b, F @ unit if attr == "U" else unit @ E) - P0)
    probe = [int(v) for v in rng.integers(-2, 3, size=len(slots))]
    expect = P0
    for c, Wt in zip(probe, W):
        if c:
            expect = expect + Wt * c
    if fam.pencil(inst.mats, lam, _with(zero, probe, slots).inverses(), inst.shared) != expect:
        return None
    n = P0.cols
    pool = [Matrix.unit(n, j, P0.field) for j in range(n)]
    Kx = P0.kernel()
    pool.extend(Kx.submatrix(range(n), [j]) for j in range(Kx.cols))
    K = Matrix.zeros(n, 0, P0.field)
    theta = None
    for idx in rng.permutation(len(pool)):
        if K.cols >= n - target:
            break
        Kz = hstack(K, pool[int(idx)])
        if Kz.rank() == K.cols:
            continue
        sol = _solve(hstack(*[_vec(Wt @ Kz) for Wt in W]), -_vec(P0 @ Kz))
        if sol is not None:
            K, theta = Kz, sol
    if theta is None:
        return None
    return _rank_of(inst, fam, _with(zero, theta, slots))


def _solve(S: Matrix, b: Matrix):
    """One solution of S x = b (free variables zero) as a list of scalars, or None."""
    k = S.field.degree
    R = S.real_rep()
    rhs = b.real_rep()
    rows, cols = R.nrows(), R.ncols()
    aug = flint.fmpq_mat(rows, cols + 1, [v for i in range(rows) for v in
                                          [R[i, j] for j in range(cols)] + [rhs[i, 0]]])
    rr, _rank = aug.rref()
    x = [flint.fmpq(0)] * cols
    for i in range(rows):
        piv = next((j for j in range(cols + 1) if rr[i, j] != 0), None)
        if piv is None:
            break
        if piv == cols:
            return None
        x[piv] = rr[i, cols]
    return [ExactScalar(*[_frac(x[t * k + c]) for c in range(k)], field=S.field) for t in range(cols // k)]


def _vec(X: Matrix) -> Matrix:
    """Column-stacked vec(X)."""
    return vstack(*[X.submatrix(range(X.rows), [j]) for j in range(X.cols)])


def _frac(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def certify_bounds(inst: PencilInstance, trials: int = DEFAULT_TRIALS, rng=None, seed=None) -> dict:
    """Sample the pencil ``trials`` times and compare with the closed-form bounds.

    Soundness violations (a rank outside the bounds) and route mismatches are
    listed under "violations"; an unattained max is only an anomaly.
    """
    if trials < 1:
        raise UsageError("trials must be at least 1")
    fam = _family(inst.family)
    if rng is None:
        rng = make_rng(0 if seed is None else seed, "certify", inst.family)
    bounds = eval_pencil_bounds(inst)
    violations = []
    other = eval_lmvf_route(inst)
    if other is not None and other != bounds:
        violations.append({"kind": "route-mismatch", "closedForm": bounds.as_dict(), "lmvf": other.as_dict()})
    if fam.id == "Z44":
        dim = z44_intersection_dim(inst.mats)
        if dim != bounds.min:
            violations.append({"kind": "route-mismatch", "closedForm": bounds.as_dict(), "intersectionDim": dim})
    ranks, lowest = [], None
    bases = fam.bases(inst.mats, inst.shared)
    for t in range(trials):
        d = _Draw(bases, rng)
        rk = _rank_of(inst, fam, d)
        ranks.append(rk)
        if lowest is None or rk < lowest[1]:
            lowest = (d, rk)
        if not bounds.min <= rk <= bounds.max:
            violations.append({"kind": "out-of-bounds", "trial": t, "rank": rk,
                               "U": [u.to_json() for u in d.U], "V": [v.to_json() for v in d.V]})
    found_min = _greedy_min(inst, fam, lowest[0], lowest[1], bounds.min, rng)
    if found_min > bounds.min:
        # second start from the Moore-Penrose point
        mp = _Draw(bases)
        found_min = min(found_min, _greedy_min(inst, fam, mp, _rank_of(inst, fam, mp), bounds.min, rng))
    if found_min > bounds.min:
        grown = _null_growth(inst, fam, bases, bounds.min, rng)
        if grown is None and fam.lmvf is None:
            tries = [_null_growth(inst, fam, bases, bounds.min, rng, only=b) for b in range(len(bases))]
            grown = min((g for g in tries if g is not None), default=None)
        if grown is not None:
            found_min = min(found_min, grown)
    if found_min < bounds.min:
        violations.append({"kind": "out-of-bounds", "trial": "greedy", "rank": found_min})
    lam = _as_lambda(inst.lam)
    out = {"family": fam.id, "lambda": None if lam is None else str(lam),
           "bounds": bounds.as_dict(),
           "observed": {"max": max(ranks), "min": min(min(ranks), found_min)},
           "maxAttained": max(ranks) == bounds.max,
           "minAttained": min(min(ranks), found_min) == bounds.min,
           "trials": trials, "seed": seed, "order": fam.order(inst.mats),
           "violations": violations}
    if len(fam.shared_modes) > 1:
        out["inverseMode"] = "shared" if inst.shared else "independent"
    return out


# -- batch runner ------------------------------------------------------------------------

def regime_label(reg) -> str:
    return "none" if reg is None else str(reg)


def _regime_lambda(fam: Family, reg, rng):
    if reg is None:
        return None
    if reg == "generic":
        return small_rational(rng, exclude=tuple(Fraction(x) for x in fam.excluded), nonzero=False)
    return Fraction(reg)


def _instance_payload(inst: PencilInstance) -> dict:
    return {k: v.to_json() for k, v in sorted(inst.mats.items())}


def run_extremal(families, dims, instances: int, trials: int, seed: int) -> dict:
    """Certify each family over every regime and inverse mode.

    ``instances`` random inputs per (family, regime, mode) are spread over
    ``dims`` round-robin.  The report keeps one summary per combination and
    the full record (with inputs) for every violation or anomaly.
    """
    if instances < 1 or trials < 1:
        raise UsageError("instances and trials must be at least 1")
    runs, total_violations, total_anomalies = [], 0, 0
    for fid in families:
        fam = _family(fid)
        for reg in fam.regimes:
            for shared in fam.shared_modes:
                certs, bad = [], []
                for i in range(instances):
                    m = dims[i % len(dims)]
                    rng = make_rng(seed, "extremal", fid, regime_label(reg), shared, i)
                    mats = fam.build(m, rng)
                    inst = PencilInstance(fid, mats, _regime_lambda(fam, reg, rng), shared)
                    cert = certify_bounds(inst, trials, rng, seed)
                    certs.append(cert)
                    if cert["violations"] or not cert["maxAttained"]:
                        bad.append(dict(cert, instance=i, dim=m, inputs=_instance_payload(inst)))
                violations = sum(len(c["violations"]) for c in certs)
                anomalies = sum(not c["maxAttained"] for c in certs)
                total_violations += violations
                total_anomalies += anomalies
                run = {"family": fid, "regime": regime_label(reg), "instances": instances, "trials": trials,
                       "violations": violations, "maxAnomalies": anomalies,
                       "minAttained": sum(c["minAttained"] for c in certs),
                       "flagged": bad[:5]}
                if len(fam.shared_modes) > 1:
                    run["inverseMode"] = "shared" if shared else "independent"
                runs.append(run)
    return {"meta": {"seed": seed, "dims": list(dims), "instances": instances, "trials": trials,
                     "families": list(families), "mode": "extremal"},
            "runs": runs,
            "summary": {"violations": total_violations, "maxAnomalies": total_anomalies}}
