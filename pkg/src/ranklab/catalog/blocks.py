"""Rank formulas built from block matrices and the generalized-inverse expansions."""
from __future__ import annotations

from .base import (DEFAULT_K, E_, Entry, Miss, Scalar, cap, cat, exists_affine_zero, facts, forall_affine_zero, holds,
                   iff, implies, is_zero_space, mp, r, stk)
from ..matrix import range_equal


# -- basic formulas ---------------------------------------------------------------

def _hh21(c):
    A, I = c.A, c.I
    return [r(I - A @ A), r(I + A) + r(I - A) - c.m]


def _hh22(c):
    A, I = c.A, c.I
    return [(r(A + A @ A), r(A) + r(I + A) - c.m), (r(A - A @ A), r(A) + r(I - A) - c.m)]


def _hh23(c):
    A, I = c.A, c.I
    A2 = A @ A
    return [(r(A + A2 @ A), r(A) + r(I + A2) - c.m), (r(A - A2 @ A), r(A) + r(I - A2) - c.m)]


def _hh24(c):
    A, I = c.A, c.I
    out = []
    for S in (I + A, I - A):
        S2 = S @ S
        out.append((r(A @ S2), r(A) + r(S2) - c.m))
    return out


def _hh25(c):
    A, B = c.A, c.B
    m, n = A.shape
    return [r(c.eye(m) - A @ B) + n, r(c.eye(n) - B @ A) + m]


def _hh27(c):
    A, X, B, Y = c.A, c.X, c.B, c.Y
    return [r(A - A @ X @ B @ Y @ A) + r(B), r(B - B @ Y @ A @ X @ B) + r(A)]


def _hh28(c):
    P, Q, I = c.A, c.B, c.I
    return [r(I - P - Q + Q @ P), c.m - r(P) - r(Q) + r(P @ Q)]


# -- expansion theorems ---------------------------------------------------------------

def _xy_formula(X, Y):
    return [r(X - Y), r(stk(X, Y)) + r(cat(X, Y)) - r(X) - r(Y)]


def _z2(c):
    return _xy_formula(c.X, c.Y)


def _z12(c):
    A, B, X, Y = c.A, c.B, c.X, c.Y
    AY, BX = A @ Y, B @ X
    return [r(cat(AY, BX)), r(cat(X, Y)) + r(AY) + r(BX) - r(X) - r(Y)]


def _powers(c):
    A, B, k = c.A, c.B, c.k
    P, Q = (A @ B) ** k, (B @ A) ** k
    return A, B, P, Q, P @ A, Q @ B


def _z16(c):
    A, B, P, Q, _, _ = _powers(c)
    return [r(cat(P, Q)), r(cat(A, B)) + r(P) + r(Q) - r(A) - r(B)]


def _z17(c):
    A, B, _, _, X, Y = _powers(c)
    return [r(cat(X, Y)), r(cat(A, B)) + r(X) + r(Y) - r(A) - r(B)]


def _z18(c):
    A, B, P, Q, _, _ = _powers(c)
    return [r(stk(P, Q)), r(stk(A, B)) + r(P) + r(Q) - r(A) - r(B)]


def _z19(c):
    A, B, _, _, X, Y = _powers(c)
    return [r(stk(X, Y)), r(stk(A, B)) + r(X) + r(Y) - r(A) - r(B)]


def _z20(c):
    _, _, P, Q, _, _ = _powers(c)
    return [r(P - Q), r(stk(P, Q)) + r(cat(P, Q)) - r(P) - r(Q)]


def _z21(c):
    A, B, P, Q, _, _ = _powers(c)
    return [r(P - Q), r(stk(A, B)) + r(cat(A, B)) + r(P) + r(Q) - 2 * r(A) - 2 * r(B)]


def _z22(c):
    _, _, _, _, X, Y = _powers(c)
    return [r(X - Y), r(stk(X, Y)) + r(cat(X, Y)) - r(X) - r(Y)]


def _z23(c):
    A, B, _, _, X, Y = _powers(c)
    return [r(X - Y), r(stk(A, B)) + r(cat(A, B)) + r(X) + r(Y) - 2 * r(A) - 2 * r(B)]


def _disjoint(S, T):
    return is_zero_space(cap(S, T))


def _t4a(c):
    A, B, P, Q, _, _ = _powers(c)
    return iff(r(cat(P, Q)) == r(P) + r(Q), r(cat(A, B)) == r(A) + r(B), _disjoint(P, Q), _disjoint(A, B))


def _t4b(c):
    A, B, P, Q, _, _ = _powers(c)
    return iff(r(cat(P, Q)) == r(cat(A, B)), range_equal(P, A) and range_equal(Q, B))


def _t4c_clauses(c, y=None):
    A, B, P, Q, _, _ = _powers(c)
    k = c.k
    Ah, Bh = A.H, B.H
    right = (Bh @ Ah) ** k if y is None else (Bh @ Ah * y) ** k
    return [P == Q,
            range_equal(P, Q) and range_equal((Ah @ Bh) ** k, right),
            r(cat(A, B)) == r(A) + r(B) - r(P) and r(stk(A, B)) == r(A) + r(B) - r(Q)]


def _t4c(c):
    return iff(*_t4c_clauses(c))


def _t4c_literal(c):
    # "(B*A*y)^k" with y read as a free nonzero scalar
    return iff(*_t4c_clauses(c, c.y))


def _t4d(c):
    A, B, _, _, X, Y = _powers(c)
    return iff(r(cat(X, Y)) == r(X) + r(Y), r(cat(A, B)) == r(A) + r(B), _disjoint(X, Y), _disjoint(A, B))


def _t4e(c):
    A, B, _, _, X, Y = _powers(c)
    return iff(r(cat(X, Y)) == r(cat(A, B)), range_equal(X, A) and range_equal(Y, B))


def _t4f(c):
    A, B, _, _, X, Y = _powers(c)
    Ah, Bh, k = A.H, B.H, c.k
    return iff(X == Y,
               range_equal(X, Y) and range_equal((Ah @ Bh) ** k @ Ah, (Bh @ Ah) ** k @ Bh),
               r(cat(A, B)) == r(A) + r(B) - r(X) and r(stk(A, B)) == r(A) + r(B) - r(Y))


# -- families ---------------------------------------------------------------------------

def _hat_products(fam):
    out = []
    for i, Ai in enumerate(fam):
        blocks = [Ai @ Aj if j != i else Ai.scale(0) for j, Aj in enumerate(fam)]
        out.append(cat(*blocks))
    return out


def _family_parts(c):
    fam = c.family
    H = _hat_products(fam)
    return fam, H, r(cat(*H)), sum(r(h) for h in H), r(cat(*fam)), sum(r(a) for a in fam)


def _z25(c):
    fam, H, lhs, sh, ra, sa = _family_parts(c)
    return [lhs, sh + ra - sa]


def _th25(c):
    fam, H, lhs, sh, ra, sa = _family_parts(c)
    return facts(
        iff(lhs == sh, ra == sa),
        iff(lhs == ra, all(range_equal(h, a) for h, a in zip(H, fam))),
        implies(all(h.is_zero() for h in H), ra == sa),
        holds(ra >= sa - sh),
    )


def _triple_parts(c):
    A, B, C = c.A, c.B, c.C
    AB, AC, BA, BC, CA, CB = A @ B, A @ C, B @ A, B @ C, C @ A, C @ B
    return A, B, C, (AB, AC, BA, BC, CA, CB)


def _z29(c):
    A, B, C, (AB, AC, BA, BC, CA, CB) = _triple_parts(c)
    return [r(cat(A, B, C)),
            r(A) + r(B) + r(C) - r(cat(AB, AC)) - r(cat(BA, BC)) - r(cat(CA, CB))
            + r(cat(AB, AC, BA, BC, CA, CB))]


def _z30(c):
    A, B, C, (AB, AC, BA, BC, CA, CB) = _triple_parts(c)
    if not (AB == BA and AC == CA and BC == CB):
        raise Miss("triple does not commute")
    return [r(cat(A, B, C)),
            r(A) + r(B) + r(C) - r(cat(AB, AC)) - r(cat(BA, BC)) - r(cat(CA, CB)) + r(cat(AB, AC, BC))]


def _tw26(c):
    A, B, C, six = _triple_parts(c)
    AB, AC, BA, BC, CA, CB = six
    rABC, rs = r(cat(A, B, C)), r(A) + r(B) + r(C)
    p1, p2, p3 = r(cat(AB, AC)), r(cat(BA, BC)), r(cat(CA, CB))
    return facts(
        iff(rABC == rs, r(cat(*six)) == p1 + p2 + p3),
        iff(r(cat(*six)) == rABC,
            range_equal(cat(AB, AC), A) and range_equal(cat(BA, BC), B) and range_equal(cat(CA, CB), C)),
        implies(all(x.is_zero() for x in six), rABC == rs),
        holds(rABC >= rs - r(cat(AB, AC)) - r(cat(AB, BC)) - r(cat(AC, BC))),
    )


# -- orthogonal projectors of general matrices ---------------------------------------

def _proj(*ms):
    return [X @ mp(X) for X in ms]


def _tw27_1(c):
    A, B = c.A, c.B
    PA, PB = _proj(A, B)
    return [r(cat(A, B)), r(A) + r(B) - r(PA @ PB) - r(PB @ PA) + r(cat(PA @ PB, PB @ PA))]


def _tw27_six(c):
    A, B, C = c.A, c.B, c.C
    PA, PB, PC = _proj(A, B, C)
    six = (PA @ PB, PA @ PC, PB @ PA, PB @ PC, PC @ PA, PC @ PB)
    pairs = r(cat(six[0], six[1])) + r(cat(six[2], six[3])) + r(cat(six[4], six[5]))
    return A, B, C, six, pairs


def _tw27_2(c):
    A, B, C, six, pairs = _tw27_six(c)
    return [r(cat(A, B, C)), r(A) + r(B) + r(C) - pairs + r(cat(*six))]


def _tw27_pair(c):
    A, B = c.A, c.B
    PA, PB = _proj(A, B)
    X, Y = PA @ PB, PB @ PA
    rAB, rA, rB = r(cat(A, B)), r(A), r(B)
    return facts(
        iff(rAB == rA + rB, r(cat(X, Y)) == r(X) + r(Y), _disjoint(A, B), _disjoint(X, Y)),
        iff(rAB == rA + rB - r(X), r(cat(X, Y)) == r(X) == r(Y), range_equal(X, Y), X == Y),
        iff(rAB == r(cat(X, Y)), r(A.H @ B) == rA == rB),
    )


def _tw27d(c):
    A, B, C, six, pairs = _tw27_six(c)
    return iff(r(cat(A, B, C)) == r(A) + r(B) + r(C), r(cat(*six)) == pairs)


def _tw27e(c):
    A, B, C, six, pairs = _tw27_six(c)
    s = r(six[0]) + r(six[1]) + r(six[3])
    return iff(r(cat(A, B, C)) == r(A) + r(B) + r(C) - s, r(cat(*six)) == pairs - s)


# -- {1}-inverses of block rows -------------------------------------------------------

def _g2(c):
    A, B = c.A, c.B
    return A, B, c.ginv(A, "A-"), c.ginv(B, "B-")


def _z31a(c):
    A, B, Am, Bm = _g2(c)
    AB = cat(A, B)
    S = A @ Am + B @ Bm
    return [AB - AB @ stk(Am, Bm) @ AB,
            AB - cat(S @ A, S @ B),
            -cat(B @ Bm @ A, A @ Am @ B)]


def _z31a_literal(c):
    A, B, Am, Bm = _g2(c)
    if A.cols != A.rows:
        raise Miss("the printed product AA^-AB needs a square A")
    AB = cat(A, B)
    return [AB - AB @ stk(Am, Bm) @ AB, -cat(B @ Bm @ A, A @ Am @ A @ B)]


def _z32(c):
    A, B, Am, Bm = _g2(c)
    AB = cat(A, B)
    return [r(AB - AB @ stk(Am, Bm) @ AB), r(A @ Am @ B) + r(B @ Bm @ A) + r(AB) - r(A) - r(B)]


def _z36(c):
    A, B, Am, Bm = _g2(c)
    PA, PB = A @ Am, B @ Bm
    return [r(cat(PA @ PB, PB @ PA)),
            r(PA @ PB) + r(PB @ PA) + r(cat(PA, PB)) - r(PA) - r(PB),
            r(A @ Am @ B) + r(B @ Bm @ A) + r(cat(A, B)) - r(A) - r(B)]


def _tw28_parts(c):
    # BB^-A and AA^-B over all {1}-inverses: BB^-A = BB'A + B V E_B A, and likewise for A
    A, B = c.A, c.B
    return (B @ mp(B) @ A, (B, E_(B) @ A)), (A @ mp(A) @ B, (A, E_(A) @ B))


def _tw28b(c):
    A, B = c.A, c.B
    (k1, t1), (k2, t2) = _tw28_parts(c)
    some = exists_affine_zero(k1, [t1]) and exists_affine_zero(k2, [t2])
    return iff(some, r(cat(A, B)) == r(A) + r(B), _disjoint(A, B))


def _tw28c(c):
    A, B = c.A, c.B
    (k1, t1), (k2, t2) = _tw28_parts(c)
    every = forall_affine_zero(k1, [t1]) and forall_affine_zero(k2, [t2])
    return iff(every, r(cat(A, B)) == abs(r(A) - r(B)), A.is_zero() or B.is_zero())


def _g3(c):
    A, B, C = c.A, c.B, c.C
    return A, B, C, c.ginv(A, "A-"), c.ginv(B, "B-"), c.ginv(C, "C-")


def _z43(c):
    A, B, C, Am, Bm, Cm = _g3(c)
    PA, PB, PC = A @ Am, B @ Bm, C @ Cm
    lhs = r(cat(PA @ cat(B, C), PB @ cat(A, C), PC @ cat(A, B)))
    rhs = (r(cat(A, B, C)) + r(cat(PA @ B, PA @ C)) + r(cat(PB @ A, PB @ C)) + r(cat(PC @ A, PC @ B))
           - r(A) - r(B) - r(C))
    return [lhs, rhs]


def _z45(c):
    A, B, C = c.A, c.B, c.C
    meet = cap(cap(cat(A, B), cat(A, C)), cat(B, C))
    return [r(meet), r(cat(A, B)) + r(cat(A, C)) + r(cat(B, C)) - 2 * r(cat(A, B, C))]


def _z47_sides(c, sign):
    A, B, C, Am, Bm, Cm = _g3(c)
    PA, PB, PC = A @ Am, B @ Bm, C @ Cm
    T = cat(A, B, C)
    rhs = cat((PB + PC) @ A, (PA + PC) @ B, (PA + PB) @ C)
    return [T - T @ stk(Am, Bm, Cm) @ T, rhs if sign > 0 else -rhs]


def _z47(c):
    return _z47_sides(c, -1)


def _z47_literal(c):
    return _z47_sides(c, 1)


def _k42(c):
    A, B = c.A, c.B
    C = c.C
    PA = A @ mp(A)
    EA = c.eye(A.rows) - PA
    FA = c.eye(A.cols) - mp(A) @ A
    return [(r(cat(A, B)), r(A) + r(EA @ B)), (r(stk(A, C)), r(A) + r(C @ FA))]


def _w75(c):
    M, N = c.A, c.B
    return [r(cap(M, N)), r(M) + r(N) - r(cat(M, N))]


def _unit_difference(c, P, Q):
    # PP^- - QQ^- = I, with PP^- = PP' + P V E_P for a free V
    const = P @ mp(P) - Q @ mp(Q) - c.I
    terms = [(P, E_(P)), (-Q, E_(Q))]
    return exists_affine_zero(const, terms), forall_affine_zero(const, terms)


def _tn45_b3(c):
    A, B = c.A, c.B
    some, every = _unit_difference(c, B, A)
    return iff(some, every, A.is_zero() and r(B) == c.m)


def _tn45_b3_swapped(c):
    A, B = c.A, c.B
    some, every = _unit_difference(c, A, B)
    return iff(some, every, A.is_zero() and r(B) == c.m)


ENTRIES = [
    Entry("hh21", "hh21", "rank-equality", "square", _hh21),
    Entry("hh22", "hh22", "rank-equality", "square", _hh22),
    Entry("hh23", "hh23", "rank-equality", "square", _hh23),
    Entry("hh24", "hh24", "rank-equality", "square", _hh24),
    Entry("hh25", "hh25", "rank-equality", "hh25", _hh25),
    Entry("hh27", "hh27", "rank-equality", "hh27", _hh27),
    Entry("hh28", "hh28", "rank-equality", "idempotent-pair", _hh28,
          note="unbalanced bracket in r[(I - P - Q + QP); read as r(I - P - Q + QP)", category="ambiguous",
          literal=_hh28),
    Entry("z2", "z2", "rank-equality", "equation-z1", _z2),
    Entry("z9", "z9", "rank-equality", "equation-z8", _z2),
    Entry("z12", "z12", "rank-equality", "equation-z11", _z12),
    Entry("z16", "z16", "rank-equality", "idempotent-pair", _z16, k=DEFAULT_K),
    Entry("z17", "z17", "rank-equality", "idempotent-pair", _z17, k=DEFAULT_K),
    Entry("z18", "z18", "rank-equality", "idempotent-pair", _z18, k=DEFAULT_K),
    Entry("z19", "z19", "rank-equality", "idempotent-pair", _z19, k=DEFAULT_K),
    Entry("z20", "z20", "rank-equality", "idempotent-pair", _z20, k=DEFAULT_K),
    Entry("z21", "z21", "rank-equality", "idempotent-pair", _z21, k=DEFAULT_K),
    Entry("z22", "z22", "rank-equality", "idempotent-pair", _z22, k=DEFAULT_K),
    Entry("z23", "z23", "rank-equality", "idempotent-pair", _z23, k=DEFAULT_K),
    Entry("T4a", "T4(a)", "fact-equivalence", "idempotent-pair", _t4a, k=DEFAULT_K),
    Entry("T4b", "T4(b)", "fact-equivalence", "idempotent-pair", _t4b, k=DEFAULT_K),
    Entry("T4c", "T4(c)", "fact-equivalence", "idempotent-pair", _t4c, k=DEFAULT_K, scalars=(Scalar("y"),),
          literal=_t4c_literal, note="(B*A*y)^k read as (B*A*)^k; literal form treats y as a nonzero scalar"),
    Entry("T4d", "T4(d)", "fact-equivalence", "idempotent-pair", _t4d, k=DEFAULT_K),
    Entry("T4e", "T4(e)", "fact-equivalence", "idempotent-pair", _t4e, k=DEFAULT_K),
    Entry("T4f", "T4(f)", "fact-equivalence", "idempotent-pair", _t4f, k=DEFAULT_K),
    Entry("z25", "z25", "rank-equality", "idempotent-family", _z25),
    Entry("Th25", "Th25(a)-(d)", "fact-equivalence", "idempotent-family", _th25),
    Entry("z29", "z29", "rank-equality", "idempotent-triple", _z29),
    Entry("z30", "z30", "rank-equality", "commuting-triple", _z30),
    Entry("TW26", "TW26(a)-(d)", "fact-equivalence", "idempotent-triple", _tw26),
    Entry("TW27.1", "TW27 (two matrices)", "rank-equality", "matrix-pair", _tw27_1),
    Entry("TW27.2", "TW27 (three matrices)", "rank-equality", "matrix-triple", _tw27_2),
    Entry("TW27abc", "TW27(a)-(c)", "fact-equivalence", "matrix-pair", _tw27_pair),
    Entry("TW27d", "TW27(d)", "fact-equivalence", "matrix-triple", _tw27d),
    Entry("TW27e", "TW27(e)", "fact-equivalence", "matrix-triple", _tw27e, literal=_tw27e,
          category="audit-only", note="layout of the final clause is unclear; checked only in audit mode"),
    Entry("z31a", "z31a", "matrix-identity", "matrix-pair", _z31a, literal=_z31a_literal,
          note="last block AA^-AB should be AA^-B"),
    Entry("z32", "z32", "rank-equality", "matrix-pair", _z32),
    Entry("z36", "z36", "rank-equality", "matrix-pair", _z36),
    Entry("TW28b", "TW28(b)", "fact-equivalence", "matrix-pair", _tw28b),
    Entry("TW28c", "TW28(c)", "fact-equivalence", "matrix-pair", _tw28c),
    Entry("z43", "z43", "rank-equality", "matrix-triple", _z43),
    Entry("z45", "z45", "rank-equality", "matrix-triple", _z45),
    Entry("z47", "z47", "matrix-identity", "matrix-triple", _z47, literal=_z47_literal,
          note="right-hand side needs a leading minus sign"),
    Entry("k42", "k42", "rank-equality", "k42", _k42),
    Entry("w75", "w75", "rank-equality", "matrix-pair", _w75),
    Entry("TN45b.iii", "TN45(b)(iii)", "fact-equivalence", "matrix-pair", _tn45_b3, literal=_tn45_b3_swapped,
          category="ambiguous", modes=("generic", "full-zero", "full-zero", "zero", "full"),
          note="orientation BB^- - AA^- = I as printed; literal form uses AA^- - BB^- = I"),
]

for _e in ENTRIES:
    _e.group = "blocks"
