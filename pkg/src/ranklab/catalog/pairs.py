"""Identities for two idempotents: factorizations, ranks, inverses, ranges and null spaces.

Checker functions read the pair as ``c.A`` and ``c.B``; the same functions
serve the B = A* specializations through star-pair inputs.
"""
from __future__ import annotations

from fractions import Fraction

from .base import (DEFAULT_K, Entry, Nu, Scalar, cap, cat, dz, facts, iff, implies, inv, mp, nonsingular, plus,
                   r, require, same, stk, truthy_rank_expr, within)
from ..matrix import range_equal

AB_SCALARS = (Scalar("alpha"), Scalar("beta"))


def _parts(c):
    A, B, I = c.A, c.B, c.I
    return A, B, I, A + B, A - B, A + B - I


def _half(c, x):
    return c.I.scale(Fraction(x))


# -- TK31 --------------------------------------------------------------------------

def _v31(c):
    A, B, I, S, D, T = _parts(c)
    return [D @ D + T @ T, I]


def _v32(c):
    A, B, I, S, D, T = _parts(c)
    H = S - _half(c, Fraction(1, 2))
    return [A @ B + B @ A + _half(c, Fraction(1, 4)), H @ H]


def _v33(c):
    A, B, I, S, D, T = _parts(c)
    return [r(D @ D), r(S) + r(2 * I - S) - c.m]


def _v34(c):
    A, B, I, S, D, T = _parts(c)
    U = I - S
    return [r(U @ U), r(I + D) + r(I - D) - c.m]


def _v35(c):
    A, B, I, S, D, T = _parts(c)
    return [r(A @ B + B @ A), r(I - S) + r(S) - c.m]


def _golden(c):
    s5 = c.sqrt(5)
    return (s5 - 1) / 2, (s5 + 1) / 2


def _v36(c):
    A, B, I, S, D, T = _parts(c)
    g1, g2 = _golden(c)
    return [r(I - A @ B - B @ A), r(I.scale(g1) + S) + r(I.scale(g2) - S) - c.m]


def _v37(c):
    A, B, I, S, D, T = _parts(c)
    return [r(2 * I - A @ B - B @ A), r(I + S) + r(2 * I - S) - c.m]


def _sq(X):
    return X @ X


def _v38(c):
    A, B, I, S, D, T = _parts(c)
    return iff(_sq(D).is_zero(), _sq(I - S) == I, r(S) + r(2 * I - S) == c.m)


def _v39(c):
    A, B, I, S, D, T = _parts(c)
    h = _half(c, Fraction(1, 2))
    return iff(_sq(D) == h, _sq(I - S) == h)


def _v310(c):
    A, B, I, S, D, T = _parts(c)
    return iff(_sq(D) == I, _sq(I - S).is_zero(), r(I + D) + r(I - D) == c.m)


def _v310_literal(c):
    A, B, I, S, D, T = _parts(c)
    return iff(_sq(D) == I, _sq(I - S).is_zero(), truthy_rank_expr(r(I + D) + r(I - D) - c.m))


def _anticomm(c, lhs, rhs):
    A, B, I, S, D, T = _parts(c)
    H = S - _half(c, Fraction(1, 2))
    return A @ B + B @ A == _half(c, lhs), _sq(H) == _half(c, rhs)


def _anticomm_fact(lhs, rhs, extra=None):
    def fn(c):
        clauses = list(_anticomm(c, lhs, rhs))
        if extra is not None:
            clauses.append(extra(c))
        return iff(*clauses)
    return fn


def _x314(c):
    A, B, I, S, D, T = _parts(c)
    return r(I - S) + r(S) == c.m


def _x316(c):
    A, B, I, S, D, T = _parts(c)
    g1, g2 = _golden(c)
    return r(I.scale(g1) + S) + r(I.scale(g2) - S) == c.m


def _x317(c):
    A, B, I, S, D, T = _parts(c)
    return r(I + S) + r(2 * I - S) == c.m


def _vv318(c):
    A, B, I, S, D, T = _parts(c)
    m = c.m
    return iff(r(D) == m, r(S) == m and r(2 * I - S) == m)


def _vv319(c):
    A, B, I, S, D, T = _parts(c)
    m = c.m
    return iff(r(I - S) == m, r(I + D) == m and r(I - D) == m)


def _vv320(c):
    A, B, I, S, D, T = _parts(c)
    m = c.m
    return iff(r(A @ B + B @ A) == m, r(I - S) == m and r(S) == m)


def _vv321(c):
    A, B, I, S, D, T = _parts(c)
    g1, g2 = _golden(c)
    m = c.m
    return iff(r(I - A @ B - B @ A) == m, r(I.scale(g1) + S) == m and r(I.scale(g2) - S) == m)


def _vv322(c):
    A, B, I, S, D, T = _parts(c)
    m = c.m
    return iff(r(2 * I - A @ B - B @ A) == m, r(I + S) == m and r(2 * I - S) == m)


# -- TK32 --------------------------------------------------------------------------

def _lin(c):
    A, B = c.A, c.B
    a, b = c.s(c.alpha), c.s(c.beta)
    return A * a + B * b, A * b + B * a, a, b


def _ff31(c):
    A, B, I, S, D, T = _parts(c)
    L, R, a, b = _lin(c)
    return [A @ B * a + B @ A * b, L @ T, T @ R]


def _even_factor(c, literal):
    # T^(2j) commutes with A and with B, so alpha A + beta B belongs on both sides
    L, R, a, b = _lin(c)
    return R if literal else L


def _ff32_sides(c, literal):
    A, B, I, S, D, T = _parts(c)
    L, R, a, b = _lin(c)
    T2 = T @ T
    return [A @ B @ A * a + B @ A @ B * b, L @ T2, T2 @ _even_factor(c, literal)]


def _ff32(c):
    return _ff32_sides(c, False)


def _ff32_literal(c):
    return _ff32_sides(c, True)


def _ff33(c):
    A, B, I, S, D, T = _parts(c)
    L, R, a, b = _lin(c)
    k = c.k
    Tp = T ** (2 * k - 1)
    return [(A @ B) ** k * a + (B @ A) ** k * b, L @ Tp, Tp @ R]


def _ff34_sides(c, literal):
    A, B, I, S, D, T = _parts(c)
    L, R, a, b = _lin(c)
    k = c.k
    Tp = T ** (2 * k)
    return [(A @ B @ A) ** k * a + (B @ A @ B) ** k * b, L @ Tp, Tp @ _even_factor(c, literal)]


def _ff34(c):
    return _ff34_sides(c, False)


def _ff34_literal(c):
    return _ff34_sides(c, True)


def _tk32_clauses(c):
    A, B, I, S, D, T = _parts(c)
    L, R, a, b = _lin(c)
    k = c.k
    return [nonsingular(A @ B * a + B @ A * b),
            nonsingular((A @ B) ** k * a + (B @ A) ** k * b),
            nonsingular(A @ B @ A * a + B @ A @ B * b),
            nonsingular((A @ B @ A) ** k * a + (B @ A @ B) ** k * b),
            nonsingular(L) and nonsingular(T)]


def _tk32(c):
    return iff(*_tk32_clauses(c))


def _tk32_literal(c):
    # juxtaposed "X nonsingular Y nonsingular" read as a conjunction
    c1, c2, c3, c4, c5 = _tk32_clauses(c)
    return iff(c1, c2 and c3, c2, c4, c5)


def _dd(c, lhs, power, literal=False):
    A, B, I, S, D, T = _parts(c)
    L, R, a, b = _lin(c)
    require(nonsingular(L) and nonsingular(T), "alpha A + beta B or A + B - I is singular")
    Ti = inv(T) ** power
    right = R if (power % 2 or literal) else L
    return [inv(lhs), Ti @ inv(L), inv(right) @ Ti]


def _dd37(c):
    A, B = c.A, c.B
    _, _, a, b = _lin(c)
    return _dd(c, A @ B * a + B @ A * b, 1)


def _dd38(c, literal=False):
    A, B = c.A, c.B
    _, _, a, b = _lin(c)
    return _dd(c, A @ B @ A * a + B @ A @ B * b, 2, literal)


def _dd38_literal(c):
    return _dd38(c, True)


def _dd39(c):
    A, B, k = c.A, c.B, c.k
    _, _, a, b = _lin(c)
    return _dd(c, (A @ B) ** k * a + (B @ A) ** k * b, 2 * k - 1)


def _dd310(c, literal=False):
    A, B, k = c.A, c.B, c.k
    _, _, a, b = _lin(c)
    return _dd(c, (A @ B @ A) ** k * a + (B @ A @ B) ** k * b, 2 * k, literal)


def _dd310_literal(c):
    return _dd310(c, True)


# -- TK33 --------------------------------------------------------------------------

def _w3(c):
    A, B, I, S, D, T = _parts(c)
    return [A @ B - B @ A, D @ T, -(T @ D)]


def _w4(c):
    A, B, I, S, D, T = _parts(c)
    return [A @ B + B @ A, S @ T, T @ S]


def _w14(c):
    A, B, I, S, D, T = _parts(c)
    T2 = T @ T
    return [A @ B @ A - B @ A @ B, D @ T2, T2 @ D]


def _w15(c):
    A, B, I, S, D, T = _parts(c)
    T2 = T @ T
    return [A @ B @ A + B @ A @ B, S @ T2, T2 @ S]


def _w6(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    return [(A @ B - B @ A) ** k, (D ** k @ T ** k) * sign, ((I - S) ** k @ D ** k) * sign]


def _w7(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    return [(A @ B + B @ A) ** k, S ** k @ T ** k, T ** k @ S ** k]


def _w8(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    return [(A @ B @ A - B @ A @ B) ** k, D ** k @ T ** (2 * k), T ** (2 * k) @ D ** k]


def _w9(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    return [(A @ B @ A + B @ A @ B) ** k, S ** k @ T ** (2 * k), T ** (2 * k) @ S ** k]


def _w10(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Tp = T ** (2 * k - 1)
    return [(A @ B) ** k - (B @ A) ** k, D @ Tp, -(Tp @ D)]


def _w11(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Tp = T ** (2 * k - 1)
    return [(A @ B) ** k + (B @ A) ** k, S @ Tp, Tp @ S]


def _w12(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Tp = T ** (2 * k)
    return [(A @ B @ A) ** k - (B @ A @ B) ** k, D @ Tp, Tp @ D]


def _w13(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Tp = T ** (2 * k)
    return [(A @ B @ A) ** k + (B @ A @ B) ** k, S @ Tp, Tp @ S]


def _telescoped(c, odd: bool, sign: int):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    X, Y = (A @ B, B @ A) if odd else (A @ B @ A, B @ A @ B)
    lhs = c.Z
    tail = c.Z
    for j in range(1, k + 1):
        lhs = lhs + X ** j + (Y ** j) * sign
        tail = tail + T ** (2 * j - 1 if odd else 2 * j)
    F = D if sign < 0 else S
    left = F @ tail
    # the first telescoped sum closes with (B - A) on the right
    right = tail @ (-D) if (sign < 0 and odd) else tail @ F
    return [lhs, left, right]


def _s1(c):
    return _telescoped(c, True, -1)


def _s2(c):
    return _telescoped(c, True, 1)


def _s3(c):
    return _telescoped(c, False, -1)


def _s4(c):
    return _telescoped(c, False, 1)


# -- TK34 --------------------------------------------------------------------------

def _tk34a(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    L = (A @ B - B @ A) ** k
    return [within(L, D ** k, "R[(AB-BA)^k] in R[(A-B)^k]"), within(L, T ** k, "R[(AB-BA)^k] in R[T^k]")]


def _tk34b(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    L = (A @ B + B @ A) ** k
    return [within(L, S ** k, "R[(AB+BA)^k] in R[(A+B)^k]"), within(L, T ** k, "R[(AB+BA)^k] in R[T^k]")]


def _tk34c(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    N = Nu((A @ B - B @ A) ** k)
    return [within(Nu(D ** k), N, "N[(A-B)^k] in N[(AB-BA)^k]"), within(Nu(T ** k), N, "N[T^k] in N[(AB-BA)^k]")]


def _tk34d(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    N = Nu((A @ B + B @ A) ** k)
    return [within(Nu(S ** k), N, "N[(A+B)^k] in N[(AB+BA)^k]"), within(Nu(T ** k), N, "N[T^k] in N[(AB+BA)^k]")]


# -- TK35 (Drazin) -----------------------------------------------------------------

def _w24(c):
    A, B, I, S, D, T = _parts(c)
    Dd, Td = dz(D), dz(T)
    return [dz(A @ B - B @ A), Td @ Dd, -(Dd @ Td)]


def _w24_literal(c):
    A, B, I, S, D, T = _parts(c)
    Dd, Td = dz(D), dz(T)
    return [dz(A @ B - B @ A), Dd @ Td, -(Td @ Dd)]


def _w25(c):
    A, B, I, S, D, T = _parts(c)
    Sd, Td = dz(S), dz(T)
    return [dz(A @ B + B @ A), Sd @ Td, Td @ Sd]


def _w26(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Dd, Tp = dz(D), dz(T) ** (2 * k - 1)
    return [dz((A @ B) ** k - (B @ A) ** k), Tp @ Dd, -(Dd @ Tp)]


def _w26_literal(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Dd, Tp = dz(D), dz(T) ** (2 * k - 1)
    return [dz((A @ B) ** k - (B @ A) ** k), Dd @ Tp, -(Tp @ Dd)]


def _w27(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Sd, Tp = dz(S), dz(T) ** (2 * k - 1)
    return [dz((A @ B) ** k + (B @ A) ** k), Sd @ Tp, Tp @ Sd]


def _w28(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Dd, Tp = dz(D), dz(T) ** (2 * k)
    return [dz((A @ B @ A) ** k - (B @ A @ B) ** k), Dd @ Tp, Tp @ Dd]


def _w29(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Sd, Tp = dz(S), dz(T) ** (2 * k)
    return [dz((A @ B @ A) ** k + (B @ A @ B) ** k), Sd @ Tp, Tp @ Sd]


# -- TK37 / TK38 -------------------------------------------------------------------

def _w32(c):
    A, B, I, S, D, T = _parts(c)
    D2 = D @ D
    return [A - A @ B @ A, A @ D2, D2 @ A]


def _w33(c):
    A, B, I, S, D, T = _parts(c)
    D2 = D @ D
    return [B - B @ A @ B, B @ D2, D2 @ B]


def _w34(c):
    A, B, I, S, D, T = _parts(c)
    Dp = D ** (2 * c.k)
    return [(A - A @ B @ A) ** c.k, A @ Dp, Dp @ A]


def _w35(c):
    A, B, I, S, D, T = _parts(c)
    Dp = D ** (2 * c.k)
    return [(B - B @ A @ B) ** c.k, B @ Dp, Dp @ B]


def _w36(c):
    A, B, I, S, D, T = _parts(c)
    T2 = T @ T
    return [A @ B @ A, A @ T2, T2 @ A]


def _w37(c):
    A, B, I, S, D, T = _parts(c)
    T2 = T @ T
    return [B @ A @ B, B @ T2, T2 @ B]


def _w38(c):
    A, B, I, S, D, T = _parts(c)
    Tp = T ** (2 * c.k)
    return [(A @ B @ A) ** c.k, A @ Tp, Tp @ A]


def _w39(c):
    A, B, I, S, D, T = _parts(c)
    Tp = T ** (2 * c.k)
    return [(B @ A @ B) ** c.k, B @ Tp, Tp @ B]


def _w40(c):
    A, B, I, S, D, T = _parts(c)
    T2 = T @ T
    return [(B @ A) ** 2, B @ A @ T2, B @ T2 @ A]


def _w41(c):
    A, B, I, S, D, T = _parts(c)
    T2 = T @ T
    return [(A @ B) ** 2, A @ B @ T2, A @ T2 @ B]


def _w42(c):
    A, B, I, S, D, T = _parts(c)
    return [(A @ B) ** c.k, A @ T ** (2 * c.k - 1) @ B]


def _w42_literal(c):
    A, B, I, S, D, T = _parts(c)
    return [(A @ B) ** c.k, A @ T ** c.k @ B]


def _w43(c):
    A, B, I, S, D, T = _parts(c)
    return [(B @ A) ** c.k, B @ T ** (2 * c.k - 1) @ A]


def _w43_literal(c):
    A, B, I, S, D, T = _parts(c)
    return [(B @ A) ** c.k, B @ T ** c.k @ A]


def _w44(c):
    A, B, I, S, D, T = _parts(c)
    D2 = dz(D) @ dz(D)
    return [dz(A - A @ B @ A), A @ D2, D2 @ A]


def _w45(c):
    A, B, I, S, D, T = _parts(c)
    D2 = dz(D) @ dz(D)
    return [dz(B - B @ A @ B), B @ D2, D2 @ B]


def _w46(c):
    A, B, I, S, D, T = _parts(c)
    T2 = dz(T) @ dz(T)
    return [dz(A @ B @ A), A @ T2, T2 @ A]


def _w47(c):
    A, B, I, S, D, T = _parts(c)
    T2 = dz(T) @ dz(T)
    return [dz(B @ A @ B), B @ T2, T2 @ B]


# -- TK39 (orthogonal projectors) --------------------------------------------------

def _w48(c):
    A, B, I, S, D, T = _parts(c)
    Dp, Tp = mp(D), mp(T)
    return [mp(A @ B - B @ A), -(Dp @ Tp), Tp @ Dp]


def _w49(c):
    A, B, I, S, D, T = _parts(c)
    Sp, Tp = mp(S), mp(T)
    return [mp(A @ B + B @ A), Sp @ Tp, Tp @ Sp]


def _w51(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Dp, Tp = mp(D), mp(T) ** (2 * k - 1)
    return [mp((A @ B) ** k - (B @ A) ** k), -(Dp @ Tp), Tp @ Dp]


def _w51_literal(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Dp, Tp = mp(D), mp(T) ** (2 * k - 1)
    return [mp((A @ B) ** k - (B @ A) ** k), Dp @ Tp, -(Tp @ Dp)]


def _w53(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Sp, Tp = mp(S), mp(T) ** (2 * k - 1)
    return [mp((A @ B) ** k + (B @ A) ** k), Sp @ Tp, Tp @ Sp]


def _w55(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Dp, Tp = mp(D), mp(T) ** (2 * k)
    return [mp((A @ B @ A) ** k - (B @ A @ B) ** k), Dp @ Tp, Tp @ Dp]


def _w57(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Sp, Tp = mp(S), mp(T) ** (2 * k)
    return [mp((A @ B @ A) ** k + (B @ A @ B) ** k), Sp @ Tp, Tp @ Sp]


def _w57_literal(c):
    A, B, I, S, D, T = _parts(c)
    k = c.k
    Sp, Tp = mp(S), mp(T) ** (2 * k)
    return [mp((A @ B @ A) ** k - (B @ A @ B) ** k), Sp @ Tp, Tp @ Sp]


def _w58(c):
    A, B, I, S, D, T = _parts(c)
    D2 = mp(D) @ mp(D)
    return [mp(A - A @ B @ A), A @ D2, D2 @ A]


def _w59(c):
    A, B, I, S, D, T = _parts(c)
    D2 = mp(D) @ mp(D)
    return [mp(B - B @ A @ B), B @ D2, D2 @ B]


def _w60(c):
    A, B, I, S, D, T = _parts(c)
    T2 = mp(T) @ mp(T)
    return [mp(A @ B @ A), A @ T2, T2 @ A]


def _w61(c):
    A, B, I, S, D, T = _parts(c)
    T2 = mp(T) @ mp(T)
    return [mp(B @ A @ B), B @ T2, T2 @ B]


def _ct1(c):
    A, B, I = c.A, c.B, c.I
    return [mp(A @ B), B @ A - B @ mp((I - B) @ (I - A)) @ A]


def _ct2(c):
    A, B = c.A, c.B
    return [mp(A - B), mp(A - A @ B) - mp(B - A @ B)]


def _ct3(c):
    A, B = c.A, c.B
    return [mp(A - B), A - B + B @ mp(A - B @ A) - mp(B - B @ A) @ A]


def _ct4(c):
    A, B, I = c.A, c.B, c.I
    return [mp(A + B - I), mp(A @ B) - mp((I - A) @ (I - B))]


# -- ranges and null spaces ----------------------------------------------------------

def _pre62_ranks(c):
    A, B, I, S, D, T = _parts(c)
    return [r(cat(S, I + D)), r(cat(S, I - D)), r(cat(D, I + S)), r(cat(D, I - S)), c.m]


def _commute_rank_clauses(c):
    A, B = c.A, c.B
    rA, rB = r(A), r(B)
    rAB, rBA = r(A @ B), r(B @ A)
    col, row = r(stk(A, B)), r(cat(A, B))
    return (col == rA + rB - rAB and row == rA + rB - rBA,
            col == rA + rB - rBA and row == rA + rB - rAB)


def _pre62_facts(c):
    A, B, I, S, D, T = _parts(c)
    return iff(r(cat(D, I - S)) == r(D) + r(I - S), *_commute_rank_clauses(c))


def _pre62_facts_literal(c):
    A, B, I, S, D, T = _parts(c)
    return iff(r(cat(D, I - S)) == r(S) + r(I - S), *_commute_rank_clauses(c))


def _w62(c):
    A, B, I, S, D, T = _parts(c)
    return [same(A @ B - B @ A, cap(D, I - S), "R(AB-BA) = R(A-B) & R(I-A-B)")]


def _w62_facts(c):
    A, B, I, S, D, T = _parts(c)
    K = A @ B - B @ A
    return facts(
        implies(nonsingular(D), range_equal(K, I - S)),
        implies(nonsingular(T), range_equal(K, D)),
        iff(nonsingular(K), nonsingular(D) and nonsingular(I - S)),
        iff(K.is_zero(), cap(D, I - S).rank() == 0, *_commute_rank_clauses(c)),
    )


def _w63(c):
    A, B, I, S, D, T = _parts(c)
    return [same(A @ B + B @ A, cap(S, T), "R(AB+BA) = R(A+B) & R(T)")]


def _w64(c):
    A, B, I, S, D, T = _parts(c)
    return [same(A @ B @ A + B @ A @ B, cap(S, T @ T), "R(ABA+BAB) = R(A+B) & R(T^2)")]


def _w65(c):
    A, B, I, S, D, T = _parts(c)
    return [same(A @ B @ A - B @ A @ B, cap(D, T @ T), "R(ABA-BAB) = R(A-B) & R(T^2)")]


def _w66(c):
    A, B, I, S, D, T = _parts(c)
    K = A @ B - B @ A
    return [same(K @ K, cap(D @ D, T @ T), "R[(AB-BA)^2] = R[(A-B)^2] & R(T^2)")]


def _tk311(join):
    def fn(c):
        A, B, I, S, D, T = _parts(c)
        T2 = T @ T
        K = A @ B - B @ A
        return [
            same(Nu(A @ B + B @ A), join(Nu(S), Nu(T)), "N(AB+BA)"),
            same(Nu(K), join(Nu(D), Nu(T)), "N(AB-BA)"),
            same(Nu(A @ B @ A + B @ A @ B), join(Nu(S), Nu(T2)), "N(ABA+BAB)"),
            same(Nu(A @ B @ A - B @ A @ B), join(Nu(D), Nu(T2)), "N(ABA-BAB)"),
            same(Nu(K @ K), join(Nu(D @ D), Nu(T2)), "N[(AB-BA)^2]"),
        ]
    return fn


def _cap_nu(S, T):
    return cap(S, T)


# -- TH312 ---------------------------------------------------------------------------

def _th312_scalars(rng):
    from ..rng import small_rational

    a = small_rational(rng, exclude=(-1, 0))
    b = -1 - a
    if rng.integers(2) or b in (-1, 0):
        b = small_rational(rng, exclude=(-1, 0))
    return {"alpha": a, "beta": b}


def _lam(a, b):
    return a * b / ((1 + a) * (1 + b))


def _th312_parts(c):
    A, B, I = c.A, c.B, c.I
    a, b = Fraction(c.alpha), Fraction(c.beta)
    lam = _lam(a, b)
    return A, B, I, I + A * a, I + B * b, I + A * a + B * b, lam


def _391(c):
    A, B, I, Pa, Pb, K, lam = _th312_parts(c)
    return [K, Pa @ (I - A @ B * lam) @ Pb]


def _392(c):
    A, B, I, Pa, Pb, K, lam = _th312_parts(c)
    return [K, Pb @ (I - B @ A * lam) @ Pa]


def _393(c):
    A, B, I, Pa, Pb, K, lam = _th312_parts(c)
    return [inv(I - A @ B * lam), Pb @ inv(K) @ Pa]


def _394(c):
    A, B, I, Pa, Pb, K, lam = _th312_parts(c)
    return [inv(I - B @ A * lam), Pa @ inv(K) @ Pb]


def _th312_fact(c):
    A, B, I, Pa, Pb, K, lam = _th312_parts(c)
    return iff(nonsingular(I - A @ B * lam), nonsingular(K))


def _th312_fact_literal(c):
    A, B, I, Pa, Pb, K, lam = _th312_parts(c)
    a, b = Fraction(c.alpha), Fraction(c.beta)
    return iff(nonsingular(I - A @ B * lam), nonsingular(I - A * a - B * b))


# -- B = A* specializations that are not literal substitutions --------------------

def _tl31_3(c):
    A, B, I, S, D, T = _parts(c)
    return [r(D), r(S) + r(2 * I - S) - c.m]


def _tl31_4(c):
    A, B, I, S, D, T = _parts(c)
    return [r(I - S), 2 * r(I + D) - c.m]


def _tl31_5(c):
    A, B, I, S, D, T = _parts(c)
    return [r(A @ B + B @ A), r(cat(A, B)), r(I - S) + r(S) - c.m]


def _tl31_f1(c):
    A, B, I, S, D, T = _parts(c)
    return iff(A == B, _sq(I - S) == I, r(S) + r(2 * I - S) == c.m)


def _tl31_f12(c):
    A, B, I, S, D, T = _parts(c)
    return iff(r(I - S) == c.m, r(I + D) == c.m)


def _tl31_f13(c):
    A, B, I, S, D, T = _parts(c)
    m = c.m
    return iff(r(A @ B + B @ A) == m and r(cat(A, B)) == m, r(S) == m and r(I - S) == m)


def _tl319_ranges(c):
    A, B, I, S, D, T = _parts(c)
    return [same(A @ B + B @ A, cap(S, T), "R(AA*+A*A)"), same(A @ B - B @ A, cap(D, T), "R(AA*-A*A)"),
            same(A @ B @ A + B @ A @ B, cap(S, T), "R(AA*A+A*AA*)"),
            same(A @ B @ A - B @ A @ B, cap(D, T), "R(AA*A-A*AA*)")]


def _tl319_nulls(join, triple: bool):
    def fn(c):
        A, B, I, S, D, T = _parts(c)
        X, Y = (A @ B @ A, B @ A @ B) if triple else (A @ B, B @ A)
        return [same(Nu(X + Y), join(Nu(S), Nu(T)), "N(+)"), same(Nu(X - Y), join(Nu(D), Nu(T)), "N(-)")]
    return fn


_EVEN = "with an even power of A + B - I the right-hand factor is alpha A + beta B, not beta A + alpha B"
_DSUM = "intersection should be a direct sum of the two null spaces"

PAIR_CLASS = "idempotent-pair"
BALANCED = ("equal-rank", "equal-rank", "equal-rank", "generic", "commuting")

ENTRIES = [
    Entry("v31", "v31", "matrix-identity", PAIR_CLASS, _v31),
    Entry("v32", "v32", "matrix-identity", PAIR_CLASS, _v32),
    Entry("v33", "v33", "rank-equality", PAIR_CLASS, _v33),
    Entry("v34", "v34", "rank-equality", PAIR_CLASS, _v34),
    Entry("v35", "v35", "rank-equality", PAIR_CLASS, _v35),
    Entry("v36", "v36", "rank-equality", PAIR_CLASS, _v36, radicand=5),
    Entry("v37", "v37", "rank-equality", PAIR_CLASS, _v37),
    Entry("v38", "v38", "fact-equivalence", PAIR_CLASS, _v38),
    Entry("v39", "v39", "fact-equivalence", PAIR_CLASS, _v39),
    Entry("v310", "v310", "fact-equivalence", PAIR_CLASS, _v310, literal=_v310_literal,
          note="third clause is missing '= m'"),
    Entry("v311", "v311", "fact-equivalence", PAIR_CLASS, _anticomm_fact(-2, Fraction(-7, 4))),
    Entry("v312", "v312", "fact-equivalence", PAIR_CLASS, _anticomm_fact(-1, Fraction(-3, 4))),
    Entry("v313", "v313", "fact-equivalence", PAIR_CLASS, _anticomm_fact(Fraction(-1, 4), 0)),
    Entry("v314", "v314", "fact-equivalence", PAIR_CLASS, _anticomm_fact(0, Fraction(1, 4), _x314)),
    Entry("v315", "v315", "fact-equivalence", PAIR_CLASS, _anticomm_fact(Fraction(3, 4), 1)),
    Entry("v316", "v316", "fact-equivalence", PAIR_CLASS, _anticomm_fact(1, Fraction(5, 4), _x316), radicand=5),
    Entry("v317", "v317", "fact-equivalence", PAIR_CLASS, _anticomm_fact(2, Fraction(9, 4), _x317)),
    Entry("vv318", "vv318", "fact-equivalence", PAIR_CLASS, _vv318),
    Entry("vv319", "vv319", "fact-equivalence", PAIR_CLASS, _vv319),
    Entry("vv320", "vv320", "fact-equivalence", PAIR_CLASS, _vv320),
    Entry("vv321", "vv321", "fact-equivalence", PAIR_CLASS, _vv321, radicand=5),
    Entry("vv322", "vv322", "fact-equivalence", PAIR_CLASS, _vv322),
    Entry("ff31", "ff31", "matrix-identity", PAIR_CLASS, _ff31, scalars=AB_SCALARS),
    Entry("ff32", "ff32", "matrix-identity", PAIR_CLASS, _ff32, scalars=AB_SCALARS, literal=_ff32_literal,
          note=_EVEN),
    Entry("ff33", "ff33", "matrix-identity", PAIR_CLASS, _ff33, scalars=AB_SCALARS, k=DEFAULT_K),
    Entry("ff34", "ff34", "matrix-identity", PAIR_CLASS, _ff34, scalars=AB_SCALARS, k=DEFAULT_K,
          literal=_ff34_literal, note=_EVEN),
    Entry("TK32", "TK32 nonsingularity chain", "fact-equivalence", PAIR_CLASS, _tk32, scalars=AB_SCALARS,
          k=DEFAULT_K, literal=_tk32_literal, modes=BALANCED,
          note="garbled chain read as pairwise equivalences; literal form joins the run-on clauses"),
    Entry("dd37", "dd37", "conditional-inverse-identity", PAIR_CLASS, _dd37, scalars=AB_SCALARS,
          modes=BALANCED),
    Entry("dd38", "dd38", "conditional-inverse-identity", PAIR_CLASS, _dd38, scalars=AB_SCALARS,
          modes=BALANCED, literal=_dd38_literal, note=_EVEN),
    Entry("dd39", "dd39", "conditional-inverse-identity", PAIR_CLASS, _dd39, scalars=AB_SCALARS,
          modes=BALANCED, k=DEFAULT_K),
    Entry("dd310", "dd310", "conditional-inverse-identity", PAIR_CLASS, _dd310, scalars=AB_SCALARS,
          modes=BALANCED, k=DEFAULT_K, literal=_dd310_literal, note=_EVEN),
    Entry("w3", "w3", "matrix-identity", PAIR_CLASS, _w3),
    Entry("w4", "w4", "matrix-identity", PAIR_CLASS, _w4),
    Entry("w14", "w14", "matrix-identity", PAIR_CLASS, _w14),
    Entry("w15", "w15", "matrix-identity", PAIR_CLASS, _w15),
    Entry("w6", "w6", "matrix-identity", PAIR_CLASS, _w6, k=DEFAULT_K),
    Entry("w7", "w7", "matrix-identity", PAIR_CLASS, _w7, k=DEFAULT_K),
    Entry("w8", "w8", "matrix-identity", PAIR_CLASS, _w8, k=DEFAULT_K),
    Entry("w9", "w9", "matrix-identity", PAIR_CLASS, _w9, k=DEFAULT_K),
    Entry("w10", "w10", "matrix-identity", PAIR_CLASS, _w10, k=DEFAULT_K),
    Entry("w11", "w11", "matrix-identity", PAIR_CLASS, _w11, k=DEFAULT_K),
    Entry("w12", "w12", "matrix-identity", PAIR_CLASS, _w12, k=DEFAULT_K),
    Entry("w13", "w13", "matrix-identity", PAIR_CLASS, _w13, k=DEFAULT_K),
    Entry("TK33s1", "TK33 telescoped sum (AB)^j - (BA)^j", "matrix-identity", PAIR_CLASS, _s1, k=DEFAULT_K),
    Entry("TK33s2", "TK33 telescoped sum (AB)^j + (BA)^j", "matrix-identity", PAIR_CLASS, _s2, k=DEFAULT_K),
    Entry("TK33s3", "TK33 telescoped sum (ABA)^j - (BAB)^j", "matrix-identity", PAIR_CLASS, _s3, k=DEFAULT_K),
    Entry("TK33s4", "TK33 telescoped sum (ABA)^j + (BAB)^j", "matrix-identity", PAIR_CLASS, _s4, k=DEFAULT_K),
    Entry("TK34a", "TK34(a)", "subspace-identity", PAIR_CLASS, _tk34a, k=DEFAULT_K),
    Entry("TK34b", "TK34(b)", "subspace-identity", PAIR_CLASS, _tk34b, k=DEFAULT_K),
    Entry("TK34c", "TK34(c)", "subspace-identity", PAIR_CLASS, _tk34c, k=DEFAULT_K),
    Entry("TK34d", "TK34(d)", "subspace-identity", PAIR_CLASS, _tk34d, k=DEFAULT_K),
    Entry("w24", "w24", "conditional-inverse-identity", PAIR_CLASS, _w24, literal=_w24_literal,
          note="Drazin factors are in the wrong order: (AB-BA)^D = T^D (A-B)^D = -(A-B)^D T^D, T = A+B-I"),
    Entry("w25", "w25", "conditional-inverse-identity", PAIR_CLASS, _w25),
    Entry("w26", "w26", "conditional-inverse-identity", PAIR_CLASS, _w26, k=DEFAULT_K, literal=_w26_literal,
          note="Drazin factors are in the wrong order, as in w24"),
    Entry("w27", "w27", "conditional-inverse-identity", PAIR_CLASS, _w27, k=DEFAULT_K),
    Entry("w28", "w28", "conditional-inverse-identity", PAIR_CLASS, _w28, k=DEFAULT_K),
    Entry("w29", "w29", "conditional-inverse-identity", PAIR_CLASS, _w29, k=DEFAULT_K),
    Entry("w32", "w32", "matrix-identity", PAIR_CLASS, _w32),
    Entry("w33", "w33", "matrix-identity", PAIR_CLASS, _w33),
    Entry("w34", "w34", "matrix-identity", PAIR_CLASS, _w34, k=DEFAULT_K),
    Entry("w35", "w35", "matrix-identity", PAIR_CLASS, _w35, k=DEFAULT_K),
    Entry("w36", "w36", "matrix-identity", PAIR_CLASS, _w36),
    Entry("w37", "w37", "matrix-identity", PAIR_CLASS, _w37),
    Entry("w38", "w38", "matrix-identity", PAIR_CLASS, _w38, k=DEFAULT_K),
    Entry("w39", "w39", "matrix-identity", PAIR_CLASS, _w39, k=DEFAULT_K),
    Entry("w40", "w40", "matrix-identity", PAIR_CLASS, _w40),
    Entry("w41", "w41", "matrix-identity", PAIR_CLASS, _w41),
    Entry("w42", "w42", "matrix-identity", PAIR_CLASS, _w42, k=DEFAULT_K, literal=_w42_literal,
          note="exponent k should be 2k - 1; A(A + B - I)^k B equals (AB)^k only for k <= 2"),
    Entry("w43", "w43", "matrix-identity", PAIR_CLASS, _w43, k=DEFAULT_K, literal=_w43_literal,
          note="exponent k should be 2k - 1; B(A + B - I)^k A equals (BA)^k only for k <= 2"),
    Entry("w44", "w44", "conditional-inverse-identity", PAIR_CLASS, _w44),
    Entry("w45", "w45", "conditional-inverse-identity", PAIR_CLASS, _w45),
    Entry("w46", "w46", "conditional-inverse-identity", PAIR_CLASS, _w46),
    Entry("w47", "w47", "conditional-inverse-identity", PAIR_CLASS, _w47),
    Entry("w48", "w48", "conditional-inverse-identity", "projector-pair", _w48),
    Entry("w49", "w49", "conditional-inverse-identity", "projector-pair", _w49),
    Entry("w51", "w51", "conditional-inverse-identity", "projector-pair", _w51, k=DEFAULT_K,
          literal=_w51_literal, note="sign belongs on the other side: -(A-B)'T'^(2k-1) = T'^(2k-1)(A-B)', ' = MP"),
    Entry("w53", "w53", "conditional-inverse-identity", "projector-pair", _w53, k=DEFAULT_K),
    Entry("w55", "w55", "conditional-inverse-identity", "projector-pair", _w55, k=DEFAULT_K),
    Entry("w57", "w57", "conditional-inverse-identity", "projector-pair", _w57, k=DEFAULT_K,
          literal=_w57_literal, note="left-hand side should be [(ABA)^k + (BAB)^k]'"),
    Entry("w58", "w58", "conditional-inverse-identity", "projector-pair", _w58),
    Entry("w59", "w59", "conditional-inverse-identity", "projector-pair", _w59),
    Entry("w60", "w60", "conditional-inverse-identity", "projector-pair", _w60),
    Entry("w61", "w61", "conditional-inverse-identity", "projector-pair", _w61),
    Entry("CT1", "MP of AB for projectors", "conditional-inverse-identity", "projector-pair", _ct1),
    Entry("CT2", "MP of A - B via A - AB", "conditional-inverse-identity", "projector-pair", _ct2),
    Entry("CT3", "MP of A - B via A - BA", "conditional-inverse-identity", "projector-pair", _ct3),
    Entry("CT4", "MP of A + B - I", "conditional-inverse-identity", "projector-pair", _ct4),
    Entry("w62.ranks", "block ranks equal to m", "rank-equality", PAIR_CLASS, _pre62_ranks),
    Entry("w62.facts", "commutativity via r[A - B, I - A - B]", "fact-equivalence", PAIR_CLASS, _pre62_facts,
          literal=_pre62_facts_literal, modes=("generic", "commuting", "commuting", "equal", "complement"),
          note="r(A + B) in the first clause should be r(A - B)"),
    Entry("w62", "w62", "subspace-identity", PAIR_CLASS, _w62),
    Entry("w62.i-iv", "w62 consequences (i)-(iv)", "fact-equivalence", PAIR_CLASS, _w62_facts),
    Entry("w63", "w63", "subspace-identity", PAIR_CLASS, _w63),
    Entry("w64", "w64", "subspace-identity", PAIR_CLASS, _w64),
    Entry("w65", "w65", "subspace-identity", PAIR_CLASS, _w65),
    Entry("w66", "w66", "subspace-identity", PAIR_CLASS, _w66),
    Entry("TK311", "TK311", "subspace-identity", PAIR_CLASS, _tk311(plus), literal=_tk311(_cap_nu), note=_DSUM),
    Entry("391", "391", "matrix-identity", PAIR_CLASS, _391, scalar_fn=_th312_scalars),
    Entry("392", "392", "matrix-identity", PAIR_CLASS, _392, scalar_fn=_th312_scalars),
    Entry("393", "393", "conditional-inverse-identity", PAIR_CLASS, _393, scalar_fn=_th312_scalars),
    Entry("394", "394", "conditional-inverse-identity", PAIR_CLASS, _394, scalar_fn=_th312_scalars),
    Entry("TH312", "TH312 nonsingularity", "fact-equivalence", PAIR_CLASS, _th312_fact,
          scalar_fn=_th312_scalars, literal=_th312_fact_literal,
          modes=("generic", "commuting", "commuting", "complement"),
          note="I - alpha A - beta B should be I + alpha A + beta B"),
]

_by_id = {e.id: e for e in ENTRIES}


def _t(src, new_id, label, **kw):
    return _by_id[src].twin(new_id, label, **kw)


STAR = [
    _t("v31", "TL31.1", "TL31 first identity"),
    _t("v32", "TL31.2", "TL31 second identity"),
    Entry("TL31.3", "TL31 rank of A - A*", "rank-equality", "star-pair", _tl31_3),
    Entry("TL31.4", "TL31 rank of I - A - A*", "rank-equality", "star-pair", _tl31_4),
    Entry("TL31.5", "TL31 rank of AA* + A*A", "rank-equality", "star-pair", _tl31_5),
    _t("v36", "TL31.6", "TL31 rank of I - AA* - A*A"),
    _t("v37", "TL31.7", "TL31 rank of 2I - AA* - A*A"),
    Entry("TL31.f1", "TL31 fact A = A*", "fact-equivalence", "star-pair", _tl31_f1),
    _t("v39", "TL31.f2", "TL31 fact (A - A*)^2 = I/2"),
    _t("v310", "TL31.f3", "TL31 fact (A - A*)^2 = I"),
    _t("v311", "TL31.f4", "TL31 fact AA* + A*A = -2I"),
    _t("v312", "TL31.f5", "TL31 fact AA* + A*A = -I"),
    _t("v313", "TL31.f6", "TL31 fact AA* + A*A = -I/4"),
    _t("v314", "TL31.f7", "TL31 fact AA* + A*A = 0"),
    _t("v315", "TL31.f8", "TL31 fact AA* + A*A = 3I/4"),
    _t("v316", "TL31.f9", "TL31 fact AA* + A*A = I"),
    _t("v317", "TL31.f10", "TL31 fact AA* + A*A = 2I"),
    _t("vv318", "TL31.f11", "TL31 fact r(A - A*) = m"),
    Entry("TL31.f12", "TL31 fact r(I - A - A*) = m", "fact-equivalence", "star-pair", _tl31_f12),
    Entry("TL31.f13", "TL31 fact r(AA* + A*A) = m", "fact-equivalence", "star-pair", _tl31_f13),
    _t("vv321", "TL31.f14", "TL31 fact r(I - AA* - A*A) = m"),
    _t("vv322", "TL31.f15", "TL31 fact r(2I - AA* - A*A) = m"),
    _t("ff31", "TL32.1", "TL32 first factorization"),
    _t("ff32", "TL32.2", "TL32 second factorization"),
    _t("ff33", "TL32.3", "TL32 third factorization"),
    _t("ff34", "TL32.4", "TL32 fourth factorization"),
    _t("TK32", "TL32.f", "TL32 nonsingularity chain"),
    _t("dd37", "TL32.5", "TL32 first inverse"),
    _t("dd38", "TL32.6", "TL32 second inverse"),
    _t("dd39", "TL32.7", "TL32 third inverse"),
    _t("dd310", "TL32.8", "TL32 fourth inverse"),
]
for _i, _src in enumerate(("w3", "w4", "w14", "w15", "w6", "w7", "w8", "w9", "w10", "w11", "w12", "w13",
                           "TK33s1", "TK33s2", "TK33s3", "TK33s4"), start=1):
    STAR.append(_t(_src, f"TL33.{_i}", f"TL33 identity {_i}"))
for _i, _src in enumerate(("w32", "w33", "w34", "w35", "w36", "w37", "w38", "w39", "w40", "w41", "w42", "w43"),
                          start=1):
    STAR.append(_t(_src, f"TL37.{_i}", f"TL37 identity {_i}"))
STAR += [
    _t("TK34a", "TL319a", "TL319(a)", k=(1,)),
    _t("TK34b", "TL319b", "TL319(b)", k=(1,)),
    _t("TK34c", "TL319c", "TL319(c)", k=(1,)),
    _t("TK34d", "TL319d", "TL319(d)", k=(1,)),
    Entry("TL319ef", "TL319(e),(f)", "subspace-identity", "star-pair", _tl319_ranges),
    Entry("TL319g", "TL319(g)", "subspace-identity", "star-pair", _tl319_nulls(plus, False),
          literal=_tl319_nulls(_cap_nu, False), note=_DSUM),
    Entry("TL319h", "TL319(h)", "subspace-identity", "star-pair", _tl319_nulls(plus, True),
          literal=_tl319_nulls(_cap_nu, True), note=_DSUM),
    _t("391", "pp391", "pp391"),
    _t("392", "pp392", "pp392"),
    _t("393", "pp393", "pp393"),
    _t("394", "pp394", "pp394"),
    _t("TH312", "TL312", "TL312 nonsingularity"),
]

ENTRIES += STAR
for _e in ENTRIES:
    _e.group = "pairs"
