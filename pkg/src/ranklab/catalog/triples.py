"""Identities for three idempotents A, B, C with M = A + B + C."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .base import Entry, Nu, Scalar, cap, iff, inv, nonsingular, plus, r, require, same, truthy_rank_expr

ABG = (Scalar("alpha", nonzero=False), Scalar("beta", nonzero=False), Scalar("gamma", nonzero=False))
K_RANGE = tuple(range(7))
CLASS = "idempotent-triple"


def squarefree_part(n: int) -> int:
    """n with every square factor removed (squarefree_part(45) == 5)."""
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return out * n


def radicand_4k1(k) -> int:
    s = squarefree_part(4 * k + 1)
    return 0 if s == 1 else s


def _base(c):
    A, B, C, I = c.A, c.B, c.C, c.I
    return A, B, C, I, A + B + C


def _lin(c):
    A, B, C, I, M = _base(c)
    a, b, g = (c.s(x) for x in (c.alpha, c.beta, c.gamma))
    return A * a + B * b + C * g, a, b, g


def _x1(c):
    A, B, C, I, M = _base(c)
    K, a, b, g = _lin(c)
    return (A @ B + A @ C) * a + (B @ A + B @ C) * b + (C @ A + C @ B) * g


def _x2(c):
    A, B, C, I, M = _base(c)
    K, a, b, g = _lin(c)
    return (B @ A + C @ A) * a + (A @ B + C @ B) * b + (A @ C + B @ C) * g


def _x3(c):
    A, B, C, I, M = _base(c)
    K, a, b, g = _lin(c)
    return (A @ B + B @ A) * (a + b) + (A @ C + C @ A) * (a + g) + (B @ C + C @ B) * (b + g)


def _x4(c):
    A, B, C, I, M = _base(c)
    K, a, b, g = _lin(c)
    return (A @ B - B @ A) * (a - b) + (A @ C - C @ A) * (a - g) + (B @ C - C @ B) * (b - g)


def _x5(c):
    A, B, C, I, M = _base(c)
    K, a, b, g = _lin(c)
    return (B + C) @ A @ (B + C) * a + (A + C) @ B @ (A + C) * b + (A + B) @ C @ (A + B) * g


def _397(c):
    A, B, C, I, M = _base(c)
    return [_x1(c), _lin(c)[0] @ (M - I)]


def _398(c):
    A, B, C, I, M = _base(c)
    return [_x2(c), (M - I) @ _lin(c)[0]]


def _399(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    return [_x3(c), K @ (M - I) + (M - I) @ K]


def _3100(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    return [_x4(c), K @ M - M @ K]


def _3100a(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    return [_x5(c), (M - I) @ K @ (M - I)]


def _plus_sq(c):
    A, B, C, I, M = _base(c)
    return (A + B) @ (A + B) + (A + C) @ (A + C) + (B + C) @ (B + C)


def _minus_sq(c):
    A, B, C, I, M = _base(c)
    return (A - B) @ (A - B) + (A - C) @ (A - C) + (B - C) @ (B - C)


def _p6(c):
    A, B, C, I, M = _base(c)
    return A @ B + B @ A + A @ C + C @ A + B @ C + C @ B


def _3106(c):
    A, B, C, I, M = _base(c)
    return [_plus_sq(c), M @ (I + M)]


def _3107(c):
    A, B, C, I, M = _base(c)
    H = M - I.scale(Fraction(3, 2))
    return [_minus_sq(c), M @ (3 * I - M), I.scale(Fraction(9, 4)) - H @ H]


def _3108(c):
    A, B, C, I, M = _base(c)
    H = M - I.scale(Fraction(1, 2))
    return [_p6(c), M @ (M - I), H @ H - I.scale(Fraction(1, 4))]


def _3109(c):
    A, B, C, I, M = _base(c)
    return [_p6(c) ** c.k, M ** c.k @ (M - I) ** c.k]


def _3110(c):
    A, B, C, I, M = _base(c)
    return [r(_plus_sq(c)), r(M) + r(I + M) - c.m, cap(M, I + M).rank()]


def _3111(c):
    A, B, C, I, M = _base(c)
    return [r(_minus_sq(c)), r(M) + r(3 * I - M) - c.m, cap(M, 3 * I - M).rank()]


def _roots(c):
    s = c.sqrt(4 * c.k + 1) if radicand_4k1(c.k) else c.s(isqrt(4 * c.k + 1))
    return (s + 1) / 2, (s - 1) / 2


def _3112(c):
    A, B, C, I, M = _base(c)
    p, q = _roots(c)
    return [r(I * c.k - _p6(c)), r(I.scale(p) - M) + r(I.scale(q) + M) - c.m]


def _3112abc(c):
    A, B, C, I, M = _base(c)
    return [same(_plus_sq(c), cap(M, I + M), "R(sum (A+B)^2) = R(M) & R(I+M)"),
            same(_minus_sq(c), cap(M, 3 * I - M), "R(sum (A-B)^2) = R(M) & R(3I-M)"),
            same(_p6(c), cap(M, I - M), "R(sum AB+BA) = R(M) & R(I-M)")]


def _3112_null(which, join):
    def fn(c):
        A, B, C, I, M = _base(c)
        if which == "d":
            X, F, text = _plus_sq(c), I + M, "N(sum (A+B)^2)"
        elif which == "e":
            X, F, text = _minus_sq(c), 3 * I - M, "N(sum (A-B)^2)"
        else:
            X, F, text = _p6(c), I - M, "N(sum AB+BA)"
        return [same(Nu(X), join(Nu(M), Nu(F)), text)]
    return fn


def _th313a(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    return [iff(_x1(c).is_zero(), (K @ (M - I)).is_zero()),
            iff(_x2(c).is_zero(), ((M - I) @ K).is_zero()),
            iff(_x3(c).is_zero(), (K @ (M - I) + (M - I) @ K).is_zero()),
            iff(_x4(c).is_zero(), K @ M == M @ K),
            iff(_x5(c).is_zero(), ((M - I) @ K @ (M - I)).is_zero())]


def _th313b(c):
    A, B, C, I, M = _base(c)
    P, Q = _plus_sq(c), _minus_sq(c)
    W = 2 * M - 3 * I
    W2 = W @ W
    out = [iff(P.is_zero(), (M @ M + M).is_zero()),
           iff(P == I, M @ M + M == I),
           iff(Q.is_zero(), W2 == 9 * I),
           iff(Q == 3 * I, W2 == -3 * I),
           iff(Q == I.scale(Fraction(9, 4)), W2.is_zero())]
    P6, V = _p6(c), I - 2 * M
    for k in K_RANGE:
        out.append(iff(P6 == k * I, V @ V == (4 * k + 1) * I))
    return out


def _th313b4(c):
    A, B, C, I, M = _base(c)
    W = 2 * M - 3 * I
    return iff(_minus_sq(c) == I.scale(Fraction(9, 8)), W @ W == I.scale(Fraction(9, 2)))


def _th313b4_literal(c):
    A, B, C, I, M = _base(c)
    W = 2 * M - 3 * I
    return iff(_minus_sq(c) == I.scale(Fraction(9, 8)), W @ W == 9 * I)


def _th313c(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    return iff(nonsingular(_x1(c)), nonsingular(_x2(c)), nonsingular(_x5(c)),
               nonsingular(K) and nonsingular(M - I))


def _th313c_literal(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    # the third clause has no predicate; read the bare matrix as "nonzero"
    return iff(nonsingular(_x1(c)), nonsingular(_x2(c)), truthy_rank_expr(r(_x5(c))),
               nonsingular(K) and nonsingular(M - I))


def _th313c_inv(c):
    A, B, C, I, M = _base(c)
    K = _lin(c)[0]
    require(nonsingular(K) and nonsingular(M - I), "alpha A + beta B + gamma C or M - I is singular")
    Ki, Ni = inv(K), inv(M - I)
    return [(inv(_x1(c)), Ni @ Ki), (inv(_x2(c)), Ki @ Ni), (inv(_x5(c)), Ni @ Ki @ Ni)]


def _th313d(c):
    A, B, C, I, M = _base(c)
    m = c.m
    return [iff(r(_plus_sq(c)) == m, r(M) == m and r(I + M) == m),
            iff(r(_minus_sq(c)) == m, r(M) == m and r(3 * I - M) == m)]


def _th313d3(c):
    A, B, C, I, M = _base(c)
    p, q = _roots(c)
    m = c.m
    return iff(r(I * c.k - _p6(c)) == m, r(I.scale(p) - M) == m and r(I.scale(q) + M) == m)


_DSUM = "intersection should be a direct sum of the two null spaces"
NONSING_MODES = ("generic", "generic", "commuting", "complements")

ENTRIES = [
    Entry("397", "397", "matrix-identity", CLASS, _397, scalars=ABG),
    Entry("398", "398", "matrix-identity", CLASS, _398, scalars=ABG),
    Entry("399", "399", "matrix-identity", CLASS, _399, scalars=ABG),
    Entry("3100", "3100", "matrix-identity", CLASS, _3100, scalars=ABG),
    Entry("3100a", "3100a", "matrix-identity", CLASS, _3100a, scalars=ABG),
    Entry("3106", "3106", "matrix-identity", CLASS, _3106),
    Entry("3107", "3107", "matrix-identity", CLASS, _3107),
    Entry("3108", "3108", "matrix-identity", CLASS, _3108),
    Entry("3109", "3109", "matrix-identity", CLASS, _3109, k=(1, 2, 3)),
    Entry("3110", "3110", "rank-equality", CLASS, _3110),
    Entry("3111", "3111", "rank-equality", CLASS, _3111),
    Entry("3112", "3112", "rank-equality", CLASS, _3112, k=K_RANGE, radicand=radicand_4k1),
    Entry("3112abc", "3112a-3112c", "subspace-identity", CLASS, _3112abc),
    Entry("3112d", "3112d", "subspace-identity", CLASS, _3112_null("d", plus), literal=_3112_null("d", cap),
          note=_DSUM + "; R(N) is read as N(M)"),
    Entry("3112e", "3112e", "subspace-identity", CLASS, _3112_null("e", plus), literal=_3112_null("e", cap),
          note=_DSUM),
    Entry("3112f", "3112f", "subspace-identity", CLASS, _3112_null("f", plus), literal=_3112_null("f", cap),
          note=_DSUM),
    Entry("TH313a", "TH313(a)", "fact-equivalence", CLASS, _th313a, scalars=ABG),
    Entry("TH313b", "TH313(b)", "fact-equivalence", CLASS, _th313b),
    Entry("TH313b4", "TH313(b) fourth fact", "fact-equivalence", CLASS, _th313b4, literal=_th313b4_literal,
          note="(2M - 3I)^2 should equal 9/2 I, not 9I"),
    Entry("TH313c", "TH313(c) nonsingularity", "fact-equivalence", CLASS, _th313c, scalars=ABG,
          literal=_th313c_literal, modes=NONSING_MODES, note="third clause is missing 'is nonsingular'"),
    Entry("TH313c.inv", "TH313(c) inverses", "conditional-inverse-identity", CLASS, _th313c_inv, scalars=ABG,
          modes=NONSING_MODES),
    Entry("TH313d", "TH313(d)", "fact-equivalence", CLASS, _th313d),
    Entry("TH313d3", "TH313(d) third fact", "fact-equivalence", CLASS, _th313d3, k=K_RANGE,
          radicand=radicand_4k1),
]
for _e in ENTRIES:
    _e.group = "triples"
