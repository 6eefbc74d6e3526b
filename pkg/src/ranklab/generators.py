"""Seeded generators for the input classes used by the identity catalog.

Besides plain random idempotents, pair and triple generators mix in
structured cases (equal, complementary, commuting, shared range, shared null
space, partially overlapping ranges).  Random pairs almost never satisfy the
special relations that fact equivalences talk about.  Without these cases
both sides of most equivalences would just be false on every instance.
"""
from __future__ import annotations

from .errors import PreconditionError, UsageError
from .geninv import moore_penrose
from .matrix import Matrix, hstack, range_contained, solve_linear_matrix_system
from .rng import gauss_int_matrix, random_full_column_rank, random_nonsingular, random_rank_matrix
from .scalar import QI, ExactScalar, FieldSpec

__all__ = [
    "random_idempotent",
    "random_projector",
    "derived_idempotent",
    "sample_equation_solutions",
    "idempotent_pair",
    "idempotent_triple",
    "projector_pair",
    "idempotent_family",
    "random_square",
    "random_index_matrix",
    "INSTANCE_KINDS",
    "generate_instance",
]


def _diag01(m: int, ones, field: FieldSpec) -> Matrix:
    return Matrix.diag([1 if i in ones else 0 for i in range(m)], field)


def random_idempotent(m: int, k: int, rng, field: FieldSpec = QI, P: Matrix | None = None) -> Matrix:
    """P diag(I_k, 0) P^-1 for a random (or given) nonsingular P."""
    if not 0 <= k <= m:
        raise UsageError(f"rank {k} outside 0..{m}")
    if k == 0:
        return Matrix.zeros(m, m, field)
    if k == m:
        return Matrix.identity(m, field)
    if P is None:
        P = random_nonsingular(rng, m, field=field)
    return P @ _diag01(m, range(k), field) @ P.inverse()


def random_projector(m: int, k: int, rng, field: FieldSpec = QI) -> Matrix:
    """B (B*B)^-1 B* for a random full-column-rank m x k matrix B."""
    if not 0 <= k <= m:
        raise UsageError(f"rank {k} outside 0..{m}")
    if k == 0:
        return Matrix.zeros(m, m, field)
    if k == m:
        return Matrix.identity(m, field)
    B = random_full_column_rank(rng, m, k, field=field)
    return projector_onto(B)


def projector_onto(B: Matrix) -> Matrix:
    """Orthogonal projector onto R(B) for B of full column rank."""
    Bh = B.H
    return B @ (Bh @ B).inverse() @ Bh


_RULES = ("neg-square", "involution-plus", "involution-minus", "skew-involution-plus",
          "skew-involution-minus", "product-BA", "product-BCA", "product-CAB")


def derived_idempotent(source: Matrix, rule: str, B: Matrix | None = None, C: Matrix | None = None) -> Matrix:
    """Idempotents obtained from other matrix classes.

    neg-square: A^2 = -A gives -A.  involution-plus/minus: A^2 = I gives
    (I +- A)/2.  skew-involution-plus/minus: A^2 = -I gives (I +- iA)/2.
    product-BA: B (A B)† A.  product-BCA: B C (A B C)† A.
    product-CAB: C (A B C)† A B.
    """
    A = source
    f = A.field
    if rule == "neg-square":
        if A @ A != -A:
            raise PreconditionError("need A^2 = -A")
        out = -A
    elif rule in ("involution-plus", "involution-minus"):
        if A @ A != Matrix.identity(A.rows, f):
            raise PreconditionError("need A^2 = I")
        sign = 1 if rule.endswith("plus") else -1
        out = (Matrix.identity(A.rows, f) + A.scale(sign)).scale(ExactScalar(1, 0, field=f) / 2)
    elif rule in ("skew-involution-plus", "skew-involution-minus", "skew-involution"):
        if A @ A != -Matrix.identity(A.rows, f):
            raise PreconditionError("need A^2 = -I")
        sign = -1 if rule.endswith("minus") else 1
        out = (Matrix.identity(A.rows, f) + A.scale(ExactScalar(0, sign, field=f))).scale(ExactScalar(1, 0, field=f) / 2)
    elif rule == "product-BA":
        if B is None:
            raise UsageError("product rule needs B")
        out = B @ moore_penrose(A @ B) @ A
    elif rule == "product-BCA":
        out = B @ C @ moore_penrose(A @ B @ C) @ A
    elif rule == "product-CAB":
        out = C @ moore_penrose(A @ B @ C) @ A @ B
    else:
        raise UsageError(f"unknown rule {rule!r}; expected one of {_RULES}")
    if out @ out != out:
        raise PreconditionError(f"rule {rule} did not produce an idempotent")
    return out


# -- pairs and triples -------------------------------------------------------

PAIR_MODES = ("generic", "generic", "generic", "equal", "complement", "commuting", "same-range",
              "same-null", "overlap", "zero-one", "star")


def _rank(rng, m: int, lo: int = 0) -> int:
    return int(rng.integers(lo, m + 1))


def idempotent_pair(m: int, rng, field: FieldSpec = QI, mode: str | None = None):
    """Two m x m idempotents.  ``mode`` is drawn from PAIR_MODES when omitted."""
    if mode is None:
        mode = PAIR_MODES[int(rng.integers(len(PAIR_MODES)))]
    I = Matrix.identity(m, field)
    if mode == "generic":
        return random_idempotent(m, _rank(rng, m), rng, field), random_idempotent(m, _rank(rng, m), rng, field)
    if mode == "equal-rank":
        # equal ranks of at least m/2: the only way A + B - I and aA + bB can both be nonsingular
        a = int(rng.integers((m + 1) // 2, m + 1))
        return random_idempotent(m, a, rng, field), random_idempotent(m, a, rng, field)
    if mode == "complementary-ranks":
        a = _rank(rng, m)
        return random_idempotent(m, a, rng, field), random_idempotent(m, m - a, rng, field)
    if mode == "equal":
        A = random_idempotent(m, _rank(rng, m), rng, field)
        return A, A
    if mode == "complement":
        A = random_idempotent(m, _rank(rng, m), rng, field)
        return A, I - A
    if mode == "commuting":
        P = random_nonsingular(rng, m, field=field)
        Pi = P.inverse()
        sa = [i for i in range(m) if rng.integers(2)]
        sb = [i for i in range(m) if rng.integers(2)]
        return P @ _diag01(m, sa, field) @ Pi, P @ _diag01(m, sb, field) @ Pi
    if mode == "same-range":
        A = random_idempotent(m, _rank(rng, m), rng, field)
        Z = gauss_int_matrix(rng, m, m, 2, field)
        return A, A + A @ Z @ (I - A)
    if mode == "same-null":
        A = random_idempotent(m, _rank(rng, m), rng, field)
        Z = gauss_int_matrix(rng, m, m, 2, field)
        return A, A + (I - A) @ Z @ A
    if mode == "overlap":
        # ranges share a common subspace of dimension c
        P = random_nonsingular(rng, m, field=field)
        Q = random_nonsingular(rng, m, field=field)
        c = int(rng.integers(0, m + 1))
        if c:
            Q = hstack(P.columns(range(c)), Q.columns(range(c, m)))
            if Q.rank() < m:
                Q = P
        a = int(rng.integers(c, m + 1))
        b = int(rng.integers(c, m + 1))
        return random_idempotent(m, a, rng, field, P), random_idempotent(m, b, rng, field, Q)
    if mode == "zero-one":
        pick = int(rng.integers(4))
        Z, A = Matrix.zeros(m, m, field), random_idempotent(m, _rank(rng, m), rng, field)
        return [(Z, A), (A, Z), (I, A), (A, I)][pick]
    if mode == "star":
        A = random_idempotent(m, _rank(rng, m), rng, field)
        return A, A.H
    raise UsageError(f"unknown pair mode {mode!r}")


TRIPLE_MODES = ("generic", "generic", "generic", "commuting", "repeat", "with-zero", "complements")


def idempotent_triple(m: int, rng, field: FieldSpec = QI, mode: str | None = None):
    if mode is None:
        mode = TRIPLE_MODES[int(rng.integers(len(TRIPLE_MODES)))]
    if mode == "generic":
        return tuple(random_idempotent(m, _rank(rng, m), rng, field) for _ in range(3))
    if mode == "commuting":
        P = random_nonsingular(rng, m, field=field)
        Pi = P.inverse()
        out = []
        for _ in range(3):
            s = [i for i in range(m) if rng.integers(2)]
            out.append(P @ _diag01(m, s, field) @ Pi)
        return tuple(out)
    if mode == "repeat":
        A, B = idempotent_pair(m, rng, field)
        order = [(A, A, B), (A, B, A), (B, A, A)][int(rng.integers(3))]
        return order
    if mode == "with-zero":
        A, B = idempotent_pair(m, rng, field)
        return (A, B, Matrix.zeros(m, m, field))
    if mode == "complements":
        # A + B + C = I with pairwise products zero
        P = random_nonsingular(rng, m, field=field)
        Pi = P.inverse()
        labels = [int(rng.integers(3)) for _ in range(m)]
        return tuple(P @ _diag01(m, [i for i in range(m) if labels[i] == j], field) @ Pi for j in range(3))
    raise UsageError(f"unknown triple mode {mode!r}")


def projector_pair(m: int, rng, field: FieldSpec = QI, mode: str | None = None):
    """Two orthogonal projectors."""
    if mode is None:
        mode = ("generic", "generic", "generic", "equal", "complement", "nested", "zero-one")[int(rng.integers(7))]
    I = Matrix.identity(m, field)
    if mode == "generic":
        return random_projector(m, _rank(rng, m), rng, field), random_projector(m, _rank(rng, m), rng, field)
    if mode == "equal":
        A = random_projector(m, _rank(rng, m), rng, field)
        return A, A
    if mode == "complement":
        A = random_projector(m, _rank(rng, m), rng, field)
        return A, I - A
    if mode == "nested":
        k = _rank(rng, m, 1)
        B = random_full_column_rank(rng, m, k, field=field)
        j = int(rng.integers(0, k + 1))
        big = projector_onto(B)
        small = projector_onto(B.columns(range(j))) if j else Matrix.zeros(m, m, field)
        return (big, small) if rng.integers(2) else (small, big)
    if mode == "zero-one":
        A = random_projector(m, _rank(rng, m), rng, field)
        return [(Matrix.zeros(m, m, field), A), (A, I)][int(rng.integers(2))]
    raise UsageError(f"unknown projector mode {mode!r}")


def idempotent_family(m: int, size: int, rng, field: FieldSpec = QI):
    if size < 2:
        raise UsageError("a family needs at least two members")
    if rng.integers(3) == 0:
        P = random_nonsingular(rng, m, field=field)
        Pi = P.inverse()
        return [P @ _diag01(m, [i for i in range(m) if rng.integers(2)], field) @ Pi for _ in range(size)]
    return [random_idempotent(m, _rank(rng, m), rng, field) for _ in range(size)]


def random_square(m: int, rng, field: FieldSpec = QI) -> Matrix:
    """Square matrix with a random rank."""
    return random_rank_matrix(rng, m, m, _rank(rng, m), field=field)


def random_index_matrix(m: int, rng, field: FieldSpec = QI) -> Matrix:
    """Square matrix with a nontrivial nilpotent part: P diag(G, J) P^-1.

    G is a random nonsingular block and J a direct sum of nilpotent Jordan
    blocks, so the index can be anything from 0 to m.
    """
    g = int(rng.integers(0, m + 1))
    n = m - g
    blocks = []
    rest = n
    while rest:
        s = int(rng.integers(1, rest + 1))
        blocks.append(s)
        rest -= s
    rows = [[0] * m for _ in range(m)]
    if g:
        G = random_nonsingular(rng, g, field=field).tolist()
        for i in range(g):
            for j in range(g):
                rows[i][j] = G[i][j]
    pos = g
    for s in blocks:
        for t in range(s - 1):
            rows[pos + t][pos + t + 1] = 1
        pos += s
    core = Matrix.from_rows(rows, field, cols=m)
    P = random_nonsingular(rng, m, field=field)
    return P @ core @ P.inverse()


# -- matrix-equation systems -------------------------------------------------

def sample_equation_solutions(kind: str, m: int, rng, field: FieldSpec = QI, n: int | None = None,
                              p: int | None = None):
    """Random solutions of the systems used by the three expansion theorems.

    z1:  MX = X, YM = Y, MY = XM             returns (M, X, Y)
    z8:  AX = X, YB = Y, AY = XB             returns (A, B, X, Y)
    z11: AX = X, BY = Y, R(X) ⊇ R(AY), R(Y) ⊇ R(BX)   returns (A, B, X, Y)

    For z1 and z8 the coefficient matrices are idempotent half the time and
    arbitrary otherwise; the solution pair comes from the vectorized kernel.
    For z11 a structured solution built from an idempotent pair (the products
    (AB)^j A, (BA)^j B or (AB)^j, (BA)^j) is used in most draws, and
    kernel-sampled solutions of AX = X, BY = Y (kept only when the range
    conditions hold) in the rest.
    """
    I = Matrix.identity(m, field)
    if kind == "z1":
        M = random_idempotent(m, _rank(rng, m), rng, field) if rng.integers(2) else _small_square(m, rng, field)
        Z = Matrix.zeros(m, m, field)
        X, Y = solve_linear_matrix_system(
            [([(0, M, I), (0, -I, I)], Z),
             ([(1, I, M), (1, -I, I)], Z),
             ([(1, M, I), (0, -I, M)], Z)],
            [(m, m), (m, m)], rng, field)
        return M, X, Y
    if kind == "z8":
        if rng.integers(2):
            A, B = idempotent_pair(m, rng, field)
        else:
            A, B = _small_square(m, rng, field), _small_square(m, rng, field)
        Z = Matrix.zeros(m, m, field)
        X, Y = solve_linear_matrix_system(
            [([(0, A, I), (0, -I, I)], Z),
             ([(1, I, B), (1, -I, I)], Z),
             ([(1, A, I), (0, -I, B)], Z)],
            [(m, m), (m, m)], rng, field)
        return A, B, X, Y
    if kind == "z11":
        A, B = idempotent_pair(m, rng, field)
        choice = int(rng.integers(3))
        j = int(rng.integers(0, 3))
        if choice == 0:
            X = (A @ B) ** j @ A
            Y = (B @ A) ** j @ B
        elif choice == 1:
            j = max(j, 1)
            X = (A @ B) ** j
            Y = (B @ A) ** j
        else:
            n = n or m
            p = p or m
            for _ in range(16):
                Zx = Matrix.zeros(m, n, field)
                Zy = Matrix.zeros(m, p, field)
                X, = solve_linear_matrix_system([([(0, A, Matrix.identity(n, field)),
                                                   (0, -I, Matrix.identity(n, field))], Zx)],
                                                [(m, n)], rng, field)
                Y, = solve_linear_matrix_system([([(0, B, Matrix.identity(p, field)),
                                                   (0, -I, Matrix.identity(p, field))], Zy)],
                                                [(m, p)], rng, field)
                if range_contained(A @ Y, X) and range_contained(B @ X, Y):
                    break
            else:
                X = A
                Y = B
        return A, B, X, Y
    raise UsageError(f"unknown equation system {kind!r}")


def _small_square(m: int, rng, field: FieldSpec) -> Matrix:
    return gauss_int_matrix(rng, m, m, 1, field)


# -- uniform access for the CLI ---------------------------------------------

INSTANCE_KINDS = ("idempotent-pair", "idempotent-triple", "projector-pair", "idempotent-family",
                  "equation-system", "star-pair")


def generate_instance(kind: str, m: int, rng, ranks=None, field: FieldSpec = QI, size: int = 3,
                      system: str = "z1") -> dict:
    """Named matrices for one instance of ``kind``; ``ranks`` pins member ranks."""
    ranks = list(ranks or [])

    def rk(i):
        return ranks[i] if i < len(ranks) else _rank(rng, m)

    for r in ranks:
        if not 0 <= r <= m:
            raise UsageError(f"rank {r} outside 0..{m}")
    if kind == "idempotent-pair":
        if ranks:
            return {"A": random_idempotent(m, rk(0), rng, field), "B": random_idempotent(m, rk(1), rng, field)}
        A, B = idempotent_pair(m, rng, field, "generic")
        return {"A": A, "B": B}
    if kind == "idempotent-triple":
        return {n: random_idempotent(m, rk(i), rng, field) for i, n in enumerate("ABC")}
    if kind == "projector-pair":
        return {"A": random_projector(m, rk(0), rng, field), "B": random_projector(m, rk(1), rng, field)}
    if kind == "idempotent-family":
        size = max(size, len(ranks), 2)
        return {f"A{i + 1}": random_idempotent(m, rk(i), rng, field) for i in range(size)}
    if kind == "star-pair":
        A = random_idempotent(m, rk(0), rng, field)
        return {"A": A, "B": A.H}
    if kind == "equation-system":
        out = sample_equation_solutions(system, m, rng, field)
        names = {"z1": "MXY", "z8": "ABXY", "z11": "ABXY"}[system]
        return dict(zip(names, out))
    raise UsageError(f"unknown instance kind {kind!r}; expected one of {INSTANCE_KINDS}")


# -- general (non-idempotent) inputs -----------------------------------------

MATRIX_PAIR_MODES = ("generic", "generic", "generic", "zero", "same-range", "nested", "disjoint", "full",
                     "full-zero")


def matrix_pair(m: int, rng, field: FieldSpec = QI, mode: str | None = None):
    """A (m x n) and B (m x p) with random widths and a mix of range relations."""
    if mode is None:
        mode = MATRIX_PAIR_MODES[int(rng.integers(len(MATRIX_PAIR_MODES)))]
    n = int(rng.integers(1, m + 2))
    p = int(rng.integers(1, m + 2))

    def rnd(cols, r=None):
        if r is None:
            r = int(rng.integers(0, min(m, cols) + 1))
        return random_rank_matrix(rng, m, cols, r, field=field)

    if mode == "generic":
        return rnd(n), rnd(p)
    if mode == "zero":
        A = rnd(n)
        return (A, Matrix.zeros(m, p, field)) if rng.integers(2) else (Matrix.zeros(m, p, field), A)
    if mode == "same-range":
        A = rnd(n)
        return A, A @ random_nonsingular(rng, n, field=field).columns(range(min(n, p)))
    if mode == "nested":
        A = rnd(n)
        B = A @ gauss_int_matrix(rng, n, p, 2, field)
        return (A, B) if rng.integers(2) else (B, A)
    if mode == "disjoint":
        P = random_nonsingular(rng, m, field=field)
        a = int(rng.integers(0, m + 1))
        b = int(rng.integers(0, m - a + 1))
        A = P.columns(range(a)) @ gauss_int_matrix(rng, a, n, 2, field) if a else Matrix.zeros(m, n, field)
        B = P.columns(range(a, a + b)) @ gauss_int_matrix(rng, b, p, 2, field) if b else Matrix.zeros(m, p, field)
        return A, B
    if mode == "full":
        return rnd(n, min(m, n)), rnd(p, min(m, p))
    if mode == "full-zero":
        # one side of full row rank, the other zero
        A = random_rank_matrix(rng, m, m + n, m, field=field)
        Z = Matrix.zeros(m, p, field)
        return (A, Z) if rng.integers(2) else (Z, A)
    raise UsageError(f"unknown matrix-pair mode {mode!r}")


def matrix_triple(m: int, rng, field: FieldSpec = QI):
    A, B = matrix_pair(m, rng, field)
    C, _ = matrix_pair(m, rng, field)
    if rng.integers(4) == 0:
        # C inside R[A, B]
        C = hstack(A, B) @ gauss_int_matrix(rng, A.cols + B.cols, int(rng.integers(1, m + 2)), 1, field)
    return A, B, C


def spectral_square(m: int, rng, field: FieldSpec = QI, eigs=(0, 1, -1, 2)) -> Matrix:
    """P J P^-1 with eigenvalues drawn from ``eigs`` and random Jordan chains.

    Plain random matrices have no eigenvalue at 0 or +-1, which makes rank
    formulas about I +- A and A^2 collapse to full rank on both sides.
    """
    rows = [[0] * m for _ in range(m)]
    i = 0
    while i < m:
        size = int(rng.integers(1, min(3, m - i) + 1)) if rng.integers(3) == 0 else 1
        lam = eigs[int(rng.integers(len(eigs)))]
        for t in range(size):
            rows[i + t][i + t] = lam
            if t:
                rows[i + t - 1][i + t] = 1
        i += size
    P = random_nonsingular(rng, m, field=field)
    return P @ Matrix.from_rows(rows, field, cols=m) @ P.inverse()
