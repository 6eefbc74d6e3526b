"""Immutable dense matrices over Q(i)(sqrt d).

Storage is by rational components: a matrix ``X`` over ``Q(i)`` is kept as
``(X_re, X_im)`` and over ``Q(i)(sqrt d)`` as ``(X_1, X_i, X_s, X_is)``, each a
``flint.fmpq_mat``.  Products expand through the multiplication table of the
field, so every operation stays exact.

Rank, inverse and kernel go through the *real representation*: each entry
``x`` is replaced by the ``k x k`` rational matrix of multiplication by ``x``
(``k = 2`` or ``4``).  Rank over the field is the rational rank divided by
``k``.  The rational rank is computed by our own fraction-free elimination
(:func:`bareiss_rank`); :func:`naive_rank` is a separate Gauss-Jordan over
:class:`ExactScalar` kept as an oracle.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .errors import NoSolutionError, SingularMatrixError, UsageError
from .scalar import QI, ExactScalar, FieldSpec, as_scalar

__all__ = [
    "Matrix",
    "bareiss_rank",
    "naive_rank",
    "block",
    "hstack",
    "vstack",
    "range_intersection_dim",
    "range_intersection_basis",
    "range_contained",
    "range_equal",
    "nullspace_equal",
    "solve_linear_matrix_system",
]


def _mul_parts(x, y, d):
    """Multiply two elements given by rational components.

    Works for scalars and matrices alike (anything with ``*``, ``+``, ``-``).
    """
    if len(x) == 2:
        a, b = x
        c, e = y
        return (a * c - b * e, a * e + b * c)
    a, b, c, e = x
    a2, b2, c2, e2 = y
    re = a * a2 - b * b2 + (c * c2 - e * e2) * d
    im = a * b2 + b * a2 + (c * e2 + e * c2) * d
    sre = a * c2 - b * e2 + c * a2 - e * b2
    sim = a * e2 + b * c2 + c * b2 + e * a2
    return (re, im, sre, sim)


def _mult_block(x: Sequence, d: int):
    """k x k rational matrix (row-major list) of multiplication by x."""
    if len(x) == 2:
        a, b = x
        return [[a, -b], [b, a]]
    a, b, c, e = x
    return [
        [a, -b, c * d, -e * d],
        [b, a, e * d, c * d],
        [c, -e, a, -b],
        [e, c, b, a],
    ]


class Matrix:
    """Dense matrix over a :class:`FieldSpec`.  ``@`` is the matrix product."""

    __slots__ = ("rows", "cols", "field", "comps", "_rank", "_rr", "_key")

    def __init__(self, rows: int, cols: int, comps: Sequence, field: FieldSpec = QI):
        if len(comps) != field.degree:
            raise UsageError("component count does not match field degree")
        self.rows = rows
        self.cols = cols
        self.field = field
        self.comps = tuple(comps)
        self._rank = None
        self._rr = None
        self._key = None

    # -- construction ------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QI) -> "Matrix":
        return cls(rows, cols, [flint.fmpq_mat(rows, cols) for _ in range(field.degree)], field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QI) -> "Matrix":
        one = flint.fmpq_mat(n, n)
        for i in range(n):
            one[i, i] = 1
        rest = [flint.fmpq_mat(n, n) for _ in range(field.degree - 1)]
        return cls(n, n, [one] + rest, field)

    @classmethod
    def from_rows(cls, data, field: FieldSpec = QI, cols: int | None = None) -> "Matrix":
        """Build from nested rows of ints, Fractions, strings or ExactScalars."""
        data = [list(r) for r in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise UsageError("ragged rows")
        k = field.degree
        flat = [[0] * (rows * cols) for _ in range(k)]
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                parts = as_scalar(v, field).parts
                for c in range(k):
                    flat[c][i * cols + j] = _fmpq(parts[c])
        return cls(rows, cols, [flint.fmpq_mat(rows, cols, f) for f in flat], field)

    @classmethod
    def column(cls, values, field: FieldSpec = QI) -> "Matrix":
        return cls.from_rows([[v] for v in values], field, cols=1)

    @classmethod
    def diag(cls, values, field: FieldSpec = QI) -> "Matrix":
        values = list(values)
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, field, cols=n)

    @classmethod
    def unit(cls, n: int, i: int, field: FieldSpec = QI) -> "Matrix":
        """The column e_i of length n (0-based)."""
        return cls.column([1 if j == i else 0 for j in range(n)], field)

    # -- basic access ------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> ExactScalar:
        i, j = ij
        parts = [_frac(c[i, j]) for c in self.comps]
        if len(parts) == 2:
            parts += [0, 0]
        return ExactScalar(*parts, field=self.field)

    def tolist(self) -> list[list[ExactScalar]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(any(c.entries()) for c in self.comps)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.rows, self.cols, self.field.d,
                         tuple(tuple(c.entries()) for c in self.comps))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self.field != other.field:
            return False
        if not self.rows or not self.cols:
            return True
        return all(a == b for a, b in zip(self.comps, other.comps))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, d={self.field.d}, {self.to_text_rows()})"

    # -- arithmetic --------------------------------------------------------
    def _check_field(self, other: "Matrix"):
        if other.field != self.field:
            raise UsageError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.comps, other.comps)], self.field)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.comps, other.comps)], self.field)

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.comps], self.field)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.field)
        return Matrix(self.rows, other.cols, _mul_parts(self.comps, other.comps, self.field.d), self.field)

    def scale(self, x) -> "Matrix":
        s = as_scalar(x, self.field)
        parts = [_fmpq(p) for p in s.parts[: self.field.degree]]
        if all(p == 0 for p in parts[1:]):
            return Matrix(self.rows, self.cols, [c * parts[0] for c in self.comps], self.field)
        return Matrix(self.rows, self.cols, _mul_parts(parts, self.comps, self.field.d), self.field)

    def __mul__(self, x):
        if isinstance(x, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(x)

    __rmul__ = __mul__

    def __truediv__(self, x):
        return self.scale(as_scalar(x, self.field).inverse())

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise UsageError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                out = out @ base
            k >>= 1
            if k:
                base = base @ base
        return out

    def in_field(self, field: FieldSpec) -> "Matrix":
        """The same matrix over a field containing Q(i), e.g. Q(i) into Q(i)(sqrt d)."""
        if field == self.field:
            return self
        if self.field.d != 0:
            raise UsageError(f"cannot move a matrix over {self.field} into {field}")
        extra = [flint.fmpq_mat(self.rows, self.cols) for _ in range(field.degree - self.field.degree)]
        return Matrix(self.rows, self.cols, list(self.comps) + extra, field)

    def plus_identity(self, x=1) -> "Matrix":
        """self + x*I."""
        return self + Matrix.identity(self.rows, self.field).scale(x)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        out = []
        for idx, c in enumerate(self.comps):
            t = c.transpose()
            out.append(-t if idx % 2 else t)
        return Matrix(self.cols, self.rows, out, self.field)

    conj_transpose = H

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [c.transpose() for c in self.comps], self.field)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        out = []
        for c in self.comps:
            ent = c.entries()
            out.append(flint.fmpq_mat(len(rows), len(cols),
                                      [ent[i * self.cols + j] for i in rows for j in cols]))
        return Matrix(len(rows), len(cols), out, self.field)

    def columns(self, idx: Iterable[int]) -> "Matrix":
        return self.submatrix(range(self.rows), idx)

    # -- real representation -----------------------------------------------
    def real_rep(self) -> flint.fmpq_mat:
        """Rational matrix of the map v -> self @ v in interleaved coordinates.

        Coordinate ``j*k + c`` holds component ``c`` of entry ``j``.  The
        ``k x k`` block in position ``(r, s)`` multiplies by ``self[r, s]``.
        """
        k, d = self.field.degree, self.field.d
        R, C = self.rows, self.cols
        ents = [c.entries() for c in self.comps]
        out = [0] * (R * C * k * k)
        width = C * k
        for r in range(R):
            for s in range(C):
                blk = _mult_block([e[r * C + s] for e in ents], d)
                for a in range(k):
                    base = (r * k + a) * width + s * k
                    out[base: base + k] = blk[a]
        return flint.fmpq_mat(R * k, C * k, out)

    def _int_rows(self) -> list[list[int]]:
        num, _den = self.real_rep().numer_denom()
        return [[int(x) for x in row] for row in num.tolist()]

    def rank(self) -> int:
        """Exact rank by fraction-free elimination on the real representation."""
        if self._rank is None:
            if not self.rows or not self.cols:
                self._rank = 0
            else:
                self._rank = bareiss_rank(self._int_rows()) // self.field.degree
        return self._rank

    def rank_naive(self) -> int:
        return naive_rank(self.tolist(), self.field)

    def _rref(self):
        """(rref of real rep, Q-pivot columns, field pivot columns)."""
        if self._rr is None:
            k = self.field.degree
            rr, rk = self.real_rep().rref()
            pivots = []
            row = 0
            ncol = self.cols * k
            for j in range(ncol):
                if row < rk and rr[row, j] != 0:
                    pivots.append(j)
                    row += 1
            fpiv = [j // k for j in pivots if j % k == 0]
            self._rr = (rr, pivots, fpiv)
            if self._rank is None:
                self._rank = len(fpiv)
        return self._rr

    def pivot_columns(self) -> list[int]:
        """Indices of the leftmost maximal set of independent columns."""
        if not self.rows or not self.cols:
            return []
        return list(self._rref()[2])

    def kernel(self) -> "Matrix":
        """Columns form a basis of the null space (one column per free column)."""
        k = self.field.degree
        n = self.cols
        if not self.rows or not n:
            return Matrix.identity(n, self.field)
        rr, pivots, fpiv = self._rref()
        free = [j for j in range(n) if j not in set(fpiv)]
        # Q-free coordinate (f, 0) gives the field kernel vector with x_f = 1
        cols = []
        for f in free:
            q = f * k
            vec = [0] * (n * k)
            vec[q] = 1
            for row, p in enumerate(pivots):
                vec[p] = -rr[row, q]
            cols.append(vec)
        comps = []
        for c in range(k):
            comps.append(flint.fmpq_mat(n, len(free),
                                        [cols[t][j * k + c] for j in range(n) for t in range(len(free))]))
        return Matrix(n, len(free), comps, self.field)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise SingularMatrixError("inverse of a non-square matrix")
        n, k = self.rows, self.field.degree
        if n == 0:
            return self
        R = self.real_rep()
        try:
            Ri = R.inv()
        except ZeroDivisionError as exc:
            raise SingularMatrixError("matrix is singular") from exc
        ent = Ri.entries()
        width = n * k
        comps = []
        for c in range(k):
            # first column of block (r, s) carries the components of entry (r, s)
            comps.append(flint.fmpq_mat(n, n, [ent[(r * k + c) * width + s * k]
                                               for r in range(n) for s in range(n)]))
        return Matrix(n, n, comps, self.field)

    def is_nonsingular(self) -> bool:
        return self.is_square and self.rank() == self.rows

    # -- serialization -----------------------------------------------------
    def to_text_rows(self) -> list[list[str]]:
        return [[x.to_text() for x in row] for row in self.tolist()]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "field": self.field.d,
                "entries": self.to_text_rows()}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        field = FieldSpec(int(obj["field"]))
        rows, cols = int(obj["rows"]), int(obj["cols"])
        ents = obj["entries"]
        if len(ents) != rows:
            raise UsageError("entries do not match row count")
        return cls.from_rows([[ExactScalar.parse(s, field) for s in r] for r in ents], field, cols=cols)


# ---------------------------------------------------------------------------
# helpers

def _fmpq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    The list is consumed.  Every division is exact, so entries stay integers
    bounded by minors of the input.
    """
    m = len(rows)
    if not m:
        return 0
    n = len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and rows[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        pivrow = rows[r]
        piv = pivrow[c]
        for i in range(r + 1, m):
            row = rows[i]
            a = row[c]
            if a == 0:
                if piv != prev:
                    for j in range(c + 1, n):
                        row[j] = row[j] * piv // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (row[j] * piv - a * pivrow[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r


def naive_rank(entries: list[list[ExactScalar]], field: FieldSpec = QI) -> int:
    """Rank by plain Gauss-Jordan over the field itself (reference oracle)."""
    rows = [list(r) for r in entries]
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def _assemble(grid: list[list[Matrix]]) -> Matrix:
    if not grid or not grid[0]:
        raise UsageError("empty block grid")
    width = len(grid[0])
    if any(len(r) != width for r in grid):
        raise UsageError("ragged block grid")
    field = grid[0][0].field
    heights = [r[0].rows for r in grid]
    widths = [b.cols for b in grid[0]]
    for bi, r in enumerate(grid):
        for bj, b in enumerate(r):
            if b.field != field:
                raise UsageError("blocks from different fields")
            if b.rows != heights[bi] or b.cols != widths[bj]:
                raise UsageError(f"block ({bi},{bj}) has shape {b.shape}, expected "
                                 f"({heights[bi]}, {widths[bj]})")
    R, C = sum(heights), sum(widths)
    comps = []
    for c in range(field.degree):
        out = [0] * (R * C)
        r0 = 0
        for bi, r in enumerate(grid):
            c0 = 0
            for bj, b in enumerate(r):
                if b.rows and b.cols:
                    ent = b.comps[c].entries()
                    for i in range(b.rows):
                        base = (r0 + i) * C + c0
                        out[base: base + b.cols] = ent[i * b.cols:(i + 1) * b.cols]
                c0 += widths[bj]
            r0 += heights[bi]
        comps.append(flint.fmpq_mat(R, C, out))
    return Matrix(R, C, comps, field)


def block(grid) -> Matrix:
    """Assemble a block matrix from a 2D list of matrices."""
    return _assemble([list(r) for r in grid])


def hstack(*mats: Matrix) -> Matrix:
    return _assemble([list(mats)])


def vstack(*mats: Matrix) -> Matrix:
    return _assemble([[m] for m in mats])


def _same_rows(M: Matrix, N: Matrix):
    if M.rows != N.rows:
        raise UsageError(f"row counts differ: {M.rows} vs {N.rows}")


def range_intersection_dim(M: Matrix, N: Matrix) -> int:
    """dim(R(M) ∩ R(N)) = r(M) + r(N) - r[M, N]."""
    _same_rows(M, N)
    return M.rank() + N.rank() - hstack(M, N).rank()


def range_intersection_basis(M: Matrix, N: Matrix) -> Matrix:
    """Columns spanning R(M) ∩ R(N), built from the kernel of [M, -N]."""
    _same_rows(M, N)
    K = hstack(M, -N).kernel()
    X = K.submatrix(range(M.cols), range(K.cols))
    W = M @ X
    if not W.cols:
        return W
    return W.columns(W.pivot_columns())


def range_contained(M: Matrix, N: Matrix) -> bool:
    """R(M) ⊆ R(N)."""
    _same_rows(M, N)
    return hstack(N, M).rank() == N.rank()


def range_equal(M: Matrix, N: Matrix) -> bool:
    _same_rows(M, N)
    r = hstack(M, N).rank()
    return r == M.rank() == N.rank()


def nullspace_equal(M: Matrix, N: Matrix) -> bool:
    """N(M) = N(N), via row spaces: r(M) = r(N) = r[M; N]."""
    if M.cols != N.cols:
        raise UsageError(f"column counts differ: {M.cols} vs {N.cols}")
    r = vstack(M, N).rank()
    return r == M.rank() == N.rank()


def solve_linear_matrix_system(constraints, unknowns, rng, field: FieldSpec = QI, spread: int = 2):
    """Random solution of a linear system in matrix unknowns.

    ``constraints`` is a list of ``(terms, S)`` where ``terms`` is a list of
    ``(u, L, R)`` meaning ``L @ X_u @ R``; each constraint asserts that the sum
    of its terms equals ``S``.  ``unknowns`` lists the shapes of ``X_u``.

    Returns a particular solution plus a random combination (Gaussian integer
    coefficients in ``[-spread, spread]``) of a kernel basis of the vectorized
    system.  Raises :class:`NoSolutionError` if inconsistent.
    """
    offsets = []
    total = 0
    for (r, c) in unknowns:
        offsets.append(total)
        total += r * c
    # vec is row-major: X[i, j] -> i*c + j; vec(L X R)[a, b] = sum L[a,i] X[i,j] R[j,b]
    rows_K = []
    rhs = []
    zero = ExactScalar.zero(field)
    for terms, S in constraints:
        nr, nc = S.shape
        block_rows = [[zero] * total for _ in range(nr * nc)]
        for (u, L, R) in terms:
            r_u, c_u = unknowns[u]
            if L.cols != r_u or R.rows != c_u or L.rows != nr or R.cols != nc:
                raise UsageError("constraint term has incompatible shape")
            Ll, Rl = L.tolist(), R.tolist()
            for a in range(nr):
                for b in range(nc):
                    row = block_rows[a * nc + b]
                    for i in range(r_u):
                        lai = Ll[a][i]
                        if lai.is_zero():
                            continue
                        for j in range(c_u):
                            rjb = Rl[j][b]
                            if not rjb.is_zero():
                                idx = offsets[u] + i * c_u + j
                                row[idx] = row[idx] + lai * rjb
        rows_K.extend(block_rows)
        Sl = S.tolist()
        rhs.extend(Sl[a][b] for a in range(nr) for b in range(nc))
    if not rows_K:
        K = Matrix.zeros(0, total, field)
        particular = Matrix.zeros(total, 1, field)
        basis = Matrix.identity(total, field)
    else:
        K = Matrix.from_rows(rows_K, field, cols=total)
        aug = hstack(K, Matrix.column(rhs, field))
        if aug.rank() != K.rank():
            raise NoSolutionError("linear matrix system is inconsistent")
        particular = _particular_solution(aug)
        basis = K.kernel()
    x = particular
    if basis.cols:
        coeffs = Matrix.column([_gauss_int(rng, spread, field) for _ in range(basis.cols)], field)
        x = x + basis @ coeffs
    out = []
    for u, (r, c) in enumerate(unknowns):
        vals = [x[offsets[u] + t, 0] for t in range(r * c)]
        out.append(Matrix.from_rows([vals[i * c:(i + 1) * c] for i in range(r)], field, cols=c))
    return out


def _particular_solution(aug: Matrix) -> Matrix:
    """Solution of K x = s with free variables zero, from the rref of [K | s]."""
    k = aug.field.degree
    n = aug.cols - 1
    rr, pivots, _ = aug._rref()
    vec = [0] * (n * k)
    rhs_col = n * k
    for row, p in enumerate(pivots):
        if p >= rhs_col:
            raise NoSolutionError("linear matrix system is inconsistent")
        vec[p] = rr[row, rhs_col]
    comps = [flint.fmpq_mat(n, 1, [vec[j * k + c] for j in range(n)]) for c in range(k)]
    return Matrix(n, 1, comps, aug.field)


def _gauss_int(rng, spread: int, field: FieldSpec) -> ExactScalar:
    a, b = (int(v) for v in rng.integers(-spread, spread + 1, size=2))
    return ExactScalar(a, b, 0, 0, field)
