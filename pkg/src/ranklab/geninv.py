"""Moore-Penrose, {1}-type, Drazin and group inverses."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotGroupInvertibleError, UsageError
from .matrix import Matrix, solve_linear_matrix_system
from .rng import gauss_int_matrix

__all__ = [
    "GenInverseSample",
    "ProjectorTriple",
    "moore_penrose",
    "moore_penrose_by_solving",
    "projector_triple",
    "P_",
    "E_",
    "F_",
    "sample_gen_inverse",
    "gen_inverse_from",
    "matrix_index",
    "drazin",
    "group_inverse",
    "penrose_residuals",
]

_MP_CACHE: dict = {}
_MP_CACHE_MAX = 4096


def moore_penrose(A: Matrix) -> Matrix:
    """A† by full-rank factorization A = F G.

    F holds the pivot columns of A and G = (F*F)^-1 F* A, so
    A† = G*(G G*)^-1 (F*F)^-1 F*.
    """
    key = A.key()
    hit = _MP_CACHE.get(key)
    if hit is not None:
        return hit
    piv = A.pivot_columns()
    if not piv:
        X = Matrix.zeros(A.cols, A.rows, A.field)
    else:
        F = A.columns(piv)
        Fh = F.H
        FhF_inv = (Fh @ F).inverse()
        G = FhF_inv @ Fh @ A
        Gh = G.H
        X = Gh @ (G @ Gh).inverse() @ FhF_inv @ Fh
    if len(_MP_CACHE) >= _MP_CACHE_MAX:
        _MP_CACHE.clear()
    _MP_CACHE[key] = X
    return X


def moore_penrose_by_solving(A: Matrix, rng) -> Matrix:
    """A† by a second route: X = A* Z A* with A A* Z A* A = A.

    Any solution Z gives the same X, because the only {1}-inverse whose
    range lies in R(A*) and whose row space lies in R(A) is A†.  Z is drawn
    at random from the solution set, which makes this a useful cross-check.
    """
    Ah = A.H
    (Z,) = solve_linear_matrix_system([([(0, A @ Ah, Ah @ A)], A)], [(A.rows, A.cols)], rng, A.field)
    return Ah @ Z @ Ah


def penrose_residuals(A: Matrix, X: Matrix) -> dict:
    """Which of the four Penrose equations hold for (A, X)."""
    AX, XA = A @ X, X @ A
    return {
        1: AX @ A == A,
        2: XA @ X == X,
        3: AX.H == AX,
        4: XA.H == XA,
    }


@dataclass(frozen=True)
class ProjectorTriple:
    P: Matrix
    E: Matrix
    F: Matrix


def P_(A: Matrix) -> Matrix:
    """P_A = A A†."""
    return A @ moore_penrose(A)


def E_(A: Matrix) -> Matrix:
    """E_A = I - A A†."""
    return Matrix.identity(A.rows, A.field) - P_(A)


def F_(A: Matrix) -> Matrix:
    """F_A = I - A† A."""
    return Matrix.identity(A.cols, A.field) - moore_penrose(A) @ A


def projector_triple(A: Matrix) -> ProjectorTriple:
    X = moore_penrose(A)
    P = A @ X
    return ProjectorTriple(P, Matrix.identity(A.rows, A.field) - P,
                           Matrix.identity(A.cols, A.field) - X @ A)


@dataclass(frozen=True)
class GenInverseSample:
    base: Matrix
    inverse: Matrix
    U: Matrix
    V: Matrix


def gen_inverse_from(A: Matrix, U: Matrix, V: Matrix) -> Matrix:
    """A† + F_A U + V E_A."""
    return moore_penrose(A) + F_(A) @ U + V @ E_(A)


_CLASSES = {"1": (True, True), "13": (True, False), "14": (False, True)}


def sample_gen_inverse(A: Matrix, cls: str = "1", rng=None, spread: int = 2) -> GenInverseSample:
    """Random member of A{1}, A{1,3} or A{1,4} (``cls`` in "1", "13", "14").

    U and V have Gaussian-integer entries with components in [-spread, spread].
    A{1,3} uses V = 0 and A{1,4} uses U = 0.
    """
    cls = cls.replace("{", "").replace("}", "").replace(",", "")
    if cls not in _CLASSES:
        raise UsageError(f"unknown generalized-inverse class {cls!r}")
    use_u, use_v = _CLASSES[cls]
    n, m = A.cols, A.rows
    U = gauss_int_matrix(rng, n, m, spread, A.field) if use_u else Matrix.zeros(n, m, A.field)
    V = gauss_int_matrix(rng, n, m, spread, A.field) if use_v else Matrix.zeros(n, m, A.field)
    return GenInverseSample(A, gen_inverse_from(A, U, V), U, V)


def matrix_index(M: Matrix) -> int:
    """Smallest t >= 0 with r(M^t) = r(M^(t+1))."""
    if not M.is_square:
        raise UsageError("index of a non-square matrix")
    prev = M.rows
    power = M
    t = 0
    while True:
        r = power.rank()
        if r == prev:
            return t
        prev = r
        power = power @ M
        t += 1


def drazin(M: Matrix, l: int | None = None) -> Matrix:
    """M^D = M^l (M^(2l+1))† M^l for any l >= index(M); l defaults to the index."""
    t = matrix_index(M)
    if l is None:
        l = t
    elif l < t:
        raise UsageError(f"l = {l} is below the index {t}")
    Ml = M ** l
    return Ml @ moore_penrose(M ** (2 * l + 1)) @ Ml


def group_inverse(M: Matrix) -> Matrix:
    if matrix_index(M) > 1:
        raise NotGroupInvertibleError("index is at least 2; no group inverse")
    return drazin(M)
