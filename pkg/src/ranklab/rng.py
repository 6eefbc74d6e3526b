"""Seeded randomness: splittable streams and small random matrices."""
from __future__ import annotations

import zlib

import numpy as np

from .matrix import Matrix
from .scalar import QI, ExactScalar, FieldSpec

MAX_TRIES = 64


def _word(key) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode())
    return int(key) & 0xFFFFFFFFFFFFFFFF


def make_rng(seed: int, *keys) -> np.random.Generator:
    """Independent generator for the stream named by ``keys`` under ``seed``.

    Keys may be ints or strings; the same (seed, keys) always yields the same
    stream regardless of what else was drawn before.
    """
    words = [_word(seed)] + [_word(k) for k in keys]
    return np.random.default_rng(np.random.SeedSequence(words))


def gauss_int(rng, spread: int, field: FieldSpec = QI) -> ExactScalar:
    a, b = (int(v) for v in rng.integers(-spread, spread + 1, size=2))
    return ExactScalar(a, b, 0, 0, field)


def gauss_int_matrix(rng, rows: int, cols: int, spread: int = 3, field: FieldSpec = QI) -> Matrix:
    vals = rng.integers(-spread, spread + 1, size=(2, rows, cols))
    data = [[ExactScalar(int(vals[0, i, j]), int(vals[1, i, j]), 0, 0, field) for j in range(cols)]
            for i in range(rows)]
    return Matrix.from_rows(data, field, cols=cols)


def random_nonsingular(rng, n: int, spread: int = 3, field: FieldSpec = QI) -> Matrix:
    """Rejection-sampled nonsingular matrix with Gaussian-integer entries.

    After ``MAX_TRIES`` rejections the entry range is doubled.
    """
    while True:
        for _ in range(MAX_TRIES):
            P = gauss_int_matrix(rng, n, n, spread, field)
            if P.rank() == n:
                return P
        spread *= 2


def random_full_column_rank(rng, rows: int, cols: int, spread: int = 3, field: FieldSpec = QI) -> Matrix:
    while True:
        for _ in range(MAX_TRIES):
            B = gauss_int_matrix(rng, rows, cols, spread, field)
            if B.rank() == cols:
                return B
        spread *= 2


def random_rank_matrix(rng, rows: int, cols: int, r: int, spread: int = 2, field: FieldSpec = QI) -> Matrix:
    """rows x cols matrix of rank exactly r, as a product of full-rank factors."""
    if r == 0:
        return Matrix.zeros(rows, cols, field)
    L = random_full_column_rank(rng, rows, r, spread, field)
    R = random_full_column_rank(rng, cols, r, spread, field).T
    return L @ R


def small_rational(rng, exclude=(), nonzero: bool = True) -> int | object:
    """A small rational p/q (|p| <= 5, 1 <= q <= 3) avoiding ``exclude``."""
    from fractions import Fraction

    while True:
        p = int(rng.integers(-5, 6))
        q = int(rng.integers(1, 4))
        x = Fraction(p, q)
        if nonzero and x == 0:
            continue
        if x in exclude:
            continue
        return x
