"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from ranklab import ExactScalar, FieldSpec, Matrix
from ranklab.rng import make_rng

small = st.fractions(min_value=-4, max_value=4, max_denominator=4)
fields = st.sampled_from([FieldSpec(0), FieldSpec(2), FieldSpec(5)])


@st.composite
def scalars(draw, field=None):
    f = field if field is not None else draw(fields)
    if f.d == 0:
        return ExactScalar(draw(small), draw(small), field=f)
    return ExactScalar(draw(small), draw(small), draw(small), draw(small), field=f)


@st.composite
def matrices(draw, max_dim=4, field=None, square=False):
    f = field if field is not None else FieldSpec(0)
    rows = draw(st.integers(1, max_dim))
    cols = rows if square else draw(st.integers(1, max_dim))
    vals = [[draw(scalars(f)) for _ in range(cols)] for _ in range(rows)]
    return Matrix.from_rows(vals, f, cols=cols)


seeds = st.integers(0, 2**32 - 1)


def rng_for(seed, *keys):
    return make_rng(seed, "test", *keys)


def frac(x):
    return Fraction(x)
