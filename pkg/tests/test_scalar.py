from fractions import Fraction

import pytest
from hypothesis import given

from ranklab import ExactScalar, FieldSpec, UsageError
from strategies import scalars

F5 = FieldSpec(5)


def test_gaussian_product():
    assert ExactScalar(1, 1) * ExactScalar(1, -1) == 2


def test_reciprocal_in_sqrt5():
    x = ExactScalar(2, 0, 1, 0, F5)
    y = 1 / x
    assert y == ExactScalar(-2, 0, 1, 0, F5)
    assert x * y == 1


def test_conjugate_examples():
    assert ExactScalar(3, 2).conjugate() == ExactScalar(3, -2)
    # i * sqrt 5
    assert ExactScalar(0, 0, 0, 1, F5).conjugate() == ExactScalar(0, 0, 0, -1, F5)


def test_lowest_terms():
    x = ExactScalar(Fraction(4, -6))
    assert x.a_re.numerator == -2 and x.a_re.denominator == 3


def test_field_validation():
    with pytest.raises(UsageError):
        FieldSpec(4)
    with pytest.raises(UsageError):
        ExactScalar(0, 0, 1, 0, FieldSpec(0))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ExactScalar(1) / ExactScalar(0)


def test_mixed_fields_rejected():
    with pytest.raises(UsageError):
        ExactScalar(1, field=F5) + ExactScalar(1, field=FieldSpec(2))


def test_text_roundtrip():
    x = ExactScalar(Fraction(1, 2), -3, 2, Fraction(-1, 7), F5)
    assert ExactScalar.parse(x.to_text(), F5) == x


@given(scalars())
def test_additive_identity_and_involution(x):
    assert x + 0 == x
    assert x.conjugate().conjugate() == x


@given(scalars(field=F5), scalars(field=F5), scalars(field=F5))
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x


@given(scalars(field=F5), scalars(field=F5))
def test_conjugate_is_multiplicative(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
