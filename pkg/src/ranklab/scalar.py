"""Exact scalars in Q(i)(sqrt d).

A value is stored as four rationals ``(a_re, a_im, b_re, b_im)`` meaning
``(a_re + a_im*i) + (b_re + b_im*i)*sqrt(d)``.  Only one radicand is ever
in play, so there is no need for a general number-field implementation.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ArithmeticFault, UsageError

__all__ = ["FieldSpec", "ExactScalar", "QI", "as_scalar", "is_squarefree"]


def is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field Q(i)(sqrt d); ``d == 0`` means plain Q(i)."""

    d: int = 0

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise UsageError(f"radicand must be an int, got {self.d!r}")
        if self.d != 0 and not is_squarefree(self.d):
            raise UsageError(f"radicand {self.d} must be 0 or a squarefree integer >= 2")

    @property
    def degree(self) -> int:
        """Dimension over Q."""
        return 2 if self.d == 0 else 4

    def __str__(self):
        return "Q(i)" if self.d == 0 else f"Q(i)(sqrt {self.d})"


QI = FieldSpec(0)

Number = Union[int, Fraction, "ExactScalar"]


class ExactScalar:
    __slots__ = ("a_re", "a_im", "b_re", "b_im", "field")

    def __init__(self, a_re=0, a_im=0, b_re=0, b_im=0, field: FieldSpec = QI):
        a_re, a_im, b_re, b_im = (Fraction(v) for v in (a_re, a_im, b_re, b_im))
        if field.d == 0 and (b_re or b_im):
            raise UsageError("sqrt component given for a field without radicand")
        object.__setattr__(self, "a_re", a_re)
        object.__setattr__(self, "a_im", a_im)
        object.__setattr__(self, "b_re", b_re)
        object.__setattr__(self, "b_im", b_im)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec = QI) -> "ExactScalar":
        return cls(0, 0, 0, 0, field)

    @classmethod
    def one(cls, field: FieldSpec = QI) -> "ExactScalar":
        return cls(1, 0, 0, 0, field)

    @classmethod
    def i(cls, field: FieldSpec = QI) -> "ExactScalar":
        return cls(0, 1, 0, 0, field)

    @classmethod
    def sqrt(cls, field: FieldSpec) -> "ExactScalar":
        """The element sqrt(d) of ``field``."""
        if field.d == 0:
            raise UsageError("Q(i) has no adjoined square root")
        return cls(0, 0, 1, 0, field)

    @classmethod
    def sqrt_of(cls, n: int, field: FieldSpec) -> "ExactScalar":
        """sqrt(n) for a nonnegative integer n, when it lives in ``field``."""
        if n < 0:
            raise UsageError("only real square roots are supported")
        r = math.isqrt(n)
        if r * r == n:
            return cls(r, 0, 0, 0, field)
        # n = s^2 * d' with d' squarefree; need d' == field.d
        s, core = 1, n
        p = 2
        while p * p <= core:
            while core % (p * p) == 0:
                core //= p * p
                s *= p
            p += 1
        if core != field.d:
            raise UsageError(f"sqrt({n}) needs radicand {core}, field has {field.d}")
        return cls(0, 0, s, 0, field)

    @property
    def parts(self):
        return (self.a_re, self.a_im, self.b_re, self.b_im)

    def is_zero(self) -> bool:
        return not (self.a_re or self.a_im or self.b_re or self.b_im)

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            if other.field != self.field:
                raise UsageError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ExactScalar(other, 0, 0, 0, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.a_re + o.a_re, self.a_im + o.a_im,
                           self.b_re + o.b_re, self.b_im + o.b_im, self.field)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a_re, -self.a_im, -self.b_re, -self.b_im, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.d
        # (p1 + q1 s)(p2 + q2 s) = p1 p2 + d q1 q2 + (p1 q2 + q1 p2) s
        ar, ai, br, bi = self.parts
        cr, ci, er, ei = o.parts
        re = ar * cr - ai * ci + d * (br * er - bi * ei)
        im = ar * ci + ai * cr + d * (br * ei + bi * er)
        sre = ar * er - ai * ei + br * cr - bi * ci
        sim = ar * ei + ai * er + br * ci + bi * cr
        return ExactScalar(re, im, sre, sim, self.field)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        """Complex conjugate; sqrt(d) is real so it is left alone."""
        return ExactScalar(self.a_re, -self.a_im, self.b_re, -self.b_im, self.field)

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ArithmeticFault("division by zero")
        d = self.field.d
        ar, ai, br, bi = self.parts
        # (a + b s)^-1 = (a - b s) / (a^2 - d b^2), a and b complex
        nr = ar * ar - ai * ai - d * (br * br - bi * bi)
        ni = 2 * ar * ai - 2 * d * br * bi
        # 1/(nr + ni i) = (nr - ni i)/(nr^2 + ni^2)
        den = nr * nr + ni * ni
        wr, wi = nr / den, -ni / den
        # (ar + ai i - (br + bi i) s) * (wr + wi i)
        return ExactScalar(ar * wr - ai * wi, ar * wi + ai * wr,
                           -(br * wr - bi * wi), -(br * wi + bi * wr), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.parts == (Fraction(other), 0, 0, 0)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.field == other.field and self.parts == other.parts

    def __hash__(self):
        return hash((self.parts, self.field.d))

    # -- text form ---------------------------------------------------------
    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ExactScalar({self.to_text()!r}, d={self.field.d})"

    def to_text(self) -> str:
        """Canonical text: ``p/q``, ``p/q+r/s*i`` and an optional ``+(u/v+w/x*i)*sqrt(d)``.

        The rational part is always printed.  The imaginary term appears only
        when nonzero.  The radical term prints ``+u/v*sqrt(d)`` when its
        coefficient is real, ``+u/v*i*sqrt(d)`` when purely imaginary and
        ``+(u/v+w/x*i)*sqrt(d)`` otherwise.
        """
        out = _q(self.a_re)
        if self.a_im:
            out += _signed(self.a_im) + "*i"
        if self.b_re or self.b_im:
            tail = f"*sqrt({self.field.d})"
            if self.b_re and self.b_im:
                out += "+(" + _q(self.b_re) + _signed(self.b_im) + "*i)" + tail
            elif self.b_re:
                out += _signed(self.b_re) + tail
            else:
                out += _signed(self.b_im) + "*i" + tail
        return out

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QI) -> "ExactScalar":
        """Inverse of :meth:`to_text`.  Also accepts plain integers and terms in any order."""
        s = text.replace(" ", "")
        if not s:
            raise UsageError("empty scalar text")
        parts = [Fraction(0)] * 4
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise UsageError(f"cannot parse scalar {text!r}")
            pos = m.end()
            sign = -1 if m.group("sign") == "-" else 1
            if m.group("group") is not None:
                inner = cls.parse(m.group("group"), QI)
                coeff = [sign * inner.a_re, sign * inner.a_im]
                radical = True
                rad = m.group("grad")
            else:
                num = Fraction(m.group("num"))
                coeff = [sign * num, Fraction(0)]
                if m.group("imag"):
                    coeff = [Fraction(0), sign * num]
                radical = m.group("rad") is not None
                rad = m.group("rad")
            if radical:
                if int(rad) != field.d or field.d == 0:
                    raise UsageError(f"sqrt({rad}) does not belong to {field}")
                parts[2] += coeff[0]
                parts[3] += coeff[1]
            else:
                parts[0] += coeff[0]
                parts[1] += coeff[1]
        return cls(*parts, field=field)


_TERM = re.compile(
    r"(?P<sign>[+-]?)(?:"
    r"\((?P<group>[^()]*)\)\*sqrt\((?P<grad>\d+)\)"
    r"|(?P<num>\d+(?:/\d+)?)(?P<imag>\*i)?(?:\*sqrt\((?P<rad>\d+)\))?"
    r")"
)


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _signed(x: Fraction) -> str:
    return ("-" if x < 0 else "+") + _q(abs(x))


def as_scalar(x, field: FieldSpec = QI) -> ExactScalar:
    if isinstance(x, ExactScalar):
        if x.field != field:
            raise UsageError(f"field mismatch: {x.field} vs {field}")
        return x
    if isinstance(x, complex):
        raise UsageError("floating complex values are not exact")
    if isinstance(x, str):
        return ExactScalar.parse(x, field)
    return ExactScalar(x, 0, 0, 0, field)
