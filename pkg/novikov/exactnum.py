"""
Exact Numbers
=============
Gaussian rationals Q(i), the scalar field for every computation.

  - ``Scalar`` wraps an element of sympy's ``QQ_I`` domain; the rational
    parts come back as ``fractions.Fraction`` in lowest terms.
  - ``Scalar`` is immutable and hashable; equality is structural on the
    canonical (re, im) pair.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from sympy.polys.domains import QQ, QQ_I

from novikov.errors import DivisionByZero

Rational = Fraction
ScalarLike = Union["Scalar", Fraction, int]


def _qq(value: Fraction | int):
    q = Fraction(value)
    return QQ(int(q.numerator), int(q.denominator))


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class Scalar:
    """re + im·i with rational re, im."""

    __slots__ = ("rep",)

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0):
        object.__setattr__(self, "rep", QQ_I(_qq(re), _qq(im)))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _wrap(cls, rep) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "rep", rep)
        return s

    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            from novikov.symring import parse_scalar
            return parse_scalar(value)
        if isinstance(value, QQ_I.dtype):
            return cls._wrap(value)
        return cls(Fraction(value))

    @property
    def re(self) -> Fraction:
        return _fraction(self.rep.x)

    @property
    def im(self) -> Fraction:
        return _fraction(self.rep.y)

    # ── Field operations ──────────────────────

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._wrap(self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._wrap(self.rep - other.rep)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return _coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._wrap(self.rep * other.rep)

    __rmul__ = __mul__

    def __neg__(self) -> "Scalar":
        return Scalar._wrap(-self.rep)

    def inv(self) -> "Scalar":
        if not self.rep:
            raise DivisionByZero("inverse of zero scalar")
        return Scalar._wrap(QQ_I.one / self.rep)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return _coerce(other) * self.inv()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inv() ** (-k)
        return Scalar._wrap(self.rep ** k)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.rep == other.rep

    def __hash__(self) -> int:
        if not self.rep.y:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    # ── Helpers ───────────────────────────────

    @property
    def is_real(self) -> bool:
        return not self.rep.y

    def conjugate(self) -> "Scalar":
        return Scalar._wrap(self.rep.conjugate())

    def sqrt(self) -> "Scalar | None":
        """A square root inside Q(i), or None if there is none."""
        if not self:
            return ZERO
        re, im = self.rep.x, self.rep.y
        if not im:
            root = QQ.exsqrt(abs(re))
            if root is None:
                return None
            return Scalar._wrap(QQ_I(root, 0) if re > 0 else QQ_I(0, root))
        modulus = QQ.exsqrt(re * re + im * im)
        if modulus is None:
            return None
        x = QQ.exsqrt((re + modulus) / 2)
        if not x:
            return None
        return Scalar._wrap(QQ_I(x, im / (2 * x)))

    def sort_key(self) -> tuple:
        return (self.re, self.im)

    def __str__(self) -> str:
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if im == 1:
            imag = "i"
        elif im == -1:
            imag = "-i"
        else:
            imag = f"{im}*i"
        if re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


ZERO = Scalar(0)
ONE  = Scalar(1)
I    = Scalar(0, 1)
