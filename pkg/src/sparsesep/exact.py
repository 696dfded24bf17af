"""Exact complex scalars with rational real and imaginary parts."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class ExactComplex:
    """A Gaussian rational ``re + i*im`` with exact equality.

    Instances are immutable and hashable. Arithmetic with ``int`` and
    ``Fraction`` operands is supported; floats are rejected so that no
    rounding can leak into a decision.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @classmethod
    def coerce(cls, value) -> ExactComplex:
        """Convert ``int``, ``Fraction``, a numeric string or an ExactComplex."""
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, tuple) and len(value) == 2:
            return cls(value[0], value[1])
        return cls(value, 0)

    def __repr__(self):
        return f"ExactComplex({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __eq__(self, other):
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return ExactComplex(a * c, 0)
        return ExactComplex(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by exact zero")
        c, d = other.re, other.im
        if d == 0:
            return ExactComplex(self.re / c, self.im / c)
        den = c * c + d * d
        a, b = self.re, self.im
        return ExactComplex((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other / self

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __reduce__(self):
        return (ExactComplex, (self.re, self.im))


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _operand(x):
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, Rational) and not isinstance(x, bool):
        return ExactComplex(x, 0)
    return None


ZERO = ExactComplex(0)
ONE = ExactComplex(1)
