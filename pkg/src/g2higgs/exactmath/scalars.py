"""Exact scalars: rationals (``fractions.Fraction``) and quadratic extensions.

Rationals are plain :class:`fractions.Fraction` values; they already keep
``den > 0`` and ``gcd(|num|, den) == 1`` with zero stored as ``0/1``.

:class:`QuadraticNumber` is ``a + b*sqrt(d)`` with rational ``a, b`` and a
fixed non-square integer ``d``.  ``d == -1`` is the Gaussian rationals.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ValueError:
            raise PreconditionError(f"not a rational number: {value!r}") from None
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Canonical ``num/den`` text, always with an explicit denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_float(x: float | complex) -> str:
    """17 significant digits; complex values as ``re+imj``."""
    if isinstance(x, complex):
        if x.imag == 0:
            return format(x.real, ".17g")
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return format(float(x), ".17g")


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QuadraticNumber:
    """Element ``a + b*sqrt(d)`` of the field Q(sqrt(d)).

    Mixing with ints and Fractions is supported.  Mixing two different
    radicands raises ``ValueError``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not isinstance(d, int) or d in (0, 1):
            raise ValueError(f"bad radicand {d!r}")
        if d > 0 and math.isqrt(d) ** 2 == d:
            raise ValueError(f"radicand {d} is a perfect square")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def sqrt(cls, q) -> "Fraction | QuadraticNumber":
        """Exact square root of a rational, in Q or a quadratic extension.

        Negative squares land in the Gaussian field (d = -1); anything else
        uses ``d = num*den`` stripped of its square part found by trial
        division up to a small bound (the field is the same either way).
        """
        q = Fraction(q)
        root = rational_sqrt(q)
        if root is not None:
            return root
        neg = rational_sqrt(-q)
        if neg is not None:
            return cls(0, neg, -1)
        # sqrt(n/m) = sqrt(n*m)/m
        radicand = q.numerator * q.denominator
        scale = Fraction(1, q.denominator)
        k = 2
        while k * k <= abs(radicand) and k < 1000:
            while radicand % (k * k) == 0:
                radicand //= k * k
                scale *= k
            k += 1
        return cls(0, scale, radicand)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = o.conjugate()
        return QuadraticNumber((self * c).a / n, (self * c).b / n, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadraticNumber(1, 0, self.d)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b) == (other.a, other.b) and (
                self.d == other.d or self.b == 0
            )
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        root = complex(self.d) ** 0.5
        return float(self.a) + float(self.b) * root

    def __str__(self):
        unit = "i" if self.d == -1 else f"sqrt({self.d})"
        if self.b == 0:
            return format_rational(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{format_rational(self.a)}{sign}{format_rational(abs(self.b))}*{unit}"

    def __repr__(self):
        return f"QuadraticNumber({self.a!s}, {self.b!s}, {self.d})"


def format_scalar(x) -> str:
    """Exact text for Fraction/int/QuadraticNumber, 17 digits for floats."""
    if isinstance(x, QuadraticNumber):
        return str(x)
    if isinstance(x, (int, Fraction)):
        return format_rational(Fraction(x))
    return format_float(x)


_QUAD = re.compile(r"^\s*(?P<a>-?\d+(?:/\d+)?)\s*(?P<sign>[+-])\s*(?P<b>\d+(?:/\d+)?)\*(?:i|sqrt\((?P<d>-?\d+)\))\s*$")


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar` on exact values."""
    m = _QUAD.match(text)
    if m is None:
        return as_rational(text)
    b = Fraction(m["b"]) * (-1 if m["sign"] == "-" else 1)
    d = int(m["d"]) if m["d"] is not None else -1
    return QuadraticNumber(Fraction(m["a"]), b, d)
