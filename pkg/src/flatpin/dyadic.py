"""Exact scalars of the form (a + b*sqrt(2)) / 2**e."""

from __future__ import annotations

from fractions import Fraction


class RootTwoDyadic:
    """An element of Z[sqrt(2), 1/2] with a unique normalized representation.

    The stored triple satisfies ``e == 0`` or ``a`` odd or ``b`` odd, so two
    values are equal exactly when their fields are equal.
    """

    __slots__ = ("a", "b", "e")

    def __init__(self, a: int = 0, b: int = 0, e: int = 0):
        if e < 0:
            a <<= -e
            b <<= -e
            e = 0
        if a == 0 and b == 0:
            e = 0
        while e > 0 and not (a & 1) and not (b & 1):
            a >>= 1
            b >>= 1
            e -= 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "e", e)

    def __setattr__(self, name, value):
        raise AttributeError("RootTwoDyadic is immutable")

    @classmethod
    def coerce(cls, x) -> "RootTwoDyadic":
        if isinstance(x, RootTwoDyadic):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            den = x.denominator
            e = den.bit_length() - 1
            if den != 1 << e:
                raise ValueError(f"denominator of {x} is not a power of two")
            return cls(x.numerator, 0, e)
        raise TypeError(f"cannot convert {type(x).__name__} to RootTwoDyadic")

    @classmethod
    def sqrt2_over_2(cls) -> "RootTwoDyadic":
        return cls(0, 1, 1)

    def _align(self, other: "RootTwoDyadic"):
        e = max(self.e, other.e)
        s = e - self.e
        t = e - other.e
        return self.a << s, self.b << s, other.a << t, other.b << t, e

    def __add__(self, other):
        try:
            other = RootTwoDyadic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d, e = self._align(other)
        return RootTwoDyadic(a + c, b + d, e)

    __radd__ = __add__

    def __neg__(self):
        return RootTwoDyadic(-self.a, -self.b, self.e)

    def __sub__(self, other):
        try:
            other = RootTwoDyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RootTwoDyadic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        return RootTwoDyadic(a * c + 2 * b * d, a * d + b * c, self.e + other.e)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = RootTwoDyadic.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.a, self.b, self.e) == (other.a, other.b, other.e)

    def __hash__(self):
        return hash((self.a, self.b, self.e))

    def __bool__(self):
        return bool(self.a or self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, 1 << self.e)

    def square_is(self, value: int) -> bool:
        return self * self == value

    def __repr__(self):
        return f"RootTwoDyadic({self.a}, {self.b}, {self.e})"

    def __str__(self):
        den = 1 << self.e

        def part(coef: int, radical: bool) -> str:
            body = str(abs(coef)) if not radical else (
                "sqrt(2)" if abs(coef) == 1 else f"{abs(coef)}*sqrt(2)")
            return body if den == 1 else f"{body}/{den}"

        pieces = []
        if self.a:
            pieces.append(("-" if self.a < 0 else "", part(self.a, False)))
        if self.b:
            pieces.append(("-" if self.b < 0 else "", part(self.b, True)))
        if not pieces:
            return "0"
        out = pieces[0][0] + pieces[0][1]
        for sign, body in pieces[1:]:
            out += (" - " if sign else " + ") + body
        return out


ZERO = RootTwoDyadic(0)
ONE = RootTwoDyadic(1)
