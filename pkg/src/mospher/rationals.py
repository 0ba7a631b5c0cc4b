"""Exact scalar arithmetic: rationals, Gaussian rationals, and combinatorial primitives.

Every coefficient in this package is ultimately a Gaussian rational
(a + b*i with a, b in Q).  Floats appear only at evaluation and
quadrature boundaries, and the conversion is one-way.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

# Rationals are plain stdlib fractions: always reduced, denominator > 0.
Rational = Fraction


def rational_to_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", omitting "/q" when q == 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient; 0 when k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def pochhammer(a, m: int) -> Fraction:
    """Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1."""
    if m < 0:
        raise ValueError("pochhammer needs m >= 0")
    result = Fraction(1)
    a = Fraction(a)
    for i in range(m):
        result *= a + i
    return result


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class CRat:
    """A Gaussian rational re + im*i with exact field arithmetic.

    Immutable and hashable; arithmetic accepts int and Fraction operands.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("CRat is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def coerce(x) -> "CRat":
        if isinstance(x, CRat):
            return x
        return CRat(_as_fraction(x))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = CRat.coerce(other)
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = CRat.coerce(other)
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return CRat.coerce(other) - self

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __mul__(self, other):
        other = CRat.coerce(other)
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "CRat":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero CRat")
        return CRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * CRat.coerce(other).inverse()

    def __rtruediv__(self, other):
        return CRat.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "CRat":
        return CRat(self.re, -self.im)

    # -- comparisons & misc --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = CRat.coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"CRat({rational_to_str(self.re)})"
        return f"CRat({rational_to_str(self.re)}, {rational_to_str(self.im)})"

    def to_json(self) -> dict:
        return {"re": rational_to_str(self.re), "im": rational_to_str(self.im)}

    @staticmethod
    def from_json(d: dict) -> "CRat":
        return CRat(Fraction(d["re"]), Fraction(d["im"]))


ZERO = CRat(0)
ONE = CRat(1)
I = CRat(0, 1)
