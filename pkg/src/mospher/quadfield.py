"""Exact arithmetic in a real quadratic extension Q(sqrt(d)).

Used for the irrational roots of the sphere cases' indicial quadratics:
the hypergeometric parameter matrices live over Q(sqrt(disc)), while all
products that matter (A*B, A+B) collapse back to rationals.  Collapse is
checked, not assumed.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .rationals import CRat


class PerfectSquareDiscriminant(ValueError):
    """A discriminant turned out to be a perfect square, contradicting root irrationality."""


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


class QuadExt:
    """Element a + b*sqrt(d) with a, b rational and d a positive non-square integer."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 0 or is_perfect_square(d):
            raise ValueError("d must be a positive non-square integer")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", int(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @staticmethod
    def rational(a, d: int) -> "QuadExt":
        return QuadExt(a, 0, d)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixed discriminants")
            return other
        return QuadExt(other, 0, self.d)

    def __add__(self, other):
        other = self._coerce(other)
        return QuadExt(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadExt(self.a - other.a, self.b - other.b, self.d)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = self._coerce(other)
        return QuadExt(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero QuadExt")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def rational_value(self) -> Fraction:
        if self.b:
            raise ValueError("not rational")
        return self.a

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = self._coerce(other)
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadExt({self.a} + {self.b}*sqrt({self.d}))"

    def to_json(self) -> dict:
        from .rationals import rational_to_str

        return {
            "rational_part": rational_to_str(self.a),
            "sqrt_part": rational_to_str(self.b),
            "disc": self.d,
        }


class QuadExtMatrix:
    """Square matrix over Q(sqrt(d)), with just enough algebra for symbol recursions."""

    __slots__ = ("n", "d", "rows")

    def __init__(self, rows, d: int):
        rows = tuple(
            tuple(x if isinstance(x, QuadExt) else QuadExt(x, 0, d) for x in row)
            for row in rows
        )
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("QuadExtMatrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExtMatrix is immutable")

    @staticmethod
    def identity(n: int, d: int) -> "QuadExtMatrix":
        return QuadExtMatrix(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], d
        )

    @staticmethod
    def diag(entries, d: int) -> "QuadExtMatrix":
        entries = list(entries)
        n = len(entries)
        return QuadExtMatrix(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], d
        )

    @staticmethod
    def from_const(mat, d: int) -> "QuadExtMatrix":
        rows = []
        for row in mat.rows:
            out = []
            for x in row:
                if x.im:
                    raise ValueError("QuadExtMatrix holds real entries only")
                out.append(QuadExt(x.re, 0, d))
            rows.append(out)
        return QuadExtMatrix(rows, d)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def shift(self, c) -> "QuadExtMatrix":
        return QuadExtMatrix(
            [
                [
                    self.rows[i][j] + c if i == j else self.rows[i][j]
                    for j in range(self.n)
                ]
                for i in range(self.n)
            ],
            self.d,
        )

    def __add__(self, other):
        return QuadExtMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.d,
        )

    def __matmul__(self, other):
        n = self.n
        zero = QuadExt(0, 0, self.d)
        return QuadExtMatrix(
            [
                [
                    sum(
                        (self.rows[i][k] * other.rows[k][j] for k in range(n)),
                        zero,
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ],
            self.d,
        )

    def matvec(self, v):
        zero = QuadExt(0, 0, self.d)
        v = [x if isinstance(x, QuadExt) else QuadExt(x, 0, self.d) for x in v]
        return tuple(
            sum((self.rows[i][k] * v[k] for k in range(self.n)), zero)
            for i in range(self.n)
        )

    def inverse(self) -> "QuadExtMatrix":
        n = self.n
        one = QuadExt(1, 0, self.d)
        zero = QuadExt(0, 0, self.d)
        aug = [
            list(row) + [one if i == j else zero for j in range(n)]
            for i, row in enumerate(self.rows)
        ]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if pivot is None:
                raise ZeroDivisionError("singular QuadExtMatrix")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv_p = aug[col][col].inverse()
            aug[col] = [x * inv_p for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return QuadExtMatrix([row[n:] for row in aug], self.d)

    def is_rational(self) -> bool:
        return all(x.is_rational() for row in self.rows for x in row)

    def to_const_matrix(self):
        """Collapse to an exact rational ConstMatrix; raises if any sqrt part survives."""
        from .polynomials import ConstMatrix

        return ConstMatrix(
            [[CRat(x.rational_value()) for x in row] for row in self.rows]
        )

    def __repr__(self):
        return f"QuadExtMatrix({self.n}x{self.n}, d={self.d})"
