"""Univariate polynomials and polynomial matrices over Gaussian rationals.

Polynomials are kept canonical (no trailing zero coefficients) so equality
is structural.  Matrix inversion is restricted to matrices with constant
nonzero determinant; the adjugate is produced by the Faddeev-LeVerrier
recursion, which stays inside the polynomial ring and divides only by
integers.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .rationals import CRat, ONE, ZERO

NEG_INF = float("-inf")


class NonConstantDeterminant(ValueError):
    """Determinant has degree >= 1 or is zero; the matrix has no polynomial inverse."""


def _coerce_coeff(c) -> CRat:
    return CRat.coerce(c)


class Poly:
    """Polynomial sum(coeffs[k] * x**k) with CRat coefficients, ascending powers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _ZERO_POLY

    @staticmethod
    def constant(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly([0] * k + [c])

    @staticmethod
    def coerce(p) -> "Poly":
        if isinstance(p, Poly):
            return p
        return Poly.constant(p)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> CRat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def leading(self) -> CRat:
        return self.coeffs[-1] if self.coeffs else ZERO

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = Poly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            c = CRat.coerce(other)
            return Poly([a * c for a in self.coeffs])
        other = Poly.coerce(other)
        if self.is_zero() or other.is_zero():
            return _ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = CRat.coerce(c)
        return Poly([a * c for a in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def conj_coeffs(self) -> "Poly":
        """Conjugate every coefficient (the adjoint for real arguments)."""
        return Poly([c.conj() for c in self.coeffs])

    def compose(self, inner: "Poly") -> "Poly":
        """Exact composition self(inner(x)) by Horner's scheme."""
        result = _ZERO_POLY
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def __call__(self, x):
        """Evaluate; exact for int/Fraction/CRat arguments, complex otherwise."""
        if isinstance(x, (int, Fraction, CRat)):
            x = CRat.coerce(x)
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    # -- comparison / io -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = Poly.coerce(other)
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append(f"({c!r})*x^{k}")
        return "Poly(" + " + ".join(terms) + ")"

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(d: dict) -> "Poly":
        return Poly([CRat.from_json(c) for c in d["coeffs"]])

    def float_coeffs(self) -> np.ndarray:
        """Coefficients as a complex array (ascending), [0] for the zero poly."""
        if not self.coeffs:
            return np.zeros(1, dtype=complex)
        return np.array([complex(c) for c in self.coeffs], dtype=complex)


_ZERO_POLY = Poly.__new__(Poly)
object.__setattr__(_ZERO_POLY, "coeffs", ())

ONE_POLY = Poly([1])
X = Poly([0, 1])


class ConstMatrix:
    """Square matrix of Gaussian rationals with exact arithmetic."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(CRat.coerce(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("ConstMatrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ConstMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "ConstMatrix":
        return ConstMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n: int) -> "ConstMatrix":
        return ConstMatrix([[0] * n for _ in range(n)])

    @staticmethod
    def diag(entries) -> "ConstMatrix":
        entries = list(entries)
        n = len(entries)
        return ConstMatrix(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_entries(n: int, fn) -> "ConstMatrix":
        return ConstMatrix([[fn(i, j) for j in range(n)] for i in range(n)])

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int):
        return tuple(self.rows[i][j] for i in range(self.n))

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return ConstMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        return ConstMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ConstMatrix":
        c = CRat.coerce(c)
        return ConstMatrix([[a * c for a in row] for row in self.rows])

    def shift(self, c) -> "ConstMatrix":
        """self + c*I."""
        c = CRat.coerce(c)
        return ConstMatrix(
            [
                [self.rows[i][j] + c if i == j else self.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __matmul__(self, other):
        if isinstance(other, ConstMatrix):
            n = self.n
            return ConstMatrix(
                [
                    [
                        sum(
                            (self.rows[i][k] * other.rows[k][j] for k in range(n)),
                            ZERO,
                        )
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
            )
        return NotImplemented

    def matvec(self, v):
        return tuple(
            sum((self.rows[i][k] * CRat.coerce(v[k]) for k in range(self.n)), ZERO)
            for i in range(self.n)
        )

    def transpose(self) -> "ConstMatrix":
        return ConstMatrix(
            [[self.rows[j][i] for j in range(self.n)] for i in range(self.n)]
        )

    def conj_transpose(self) -> "ConstMatrix":
        return ConstMatrix(
            [[self.rows[j][i].conj() for j in range(self.n)] for i in range(self.n)]
        )

    def trace(self) -> CRat:
        return sum(self.diagonal(), ZERO)

    def inverse(self) -> "ConstMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.n
        aug = [list(row) + [ONE if i == j else ZERO for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if pivot is None:
                raise ZeroDivisionError("singular ConstMatrix")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv_p = aug[col][col].inverse()
            aug[col] = [x * inv_p for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return ConstMatrix([row[n:] for row in aug])

    def charpoly(self) -> Poly:
        """Monic characteristic polynomial det(xI - A), exact (Faddeev-LeVerrier)."""
        n = self.n
        coeffs = [ONE]  # coefficient of x^n
        m = ConstMatrix.zero(n)
        c = ONE
        for k in range(1, n + 1):
            m = (self @ m).shift(c)
            c = -(self @ m).trace() / k
            coeffs.append(c)
        # coeffs[k] multiplies x^(n-k); Poly stores ascending powers.
        return Poly(list(reversed(coeffs)))

    # -- conversions ---------------------------------------------------------

    def to_poly_matrix(self) -> "PolyMatrix":
        return PolyMatrix(
            self.n, self.n, [Poly.constant(x) for row in self.rows for x in row]
        )

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.rows], dtype=complex)

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.rows]

    def __eq__(self, other):
        if isinstance(other, ConstMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ConstMatrix({[[repr(x) for x in row] for row in self.rows]})"


class PolyMatrix:
    """rows x cols matrix of Poly entries, row-major."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries):
        entries = tuple(Poly.coerce(e) for e in entries)
        if nrows * ncols != len(entries):
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix(
            n, n, [ONE_POLY if i == j else _ZERO_POLY for i in range(n) for j in range(n)]
        )

    @staticmethod
    def zero(nrows: int, ncols: int) -> "PolyMatrix":
        return PolyMatrix(nrows, ncols, [_ZERO_POLY] * (nrows * ncols))

    @staticmethod
    def from_rows(rows) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return PolyMatrix(nrows, ncols, [e for row in rows for e in row])

    @staticmethod
    def column(entries) -> "PolyMatrix":
        entries = list(entries)
        return PolyMatrix(len(entries), 1, entries)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def row(self, i: int):
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def col(self, j: int):
        return tuple(self[i, j] for i in range(self.nrows))

    def with_column(self, j: int, column) -> "PolyMatrix":
        entries = list(self.entries)
        for i in range(self.nrows):
            entries[i * self.ncols + j] = Poly.coerce(column[i])
        return PolyMatrix(self.nrows, self.ncols, entries)

    @property
    def degree(self):
        return max((e.degree for e in self.entries), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_shape(other)
        return PolyMatrix(
            self.nrows,
            self.ncols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        self._check_shape(other)
        return PolyMatrix(
            self.nrows,
            self.ncols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return PolyMatrix(self.nrows, self.ncols, [-e for e in self.entries])

    def _check_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("PolyMatrix shape mismatch")

    def scale(self, c) -> "PolyMatrix":
        """Multiply every entry by a scalar or a Poly."""
        if isinstance(c, Poly):
            return PolyMatrix(self.nrows, self.ncols, [e * c for e in self.entries])
        c = CRat.coerce(c)
        return PolyMatrix(self.nrows, self.ncols, [e.scale(c) for e in self.entries])

    def __matmul__(self, other):
        if isinstance(other, ConstMatrix):
            other = other.to_poly_matrix()
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("PolyMatrix inner dimension mismatch")
        out = []
        for i in range(self.nrows):
            for j in range(other.ncols):
                acc = _ZERO_POLY
                for k in range(self.ncols):
                    a = self[i, k]
                    b = other[k, j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.nrows, other.ncols, out)

    def __rmatmul__(self, other):
        if isinstance(other, ConstMatrix):
            return other.to_poly_matrix() @ self
        return NotImplemented

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.ncols,
            self.nrows,
            [self[i, j] for j in range(self.ncols) for i in range(self.nrows)],
        )

    def conj_transpose(self) -> "PolyMatrix":
        """Transpose with coefficient conjugation (adjoint for real arguments)."""
        return PolyMatrix(
            self.ncols,
            self.nrows,
            [
                self[i, j].conj_coeffs()
                for j in range(self.ncols)
                for i in range(self.nrows)
            ],
        )

    def derivative(self) -> "PolyMatrix":
        return PolyMatrix(
            self.nrows, self.ncols, [e.derivative() for e in self.entries]
        )

    def trace(self) -> Poly:
        if not self.is_square():
            raise ValueError("trace of non-square PolyMatrix")
        acc = _ZERO_POLY
        for i in range(self.nrows):
            acc = acc + self[i, i]
        return acc

    def shift(self, p) -> "PolyMatrix":
        """self + p*I for a Poly or scalar p."""
        if not self.is_square():
            raise ValueError("shift of non-square PolyMatrix")
        p = Poly.coerce(p)
        entries = list(self.entries)
        for i in range(self.nrows):
            entries[i * self.ncols + i] = entries[i * self.ncols + i] + p
        return PolyMatrix(self.nrows, self.ncols, entries)

    # -- determinant / inverse ----------------------------------------------

    def _is_upper_triangular(self) -> bool:
        return all(
            self[i, j].is_zero() for i in range(self.nrows) for j in range(i)
        )

    def det_and_adjugate(self):
        """Exact determinant and adjugate via Faddeev-LeVerrier."""
        if not self.is_square():
            raise ValueError("determinant of non-square PolyMatrix")
        n = self.nrows
        if n == 0:
            return ONE_POLY, PolyMatrix(0, 0, [])
        m = PolyMatrix.zero(n, n)
        c = ONE_POLY
        for k in range(1, n + 1):
            m = (self @ m).shift(c)
            c = (self @ m).trace().scale(Fraction(-1, k))
        det = c.scale((-1) ** n)
        adj = m.scale((-1) ** (n - 1))
        return det, adj

    def det(self) -> Poly:
        return self.det_and_adjugate()[0]

    def inverse(self) -> "PolyMatrix":
        """Inverse of a polynomial matrix whose determinant is a nonzero constant."""
        if not self.is_square():
            raise ValueError("inverse of non-square PolyMatrix")
        if self._is_upper_triangular() and all(
            self[i, i].degree == 0 for i in range(self.nrows)
        ):
            return self._inverse_upper_triangular()
        det, adj = self.det_and_adjugate()
        if det.is_zero() or det.degree > 0:
            raise NonConstantDeterminant(
                f"determinant has degree {det.degree}; no polynomial inverse"
            )
        return adj.scale(det.coeff(0).inverse())

    def _inverse_upper_triangular(self) -> "PolyMatrix":
        # Constant nonzero diagonal: back-substitution stays in the ring.
        n = self.nrows
        inv_diag = [self[i, i].coeff(0).inverse() for i in range(n)]
        out = [[_ZERO_POLY] * n for _ in range(n)]
        for j in range(n):
            out[j][j] = Poly.constant(inv_diag[j])
            for i in range(j - 1, -1, -1):
                acc = _ZERO_POLY
                for k in range(i + 1, j + 1):
                    acc = acc + self[i, k] * out[k][j]
                out[i][j] = acc.scale(-inv_diag[i])
        return PolyMatrix.from_rows(out)

    # -- evaluation ----------------------------------------------------------

    def eval_exact(self, x) -> ConstMatrix:
        if not self.is_square():
            raise ValueError("eval_exact yields ConstMatrix; matrix must be square")
        return ConstMatrix(
            [[self[i, j](x) for j in range(self.ncols)] for i in range(self.nrows)]
        )

    def eval_at(self, x: complex) -> np.ndarray:
        return np.array(
            [[self[i, j](complex(x)) for j in range(self.ncols)] for i in range(self.nrows)],
            dtype=complex,
        )

    def eval_grid(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate on a 1-d grid; returns array of shape (len(xs), nrows, ncols)."""
        xs = np.asarray(xs, dtype=complex)
        deg = max(int(self.degree), 0) if self.degree != NEG_INF else 0
        coeffs = np.zeros((deg + 1, self.nrows, self.ncols), dtype=complex)
        for i in range(self.nrows):
            for j in range(self.ncols):
                fc = self[i, j].float_coeffs()
                coeffs[: len(fc), i, j] = fc
        out = np.zeros((len(xs), self.nrows, self.ncols), dtype=complex)
        for k in range(deg, -1, -1):
            out *= xs[:, None, None]
            out += coeffs[k]
        return out

    # -- io ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PolyMatrix):
            return (
                self.nrows == other.nrows
                and self.ncols == other.ncols
                and self.entries == other.entries
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.entries))

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [e.to_json() for e in self.entries],
        }

    @staticmethod
    def from_json(d: dict) -> "PolyMatrix":
        return PolyMatrix(
            d["rows"], d["cols"], [Poly.from_json(e) for e in d["entries"]]
        )
