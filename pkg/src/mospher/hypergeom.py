"""Matrix hypergeometric machinery: symbol recursions, polynomial solutions,
and truncated series evaluation for the non-terminating cases.

Two equation shapes are supported.  The first-kind form

    s(1-s) F'' + (B - s C) F' + (Lambda0 - lambda) F = 0

is solved by F(s) = sum_j s^j / j! * symbol_j F0 with

    symbol_0 = I,   symbol_{j+1} = (B+j)^{-1} (j(C+j-1) - Lambda0 + lambda) symbol_j,

and the Gauss form

    y(1-y) P'' + (C - y(A+B+1)) P' - A B P = 0

by P(y) = sum_j y^j / j! * (C;A;B)_j P0 with

    (C;A;B)_0 = I,  (C;A;B)_{j+1} = (C+j)^{-1} (A+j)(B+j) (C;A;B)_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polynomials import ConstMatrix, Poly
from .rationals import CRat, ZERO


class SingularStep(ValueError):
    """A shifted denominator matrix in the symbol recursion is singular."""

    def __init__(self, step: int):
        super().__init__(f"singular denominator at recursion step {step}")
        self.step = step


class NoConvergence(RuntimeError):
    """Truncated series did not meet the tolerance within the term budget."""


@dataclass(frozen=True)
class Hyp2H1Params:
    """Parameters (B, C, Lambda0, lambda) of the first-kind matrix equation."""

    B: ConstMatrix
    C: ConstMatrix
    Lambda0: ConstMatrix
    lam: CRat

    @property
    def size(self) -> int:
        return self.B.n


@dataclass(frozen=True)
class Hyp2F1Params:
    """Parameters (A, B, C) of the matrix Gauss equation.

    A and B may be any matrix-like objects supporting shift/inverse/@ (e.g.
    QuadExtMatrix when their entries live in a quadratic extension).
    """

    A: object
    B: object
    C: object

    @property
    def size(self) -> int:
        return self.C.n


@dataclass(frozen=True)
class PolySolution:
    """A polynomial solution: its degree, seed vector F0, and entry polynomials."""

    degree: int
    initial_vector: tuple
    poly: tuple  # tuple[Poly, ...]

    def eval_float(self, x: float) -> np.ndarray:
        return np.array([complex(p(complex(x))) for p in self.poly])


def _numerator_2h1(params: Hyp2H1Params, j: int) -> ConstMatrix:
    # j(C + j - 1) - Lambda0 + lambda
    return (params.C.shift(j - 1).scale(j) - params.Lambda0).shift(params.lam)


def symbol_2h1(params: Hyp2H1Params, j: int) -> ConstMatrix:
    """Exact first-kind symbol at index j (identity at j = 0)."""
    sym = ConstMatrix.identity(params.size)
    for m in range(j):
        shifted = params.B.shift(m)
        try:
            inv = shifted.inverse()
        except ZeroDivisionError as exc:
            raise SingularStep(m) from exc
        sym = inv @ _numerator_2h1(params, m) @ sym
    return sym


def _identity_like(mat):
    if isinstance(mat, ConstMatrix):
        return ConstMatrix.identity(mat.n)
    return type(mat).identity(mat.n, mat.d)


def symbol_2f1(params: Hyp2F1Params, j: int):
    """Exact Gauss symbol (C;A;B)_j (identity at j = 0).

    Works over plain ConstMatrix or any matrix type with the same shift /
    inverse / matmul surface (all of A, B, C must share one type).
    """
    sym = _identity_like(params.C)
    for m in range(j):
        shifted_c = params.C.shift(m)
        try:
            inv = shifted_c.inverse()
        except ZeroDivisionError as exc:
            raise SingularStep(m) from exc
        sym = inv @ params.A.shift(m) @ params.B.shift(m) @ sym
    return sym


def _eigenvalue_index(lam: CRat):
    """Return n >= 0 with lam = -n(n+2), or None when no such integer exists."""
    lam = CRat.coerce(lam)
    if lam.im or lam.re.denominator != 1:
        return None
    disc = 1 - lam.re.numerator  # (n+1)^2
    if disc < 0:
        return None
    r = math.isqrt(disc)
    if r * r != disc or r < 1:
        return None
    return r - 1


def polynomial_solutions_2h1(params: Hyp2H1Params) -> list[PolySolution]:
    """All polynomial solutions of the first-kind equation, one per admissible degree.

    Requires lambda = -n(n+2) for n in N0; otherwise the list is empty.  For
    each k with 0 <= k <= size-1 and w = n - k >= 0 the solution of degree w
    (leading coefficient along e_k) is built by solving symbol_w F0 = e_k
    inside the invariant subspace span{e_0..e_k}.
    """
    n = _eigenvalue_index(params.lam)
    if n is None:
        return []
    size = params.size
    solutions = []
    for k in range(size):
        w = n - k
        if w < 0:
            continue
        f0 = _seed_vector(params, w, k)
        coeffs = _series_coefficients(params, f0, w)
        lead = coeffs[w]
        if all(c.is_zero() for c in lead):
            raise ArithmeticError("vanishing leading coefficient; construction bug")
        polys = tuple(
            Poly([coeffs[m][i] for m in range(w + 1)]) for i in range(size)
        )
        solutions.append(PolySolution(degree=w, initial_vector=tuple(f0), poly=polys))
    return solutions


def _seed_vector(params: Hyp2H1Params, w: int, k: int):
    """Solve symbol_w F0 = e_k by exact back-substitution through the recursion."""
    size = params.size
    v = [ZERO] * size
    v[k] = CRat(1)
    # Reverse the factors: F0 = M_0^{-1} B (M_1^{-1} (B+1) (... e_k)).
    for m in range(w - 1, -1, -1):
        v = list(params.B.shift(m).matvec(v))
        num = _numerator_2h1(params, m)
        if not num.is_diagonal():
            raise ValueError("numerator expected diagonal (C, Lambda0 diagonal)")
        out = []
        for i, x in enumerate(v):
            dii = num[i, i]
            if dii.is_zero():
                if not x.is_zero():
                    raise SingularStep(m)
                out.append(ZERO)
            else:
                out.append(x / dii)
        v = out
    return v


def _series_coefficients(params: Hyp2H1Params, f0, w: int):
    """Coefficients F_m = symbol_m F0 / m! for m = 0..w, exact."""
    size = params.size
    coeffs = [list(f0)]
    v = list(f0)
    for m in range(w):
        v = list(_numerator_2h1(params, m).matvec(v))
        v = list(params.B.shift(m).inverse().matvec(v))
        v = [x / (m + 1) for x in v]
        coeffs.append(v)
    # Sanity: the recursion terminates exactly after degree w.
    nxt = _numerator_2h1(params, w).matvec(coeffs[w])
    if any(not x.is_zero() for x in nxt):
        raise ArithmeticError("series fails to terminate at the claimed degree")
    return coeffs


def residual_2h1(params: Hyp2H1Params, polys) -> list[Poly]:
    """Exact residual of s(1-s)F'' + (B - sC)F' + (Lambda0 - lambda)F."""
    s = Poly.x()
    f = list(polys)
    f1 = [p.derivative() for p in f]
    f2 = [p.derivative() for p in f1]
    s1ms = s * (1 - s)
    size = params.size
    out = []
    for i in range(size):
        acc = s1ms * f2[i]
        for j in range(size):
            bij = params.B[i, j]
            cij = params.C[i, j]
            term = Poly([bij, -cij])  # B_ij - s C_ij
            acc = acc + term * f1[j]
            lij = params.Lambda0[i, j]
            if i == j:
                lij = lij - params.lam
            acc = acc + f[j].scale(lij)
        out.append(acc)
    return out


def residual_2f1(C: ConstMatrix, A_plus_B: ConstMatrix, AB: ConstMatrix, polys) -> list[Poly]:
    """Exact residual of y(1-y)P'' + (C - y(A+B+1))P' - AB P.

    Takes the collapsed rational matrices A+B and AB so extension-field
    parameters need not leak into polynomial arithmetic.
    """
    y = Poly.x()
    f = list(polys)
    f1 = [p.derivative() for p in f]
    f2 = [p.derivative() for p in f1]
    y1my = y * (1 - y)
    size = C.n
    sum1 = A_plus_B.shift(1)
    out = []
    for i in range(size):
        acc = y1my * f2[i]
        for j in range(size):
            term = Poly([C[i, j], -sum1[i, j]])  # C_ij - y (A+B+1)_ij
            acc = acc + term * f1[j]
            acc = acc - f[j].scale(AB[i, j])
        out.append(acc)
    return out


@dataclass(frozen=True)
class TruncatedEval:
    """Result of a truncated matrix 2F1 evaluation.

    The stopping rule (successive-term norm below tol * partial-sum norm) is
    a package choice, recorded here so downstream output can flag it.
    """

    value: np.ndarray
    terms_used: int
    stopping_rule: str = "relative-successive-term"


def truncated_series_eval(
    params: Hyp2F1Params, v0, y: float, tol: float, max_terms: int
) -> TruncatedEval:
    """Evaluate sum_j y^j / j! (C;A;B)_j v0 numerically with a tolerance cutoff."""
    if not (abs(y) < 1):
        raise ValueError("need |y| < 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    size = params.C.n
    v = np.array([complex(x) for x in v0], dtype=complex)
    if not v.any():
        return TruncatedEval(value=v, terms_used=0)
    if y == 0:
        return TruncatedEval(value=v, terms_used=1)

    def as_numpy(mat) -> np.ndarray:
        if isinstance(mat, ConstMatrix):
            return mat.to_numpy()
        return np.array([[float(x) for x in row] for row in mat.rows], dtype=complex)

    a = as_numpy(params.A)
    b = as_numpy(params.B)
    c = as_numpy(params.C)
    eye = np.eye(size)
    total = v.copy()
    term = v.copy()
    for m in range(max_terms):
        term = np.linalg.solve(c + m * eye, (a + m * eye) @ (b + m * eye) @ term)
        term = term * (y / (m + 1))
        total += term
        if np.linalg.norm(term) < tol * max(np.linalg.norm(total), 1e-300):
            return TruncatedEval(value=total, terms_used=m + 2)
    raise NoConvergence(f"no convergence within {max_terms} terms at y={y}")
