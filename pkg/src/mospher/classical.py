"""Classical scalar special functions in exact form.

Gegenbauer and Jacobi polynomials, terminating Gauss series, the 3F2 at
unit argument, and the Hahn-value matrix that diagonalizes the coupled
second-order system.  All results are exact Poly / rational objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polynomials import ConstMatrix, Poly
from .rationals import CRat, binomial, pochhammer


class PoleInC(ValueError):
    """A lower hypergeometric parameter hit a nonpositive integer inside the sum."""


def hyp2f1_terminating(a: int, b, c, arg: Poly) -> Poly:
    """Terminating 2F1(a, b; c; arg(u)) as an exact Poly in u.

    a must be a nonpositive integer; the series stops at -a terms (earlier
    if b kills it).  Raises PoleInC only when a zero denominator would
    actually be divided by.
    """
    if a > 0:
        raise ValueError("a must be a nonpositive integer")
    b = Fraction(b)
    c = Fraction(c)
    terms = [Fraction(1)]
    term = Fraction(1)
    for m in range(-a):
        num = Fraction(a + m) * (b + m)
        if not num:
            break
        den_c = c + m
        if not den_c:
            raise PoleInC(f"c + {m} = 0 inside the truncated sum")
        term *= num / (den_c * (m + 1))
        terms.append(term)
    series = Poly([CRat(t) for t in terms])
    return series.compose(arg)


def hyp3f2_unit(a1: int, a2: int, a3, b1, b2) -> Fraction:
    """Terminating 3F2(a1, a2, a3; b1, b2; 1) by direct exact summation.

    At least one of a1, a2 must be a nonpositive integer so the series
    stops before any denominator vanishes.
    """
    stop = None
    for a in (a1, a2):
        if isinstance(a, int) and a <= 0:
            stop = -a if stop is None else min(stop, -a)
    if stop is None:
        raise ValueError("need a nonpositive integer among the upper parameters")
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    b1, b2 = Fraction(b1), Fraction(b2)
    total = Fraction(1)
    term = Fraction(1)
    for m in range(stop):
        num = (a1 + m) * (a2 + m) * (a3 + m)
        if not num:
            break
        den = (b1 + m) * (b2 + m) * (m + 1)
        if not den:
            raise PoleInC(f"lower parameter hit zero at m = {m}")
        term *= num / den
        total += term
    return total


_HALF_SHIFT = Poly([Fraction(1, 2), Fraction(-1, 2)])  # (1 - u)/2


def gegenbauer(lam: int, n: int) -> Poly:
    """Gegenbauer polynomial C_n^lam(u) for integer lam >= 1.

    Uses C_n^lam = binom(n + 2 lam - 1, n) 2F1(-n, n + 2 lam; lam + 1/2; (1-u)/2).
    """
    if lam < 1:
        raise ValueError("lam must be a positive integer")
    if n < 0:
        return Poly.zero()
    lead = binomial(n + 2 * lam - 1, n)
    f = hyp2f1_terminating(-n, n + 2 * lam, Fraction(2 * lam + 1, 2), _HALF_SHIFT)
    return f.scale(lead)


def jacobi(alpha, beta, n: int) -> Poly:
    """Jacobi polynomial P_n^(alpha, beta)(x), hypergeometric normalization.

    P_n(1) = (alpha + 1)_n / n!.
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= -1 or beta <= -1:
        raise ValueError("alpha and beta must exceed -1")
    if n < 0:
        return Poly.zero()
    lead = pochhammer(alpha + 1, n) / pochhammer(Fraction(1), n)
    arg = Poly([Fraction(1, 2), Fraction(-1, 2)])  # (1 - x)/2
    f = hyp2f1_terminating(-n, n + alpha + beta + 1, alpha + 1, arg)
    return f.scale(lead)


@dataclass(frozen=True)
class HahnMatrix:
    """Matrix of Hahn-polynomial values diagonalizing the coupled system.

    Column j is an eigenvector of C0 + C1 with eigenvalue -j(j+1); the first
    row and first column are all ones.
    """

    ell: int
    U: ConstMatrix


@lru_cache(maxsize=None)
def hahn_matrix(ell: int) -> HahnMatrix:
    """Entry (k, j) is 3F2(-j, -k, j+1; 1, -ell; 1), size (ell+1) x (ell+1)."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")

    def entry(k: int, j: int) -> Fraction:
        if j == 0 or k == 0:
            return Fraction(1)
        return hyp3f2_unit(-j, -k, j + 1, 1, -ell)

    U = ConstMatrix.from_entries(ell + 1, lambda k, j: CRat(entry(k, j)))
    return HahnMatrix(ell=ell, U=U)
