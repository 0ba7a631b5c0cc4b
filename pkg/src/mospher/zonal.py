"""Zonal spherical functions of the five compact rank-one families, and the
even-degree identity tying the sphere family to the real projective one.

All functions are exact polynomials in x = cos(theta), normalized to take
the value 1 at x = 1 (theta = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classical import jacobi
from .polynomials import Poly
from .rationals import pochhammer

SPACES = ("sphere", "projreal", "projcomplex", "projquat", "cayley")


class IdentityViolated(ArithmeticError):
    """An exact zonal identity failed; indicates an implementation bug."""


@dataclass(frozen=True)
class ZonalFamily:
    """One rank-one family with its Jacobi parameter pair."""

    space: str
    n: int
    alpha: Fraction
    beta: Fraction


def zonal_family(space: str, n: int) -> ZonalFamily:
    """Parameter table: (alpha, beta) per family, with n the space dimension."""
    if space == "sphere":
        a = Fraction(n - 2, 2)
        return ZonalFamily(space, n, a, a)
    if space == "projreal":
        return ZonalFamily(space, n, Fraction(n - 2, 2), Fraction(-1, 2))
    if space == "projcomplex":
        return ZonalFamily(space, n, Fraction(n - 1), Fraction(0))
    if space == "projquat":
        return ZonalFamily(space, n, Fraction(2 * n - 1), Fraction(1))
    if space == "cayley":
        return ZonalFamily(space, n, Fraction(7), Fraction(3))
    raise ValueError(f"unknown space {space!r}; choose from {SPACES}")


def zonal_phi(family: ZonalFamily, j: int) -> Poly:
    """j-th zonal function as an exact Poly in x = cos(theta), with value 1 at x = 1."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    p = jacobi(family.alpha, family.beta, j)
    # Hypergeometric normalization gives P_j(1) = (alpha+1)_j / j!.
    value = pochhammer(family.alpha + 1, j) / pochhammer(Fraction(1), j)
    return p.scale(Fraction(1) / value)


_DOUBLING = Poly([-1, 0, 2])  # 2 x^2 - 1


@dataclass(frozen=True)
class CorrespondenceReport:
    """Both sides of the even-degree identity, expanded exactly."""

    n: int
    k: int
    lhs: Poly        # P_{2k}^{(a,a)}(x)
    rhs: Poly        # scaled P_k^{(a,-1/2)}(2x^2-1)
    normalized_ok: bool

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and self.normalized_ok


def correspondence_check(n: int, k: int) -> CorrespondenceReport:
    """Verify P_{2k}^{(a,a)}(x) = [k!(a+1)_{2k} / ((2k)!(a+1)_k)] P_k^{(a,-1/2)}(2x^2-1)
    with a = (n-2)/2, plus the normalized statement phi_{2k} = phi'_k o (2x^2-1).
    """
    a = Fraction(n - 2, 2)
    lhs = jacobi(a, a, 2 * k)
    scale = (
        pochhammer(Fraction(1), k)
        * pochhammer(a + 1, 2 * k)
        / (pochhammer(Fraction(1), 2 * k) * pochhammer(a + 1, k))
    )
    rhs = jacobi(a, Fraction(-1, 2), k).compose(_DOUBLING).scale(scale)
    sphere = zonal_family("sphere", n)
    projreal = zonal_family("projreal", n)
    normalized_ok = zonal_phi(sphere, 2 * k) == zonal_phi(projreal, k).compose(_DOUBLING)
    report = CorrespondenceReport(n=n, k=k, lhs=lhs, rhs=rhs, normalized_ok=normalized_ok)
    if not report.ok:
        raise IdentityViolated(f"zonal correspondence failed at n={n}, k={k}")
    return report
