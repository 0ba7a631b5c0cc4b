"""Matrix spherical machinery for the 3-sphere pair.

Builds the structure matrices of the conjugated second- and first-order
operators in the variable u, the coefficient recurrences, the packaged
matrix polynomials and their hypergeometrized companions, the eigenvalue
matrices, the one-parameter family of closing matrices, and the matrix
weight.  Everything here is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .classical import gegenbauer, hahn_matrix, hyp2f1_terminating
from .hypergeom import Hyp2H1Params
from .polynomials import ConstMatrix, Poly, PolyMatrix
from .rationals import CRat, I, ZERO, pochhammer


class ShapeMismatch(ValueError):
    """Operand shape does not match the requested bundle size."""


class ClosingViolated(ValueError):
    """The closing row of the three-term recurrence fails for the given eigenvalue."""


class OutOfDomain(ValueError):
    """Evaluation point outside (-1, 1]."""


def eigenvalue_lambda(w: int, k: int) -> int:
    """Second-order eigenvalue -(w+k)(w+k+2)."""
    return -(w + k) * (w + k + 2)


def eigenvalue_mu(ell: int, w: int, k: int) -> Fraction:
    """First-order eigenvalue w(ell/2 - k) - k(ell/2 + 1); half-integral for odd ell."""
    half = Fraction(ell, 2)
    return w * (half - k) - k * (half + 1)


@dataclass(frozen=True)
class So4Index:
    """Bundle label (ell, w, k) and its representation-theoretic shadow.

    m1 = w + ell/2 and m2 = ell/2 - k satisfy m1 >= ell/2 >= |m2|; the pair
    of eigenvalues (lambda, mu) is determined by the label.
    """

    ell: int
    w: int
    k: int

    def __post_init__(self):
        if self.ell < 0 or self.w < 0 or not (0 <= self.k <= self.ell):
            raise ValueError("need ell >= 0, w >= 0, 0 <= k <= ell")

    @property
    def m1(self) -> Fraction:
        return Fraction(self.ell, 2) + self.w

    @property
    def m2(self) -> Fraction:
        return Fraction(self.ell, 2) - self.k

    @property
    def lam(self) -> int:
        return eigenvalue_lambda(self.w, self.k)

    @property
    def mu(self) -> Fraction:
        return eigenvalue_mu(self.ell, self.w, self.k)

    def to_json(self) -> dict:
        from .rationals import rational_to_str

        return {
            "ell": self.ell,
            "w": self.w,
            "k": self.k,
            "m1": rational_to_str(self.m1),
            "m2": rational_to_str(self.m2),
            "lambda": str(self.lam),
            "mu": rational_to_str(self.mu),
        }


@dataclass(frozen=True)
class So4Structure:
    """All constant matrices of the u-variable operator pair at bundle size ell+1.

    is_so3_type_regime marks even ell, the values realized by genuine
    three-dimensional rotation bundle types; the matrices themselves are
    valid for every nonnegative ell.
    """

    ell: int
    A0: ConstMatrix
    C0: ConstMatrix
    C1: ConstMatrix
    V0: ConstMatrix
    V: ConstMatrix
    C: ConstMatrix
    S1: ConstMatrix
    Q0: ConstMatrix
    Q1: ConstMatrix
    M: ConstMatrix
    J: ConstMatrix
    R1: ConstMatrix
    R2: ConstMatrix
    Lambda0: ConstMatrix
    M0: ConstMatrix

    @property
    def is_so3_type_regime(self) -> bool:
        return self.ell % 2 == 0

    @property
    def B(self) -> ConstMatrix:
        """(C - S1)/2, the denominator matrix of the symbol recursion."""
        return (self.C - self.S1).scale(Fraction(1, 2))

    def hyp_params(self, lam) -> Hyp2H1Params:
        return Hyp2H1Params(B=self.B, C=self.C, Lambda0=self.Lambda0, lam=CRat.coerce(lam))


@lru_cache(maxsize=None)
def so4_structure(ell: int) -> So4Structure:
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    n = ell + 1

    def build(fn) -> ConstMatrix:
        return ConstMatrix.from_entries(n, fn)

    def diag(f) -> ConstMatrix:
        return ConstMatrix.diag([CRat(f(j)) for j in range(n)])

    def super_diag(f) -> ConstMatrix:
        return build(lambda i, j: CRat(f(i)) if j == i + 1 else ZERO)

    def sub_diag(f) -> ConstMatrix:
        return build(lambda i, j: CRat(f(i)) if j == i - 1 else ZERO)

    A0 = diag(lambda j: ell - 2 * j)
    C0 = build(
        lambda i, j: CRat(i * (ell - i + 1)) if (i >= 1 and j == i - 1)
        else (CRat(-i * (ell - i + 1)) if (i >= 1 and j == i) else ZERO)
    )
    C1 = build(
        lambda i, j: CRat((i + 1) * (ell - i)) if (i <= ell - 1 and j == i + 1)
        else (CRat(-(i + 1) * (ell - i)) if (i <= ell - 1 and j == i) else ZERO)
    )
    V0 = diag(lambda j: j * (j + 1))
    V = diag(lambda j: j * (j + 2))
    C = diag(lambda j: 2 * j + 3)
    S1 = super_diag(lambda j: 2 * (j + 1))
    Q0 = super_diag(lambda j: Fraction((j + 1) * (ell + j + 2), 2 * j + 3))
    Q1 = sub_diag(lambda j: Fraction(j * (ell - j + 1), 2 * j - 1))
    M = super_diag(lambda j: (j + 1) * (ell + j + 2))
    J = diag(lambda j: j)
    R1 = build(
        lambda i, j: CRat(Fraction(i + 1, 2)) if j == i + 1
        else (CRat(Fraction(-(ell - i + 1), 2)) if j == i - 1 else ZERO)
    )
    R2 = diag(lambda j: Fraction(ell, 2) - j)
    Lambda0 = diag(lambda j: -j * (j + 2))
    M0 = ConstMatrix.diag([CRat(Fraction(-j * (ell + 2), 2)) for j in range(n)])
    return So4Structure(
        ell=ell, A0=A0, C0=C0, C1=C1, V0=V0, V=V, C=C, S1=S1,
        Q0=Q0, Q1=Q1, M=M, J=J, R1=R1, R2=R2, Lambda0=Lambda0, M0=M0,
    )


def coefficient_vector(ell: int, w: int, k: int, mu=None):
    """Coefficients (a_0, ..., a_ell) of the bundle column labelled (w, k).

    Generated by the three-term recurrence with a_0 = 1 and checked against
    the closing row; an inadmissible mu raises ClosingViolated.  For the
    canonical mu the tail a_j, j > w + k, vanishes (polynomiality).
    """
    if not (0 <= k <= ell) or w < 0:
        raise ValueError("need 0 <= k <= ell and w >= 0")
    if mu is None:
        mu = eigenvalue_mu(ell, w, k)
    mu = CRat.coerce(mu)
    n = w + k
    a = [CRat(1)] + [ZERO] * ell
    for j in range(ell):
        # i * sub(j) * a_{j-1} - (j(j+1)/2) a_j - i * sup(j) * a_{j+1} = mu a_j
        sub = (
            I * CRat(Fraction(j * (ell - j + 1) * (n - j + 1) * (n + j + 1),
                              2 * (2 * j - 1) * (2 * j + 1))) * a[j - 1]
            if j >= 1 else ZERO
        )
        rhs = mu * a[j] + CRat(Fraction(j * (j + 1), 2)) * a[j] - sub
        a[j + 1] = rhs / (-I * CRat(Fraction((j + 1) * (ell + j + 2), 2)))
    if ell >= 1:
        closing = (
            I * CRat(Fraction(ell * (n - ell + 1) * (n + ell + 1),
                              2 * (2 * ell - 1) * (2 * ell + 1))) * a[ell - 1]
            - CRat(Fraction(ell * (ell + 1), 2)) * a[ell]
        )
        if closing != mu * a[ell]:
            raise ClosingViolated(
                f"closing row fails for ell={ell}, w={w}, k={k}, mu={mu!r}"
            )
    for j in range(n + 1, ell + 1):
        if not a[j].is_zero():
            raise ClosingViolated(
                f"nonzero tail coefficient a_{j} for ell={ell}, w={w}, k={k}"
            )
    return tuple(a)


def coefficients_w0(ell: int, k: int):
    """Closed form for the w = 0 coefficients: (-2i)^j k! j! / ((k-j)! (2j)!)."""
    out = []
    for j in range(ell + 1):
        if j > k:
            out.append(ZERO)
        else:
            c = Fraction(
                math.factorial(k) * math.factorial(j),
                math.factorial(k - j) * math.factorial(2 * j),
            )
            out.append((CRat(0, -2) ** j) * CRat(c))
    return tuple(out)


_HALF_SHIFT = Poly([Fraction(1, 2), Fraction(-1, 2)])  # (1 - u)/2


@lru_cache(maxsize=None)
def p_matrix(ell: int, w: int) -> PolyMatrix:
    """Packaged bundle matrix: entry (j, k) is a_j^{w,k} 2F1(-w-k+j, w+k+j+2; j+3/2; (1-u)/2)."""
    cols = []
    for k in range(ell + 1):
        a = coefficient_vector(ell, w, k)
        col = []
        for j in range(ell + 1):
            if a[j].is_zero():
                col.append(Poly.zero())
            else:
                f = hyp2f1_terminating(
                    -(w + k - j), w + k + j + 2, Fraction(2 * j + 3, 2), _HALF_SHIFT
                )
                col.append(f.scale(a[j]))
        cols.append(col)
    return PolyMatrix.from_rows(
        [[cols[k][j] for k in range(ell + 1)] for j in range(ell + 1)]
    )


@lru_cache(maxsize=None)
def psi(ell: int) -> PolyMatrix:
    """Upper-triangular packaging matrix: entry (j,k) = (2j+1)(-2i)^j k! j!/(k+j+1)! C^{j+1}_{k-j}(u)."""
    rows = []
    for j in range(ell + 1):
        row = []
        for k in range(ell + 1):
            if j > k:
                row.append(Poly.zero())
            else:
                c = Fraction(
                    (2 * j + 1) * math.factorial(k) * math.factorial(j),
                    math.factorial(k + j + 1),
                )
                coeff = (CRat(0, -2) ** j) * CRat(c)
                row.append(gegenbauer(j + 1, k - j).scale(coeff))
        rows.append(row)
    return PolyMatrix.from_rows(rows)


@lru_cache(maxsize=None)
def tilde_p(ell: int, w: int) -> PolyMatrix:
    """Hypergeometrized bundle matrix psi^{-1} P_w; every column has degree exactly w."""
    return psi(ell).inverse() @ p_matrix(ell, w)


def lambda_matrix(ell: int, w: int) -> ConstMatrix:
    return ConstMatrix.diag([CRat(eigenvalue_lambda(w, k)) for k in range(ell + 1)])


def mu_matrix(ell: int, w: int) -> ConstMatrix:
    return ConstMatrix.diag([CRat(eigenvalue_mu(ell, w, k)) for k in range(ell + 1)])


_ONE_MINUS_U2 = Poly([1, 0, -1])
_U = Poly.x()

OPERATORS = ("Dbar", "Ebar", "Dtilde", "Etilde")


def apply_operator(which: str, ell: int, operand):
    """Apply one of the four exact differential operators to a PolyMatrix or Poly vector.

    Dbar:   (1-u^2) P'' - u C P' - V P
    Ebar:   (i/2)((1-u^2) Q0 + Q1) P' - (i/2) u M P - (1/2) V0 P
    Dtilde: (1-u^2) F'' + (-u C + S1) F' + Lambda0 F
    Etilde: (u R2 + R1) F' + M0 F
    """
    if which not in OPERATORS:
        raise ValueError(f"unknown operator {which!r}")
    as_vector = not isinstance(operand, PolyMatrix)
    if as_vector:
        mat = PolyMatrix.column([Poly.coerce(p) for p in operand])
    else:
        mat = operand
    if mat.nrows != ell + 1:
        raise ShapeMismatch(f"operand has {mat.nrows} rows; expected {ell + 1}")
    st = so4_structure(ell)
    d1 = mat.derivative()
    d2 = d1.derivative()
    if which == "Dbar":
        out = (
            d2.scale(_ONE_MINUS_U2)
            - (st.C.to_poly_matrix() @ d1).scale(_U)
            - st.V.to_poly_matrix() @ mat
        )
    elif which == "Ebar":
        half_i = CRat(0, Fraction(1, 2))
        coeff = st.Q0.to_poly_matrix().scale(_ONE_MINUS_U2) + st.Q1.to_poly_matrix()
        out = (
            (coeff @ d1).scale(half_i)
            - (st.M.to_poly_matrix() @ mat).scale(_U).scale(half_i)
            - (st.V0.to_poly_matrix() @ mat).scale(Fraction(1, 2))
        )
    elif which == "Dtilde":
        first = st.S1.to_poly_matrix() @ d1 - (st.C.to_poly_matrix() @ d1).scale(_U)
        out = d2.scale(_ONE_MINUS_U2) + first + st.Lambda0.to_poly_matrix() @ mat
    else:  # Etilde
        first = (st.R2.to_poly_matrix() @ d1).scale(_U) + st.R1.to_poly_matrix() @ d1
        out = first + st.M0.to_poly_matrix() @ mat
    if as_vector:
        return [out[i, 0] for i in range(out.nrows)]
    return out


def l_matrix(ell: int, n: int) -> ConstMatrix:
    """Closing matrix of the first-order operator on the lambda = -n(n+2) eigenspace."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = ell + 1

    def entry(i, j):
        if j == i - 1 and i >= 1:
            return I * CRat(
                Fraction(i * (ell - i + 1) * (n - i + 1) * (n + i + 1),
                         2 * (2 * i - 1) * (2 * i + 1))
            )
        if j == i + 1 and i <= ell - 1:
            return -I * CRat(Fraction((i + 1) * (ell + i + 2), 2))
        if j == i:
            return CRat(Fraction(-i * (i + 1), 2))
        return ZERO

    return ConstMatrix.from_entries(size, entry)


def admissible_mu_set(ell: int, n: int):
    """The eigenvalues carried by polynomial columns: mu_{n-k}(k) for 0 <= k <= min(n, ell)."""
    return [eigenvalue_mu(ell, n - k, k) for k in range(min(n, ell) + 1)]


def l_spectrum_certificate(ell: int, n: int) -> dict:
    """Certify the admissible spectrum of l_matrix(ell, n) by exact closing relations.

    The closing matrix preserves span{e_0..e_m} with m = min(n, ell); the
    characteristic polynomial of that restriction must factor exactly over
    the admissible mu list, and each eigenvector must regenerate from the
    recurrence with a_0 = 1.
    """
    m = min(n, ell)
    lmat = l_matrix(ell, n)
    sub = ConstMatrix.from_entries(m + 1, lambda i, j: lmat[i, j])
    # Invariance of the leading block: the entry (m+1, m) must vanish.
    block_invariant = ell == m or lmat[m + 1, m].is_zero()
    charpoly = sub.charpoly()
    mus = admissible_mu_set(ell, n)
    expected = Poly([1])
    for mu in mus:
        expected = expected * Poly([-CRat(mu), CRat(1)])
    spectrum_ok = charpoly == expected
    vectors_ok = True
    for k in range(m + 1):
        w = n - k
        a = coefficient_vector(ell, w, k)
        image = lmat.matvec(a)
        mu = CRat.coerce(eigenvalue_mu(ell, w, k))
        if any(image[i] != mu * a[i] for i in range(ell + 1)):
            vectors_ok = False
    return {
        "block_invariant": block_invariant,
        "spectrum_matches": spectrum_ok,
        "eigenvectors_regenerate": vectors_ok,
        "mus": mus,
    }


@dataclass(frozen=True)
class So4Weight:
    """Matrix weight on [-1, 1]: scalar factor (2/pi) sqrt(1-u^2) times poly_part(u).

    poly_part = psi(u)^* diag(g_j (1-u^2)^j) psi(u) where g_j are the squared
    column norms of the Hahn matrix (its Gram matrix is diagonal).
    """

    ell: int
    poly_part: PolyMatrix
    scalar_tag: str = "(2/pi)*sqrt(1-u^2)"

    interval = (-1.0, 1.0)
    quad_kind = "chebyshev2"

    @property
    def scalar_const(self) -> float:
        return 2.0 / math.pi

    @property
    def extra_poly(self):
        return None

    @property
    def size(self) -> int:
        return self.ell + 1


@lru_cache(maxsize=None)
def so4_weight(ell: int) -> So4Weight:
    ps = psi(ell)
    U = hahn_matrix(ell).U
    gram = U.transpose() @ U
    if not gram.is_diagonal():
        raise ArithmeticError("Hahn column Gram matrix must be diagonal")
    one_minus = Poly([1, 0, -1])
    diag_polys = []
    pw = Poly([1])
    for j in range(ell + 1):
        diag_polys.append(pw.scale(gram[j, j]))
        pw = pw * one_minus
    middle = PolyMatrix.from_rows(
        [
            [diag_polys[i] if i == j else Poly.zero() for j in range(ell + 1)]
            for i in range(ell + 1)
        ]
    )
    poly_part = ps.conj_transpose() @ middle @ ps
    return So4Weight(ell=ell, poly_part=poly_part)


def h_eval(ell: int, w: int, k: int, u: float) -> np.ndarray:
    """Evaluate the spherical column H = U T(u) P(u)[:, k] in floating point.

    T(u) = diag((1-u^2)^{j/2}); H(1) = (1, ..., 1) with the a_0 = 1
    normalization.  Domain is (-1, 1].
    """
    if not (-1.0 < u <= 1.0):
        raise OutOfDomain(f"u = {u} outside (-1, 1]")
    pm = p_matrix(ell, w)
    col = np.array([complex(pm[j, k](complex(u))) for j in range(ell + 1)])
    t = np.array([(1.0 - u * u) ** (j / 2.0) for j in range(ell + 1)])
    U = hahn_matrix(ell).U.to_numpy()
    return U @ (t * col)


def degree_table_ok(ell: int, w: int) -> bool:
    """Degree ledger: deg [P_w]_{j,k} = w + k - j whenever a_j^{w,k} != 0.

    Entries with j > w + k always vanish; a recurrence coefficient a_j can
    also vanish sporadically for j <= w + k (e.g. ell=3, w=2, k=2, j=2), in
    which case the entry is zero as well.
    """
    pm = p_matrix(ell, w)
    for k in range(ell + 1):
        a = coefficient_vector(ell, w, k)
        for j in range(ell + 1):
            entry = pm[j, k]
            if j > w + k or a[j].is_zero():
                if not entry.is_zero():
                    return False
            elif entry.degree != w + k - j:
                return False
    return True
