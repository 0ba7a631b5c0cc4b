"""Spherical machinery for the n-sphere pairs: scalar bundle functions,
the fundamental 2x2 (and 3x3) vector equations, their hypergeometrization,
matrix Gauss-series solutions, and the weight.

The indicial quadratics x^2 - (n+1)x - (w+1)(w+n) + 2j have irrational
roots (their discriminants are never perfect squares); the corresponding
parameter matrices live over Q(sqrt(disc)) while every product the series
actually needs collapses back to the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .classical import hyp2f1_terminating
from .hypergeom import Hyp2F1Params, PolySolution, symbol_2f1
from .polynomials import ConstMatrix, Poly, PolyMatrix
from .quadfield import PerfectSquareDiscriminant, QuadExt, QuadExtMatrix, is_perfect_square
from .rationals import CRat, ZERO, binomial, pochhammer


@dataclass(frozen=True)
class SnFundamentalCase:
    """Fundamental bundle type with p ones, 1 <= p <= floor(n/2) - 1.

    d1 and d2 are the dimensions of the two little-group blocks; M_mat and
    N_diag are the constant matrices of the vector differential equation.
    """

    n: int
    p: int

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("fundamental 2x2 case needs n >= 4")
        if not (1 <= self.p <= self.ell - 1):
            raise ValueError("need 1 <= p <= floor(n/2) - 1")

    @property
    def ell(self) -> int:
        return self.n // 2

    @property
    def M_mat(self) -> ConstMatrix:
        return ConstMatrix([[0, self.p - self.n], [-self.p, 0]])

    @property
    def N_diag(self) -> ConstMatrix:
        return ConstMatrix.diag([self.p - self.n, -self.p])

    @property
    def d1(self) -> int:
        return binomial(self.n - 1, self.p - 1)

    @property
    def d2(self) -> int:
        return binomial(self.n - 1, self.p)


def sn_psi() -> PolyMatrix:
    """The 2x2 hypergeometrizing matrix [[2y-1, 1], [1, 2y-1]]."""
    t = Poly([-1, 2])
    one = Poly([1])
    return PolyMatrix.from_rows([[t, one], [one, t]])


def sn_psi_ode_residual(n: int, p: int) -> PolyMatrix:
    """Exact residual (times 4y(1-y)) of the vector equation on the columns of psi.

    Zero iff each column is an eigenfunction with eigenvalue diag(-p, p-n).
    """
    case = SnFundamentalCase(n, p)
    ps = sn_psi()
    y = Poly.x()
    y1my = y * (1 - y)
    one_m_2y = Poly([1, -2])
    d1 = ps.derivative()
    d2 = d1.derivative()
    lhs = (
        d2.scale(y1my * y1my * 4)
        + d1.scale(y1my * one_m_2y * (2 * n))
        + (case.N_diag.to_poly_matrix() @ ps).scale(Poly([1]) + one_m_2y * one_m_2y)
        + (case.M_mat.to_poly_matrix() @ ps).scale(one_m_2y * 2)
    )
    eig = ConstMatrix.diag([-p, p - n])
    rhs = (ps @ eig).scale(y1my * 4)
    return lhs - rhs


@dataclass(frozen=True)
class ScalarH:
    """Scalar bundle function h_w(y) = u y^p 2F1(p-w, 2l+p+w-1; 2p+l; y), h_w(1) = 1."""

    ell: int
    p: int
    w: int
    poly: Poly
    normalizer: Fraction
    eigenvalue: int


def scalar_h(ell: int, p: int, w: int) -> ScalarH:
    """Scalar spherical function on the even sphere n = 2*ell for type (p,...,p,+-p)."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if p < 0 or w < p:
        raise ValueError("need 0 <= p <= w")
    f = hyp2f1_terminating(p - w, 2 * ell + p + w - 1, 2 * p + ell, Poly.x())
    h = Poly.monomial(p) * f
    value = h(1)
    if value.is_zero():
        raise ArithmeticError("h(1) vanished; normalization impossible")
    normalizer = Fraction(1) / value.re
    lam = -w * (w + 2 * ell - 1) + p * (p + ell - 1)
    return ScalarH(
        ell=ell, p=p, w=w, poly=h.scale(normalizer), normalizer=normalizer,
        eigenvalue=lam,
    )


def scalar_h_residual(sh: ScalarH) -> Poly:
    """Exact residual (times y) of the scalar equation.

    y^2(1-y) h'' + ell y (1-2y) h' - p(p+ell-1)(1-y) h - lambda y h = 0.
    """
    y = Poly.x()
    h = sh.poly
    out = (
        y * y * (1 - y) * h.derivative().derivative()
        + (y * Poly([1, -2])).scale(sh.ell) * h.derivative()
        - (Poly([1, -1]) * h).scale(sh.p * (sh.p + sh.ell - 1))
        - (y * h).scale(sh.eigenvalue)
    )
    return out


def lambda_n(n: int, p: int, w: int, delta: int) -> int:
    """Eigenvalue -(w+1)(w+n) + (n-p) for delta = 0, and + p for delta = +-1."""
    if delta == 0:
        return -(w + 1) * (w + n) + n - p
    if delta in (1, -1):
        return -(w + 1) * (w + n) + p
    raise ValueError("delta must be -1, 0 or 1")


def root_discriminant(n: int, w: int, j: int) -> int:
    """Discriminant (2w+n+1)^2 + 8(n/2 - j) of x^2 - (n+1)x - (w+1)(w+n) + 2j."""
    return (2 * w + n + 1) ** 2 + 4 * (n - 2 * j)


@dataclass(frozen=True)
class SnHypParams:
    """Gauss-equation data for one bundle column on the n-sphere.

    A and B live over Q(sqrt(disc)); their sum and product collapse to
    exact rational matrices (checked at construction).  root is the fixed
    choice ((n+1) + sqrt(disc))/2.
    """

    n: int
    p: int
    w: int
    delta: int
    A: QuadExtMatrix
    B: QuadExtMatrix
    C: ConstMatrix
    sum_AB: ConstMatrix
    prod_AB: ConstMatrix
    root: QuadExt
    disc: int

    @property
    def root_float(self) -> float:
        return float(self.root)

    def hyp_params(self) -> Hyp2F1Params:
        return Hyp2F1Params(A=self.A, B=self.B, C=QuadExtMatrix.from_const(self.C, self.disc))

    def hyp_params_float(self) -> Hyp2F1Params:
        """Float-matrix variant for the truncated series evaluator."""

        def subst(m: QuadExtMatrix) -> np.ndarray:
            return np.array([[float(x) for x in row] for row in m.rows])

        return Hyp2F1Params(A=_FloatMatrix(subst(self.A)),
                            B=_FloatMatrix(subst(self.B)),
                            C=_FloatMatrix(self.C.to_numpy().real))


class _FloatMatrix:
    """Minimal float matrix wrapper with the rows/n surface the evaluator expects."""

    def __init__(self, arr: np.ndarray):
        self.arr = np.asarray(arr, dtype=float)
        self.n = self.arr.shape[0]
        self.rows = self.arr.tolist()


def sn_hyp_params(n: int, p: int, w: int, delta: int) -> SnHypParams:
    """Exact (A, B, C) for the 2x2 fundamental column with p ones (p < floor(n/2))."""
    SnFundamentalCase(n, p)  # range validation
    if w < 0 or delta not in (0, 1):
        raise ValueError("need w >= 0 and delta in {0, 1}")
    j = n - p if delta == 0 else p
    disc = root_discriminant(n, w, j)
    if is_perfect_square(disc):
        raise PerfectSquareDiscriminant(
            f"disc = {disc} is a perfect square at n={n}, p={p}, w={w}, delta={delta}"
        )
    root = QuadExt(Fraction(n + 1, 2), Fraction(1, 2), disc)
    minus_w = QuadExt(-w, 0, disc)
    w_n_1 = QuadExt(w + n + 1, 0, disc)
    n1_minus_root = QuadExt(n + 1, 0, disc) - root
    if delta == 0:
        A = QuadExtMatrix.diag([minus_w, root], disc)
        B = QuadExtMatrix.diag([w_n_1, n1_minus_root], disc)
    else:
        A = QuadExtMatrix.diag([root, minus_w], disc)
        B = QuadExtMatrix.diag([n1_minus_root, w_n_1], disc)
    C = ConstMatrix([[Fraction(n + 2, 2), 1], [1, Fraction(n + 2, 2)]])
    sum_ab = (A + B).to_const_matrix()  # raises if any sqrt part survives
    prod_ab = (A @ B).to_const_matrix()
    if sum_ab != ConstMatrix.diag([n + 1, n + 1]):
        raise ArithmeticError("A + B must equal (n+1) I")
    return SnHypParams(
        n=n, p=p, w=w, delta=delta, A=A, B=B, C=C,
        sum_AB=sum_ab, prod_AB=prod_ab, root=root, disc=disc,
    )


def _gauss_symbols(params: SnHypParams, upto: int):
    """Rational Gauss symbols (C;A;B)_m for m = 0..upto (sqrt parts collapse)."""
    hp = params.hyp_params()
    sym = symbol_2f1(hp, 0)
    out = [sym.to_const_matrix()]
    for m in range(upto):
        sym = (
            QuadExtMatrix.from_const(params.C.shift(m).inverse(), params.disc)
            @ params.A.shift(m) @ params.B.shift(m) @ sym
        )
        out.append(sym.to_const_matrix())
    return out


def fundamental_p(n: int, p: int, w: int, delta: int) -> PolySolution:
    """The degree-w polynomial bundle column on the n-sphere.

    P(y) = sum_{m<=w} y^m/m! (C;A;B)_m P0 with P0 fixed by the two
    endpoint conditions: entries of P(1) sum to 1, and the leading
    coefficient points along e_delta.
    """
    params = sn_hyp_params(n, p, w, delta)
    syms = _gauss_symbols(params, w + 1)
    # Row conditions on P0 = (x0, x1):
    #   r1 . P0 = 1   with r1 = column sums of sum_m syms[m]/m!
    #   r2 . P0 = 0   with r2 = row (1 - delta) of syms[w]
    acc = ConstMatrix.zero(2)
    fact = Fraction(1)
    for m in range(w + 1):
        acc = acc + syms[m].scale(Fraction(1, math.factorial(m)))
    r1 = [acc[0, 0] + acc[1, 0], acc[0, 1] + acc[1, 1]]
    other = 1 - delta
    r2 = [syms[w][other, 0], syms[w][other, 1]]
    det = r1[0] * r2[1] - r1[1] * r2[0]
    if det.is_zero():
        raise ArithmeticError("endpoint conditions are degenerate")
    x0 = r2[1] / det
    x1 = -r2[0] / det
    p0 = (x0, x1)
    coeffs = []
    for m in range(w + 1):
        v = syms[m].matvec(p0)
        coeffs.append([x / math.factorial(m) for x in v])
    lead = coeffs[w]
    if lead[delta].is_zero() or not lead[other].is_zero():
        raise ArithmeticError("leading coefficient is not along e_delta")
    # Termination: (A+w)(B+w) annihilates the leading direction.
    nxt = params.A.shift(w) @ params.B.shift(w)
    nxt_c = nxt.to_const_matrix().matvec(lead)
    if any(not x.is_zero() for x in nxt_c):
        raise ArithmeticError("series does not terminate at degree w")
    polys = tuple(Poly([coeffs[m][i] for m in range(w + 1)]) for i in range(2))
    return PolySolution(degree=w, initial_vector=p0, poly=polys)


def sn_p_matrix(n: int, p: int, w: int) -> PolyMatrix:
    """2x2 bundle matrix with columns fundamental_p(delta = 0, 1)."""
    cols = [fundamental_p(n, p, w, d).poly for d in (0, 1)]
    return PolyMatrix.from_rows(
        [[cols[0][i], cols[1][i]] for i in range(2)]
    )


def sn_h_polys(n: int, p: int, w: int, delta: int):
    """H = psi * P for one column, as a pair of exact Polys in y."""
    sol = fundamental_p(n, p, w, delta)
    ps = sn_psi()
    col = PolyMatrix.column(list(sol.poly))
    h = ps @ col
    return tuple(h[i, 0] for i in range(2))


@dataclass(frozen=True)
class SnWeight:
    """Matrix weight on [0, 1]: c_n (y(1-y))^{n/2-1} psi(y)^T diag(d1, d2) psi(y).

    For even n the half-power is an exact Poly folded into the integrand;
    for odd n it is carried by a Gauss-Jacobi rule with alpha = beta = n/2-1.
    """

    n: int
    p: int
    d1: int
    d2: int
    poly_part: PolyMatrix
    scalar_tag: str

    interval = (0.0, 1.0)

    @property
    def quad_kind(self):
        if self.n % 2 == 0:
            return "legendre"
        return ("jacobi", Fraction(self.n - 2, 2), Fraction(self.n - 2, 2))

    @property
    def scalar_const(self) -> float:
        return math.factorial(self.n - 1) / math.gamma(self.n / 2) ** 2

    @property
    def extra_poly(self):
        if self.n % 2 == 0:
            e = self.n // 2 - 1
            base = Poly.x() * Poly([1, -1])
            out = Poly([1])
            for _ in range(e):
                out = out * base
            return out
        return None

    @property
    def size(self) -> int:
        return 2


@lru_cache(maxsize=None)
def sn_weight(n: int, p: int) -> SnWeight:
    case = SnFundamentalCase(n, p)
    ps = sn_psi()
    middle = ConstMatrix.diag([case.d1, case.d2])
    poly_part = ps.transpose() @ middle @ ps
    tag = f"({n-1})!/Gamma({n}/2)^2 * (y(1-y))^({n}/2-1)"
    return SnWeight(
        n=n, p=p, d1=case.d1, d2=case.d2, poly_part=poly_part, scalar_tag=tag
    )


# -- the (1,...,1) 3x3 type ---------------------------------------------------


@dataclass(frozen=True)
class SnTriple111:
    """Constant matrices of the 3x3 vector equation for the all-ones type, n = 2*ell+1."""

    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError("the all-ones type needs odd n >= 3")

    @property
    def ell(self) -> int:
        return (self.n - 1) // 2

    @property
    def M_mat(self) -> ConstMatrix:
        ell = self.ell
        half = Fraction(ell + 1, 2)
        return ConstMatrix(
            [[0, -ell, 0], [-half, 0, -half], [0, -ell, 0]]
        )

    @property
    def N_diag(self) -> ConstMatrix:
        ell = self.ell
        return ConstMatrix.diag([-ell, -ell - 1, -ell])


def triple111_params(n: int, w: int, delta: int) -> SnHypParams:
    """Gauss-equation data for the 3x3 all-ones column, delta in {-1, 0, 1}.

    The quadratic constant is n+1 for delta = 0 and n-1 for delta = +-1,
    so the discriminants are (2w+n+1)^2 -+ 4.
    """
    SnTriple111(n)  # validation
    if w < 0 or delta not in (-1, 0, 1):
        raise ValueError("need w >= 0 and delta in {-1, 0, 1}")
    two_j = n + 1 if delta == 0 else n - 1
    disc = (2 * w + n + 1) ** 2 + 4 * (n - two_j)
    if is_perfect_square(disc):
        raise PerfectSquareDiscriminant(
            f"disc = {disc} is a perfect square at n={n}, w={w}, delta={delta}"
        )
    root = QuadExt(Fraction(n + 1, 2), Fraction(1, 2), disc)
    minus_w = QuadExt(-w, 0, disc)
    w_n_1 = QuadExt(w + n + 1, 0, disc)
    co_root = QuadExt(n + 1, 0, disc) - root
    if delta == 0:
        A = QuadExtMatrix.diag([minus_w, root, minus_w], disc)
        B = QuadExtMatrix.diag([w_n_1, co_root, w_n_1], disc)
    else:
        A = QuadExtMatrix.diag([root, minus_w, root], disc)
        B = QuadExtMatrix.diag([co_root, w_n_1, co_root], disc)
    half = Fraction(n + 2, 2)
    C = ConstMatrix(
        [[half, Fraction(1, 2), 0], [1, half, 1], [0, Fraction(1, 2), half]]
    )
    sum_ab = (A + B).to_const_matrix()
    prod_ab = (A @ B).to_const_matrix()
    if sum_ab != ConstMatrix.diag([n + 1] * 3):
        raise ArithmeticError("A + B must equal (n+1) I")
    return SnHypParams(
        n=n, p=(n - 1) // 2, w=w, delta=delta, A=A, B=B, C=C,
        sum_AB=sum_ab, prod_AB=prod_ab, root=root, disc=disc,
    )


def triple111_operator(n: int, w: int = 0):
    """The 3x3 case bundle: constant matrices plus Gauss data for each delta.

    The orthogonal-sequence construction is deliberately not provided for
    this type; series evaluation goes through the truncated evaluator.
    """
    case = SnTriple111(n)
    params = {delta: triple111_params(n, w, delta) for delta in (-1, 0, 1)}
    return case, params


def triple111_weight_experimental(n: int, dims):
    """EXPERIMENTAL: numeric weight evaluator for the all-ones type.

    The block dimensions are not pinned down here and the 3x3
    hypergeometrizing matrix is not polynomial, so this returns a plain
    callable y -> numpy matrix built from the explicit psi(y) and
    diag(dims).  Not part of the verified surface.
    """
    SnTriple111(n)
    d = np.asarray([float(x) for x in dims], dtype=float)
    if d.shape != (3,):
        raise ValueError("dims must have length 3")
    c = math.factorial(n - 1) / math.gamma(n / 2) ** 2

    def weight_at(y: float) -> np.ndarray:
        t = 2.0 * y - 1.0
        s = 1j * math.sqrt(max(1.0 - t * t, 0.0))
        psi_y = np.array(
            [[t + s, 1.0, t - s], [1.0, t, 1.0], [t - s, 1.0, t + s]],
            dtype=complex,
        )
        core = psi_y.conj().T @ np.diag(d) @ psi_y
        return c * (y * (1.0 - y)) ** (n / 2.0 - 1.0) * core

    return weight_at


def apply_sn_operator(n: int, p: int, vec):
    """Apply the hypergeometrized second-order operator of the 2x2 case.

    D P = y(1-y) P'' - [[q, -1], [-1, q]] P' - diag(p, n-p) P with
    q = (n/2+1)(2y-1); symmetric with respect to the case weight.
    """
    vec = [Poly.coerce(q) for q in vec]
    if len(vec) != 2:
        raise ValueError("operand must have two components")
    y = Poly.x()
    y1my = y * (1 - y)
    q = Poly([Fraction(-(n + 2), 2), Fraction(n + 2)])  # (n/2+1)(2y-1)
    f1 = [v.derivative() for v in vec]
    f2 = [v.derivative() for v in f1]
    return [
        y1my * f2[0] - q * f1[0] + f1[1] - vec[0].scale(p),
        y1my * f2[1] - q * f1[1] + f1[0] - vec[1].scale(n - p),
    ]


def roots_scan_ok(n_max: int, w_max: int) -> bool:
    """Discriminants (2w+n+1)^2 + 8(n/2 - j) are never perfect squares over valid j.

    j = n/2 is excluded: there the discriminant degenerates to (2w+n+1)^2
    exactly, but no admissible bundle type produces it (j is p or n-p with
    1 <= p <= floor(n/2)-1, or (n-+1)/2 for the odd all-ones type).
    """
    for n in range(2, n_max + 1):
        for w in range(w_max + 1):
            for j in range(1, n):
                if 2 * j == n:
                    continue
                if is_perfect_square(root_discriminant(n, w, j)):
                    return False
    return True
