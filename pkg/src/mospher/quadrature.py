"""Gaussian quadrature rules matched to the package's scalar weight factors,
Gram matrices against matrix weights, and operator-symmetry residuals.

Rules: Chebyshev second kind on [-1, 1] in closed form; Legendre and
symmetric Jacobi on [0, 1] by Golub-Welsch (eigenvalues of the symmetric
tridiagonal recurrence matrix; weights from first eigenvector components).
An exact-moment oracle provides an independent check path.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .polynomials import Poly, PolyMatrix

NODES_ENV = "MOSPHER_NODES"


class InsufficientNodes(ValueError):
    """The requested rule cannot integrate the polynomial integrand exactly."""


@dataclass(frozen=True)
class QuadRule:
    """Nodes and weights of a Gaussian rule for one scalar weight factor.

    kind is "chebyshev2" (weight sqrt(1-u^2) on [-1,1]), "legendre"
    (weight 1 on [0,1]) or "jacobi" (weight (y(1-y))^alpha on [0,1],
    alpha = beta).  m nodes integrate polynomial degree <= 2m-1 exactly.
    """

    kind: str
    alpha: Fraction | None
    beta: Fraction | None
    interval: tuple
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def npoints(self) -> int:
        return len(self.nodes)


def build_rule(kind, m: int, alpha=None, beta=None) -> QuadRule:
    """Build an m-point rule of the requested kind."""
    if m < 1:
        raise ValueError("need at least one node")
    if isinstance(kind, tuple):
        kind, alpha, beta = kind[0], kind[1], kind[2]
    if kind == "chebyshev2":
        i = np.arange(1, m + 1)
        theta = i * math.pi / (m + 1)
        nodes = np.cos(theta)
        weights = (math.pi / (m + 1)) * np.sin(theta) ** 2
        return QuadRule("chebyshev2", None, None, (-1.0, 1.0),
                        nodes[::-1].copy(), weights[::-1].copy())
    if kind == "legendre":
        alpha = beta = Fraction(0)
    elif kind == "jacobi":
        alpha = Fraction(alpha)
        beta = Fraction(beta if beta is not None else alpha)
        if alpha != beta:
            raise ValueError("only symmetric jacobi weights are used here")
    else:
        raise ValueError(f"unknown rule kind {kind!r}")
    nodes, weights = _gauss_jacobi_01(m, float(alpha), float(beta))
    return QuadRule(kind, alpha, beta, (0.0, 1.0), nodes, weights)


def _gauss_jacobi_01(m: int, a: float, b: float):
    """Golub-Welsch nodes/weights on [0, 1] for the weight y^b (1-y)^a."""
    # Standard Jacobi recurrence on [-1, 1] with weight (1-x)^a (1+x)^b.
    k = np.arange(m, dtype=float)
    apb = a + b
    diag = np.empty(m)
    denom = (2 * k + apb) * (2 * k + apb + 2)
    with np.errstate(invalid="ignore", divide="ignore"):
        diag = (b * b - a * a) / denom
    if apb == 0:
        diag[0] = 0.0
    else:
        diag[0] = (b - a) / (apb + 2)
    kk = np.arange(1, m, dtype=float)
    num = 4 * kk * (kk + a) * (kk + b) * (kk + apb)
    den = (2 * kk + apb) ** 2 * (2 * kk + apb + 1) * (2 * kk + apb - 1)
    if m > 1 and apb + 1 == 0:
        # first off-diagonal needs the limit form; not hit for our weights
        den[0] = (2 + apb) ** 2 * (apb + 3) * 1.0
    off = np.sqrt(num / den)
    x, v = eigh_tridiagonal(diag, off)
    mu0 = 2.0 ** (apb + 1) * math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(apb + 2)
    w = mu0 * v[0, :] ** 2
    # Map to [0, 1]: y = (1+x)/2, weight scales by 2^{-(a+b+1)}.
    return (1.0 + x) / 2.0, w / 2.0 ** (apb + 1)


def chebyshev2_moment(k: int) -> tuple[Fraction, bool]:
    """Exact integral of u^k sqrt(1-u^2) over [-1,1] as (coefficient, has_pi)."""
    if k % 2 == 1:
        return Fraction(0), False
    m = k // 2
    coef = Fraction(math.factorial(2 * m), 2 * 4**m * math.factorial(m) * math.factorial(m + 1))
    return coef, True


def jacobi01_moment(k: int, twice_exponent: int) -> tuple[Fraction, bool]:
    """Exact integral of y^k (y(1-y))^{c} over [0,1] with c = twice_exponent/2.

    Returns (coefficient, has_pi): the value is coefficient * pi when the
    exponent is half-integral, else just coefficient.
    """
    tw = twice_exponent
    if tw % 2 == 0:
        c = tw // 2
        num = math.factorial(k + c) * math.factorial(c)
        den = math.factorial(k + 2 * c + 1)
        return Fraction(num, den), False
    # Gamma(a) Gamma(b) / Gamma(a + b) with a = k + c + 1, b = c + 1 half-integral:
    # Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!).
    def gamma_half(twice: int) -> Fraction:
        # Gamma(twice/2) for odd twice >= 1, divided by sqrt(pi).
        mm = (twice - 1) // 2
        return Fraction(math.factorial(2 * mm), 4**mm * math.factorial(mm))

    a2 = 2 * k + tw + 2  # 2a
    b2 = tw + 2          # 2b
    coef = gamma_half(a2) * gamma_half(b2) / Fraction(math.factorial((a2 + b2) // 2 - 1))
    return coef, True


def _weight_rule(weight, m: int) -> QuadRule:
    kind = weight.quad_kind
    if isinstance(kind, tuple):
        return build_rule("jacobi", m, alpha=kind[1], beta=kind[2])
    return build_rule(kind, m)


def _as_poly_matrix(p) -> PolyMatrix:
    if isinstance(p, PolyMatrix):
        return p
    return PolyMatrix.column([Poly.coerce(q) for q in p])


def default_nodes(total_degree: int) -> int:
    """Default node count: exactness margin of 8 over the minimum."""
    env = os.environ.get(NODES_ENV)
    if env:
        return int(env)
    return total_degree // 2 + 8


def required_nodes(weight, P: PolyMatrix, Q: PolyMatrix) -> int:
    extra = weight.extra_poly.degree if weight.extra_poly is not None else 0
    total = int(weight.poly_part.degree + max(P.degree, 0) + max(Q.degree, 0) + extra)
    return total // 2 + 1


def gram(weight, P, Q, m: int | None = None) -> np.ndarray:
    """<P, Q>_W = integral of Q(x)^* W(x) P(x) dx, by a rule exact for the integrand."""
    P = _as_poly_matrix(P)
    Q = _as_poly_matrix(Q)
    need = required_nodes(weight, P, Q)
    if m is None:
        extra = weight.extra_poly.degree if weight.extra_poly is not None else 0
        m = default_nodes(int(weight.poly_part.degree + max(P.degree, 0) + max(Q.degree, 0) + extra))
    if m < need:
        raise InsufficientNodes(f"need at least {need} nodes, got {m}")
    rule = _weight_rule(weight, m)
    wvals = weight.poly_part.eval_grid(rule.nodes)
    pvals = P.eval_grid(rule.nodes)
    qvals = Q.eval_grid(rule.nodes)
    factors = rule.weights * weight.scalar_const
    if weight.extra_poly is not None:
        coeffs = weight.extra_poly.float_coeffs().real
        factors = factors * np.polyval(coeffs[::-1], rule.nodes)
    integrand = np.einsum("xji,xjk,xkl->xil", qvals.conj(), wvals, pvals)
    return np.einsum("x,xil->il", factors, integrand)


def scalar_mass(weight, m: int) -> float:
    """Integral of the weight's scalar factor alone (normalization check)."""
    rule = _weight_rule(weight, m)
    factors = rule.weights * weight.scalar_const
    if weight.extra_poly is not None:
        coeffs = weight.extra_poly.float_coeffs().real
        factors = factors * np.polyval(coeffs[::-1], rule.nodes)
    return float(factors.sum())


def symmetry_residual(operator, weight, max_deg: int, m: int | None = None) -> float:
    """max over monomial vectors of |<Op P, Q> - <P, Op Q>|.

    operator maps a list of Poly (length weight.size) to a list of Poly.
    All pairings are evaluated on one shared node grid.
    """
    size = weight.size
    basis = []
    for deg in range(max_deg + 1):
        for j in range(size):
            vec = [Poly.zero()] * size
            vec[j] = Poly.monomial(deg)
            basis.append(vec)
    applied = [operator(v) for v in basis]
    op_deg = max(
        (int(p.degree) for v in applied for p in v if not p.is_zero()), default=0
    )
    extra = weight.extra_poly.degree if weight.extra_poly is not None else 0
    if m is None:
        m = default_nodes(int(weight.poly_part.degree) + max_deg + op_deg + int(extra))
    rule = _weight_rule(weight, m)
    factors = rule.weights * weight.scalar_const
    if weight.extra_poly is not None:
        coeffs = weight.extra_poly.float_coeffs().real
        factors = factors * np.polyval(coeffs[::-1], rule.nodes)
    wvals = weight.poly_part.eval_grid(rule.nodes)  # (X, d, d)

    def grid_values(vectors) -> np.ndarray:
        out = np.empty((len(vectors), len(rule.nodes), size), dtype=complex)
        for a, vec in enumerate(vectors):
            out[a] = _as_poly_matrix(vec).eval_grid(rule.nodes)[:, :, 0]
        return out

    vals = grid_values(basis)      # (N, X, d)
    opvals = grid_values(applied)  # (N, X, d)
    w_op = np.einsum("xij,axj->axi", wvals, opvals)
    w_val = np.einsum("xij,axj->axi", wvals, vals)
    lhs = np.einsum("x,bxi,axi->ab", factors, vals.conj(), w_op)
    rhs = np.einsum("x,bxi,axi->ab", factors, opvals.conj(), w_val)
    return float(np.max(np.abs(lhs - rhs)))
