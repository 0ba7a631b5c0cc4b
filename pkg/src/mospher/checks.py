"""Named verification checks shared by the CLI verify commands and the
acceptance suite.  Each check returns (ok, residual_string).

Exact checks report the residual "0" on success and "exact-mismatch" on
failure; numeric checks report the measured residual.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import so4, sn
from .classical import hahn_matrix
from .ioutil import fmt_float
from .polynomials import ConstMatrix, Poly, PolyMatrix
from .quadrature import gram, symmetry_residual
from .rationals import CRat, ZERO

EXACT_PASS = "0"
EXACT_FAIL = "exact-mismatch"


def _exact(ok: bool):
    return ok, EXACT_PASS if ok else EXACT_FAIL


def _numeric(value: float, tol: float):
    return value < tol, fmt_float(value)


# -- Hahn checks ---------------------------------------------------------------


def hahn_eigen(ell: int):
    st = so4.so4_structure(ell)
    U = hahn_matrix(ell).U
    m = st.C0 + st.C1
    ok = all(
        m.matvec(U.column(j)) == tuple(CRat(-j * (j + 1)) * x for x in U.column(j))
        for j in range(ell + 1)
    )
    return _exact(ok)


def _u_entry(U, ell, j, k):
    if 0 <= j <= ell and 0 <= k <= ell:
        return U[j, k]
    return ZERO


def hahn_recurrence_j(ell: int):
    U = hahn_matrix(ell).U
    ok = True
    for j in range(ell + 1):
        for k in range(ell + 1):
            lhs = CRat(j * (ell - j + 1) + (j + 1) * (ell - j) - k * (k + 1)) * U[j, k]
            rhs = CRat(j * (ell - j + 1)) * _u_entry(U, ell, j - 1, k) + CRat(
                (j + 1) * (ell - j)
            ) * _u_entry(U, ell, j + 1, k)
            ok = ok and lhs == rhs
    return _exact(ok)


def hahn_recurrence_k(ell: int):
    U = hahn_matrix(ell).U
    ok = True
    for j in range(ell + 1):
        for k in range(ell + 1):
            lhs = CRat(ell - 2 * j) * U[j, k]
            rhs = CRat(Fraction(k * (ell + k + 1), 2 * k + 1)) * _u_entry(
                U, ell, j, k - 1
            ) + CRat(Fraction((k + 1) * (ell - k), 2 * k + 1)) * _u_entry(U, ell, j, k + 1)
            ok = ok and lhs == rhs
    return _exact(ok)


def hahn_recurrence_mixed(ell: int):
    # Mixed first-order recurrence; re-derived from the j- and k-relations
    # (the + sign on the U_{j,k-1} term is the consistent one).
    U = hahn_matrix(ell).U
    ok = True
    for j in range(ell + 1):
        for k in range(ell + 1):
            lhs = CRat(
                k * (ell - j) - k * (k + j + 1) + 2 * (j + 1) * (ell - j)
            ) * U[j, k]
            rhs = CRat(2 * (j + 1) * (ell - j)) * _u_entry(U, ell, j + 1, k) + CRat(
                k * (k + ell + 1)
            ) * _u_entry(U, ell, j, k - 1)
            ok = ok and lhs == rhs
    return _exact(ok)


def hahn_conjugations(ell: int):
    st = so4.so4_structure(ell)
    U = hahn_matrix(ell).U
    ok = (
        st.A0 @ U == U @ (st.Q0 + st.Q1)
        and (st.C1 + st.C0) @ U == U @ st.V0.scale(-1)
        and (st.C1 - st.C0) @ U == U @ (st.Q1 @ st.J - st.Q0 @ st.J.shift(1))
    )
    return _exact(ok)


# -- hypergeometrization / eigenfunction checks --------------------------------


def para_d(ell: int):
    st = so4.so4_structure(ell)
    ps = so4.psi(ell)
    u = Poly.x()
    one_minus = Poly([1, 0, -1])
    lhs = ps.derivative().scale(one_minus).scale(2) - (st.C.to_poly_matrix() @ ps).scale(u)
    rhs = (ps @ st.S1) - (ps @ st.C).scale(u)
    return _exact(lhs == rhs)


def para_e(ell: int):
    st = so4.so4_structure(ell)
    ps = so4.psi(ell)
    u = Poly.x()
    one_minus = Poly([1, 0, -1])
    lhs = (st.Q0.to_poly_matrix().scale(one_minus) + st.Q1.to_poly_matrix()) @ ps
    lhs = lhs.scale(CRat(0, Fraction(1, 2)))
    rhs = (ps @ st.R2).scale(u) + ps @ st.R1
    return _exact(lhs == rhs)


def psi_eigen(ell: int):
    st = so4.so4_structure(ell)
    ps = so4.psi(ell)
    ok = (
        so4.apply_operator("Dbar", ell, ps) == ps @ st.Lambda0
        and so4.apply_operator("Ebar", ell, ps) == ps @ st.M0
    )
    return _exact(ok)


def bundle_eigen(ell: int, w: int):
    pm = so4.p_matrix(ell, w)
    tp = so4.tilde_p(ell, w)
    lam = so4.lambda_matrix(ell, w)
    mu = so4.mu_matrix(ell, w)
    ok = (
        so4.apply_operator("Dbar", ell, pm) == pm @ lam
        and so4.apply_operator("Ebar", ell, pm) == pm @ mu
        and so4.apply_operator("Dtilde", ell, tp) == tp @ lam
        and so4.apply_operator("Etilde", ell, tp) == tp @ mu
    )
    return _exact(ok)


def tilde_p0_identity(ell: int):
    return _exact(so4.tilde_p(ell, 0) == PolyMatrix.identity(ell + 1))


def degree_ledger(ell: int, w: int):
    return _exact(so4.degree_table_ok(ell, w))


def w0_closed_form(ell: int):
    ok = all(
        so4.coefficient_vector(ell, 0, k) == so4.coefficients_w0(ell, k)
        for k in range(ell + 1)
    )
    return _exact(ok)


def l_spectrum(ell: int, n: int):
    cert = so4.l_spectrum_certificate(ell, n)
    return _exact(
        cert["block_invariant"]
        and cert["spectrum_matches"]
        and cert["eigenvectors_regenerate"]
    )


# -- weight / quadrature checks -------------------------------------------------


def weight_hermitian(ell: int):
    wt = so4.so4_weight(ell)
    return _exact(wt.poly_part.conj_transpose() == wt.poly_part)


def weight_positive(ell: int, points=(-0.9, -0.5, 0.0, 0.5, 0.9)):
    wt = so4.so4_weight(ell)
    worst = math.inf
    for u in points:
        eigs = np.linalg.eigvalsh(wt.poly_part.eval_at(u))
        worst = min(worst, float(eigs.min()))
    return worst > 0, fmt_float(worst)


def weight_mass_ell0(nodes: int | None = None):
    wt = so4.so4_weight(0)
    g = gram(wt, so4.tilde_p(0, 0), so4.tilde_p(0, 0), nodes)
    resid = abs(g[0, 0] - 1.0)
    return _numeric(float(resid), 1e-13)


def so4_gram_pair(ell: int, w1: int, w2: int, nodes: int | None = None):
    wt = so4.so4_weight(ell)
    g = gram(wt, so4.tilde_p(ell, w1), so4.tilde_p(ell, w2), nodes)
    if w1 == w2:
        diag = np.diag(g)
        off = g - np.diag(diag)
        scale = float(np.max(np.abs(diag)))
        resid = float(np.max(np.abs(off))) / scale
        ok = resid < 1e-12 and bool((diag.real > 0).all()) and float(
            np.max(np.abs(diag.imag))
        ) < 1e-12 * scale
        return ok, fmt_float(resid)
    gnorm = gram(wt, so4.tilde_p(ell, w1), so4.tilde_p(ell, w1), nodes)
    scale = float(np.max(np.abs(np.diag(gnorm))))
    resid = float(np.max(np.abs(g))) / scale
    return _numeric(resid, 1e-12)


def so4_symmetry(ell: int, max_deg: int = 6, nodes: int | None = None):
    wt = so4.so4_weight(ell)
    rd = symmetry_residual(
        lambda v: so4.apply_operator("Dtilde", ell, v), wt, max_deg, nodes
    )
    re_ = symmetry_residual(
        lambda v: so4.apply_operator("Etilde", ell, v), wt, max_deg, nodes
    )
    return _numeric(max(rd, re_), 1e-10)


# -- Sn checks -------------------------------------------------------------------


def sn_scalar(ell: int, p: int, w: int):
    sh = sn.scalar_h(ell, p, w)
    ok = sn.scalar_h_residual(sh).is_zero() and sh.poly(1) == CRat(1) and sh.poly.degree == w
    return _exact(ok)


def sn_psi_columns(n: int, p: int):
    return _exact(sn.sn_psi_ode_residual(n, p).is_zero())


def sn_lambda_consistency(n: int, p: int):
    ok = sn.lambda_n(n, p, 0, 0) == -p and sn.lambda_n(n, p, 0, 1) == p - n
    return _exact(ok)


def sn_fundamental(n: int, p: int, w: int, delta: int):
    from .hypergeom import residual_2f1

    sol = sn.fundamental_p(n, p, w, delta)
    params = sn.sn_hyp_params(n, p, w, delta)
    lead = [q.coeff(w) for q in sol.poly]
    res = residual_2f1(params.C, params.sum_AB, params.prod_AB, list(sol.poly))
    ok = (
        max(q.degree for q in sol.poly) == w
        and not lead[delta].is_zero()
        and lead[1 - delta].is_zero()
        and all(r.is_zero() for r in res)
    )
    return _exact(ok)


def sn_w0_reproduces(n: int, p: int):
    ok = (
        sn.sn_h_polys(n, p, 0, 0) == (Poly([-1, 2]), Poly([1]))
        and sn.sn_h_polys(n, p, 0, 1) == (Poly([1]), Poly([-1, 2]))
    )
    return _exact(ok)


def sn_roots_scan(n: int, w_max: int = 50):
    from .quadfield import is_perfect_square

    for w in range(w_max + 1):
        for j in range(1, n):
            if 2 * j == n:
                continue
            if is_perfect_square(sn.root_discriminant(n, w, j)):
                return False, f"square at w={w}, j={j}"
    return True, EXACT_PASS


def sn_gram_pair(n: int, p: int, w1: int, w2: int, nodes: int | None = None):
    wt = sn.sn_weight(n, p)
    g = gram(wt, sn.sn_p_matrix(n, p, w1), sn.sn_p_matrix(n, p, w2), nodes)
    gnorm = gram(wt, sn.sn_p_matrix(n, p, w1), sn.sn_p_matrix(n, p, w1), nodes)
    scale = float(np.max(np.abs(np.diag(gnorm))))
    if w1 == w2:
        off = g - np.diag(np.diag(g))
        resid = float(np.max(np.abs(off))) / scale
        ok = resid < 1e-10 and bool((np.diag(g).real > 0).all())
        return ok, fmt_float(resid)
    resid = float(np.max(np.abs(g))) / scale
    return _numeric(resid, 1e-10)


def sn_weight_mass(n: int, p: int, nodes: int | None = None):
    from .quadrature import scalar_mass

    wt = sn.sn_weight(n, p)
    mass = scalar_mass(wt, nodes if nodes else 12)
    return _numeric(abs(mass - 1.0), 1e-13)


def sn_symmetry(n: int, p: int, max_deg: int = 6, nodes: int | None = None):
    wt = sn.sn_weight(n, p)
    r = symmetry_residual(lambda v: sn.apply_sn_operator(n, p, v), wt, max_deg, nodes)
    return _numeric(r, 1e-10)


# -- zonal ------------------------------------------------------------------------


def zonal_correspondence(n: int, k: int):
    from .zonal import IdentityViolated, correspondence_check

    try:
        rep = correspondence_check(n, k)
    except IdentityViolated:
        return False, EXACT_FAIL
    return _exact(rep.ok)
