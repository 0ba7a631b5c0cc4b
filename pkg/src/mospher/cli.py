"""Command-line front end: table generation, verification suites, plot-ready CSV.

Exit codes: 0 all requested checks pass, 1 at least one check failed,
2 usage errors.  Data goes to stdout; verify reports go to stdout unless
--report-stderr moves them to stderr.  MOSPHER_NODES overrides the default
quadrature node count.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import checks, sn, so4, zonal
from .ioutil import SCHEMA, csv_lines, fmt_float, json_dumps
from .rationals import rational_to_str


def _crat_json(c):
    return c.to_json()


def _build_so4_gen(ell: int, w: int) -> dict:
    pm = so4.p_matrix(ell, w)
    tp = so4.tilde_p(ell, w)
    wt = so4.so4_weight(ell)
    indices = [so4.So4Index(ell, w, k).to_json() for k in range(ell + 1)]
    return {
        "schema": SCHEMA,
        "command": "so4 gen",
        "ell": ell,
        "w": w,
        "indices": indices,
        "lambda_w": [str(so4.eigenvalue_lambda(w, k)) for k in range(ell + 1)],
        "mu_w": [rational_to_str(so4.eigenvalue_mu(ell, w, k)) for k in range(ell + 1)],
        "p_w": pm.to_json(),
        "p_tilde_w": tp.to_json(),
        "weight": {
            "scalar_factor": wt.scalar_tag,
            "poly_part": wt.poly_part.to_json(),
        },
    }


def _build_sn_fundamental(n: int, p: int, w: int, delta: int) -> dict:
    sol = sn.fundamental_p(n, p, w, delta)
    params = sn.sn_hyp_params(n, p, w, delta)
    case = sn.SnFundamentalCase(n, p)
    h = sn.sn_h_polys(n, p, w, delta)
    return {
        "schema": SCHEMA,
        "command": "sn fundamental",
        "n": n,
        "p": p,
        "w": w,
        "delta": delta,
        "lambda": str(sn.lambda_n(n, p, w, delta)),
        "case": {
            "ell": case.ell,
            "d1": case.d1,
            "d2": case.d2,
            "m_mat": case.M_mat.to_json(),
            "n_diag": case.N_diag.to_json(),
        },
        "root": params.root.to_json(),
        "p0": [_crat_json(c) for c in sol.initial_vector],
        "p_poly": [q.to_json() for q in sol.poly],
        "h_poly": [q.to_json() for q in h],
    }


def _build_sn_scalar(n: int, p: int, w: int) -> dict:
    ell = n // 2
    sh = sn.scalar_h(ell, p, w)
    resid = sn.scalar_h_residual(sh)
    return {
        "schema": SCHEMA,
        "command": "sn scalar",
        "n": n,
        "p": p,
        "w": w,
        "lambda": str(sh.eigenvalue),
        "normalizer": rational_to_str(sh.normalizer),
        "h": sh.poly.to_json(),
        "ode_residual": "0" if resid.is_zero() else "nonzero",
    }


class _Reporter:
    def __init__(self, to_stderr: bool):
        self.stream = sys.stderr if to_stderr else sys.stdout
        self.failed = 0
        self.total = 0

    def record(self, name: str, ok: bool, residual: str):
        self.total += 1
        if not ok:
            self.failed += 1
        print(f"CHECK {name} {'PASS' if ok else 'FAIL'} {residual}", file=self.stream)

    def exit_code(self) -> int:
        return 0 if self.failed == 0 else 1


def _run_so4_verify(ell: int, max_w: int, nodes, report: _Reporter):
    report.record("hahn_eigen", *checks.hahn_eigen(ell))
    report.record("hahn_recurrence_j", *checks.hahn_recurrence_j(ell))
    report.record("hahn_recurrence_k", *checks.hahn_recurrence_k(ell))
    report.record("hahn_recurrence_mixed", *checks.hahn_recurrence_mixed(ell))
    report.record("hahn_conjugations", *checks.hahn_conjugations(ell))
    report.record("para_d", *checks.para_d(ell))
    report.record("para_e", *checks.para_e(ell))
    report.record("psi_eigen", *checks.psi_eigen(ell))
    report.record("tilde_p0_identity", *checks.tilde_p0_identity(ell))
    report.record("w0_closed_form", *checks.w0_closed_form(ell))
    for w in range(max_w + 1):
        report.record(f"bundle_eigen_w{w}", *checks.bundle_eigen(ell, w))
        report.record(f"degree_ledger_w{w}", *checks.degree_ledger(ell, w))
    for n in range(max_w + 1):
        report.record(f"l_spectrum_n{n}", *checks.l_spectrum(ell, n))
    report.record("weight_hermitian", *checks.weight_hermitian(ell))
    report.record("weight_positive", *checks.weight_positive(ell))
    if ell == 0:
        report.record("weight_mass", *checks.weight_mass_ell0(nodes))
    for w1 in range(max_w + 1):
        for w2 in range(w1, max_w + 1):
            report.record(
                f"gram_w{w1}_w{w2}", *checks.so4_gram_pair(ell, w1, w2, nodes)
            )
    report.record("symmetry", *checks.so4_symmetry(ell, 6, nodes))


def _run_sn_verify(n: int, p: int, max_w: int, nodes, report: _Reporter):
    if n % 2 == 0:
        ell = n // 2
        for w in range(p, p + max_w + 1):
            report.record(f"scalar_h_w{w}", *checks.sn_scalar(ell, p, w))
    report.record("psi_columns", *checks.sn_psi_columns(n, p))
    report.record("lambda_consistency", *checks.sn_lambda_consistency(n, p))
    for w in range(max_w + 1):
        for delta in (0, 1):
            report.record(
                f"fundamental_w{w}_d{delta}", *checks.sn_fundamental(n, p, w, delta)
            )
    report.record("w0_reproduces_endpoints", *checks.sn_w0_reproduces(n, p))
    report.record("roots_scan", *checks.sn_roots_scan(n))
    for w1 in range(max_w + 1):
        for w2 in range(w1, max_w + 1):
            report.record(f"gram_w{w1}_w{w2}", *checks.sn_gram_pair(n, p, w1, w2, nodes))
    report.record("weight_mass", *checks.sn_weight_mass(n, p, nodes))
    report.record("symmetry_d", *checks.sn_symmetry(n, p, 6, nodes))


def _fmt_complex(z: complex) -> str:
    if z.imag == 0.0:
        return fmt_float(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt_float(z.real)}{sign}{fmt_float(abs(z.imag))}i"


def _so4_eval_csv(ell: int, w: int, k: int, grid: int) -> str:
    header = "u," + ",".join(f"h_{j}" for j in range(ell + 1))
    rows = []
    for i in range(grid):
        u = -1.0 + 2.0 * (i + 1) / grid  # grid points of (-1, 1]
        h = so4.h_eval(ell, w, k, u)
        rows.append([u] + [_fmt_complex(complex(x)) for x in h])
    return csv_lines(header, rows)


def _zonal_grid_csv(space: str, n: int, j: int, grid: int) -> str:
    fam = zonal.zonal_family(space, n)
    phi = zonal.zonal_phi(fam, j)
    rows = []
    for i in range(grid):
        theta = math.pi * i / max(grid - 1, 1)
        rows.append([theta, float(phi(complex(math.cos(theta))).real)])
    return csv_lines("theta,phi_j(cos theta)", rows)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mospher",
        description="Matrix orthogonal polynomials and spherical functions on spheres.",
    )
    sub = ap.add_subparsers(dest="group", required=True)

    so4p = sub.add_parser("so4", help="3-sphere bundle commands")
    so4sub = so4p.add_subparsers(dest="action", required=True)
    g = so4sub.add_parser("gen", help="emit P_w, tilde P_w, eigenvalues and weight")
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--w", type=int, required=True)
    g.add_argument("--format", choices=["json"], default="json")
    v = so4sub.add_parser("verify", help="full invariant suite")
    v.add_argument("--ell", type=int, required=True)
    v.add_argument("--max-w", type=int, required=True)
    v.add_argument("--nodes", type=int, default=None)
    v.add_argument("--report-stderr", action="store_true")
    e = so4sub.add_parser("eval", help="CSV grid of H(u)")
    e.add_argument("--ell", type=int, required=True)
    e.add_argument("--w", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--grid", type=int, required=True)

    snp = sub.add_parser("sn", help="n-sphere commands")
    snsub = snp.add_subparsers(dest="action", required=True)
    f = snsub.add_parser("fundamental", help="emit P_{w,delta}, H, lambda")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--w", type=int, required=True)
    f.add_argument("--delta", type=int, required=True, choices=[0, 1])
    s = snsub.add_parser("scalar", help="emit h_w and its residual")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    sv = snsub.add_parser("verify", help="n-sphere invariant suite")
    sv.add_argument("--n", type=int, required=True)
    sv.add_argument("--p", type=int, required=True)
    sv.add_argument("--max-w", type=int, required=True)
    sv.add_argument("--nodes", type=int, default=None)
    sv.add_argument("--report-stderr", action="store_true")

    zp = sub.add_parser("zonal", help="zonal table / correspondence commands")
    zsub = zp.add_subparsers(dest="action", required=True)
    zg = zsub.add_parser("grid", help="CSV grid of one zonal function")
    zg.add_argument("--space", choices=list(zonal.SPACES), required=True)
    zg.add_argument("--n", type=int, required=True)
    zg.add_argument("--j", type=int, required=True)
    zg.add_argument("--grid", type=int, required=True)
    zc = zsub.add_parser("check", help="even-degree correspondence identities")
    zc.add_argument("--n", type=int, required=True)
    zc.add_argument("--max-k", type=int, required=True)
    zc.add_argument("--report-stderr", action="store_true")
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # `zonal --space ...` is the grid command; route it to the grid subparser.
    if argv and argv[0] == "zonal" and (len(argv) == 1 or argv[1].startswith("--")):
        argv.insert(1, "grid")
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    try:
        if args.group == "so4":
            if args.action == "gen":
                sys.stdout.write(json_dumps(_build_so4_gen(args.ell, args.w)))
                return 0
            if args.action == "eval":
                sys.stdout.write(_so4_eval_csv(args.ell, args.w, args.k, args.grid))
                return 0
            report = _Reporter(args.report_stderr)
            _run_so4_verify(args.ell, args.max_w, args.nodes, report)
            return report.exit_code()
        if args.group == "sn":
            if args.action == "fundamental":
                sys.stdout.write(
                    json_dumps(_build_sn_fundamental(args.n, args.p, args.w, args.delta))
                )
                return 0
            if args.action == "scalar":
                if args.n % 2 != 0:
                    print("sn scalar requires even n", file=sys.stderr)
                    return 2
                if args.w < args.p:
                    print("sn scalar requires w >= p", file=sys.stderr)
                    return 2
                sys.stdout.write(json_dumps(_build_sn_scalar(args.n, args.p, args.w)))
                return 0
            report = _Reporter(args.report_stderr)
            _run_sn_verify(args.n, args.p, args.max_w, args.nodes, report)
            return report.exit_code()
        if args.group == "zonal":
            if args.action == "grid":
                sys.stdout.write(_zonal_grid_csv(args.space, args.n, args.j, args.grid))
                return 0
            report = _Reporter(args.report_stderr)
            for k in range(args.max_k + 1):
                name = f"zonal_correspondence_n{args.n}_k{k}"
                report.record(name, *checks.zonal_correspondence(args.n, k))
            return report.exit_code()
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
