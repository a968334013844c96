"""Command-line entry point: character evaluations, coefficient tables,
verification suites, and cycle dumps.

Reports are JSON (schema "1") to stdout or --out; cycle dumps are CSV with
columns documented under ``cycles dump --help``.  Exit code 0 when every
requested check passes its tolerance, 2 on a tolerance failure, 1 on usage
errors.  Output is deterministic for fixed flags: all randomness is seeded
and summation orders are fixed; --threads caps the worker pool used for
independent battery members (results are reduced in index order).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import coherent as coherent_mod
from . import cycle_integral as ci
from . import eigendist as ed
from . import fixed_point as fp
from . import orbit_geom as og
from .compact_char import weyl_character
from .lie_core import Weight, build_root_system
from .real_structure import compact_element, split_element, standard_sheaf


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "")
    t = t.replace("i", "j")
    if t in ("j", "+j"):
        t = "1j"
    if t == "-j":
        t = "-1j"
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}")


def _parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x != ""]


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


def _fmt_value(v: complex) -> str:
    re = round(v.real, 10)
    im = round(v.imag, 10)
    if im == 0:
        return repr(re + 0.0)
    return f"{re:+g}{im:+g}j"


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2, sort_keys=True, default=str)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _ds_expr(k: int):
    return fp.discrete_series_expression("UpperHalfPlane", -float(k))


def _cartan_element(args):
    if args.cartan == "compact":
        if args.theta is None:
            raise SystemExit("--theta required for the compact Cartan")
        return compact_element(args.theta)
    if args.s is None:
        raise SystemExit("--s required for the split Cartan")
    return split_element(args.eps, args.s)


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# --- char subcommands --------------------------------------------------------

def _cmd_char_weyl(args) -> int:
    rs = build_root_system(args.type)
    lam = Weight(tuple(int(c) for c in args.lam.split(",")))
    val = weyl_character(rs, lam, _parse_floats(args.theta))
    print(_fmt_value(val))
    return 0


def _cmd_char_ds(args) -> int:
    expr = _ds_expr(args.k)
    if args.zeta:
        zeta = _zeta_matrix(args.zeta)
        print(_fmt_value(ed.evaluate_algebra(expr, zeta)))
        return 0
    t = _cartan_element(args)
    print(_fmt_value(ed.evaluate_group(expr, t)))
    return 0


def _cmd_char_ps(args) -> int:
    expr = fp.induced_expression(args.chif, args.nu)
    if args.zeta:
        zeta = _zeta_matrix(args.zeta)
        print(_fmt_value(ed.evaluate_algebra(expr, zeta)))
        return 0
    t = _cartan_element(args)
    print(_fmt_value(ed.evaluate_group(expr, t)))
    return 0


def _zeta_matrix(text: str) -> np.ndarray:
    x, y, z = _parse_floats(text)
    return np.array([[x, y], [z, -x]])


def _cmd_coeffs(args) -> int:
    label = {"upper": "UpperHalfPlane", "lower": "LowerHalfPlane", "circle": "RealCircle"}[args.sheaf]
    sheaf = standard_sheaf(label, args.lam, chi_F=args.chif)
    doc = {"schema": "1", "table": fp.coefficient_table(sheaf)}
    _emit(doc, args.out)
    return 0


# --- verify drivers ------------------------------------------------------------

def _verify_kirillov(ms, threads: int) -> list[dict]:
    grid = np.linspace(0.1, math.pi - 0.1, 50)

    def one(m):
        t0 = time.perf_counter()
        res = ci.kirillov_su2_check(m, grid)
        return {
            "case": f"kirillov[m={m}]",
            "lhs": ci.kirillov_su2_lhs(m, math.pi / 2),
            "rhs": ci.kirillov_su2_rhs(m, math.pi / 2),
            "rel_error": res["max_deviation"],
            "tail_estimate": 0.0,
            "runtime_ms": 1e3 * (time.perf_counter() - t0),
            "pass": bool(res["max_deviation"] <= 1e-6),
        }

    return _pmap(one, list(ms), threads)


def _verify_rossmann(ks, threads: int, n_phi: int = 3) -> list[dict]:
    battery = ci.default_battery(n_phi)

    def one(k):
        t0 = time.perf_counter()
        expr = _ds_expr(k)
        worst = 0.0
        lhs = rhs = 0.0
        for phi in battery:
            pa = ed.pair_algebra(expr, phi)
            ross = ci.rossmann_orbit_integral("UpperHalfPlane", -float(k), phi)
            rel = abs(pa.value - ross.value) / max(abs(pa.value), 1e-12)
            if rel > worst:
                worst, lhs, rhs = rel, pa.value, ross.value
        return {
            "case": f"rossmann[k={k}]",
            "lhs": _fmt_value(lhs),
            "rhs": _fmt_value(rhs),
            "rel_error": worst,
            "tail_estimate": 0.0,
            "runtime_ms": 1e3 * (time.perf_counter() - t0),
            "pass": bool(worst <= 1e-3),
        }

    return _pmap(one, list(ks), threads)


def _verify_integral_formula(case: str, threads: int, n_phi: int = 3) -> list[dict]:
    battery = ci.default_battery(n_phi)
    jobs = []
    if case in ("ds", "all"):
        for k in (1, 2):
            jobs.append(("ds", k))
    if case in ("ps", "all"):
        for nu in (0.0, 0.5j, 1.0j):
            jobs.append(("ps", nu))

    def one(job):
        kind, par = job
        t0 = time.perf_counter()
        if kind == "ds":
            expr = _ds_expr(par)
            cycles = [
                og.dlogf_graph_cycle("UpperHalfPlane", -float(par)),
                og.omega_orbit_cycle("UpperHalfPlane", -float(par)),
            ]
            name = f"integral-formula[ds,k={par}]"
        else:
            expr = fp.induced_expression(+1, par)
            cycles = [og.conormal_circle_cycle(par)]
            name = f"integral-formula[ps,nu={par}]"
        worst = 0.0
        tail = 0.0
        lhs = rhs = 0.0
        for phi in battery:
            pa = ed.pair_algebra(expr, phi)
            for cyc in cycles:
                res = ci.integrate_character_cycle(cyc, phi)
                rel = abs(res.value - pa.value) / max(abs(pa.value), 1e-12)
                tail = max(tail, res.tail_estimate)
                if rel > worst:
                    worst, lhs, rhs = rel, pa.value, res.value
        return {
            "case": name,
            "lhs": _fmt_value(lhs),
            "rhs": _fmt_value(rhs),
            "rel_error": worst,
            "tail_estimate": tail,
            "runtime_ms": 1e3 * (time.perf_counter() - t0),
            "pass": bool(worst <= 1e-3),
        }

    return _pmap(one, jobs, threads)


def _verify_prop33(n_samples: int = 1000, seed: int = 5) -> list[dict]:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        z = complex(rng.normal(), rng.normal())
        xi = complex(rng.normal(), rng.normal())
        m = complex(rng.uniform(0.5, 3.0) * rng.choice([-1.0, 1.0]), 0.0)
        v1 = (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        v2 = (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        Z = og.twisted_moment_matrix(z, xi, m)
        W1 = og.dmu_lambda(z, xi, m, v1[0], v1[1])
        W2 = og.dmu_lambda(z, xi, m, v2[0], v2[1])
        lhs = og.sigma_lambda_on_tangents(Z, W1, W2)
        rhs = -og.sigma(v1, v2) + og.tau_lambda_form(z, m, v1[0], v2[0])
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return [
        {
            "case": "prop33",
            "lhs": "mu_lambda^* sigma_lambda",
            "rhs": "-sigma + pi^* tau_lambda",
            "rel_error": worst,
            "tail_estimate": 0.0,
            "runtime_ms": 1e3 * (time.perf_counter() - t0),
            "pass": bool(worst <= 1e-10),
        }
    ]


def _verify_eigen(case: str, threads: int, n_phi: int = 10) -> list[dict]:
    battery = ci.default_battery(n_phi)
    jobs = []
    if case in ("ds", "all"):
        jobs += [("ds", k) for k in (1, 2, 3)]
    if case in ("ps", "all"):
        jobs += [("ps", nu) for nu in (0.0, 0.5j)]

    def one(job):
        kind, par = job
        t0 = time.perf_counter()
        expr = _ds_expr(par) if kind == "ds" else fp.induced_expression(+1, par)
        rep = ed.verify_eigendistribution(expr, battery=battery)
        return {
            "case": f"eigen[{kind},{par}]",
            "lhs": "p(d) theta",
            "rhs": f"{rep['eigenvalue']} * theta",
            "rel_error": rep["max_residual"],
            "tail_estimate": 0.0,
            "runtime_ms": 1e3 * (time.perf_counter() - t0),
            "pass": bool(rep["pass"]),
        }

    return _pmap(one, jobs, threads)


def _verify_coherent() -> list[dict]:
    t0 = time.perf_counter()
    rs = build_root_system("A1")
    out = []
    for m in (1, 2, 3):
        rep = coherent_mod.clebsch_gordan_check(rs, m)
        out.append(
            {
                "case": f"coherent[su2,chi1*chi{m}]",
                "lhs": "chi_1 chi_m",
                "rhs": "chi_(m+1) + chi_(m-1)",
                "rel_error": rep["max_deviation"],
                "tail_estimate": 0.0,
                "runtime_ms": 1e3 * (time.perf_counter() - t0),
                "pass": bool(rep["pass"]),
            }
        )
    family = coherent_mod.CoherentFamily(_ds_expr(2))
    samples = [compact_element(th) for th in np.linspace(0.3, 2.8, 13)] + [
        split_element(e, s) for e in (1, -1) for s in np.linspace(-1.5, 1.5, 7) if abs(s) > 0.1
    ]
    rep = coherent_mod.verify_coherence(
        family,
        rs,
        battery=[(Weight((1,)), samples), (Weight((2,)), samples)],
        reference_builder=lambda lam: fp.discrete_series_expression("UpperHalfPlane", lam),
    )
    worst = max(c["max_deviation"] for c in rep["pointwise_cases"])
    out.append(
        {
            "case": "coherent[sl2r,ds-family]",
            "lhs": "phi_f * Theta(lambda)",
            "rhs": "sum n_mu Theta(lambda+mu)",
            "rel_error": worst,
            "tail_estimate": 0.0,
            "runtime_ms": 1e3 * (time.perf_counter() - t0),
            "pass": bool(rep["pass"]),
        }
    )
    return out


def _cmd_verify(args) -> int:
    threads = args.threads
    if args.what == "kirillov":
        results = _verify_kirillov(_parse_range(args.m), threads)
    elif args.what == "rossmann":
        results = _verify_rossmann(_parse_range(args.k), threads)
    elif args.what == "integral-formula":
        results = _verify_integral_formula(args.case, threads)
    elif args.what == "prop33":
        results = _verify_prop33()
    elif args.what == "eigen":
        results = _verify_eigen(args.case, threads)
    elif args.what == "coherent":
        results = _verify_coherent()
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"unknown verification {args.what!r}")
    doc = {"schema": "1", "results": results, "pass": all(r["pass"] for r in results)}
    _emit(doc, args.out)
    return 0 if doc["pass"] else 2


# --- cycles dump ----------------------------------------------------------------

def _cmd_cycles_dump(args) -> int:
    m = args.lam
    if args.cycle == "conormal":
        cyc = og.conormal_circle_cycle(m)
    elif args.cycle == "dlogf":
        cyc = og.dlogf_graph_cycle("UpperHalfPlane", m if m < 0 else -1.0)
    else:
        cyc = og.omega_orbit_cycle("UpperHalfPlane", m if m != 0 else -1.0)
    (u0, u1), (v0, v1) = cyc.domain
    U, V = np.meshgrid(
        np.linspace(u0, u1, args.nu_samples, endpoint=False),
        np.linspace(v0, v1, args.nv_samples, endpoint=False) + (v1 - v0) / (2 * args.nv_samples),
        indexing="ij",
    )
    smp = cyc.sample(U.ravel(), V.ravel(), args.radius)
    rows = zip(U.ravel(), V.ravel(), smp.base, smp.fiber, smp.points, smp.density)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["param_u", "param_v", "base_re", "base_im", "fiber_re", "fiber_im",
             "mu00_re", "mu00_im", "mu01_re", "mu01_im",
             "mu10_re", "mu10_im", "mu11_re", "mu11_im",
             "density_re", "density_im"]
        )
        for u, v, b, f, mu, den in rows:
            w.writerow(
                [f"{u:.12g}", f"{v:.12g}", f"{b.real:.12g}", f"{b.imag:.12g}",
                 f"{f.real:.12g}", f"{f.imag:.12g}",
                 f"{mu[0,0].real:.12g}", f"{mu[0,0].imag:.12g}",
                 f"{mu[0,1].real:.12g}", f"{mu[0,1].imag:.12g}",
                 f"{mu[1,0].real:.12g}", f"{mu[1,0].imag:.12g}",
                 f"{mu[1,1].real:.12g}", f"{mu[1,1].imag:.12g}",
                 f"{den.real:.12g}", f"{den.imag:.12g}"]
            )
    return 0


# --- parser ----------------------------------------------------------------------

def _build_parser() -> _Parser:
    p = _Parser(
        prog="geomchar",
        description="Characters of reductive Lie groups by fixed-point and "
        "cycle-integral formulas (compact groups of small rank; SL(2,R) in full).",
    )
    p.add_argument("--threads", type=int, default=1,
                   help="max worker threads for independent battery members")
    sub = p.add_subparsers(dest="command", required=True)

    pchar = sub.add_parser("char", help="evaluate characters")
    csub = pchar.add_subparsers(dest="which", required=True)

    pw = csub.add_parser("weyl", help="compact Weyl character")
    pw.add_argument("--type", required=True, help="root system label (A1, A2, B2, G2, A1xA1)")
    pw.add_argument("--lambda", dest="lam", required=True, help="dominant weight, e.g. 1,1")
    pw.add_argument("--theta", required=True, help="torus angles, e.g. 0.3,1.2")
    pw.set_defaults(func=_cmd_char_weyl)

    pd = csub.add_parser("ds", help="SL(2,R) discrete series character")
    pd.add_argument("--k", type=int, required=True, help="Harish-Chandra parameter k >= 1")
    pd.add_argument("--cartan", choices=["compact", "split"], default="compact")
    pd.add_argument("--theta", type=float, help="compact Cartan angle")
    pd.add_argument("--eps", type=int, default=1, choices=[1, -1])
    pd.add_argument("--s", type=float, help="split Cartan parameter")
    pd.add_argument("--zeta", help="Lie algebra element x,y,z for the algebra value")
    pd.set_defaults(func=_cmd_char_ds)

    pp = csub.add_parser("ps", help="SL(2,R) principal series character")
    pp.add_argument("--nu", type=_parse_complex, required=True, help="continuous parameter (complex)")
    pp.add_argument("--chif", type=int, default=1, choices=[1, -1], help="character of F = {+-1}")
    pp.add_argument("--cartan", choices=["compact", "split"], default="split")
    pp.add_argument("--theta", type=float)
    pp.add_argument("--eps", type=int, default=1, choices=[1, -1])
    pp.add_argument("--s", type=float)
    pp.add_argument("--zeta", help="Lie algebra element x,y,z for the algebra value")
    pp.set_defaults(func=_cmd_char_ps)

    pc = sub.add_parser("coeffs", help="fixed-point coefficient tables (JSON)")
    pc.add_argument("--sheaf", choices=["upper", "lower", "circle"], required=True)
    pc.add_argument("--lambda", dest="lam", type=_parse_complex, required=True)
    pc.add_argument("--chif", type=int, default=1, choices=[1, -1])
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=_cmd_coeffs)

    pv = sub.add_parser("verify", help="verification suites (JSON report)")
    vsub = pv.add_subparsers(dest="what", required=True)
    vk = vsub.add_parser("kirillov")
    vk.add_argument("--m", default="0..5", help="range of highest weights, e.g. 0..5")
    vr = vsub.add_parser("rossmann")
    vr.add_argument("--k", default="1..3", help="range of discrete series parameters")
    vi = vsub.add_parser("integral-formula")
    vi.add_argument("--case", choices=["ds", "ps", "all"], default="all")
    vsub.add_parser("prop33")
    ve = vsub.add_parser("eigen")
    ve.add_argument("--case", choices=["ds", "ps", "all"], default="all")
    vsub.add_parser("coherent")
    for sp in vsub.choices.values():
        sp.add_argument("--out", default=None)
        sp.set_defaults(func=_cmd_verify)

    py = sub.add_parser("cycles", help="cycle sample dumps")
    ysub = py.add_subparsers(dest="which", required=True)
    yd = ysub.add_parser(
        "dump",
        help="CSV columns: param_u, param_v, base point (re, im), fiber (re, im), "
        "twisted-moment matrix entries (re, im each), 2-form density (re, im)",
    )
    yd.add_argument("--cycle", choices=["conormal", "dlogf", "orbit"], required=True)
    yd.add_argument("--lambda", dest="lam", type=float, default=-1.0)
    yd.add_argument("--radius", type=float, default=8.0)
    yd.add_argument("--nu-samples", type=int, default=40)
    yd.add_argument("--nv-samples", type=int, default=20)
    yd.add_argument("--out", required=True)
    yd.set_defaults(func=_cmd_cycles_dump)

    return p


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
