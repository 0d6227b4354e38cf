"""waring-eig: Waring loci, eigenschemes and their intersection from the command line."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__, critvar, suite
from .apolarity import annihilator_binary, essential_variables, waring_rank_binary
from .dynamics import rank_pencil
from .eigen import (
    DegenerateEigenError,
    eigen_ideal,
    eigen_poly_binary,
    eigen_support_binary,
)
from .exactnum import GaussRat
from .forms.binary import BForm
from .forms.parse import ParseError, format_form, parse_form, parse_linear
from .locus import intersect_waring_eigen_binary, monomial_loci, waring_locus_binary

SCHEMA_VERSION = "1.0"


class Unsupported(ValueError):
    pass


def _json_default(obj):
    if isinstance(obj, GaussRat):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WARING_EIG_THREADS", "1")))
    except ValueError:
        return 1


def _read_expr(args) -> str:
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return fh.read().strip()
    if not args.expr:
        raise SystemExit("an expression or --file is required")
    return args.expr


def _monomial_exponents(F):
    if not F.is_monomial():
        return None
    (a, _), = F.items()
    return a


def _eigen_payload(F, mode: str, tol: float) -> dict:
    if F.nvars == 2:
        B = BForm.from_nform(F)
        D = eigen_poly_binary(B)
        try:
            support = [e.to_json() for e in eigen_support_binary(B, mode, tol)]
        except DegenerateEigenError as exc:
            return {"D": str(D), "degenerate": str(exc)}
        return {"D": str(D), "support": support}
    I = eigen_ideal(F)
    return {"generators": [{"pair": list(p), "minor": format_form(g)} for p, g in zip(I.pairs, I.generators)]}


def run_analyze(expr: str, mode: str = "exact", tol: float = 1e-9) -> dict:
    F = parse_form(expr)
    out = {"form": format_form(F), "nvars": F.nvars, "degree": F.degree,
           "essential_variables": essential_variables(F)}
    out["eigen"] = _eigen_payload(F, mode, tol)
    if F.nvars == 2:
        B = BForm.from_nform(F)
        ann = annihilator_binary(B)
        out["annihilator"] = ann.to_json()
        out["rank"] = waring_rank_binary(B, ann)
        if B.degree >= 2:
            desc = waring_locus_binary(B, ann)
            out["locus"] = desc.to_json()
            if "degenerate" not in out["eigen"]:
                rep = intersect_waring_eigen_binary(B, "numeric" if mode == "numeric" else "exact", desc=desc)
                out["intersection"] = rep.to_json()
        return out
    exps = _monomial_exponents(F)
    if exps is not None and min(exps) >= 1:
        perm = sorted(range(len(exps)), key=lambda i: exps[i])
        info = monomial_loci([exps[i] for i in perm])
        out["monomial"] = info.to_json()
        out["variable_order"] = [f"x{i}" for i in perm]
        prod = 1
        for e in sorted(exps)[1:]:
            prod *= e + 1
        out["rank"] = prod
        return out
    out["rank"] = None
    out["unsupported"] = "Waring rank of forms in three or more variables is only computed for monomials"
    return out


def run_locus(expr: str) -> dict:
    F = parse_form(expr)
    if F.nvars == 2:
        return waring_locus_binary(BForm.from_nform(F)).to_json()
    exps = _monomial_exponents(F)
    if exps is None or list(exps) != sorted(exps):
        raise Unsupported("loci in three or more variables: only monomials x0^d0*...*xn^dn with d0 <= ... <= dn")
    return monomial_loci(exps).to_json()


def run_intersect(expr: str, mode: str, tol: float) -> dict:
    F = parse_form(expr)
    if F.nvars != 2:
        raise Unsupported("the intersection test is implemented for binary forms")
    return intersect_waring_eigen_binary(BForm.from_nform(F), mode, tol).to_json()


def run_perturb(expr: str, direction: str, mode: str, tol: float, seed: int) -> dict:
    F = parse_form(expr, nvars=2)
    L = parse_linear(direction, nvars=2)
    return rank_pencil(BForm.from_nform(F), L, mode=mode, rng_seed=seed, tol=tol).to_json()


def run_we_sample(n: int, r: int, d: int, seed: int, method: str) -> dict:
    s = critvar.sample_X_x0(n, r, d, rng_seed=seed, method=method)
    out = s.to_json()
    out["form"] = format_form(s.params.form())
    out["x0_eigen"] = critvar.is_eigen_x0(s.params)
    return out


def run_we_check(n: int, r: int, d: int, seed: int, check: str, tol: float) -> list:
    reports = []
    if check in ("codim", "all"):
        eqs = critvar.we_equations(n, r, d)
        if r == 2:
            pt = critvar.sample_generic_X_x0(n, r, d, rng_seed=seed, smooth=True)
        else:
            pt = critvar.sample_X_x0(n, r, d, rng_seed=seed).params
        j = critvar.jacobian_rank_at(eqs, pt)
        j1 = critvar.jacobian_rank_at(eqs, pt, with_g0prime=True)
        reports.append({"n": n, "r": r, "d": d, "check": "codim", "seed": seed, "value": j, "expected": n,
                        "pass": j == n and j1 == n + 1,
                        "evidence": {"point": pt.to_json(), "rank_with_g0prime": j1}})
    if check in ("degree", "all") and n in (1, 2):
        fn = critvar.degree_check_line if n == 1 else critvar.degree_check_surface
        reports.append(fn(n, d, r, rng_seed=seed))
    if check in ("dimension", "all"):
        rep = critvar.dim_estimate_we(n, r, d, rng_seed=seed, tol=tol)
        expected = rep["expected_cone"] if n == 1 else rep["lower_bound_cone"]
        ok = (rep["cone_dimension"] == expected if n == 1 else rep["cone_dimension"] >= expected) \
            and rep["gap"] >= 1e6
        reports.append({"n": n, "r": r, "d": d, "check": "dimension", "seed": seed,
                        "value": rep["cone_dimension"], "expected": expected, "pass": ok,
                        "evidence": {k: rep[k] for k in ("projective_dimension", "gap", "singular_values", "params")}})
    return reports


def _certificates(results) -> dict:
    """Pull the re-checkable evidence out of a results payload."""
    if isinstance(results, list):
        return {str(r.get("number", k)): r.get("evidence", {}) for k, r in enumerate(results)}
    out = {}
    for key in ("annihilator", "eigen", "certificates"):
        if key in results:
            out[key] = results[key]
    if "intersection" in results:
        out["intersection"] = results["intersection"].get("certificates", {})
    if "exceptional" in results:
        out["exceptional"] = results["exceptional"]
    if "certificate" in results:
        out["sample"] = results["certificate"]
    return out


def _run_one(number: int, seed: int) -> dict:
    check = next(c for c in suite.CHECKS if c.number == number)
    return suite.run_check(check, seed).to_json()


def run_verify_paper(selector: str, seed: int, stream=None) -> tuple[list, bool]:
    checks = suite.select(selector)
    workers = min(_threads(), len(checks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, [c.number for c in checks], [seed] * len(checks)))
    else:
        results = [_run_one(c.number, seed) for c in checks]
    if stream is not None:
        for r in results:
            status = "PASS" if r["pass"] else "FAIL"
            print(f"[{status}] {r['number']:2d} {r['name']} ({r['seconds']:.2f} s, budget {r['budget']:g} s)",
                  file=stream)
    return results, all(r["pass"] for r in results)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="waring-eig", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, form=True):
        if form:
            p.add_argument("expr", nargs="?", help="form, e.g. \"x^3+y^3+(x+y)^3\"")
            p.add_argument("--file", help="read the expression from a file")
        p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", choices=("json", "text"), default="text")

    for verb, text in (("analyze", "rank, annihilator, eigenscheme, loci and their intersection"),
                       ("eigen", "eigenpolynomial or eigen-ideal and singular values"),
                       ("locus", "Waring / forbidden locus"),
                       ("intersect", "decide W(F) cap Eig(F) != {}")):
        common(sub.add_parser(verb, help=text))
    p = sub.add_parser("perturb", help="rank along F + lam*L^d")
    common(p)
    p.add_argument("--direction", required=True, help="linear form L, e.g. \"x+y\"")
    p = sub.add_parser("we-sample", help="sample a point of the critical Waring variety")
    common(p, form=False)
    p.add_argument("-n", type=int, default=1)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--method", choices=("random", "roots"), default="random")
    p = sub.add_parser("we-check", help="codimension, degree and dimension certificates")
    common(p, form=False)
    p.add_argument("-n", type=int, default=1)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--check", choices=("codim", "degree", "dimension", "all"), default="all")
    p = sub.add_parser("verify-paper", help="run the acceptance suite")
    p.add_argument("--suite", choices=suite.GROUPS, default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--output", choices=("json", "text"), default="text")
    return parser


def _text(payload, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{payload}")
    return lines


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in vars(args).items() if v is not None}
    t0 = time.perf_counter()
    status = 0
    try:
        if args.verb == "analyze":
            results = run_analyze(_read_expr(args), args.mode, args.tol)
        elif args.verb == "eigen":
            results = _eigen_payload(parse_form(_read_expr(args)), args.mode, args.tol)
        elif args.verb == "locus":
            results = run_locus(_read_expr(args))
        elif args.verb == "intersect":
            results = run_intersect(_read_expr(args), args.mode, args.tol)
        elif args.verb == "perturb":
            results = run_perturb(_read_expr(args), args.direction, args.mode, args.tol, args.seed)
        elif args.verb == "we-sample":
            results = run_we_sample(args.n, args.r, args.d, args.seed, args.method)
        elif args.verb == "we-check":
            results = run_we_check(args.n, args.r, args.d, args.seed, args.check, max(args.tol, 1e-8))
            status = 0 if all(r["pass"] for r in results) else 1
        else:
            stream = sys.stdout if args.output == "text" else None
            results, ok = run_verify_paper(args.suite, args.seed, stream)
            status = 0 if ok else 1
            if args.output == "text":
                print(f"{sum(r['pass'] for r in results)}/{len(results)} criteria passed")
                return status
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (Unsupported, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"schema_version": SCHEMA_VERSION, "command": echo, "results": results,
              "certificates": _certificates(results), "timing": {"seconds": round(time.perf_counter() - t0, 3)}}
    if args.output == "json":
        print(dumps(report))
    else:
        print("\n".join(_text(json.loads(dumps(results)))))
    return status


if __name__ == "__main__":
    sys.exit(main())
