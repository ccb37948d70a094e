"""Command-line front end: evaluate, tabulate, dump constants, verify.

Exit codes: 0 success, 1 identity-suite failure, 2 usage error, 3 pole hit.
Complex values are written "re,im" on the command line; the half-period
keywords w1|w2|w3 (or omega1|...) are accepted for point arguments.
"""

from __future__ import annotations

import argparse
import json
import fnmatch
import os
import sys

from . import jacobi
from .aux_zeta import ZetaRoute, zeta_aux
from .errors import BranchAmbiguity, PoleProximityError, WeierzetaError
from .lattice import build_lattice, constants, constants_to_json
from .theta import SeriesConfig
from .verify import default_suite, reports_to_json, run_suite
from .weier_core import EvalResult, Status, sigma, sigma_aux, wp, wp_prime, zeta_w
from .zeta_diff import DeltaRoute, delta, delta2

_ZETA_ROUTES = {r.value: r for r in ZetaRoute}
_DELTA_ROUTES = {r.value: r for r in DeltaRoute}


def _finite(value: complex) -> EvalResult:
    return EvalResult(value, Status.FINITE)


def _fn_registry() -> dict:
    """name -> (needs_a, callable(lat, cfg, u, a, route_str) -> EvalResult)"""

    def zl(lam):
        def run(lat, cfg, u, a, route):
            r = _ZETA_ROUTES[route or "theta"]
            return zeta_aux(lat, lam, u, r, cfg)

        return run

    def dl(lam):
        def run(lat, cfg, u, a, route):
            r = _DELTA_ROUTES[route or "sigma"]
            return delta(lat, lam, u, r, cfg)

        return run

    def d2(lam, mu):
        def run(lat, cfg, u, a, route):
            r = _DELTA_ROUTES[route or "wp"]
            return delta2(lat, lam, mu, u, r, cfg)

        return run

    def jacobi_part(part):
        def run(lat, cfg, u, a, route):
            p = jacobi.jacobi_params(lat, cfg)
            vals = jacobi.sn_cn_dn(p, p.scale * u)
            return _finite(vals[part])

        return run

    def ezp(part):
        def run(lat, cfg, u, a, route):
            vals = jacobi.jacobi_E_Z_Pi(lat, u, a if a is not None else 0j, cfg)
            return _finite(vals[part])

        return run

    reg = {
        "wp": lambda lat, cfg, u, a, route: wp(lat, u, cfg),
        "wp_prime": lambda lat, cfg, u, a, route: wp_prime(lat, u, cfg),
        "zeta": lambda lat, cfg, u, a, route: zeta_w(lat, u, cfg),
        "sigma": lambda lat, cfg, u, a, route: _finite(sigma(lat, u, cfg)),
    }
    for lam in (1, 2, 3):
        reg[f"sigma{lam}"] = (lambda i: lambda lat, cfg, u, a, route: _finite(sigma_aux(lat, i, u, cfg)))(lam)
        reg[f"zeta{lam}"] = zl(lam)
        reg[f"delta{lam}"] = dl(lam)
    for lam, mu in ((1, 2), (2, 3), (3, 1)):
        reg[f"delta{lam}{mu}"] = d2(lam, mu)
    for i, part in enumerate(("sn", "cn", "dn")):
        reg[part] = jacobi_part(i)
    for i, part in enumerate(("E", "Z", "Pi")):
        reg[part] = ezp(i)
    return reg


FUNCTIONS = _fn_registry()

_NEEDS_A = {"Pi"}


def parse_complex(text: str, lat=None) -> complex:
    """Parse 're,im', a bare real, or a half-period keyword."""
    t = text.strip()
    keywords = {"w1": 1, "omega1": 1, "ω1": 1,
                "w2": 2, "omega2": 2, "ω2": 2,
                "w3": 3, "omega3": 3, "ω3": 3}
    low = t.lower()
    if low in keywords:
        if lat is None:
            raise ValueError(f"half-period keyword {text!r} needs a lattice")
        return lat.half_period(keywords[low])
    parts = t.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"cannot parse complex literal {text!r}")


def _env_float(name: str, fallback: float) -> float:
    raw = os.environ.get(name)
    return float(raw) if raw else fallback


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else fallback


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega1", default="0.5,0", help="first half-period as 're,im' (default 0.5,0)")
    p.add_argument("--omega3", default=None, help="third half-period as 're,im'")
    p.add_argument(
        "--tau", default=None,
        help="period ratio shorthand; omega3 = tau*omega1 (default lattice: tau = 0.3,1.1)",
    )
    p.add_argument("--abs-tol", type=float, default=_env_float("WEIERZETA_ABS_TOL", 1e-16))
    p.add_argument("--rel-tol", type=float, default=_env_float("WEIERZETA_REL_TOL", 1e-16))
    p.add_argument("--max-terms", type=int, default=_env_int("WEIERZETA_MAX_TERMS", 96))
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _build(args):
    omega1 = parse_complex(args.omega1)
    if args.omega3 is not None and args.tau is not None:
        raise ValueError("give either --omega3 or --tau, not both")
    if args.omega3 is not None:
        omega3 = parse_complex(args.omega3)
    elif args.tau is not None:
        omega3 = parse_complex(args.tau) * omega1
    else:
        omega3 = complex(0.3, 1.1) * omega1
    lat = build_lattice(omega1, omega3)
    cfg = SeriesConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol, max_terms=args.max_terms)
    return lat, cfg


def _emit_eval(res: EvalResult, fmt: str, out) -> None:
    finite = res.status is Status.FINITE
    if fmt == "json":
        payload = {
            "value": [res.value.real, res.value.imag] if finite else None,
            "status": res.status.value,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write("re_value,im_value,status\n")
        if finite:
            out.write(f"{res.value.real!r},{res.value.imag!r},{res.status.value}\n")
        else:
            out.write(f",,{res.status.value}\n")


def cmd_eval(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    if args.list_fns:
        for name in sorted(FUNCTIONS):
            out.write(name + "\n")
        return 0
    if not args.fn or args.u is None:
        err.write("eval: --fn and --u are required\n")
        return 2
    if args.fn not in FUNCTIONS:
        err.write(f"eval: unknown function {args.fn!r}; see --list-fns\n")
        return 2
    lat, cfg = _build(args)
    u = parse_complex(args.u, lat)
    a = parse_complex(args.a, lat) if args.a is not None else None
    if args.fn in _NEEDS_A and a is None:
        err.write(f"eval: function {args.fn!r} needs --a\n")
        return 2
    try:
        res = FUNCTIONS[args.fn](lat, cfg, u, a, args.route)
    except KeyError:
        err.write(f"eval: route {args.route!r} not valid for {args.fn!r}\n")
        return 2
    except (PoleProximityError, BranchAmbiguity) as exc:
        err.write(f"eval: {exc}\n")
        return 3
    _emit_eval(res, args.format, out)
    return 0 if res.status is Status.FINITE else 3


def _parse_axis(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"axis spec must be 'start:stop:count', got {spec!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("axis count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + k * step for k in range(count)]


def cmd_table(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    if args.fn not in FUNCTIONS:
        err.write(f"table: unknown function {args.fn!r}; see eval --list-fns\n")
        return 2
    lat, cfg = _build(args)
    try:
        res = _parse_axis(args.re)
        ims = _parse_axis(args.im)
    except ValueError as exc:
        err.write(f"table: {exc}\n")
        return 2
    a = parse_complex(args.a, lat) if args.a is not None else None
    rows = []
    for im in ims:
        for re in res:
            u = complex(re, im)
            try:
                r = FUNCTIONS[args.fn](lat, cfg, u, a, args.route)
            except (PoleProximityError, BranchAmbiguity):
                r = EvalResult(complex("nan"), Status.AT_POLE)
            rows.append((u, r))
    if args.format == "csv":
        out.write("re_u,im_u,re_value,im_value,status\n")
        for u, r in rows:
            if r.status is Status.FINITE:
                out.write(f"{u.real!r},{u.imag!r},{r.value.real!r},{r.value.imag!r},{r.status.value}\n")
            else:
                out.write(f"{u.real!r},{u.imag!r},,,{r.status.value}\n")
    else:
        payload = []
        for u, r in rows:
            finite = r.status is Status.FINITE
            payload.append({
                "u": [u.real, u.imag],
                "value": [r.value.real, r.value.imag] if finite else None,
                "status": r.status.value,
            })
        out.write(json.dumps(payload) + "\n")
    return 0


def cmd_constants(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    lat, cfg = _build(args)
    payload = constants_to_json(lat, constants(lat, cfg))
    out.write(json.dumps(payload) + "\n")
    return 0


def cmd_verify(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    lat, cfg = _build(args)
    suite = default_suite()
    if args.only:
        suite = tuple(s for s in suite if fnmatch.fnmatch(s.name, args.only))
        if not suite:
            err.write(f"verify: no identity matches {args.only!r}\n")
            return 2
    reports = run_suite(lat, suite, n=args.n, seed=args.seed, cfg=cfg)
    out.write(json.dumps(reports_to_json(reports)) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weierzeta",
        description="Weierstrass elliptic functions, auxiliary zetas, zeta differences, and an identity verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one function at one point")
    _add_common(p_eval)
    p_eval.add_argument("--fn", default=None, help="function name; see --list-fns")
    p_eval.add_argument("--u", default=None, help="argument: 're,im' or w1|w2|w3")
    p_eval.add_argument("--a", default=None, help="second argument for Pi")
    p_eval.add_argument("--route", default=None, help="evaluation route where applicable")
    p_eval.add_argument("--list-fns", action="store_true", help="list function names and exit")

    p_table = sub.add_parser("table", help="tabulate a function over a grid")
    _add_common(p_table)
    p_table.add_argument("--fn", required=True)
    p_table.add_argument("--re", required=True, help="real axis as 'start:stop:count'")
    p_table.add_argument("--im", required=True, help="imaginary axis as 'start:stop:count'")
    p_table.add_argument("--a", default=None)
    p_table.add_argument("--route", default=None)

    p_const = sub.add_parser("constants", help="emit lattice constants as JSON")
    _add_common(p_const)

    p_ver = sub.add_parser("verify", help="run the identity suite")
    _add_common(p_ver)
    p_ver.add_argument("--n", type=int, default=100, help="samples per identity")
    p_ver.add_argument("--seed", type=int, default=12345)
    p_ver.add_argument("--only", default=None, help="glob filter on identity names")

    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "eval": cmd_eval,
        "table": cmd_table,
        "constants": cmd_constants,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (WeierzetaError, ValueError) as exc:
        sys.stderr.write(f"weierzeta: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
