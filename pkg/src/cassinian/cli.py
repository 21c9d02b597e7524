"""Command-line front end.

    cassinian eval --metric c --x 0.5,0 --y -0.5,0
    cassinian verify --name 2s_le_c --dim 2 --samples 100000 --seed 7
    cassinian constants
    cassinian distort --K 2 --eta 1
    cassinian oracle --metric s --x 0.5,0 --y 0.2,0.1
    cassinian table --which tangency

Exit status: 0 success, 1 usage error, 2 domain error, 3 violations found.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from typing import Any, Sequence

import numpy as np

from . import ball, distortion, generic
from .geometry import DomainError, angle_between, load_boundary_csv
from .analysis import constants, harness, oracles, probes, tables

__all__ = ["main", "run", "build_parser", "format_number", "SEED_ENV"]

SEED_ENV = "CASSINIAN_SEED"
SIG_DIGITS = 15

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VIOLATIONS = 0, 1, 2, 3

METRICS = ("rho", "sh", "j", "c", "s", "chat")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- formatting -----------------------------------------------------------------

def format_number(v: float) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(f"{v:.{SIG_DIGITS}g}"))


def _round(obj: Any) -> Any:
    """Round floats to 15 significant digits; non-finite values become strings."""
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return float(format_number(v)) if math.isfinite(v) else format_number(v)
    return obj


def _emit(payload: dict, fmt: str, out) -> None:
    payload = _round(payload)
    if fmt == "text":
        for k, v in payload.items():
            out.write(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}\n")
    else:
        out.write(json.dumps(payload) + "\n")


def _emit_table(header: Sequence[str], rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_number(v) for v in row])


# --- parsing ----------------------------------------------------------------------

def _point(text: str) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid point {text!r}; expected comma-separated reals")
    if len(vals) < 2:
        raise argparse.ArgumentTypeError(f"point {text!r} needs at least 2 coordinates")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"point {text!r} has non-finite coordinates")
    return np.array(vals)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="cassinian",
        description="Cassinian, triangular ratio, distance ratio and hyperbolic metrics; "
        "inequality verification, sharp constants and distortion bounds.",
        epilog=f"Environment: {SEED_ENV} sets the default --seed for verify (default 0). "
        "Exit status: 0 success, 1 usage error, 2 domain error, 3 violations found.",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")

    def dim(sp):
        sp.add_argument("--dim", type=int, help="expected dimension of the points")

    e = sub.add_parser("eval", help="evaluate a metric at a pair of points")
    e.add_argument("--metric", choices=METRICS + ("certificate", "product-bound"), required=True,
                   help="certificate: tangency residuals at --z; product-bound: inf of |x-w||w-y| over the sphere")
    e.add_argument("--x", type=_point, required=True)
    e.add_argument("--y", type=_point, required=True)
    e.add_argument("--z", type=_point, help="boundary point for --metric certificate")
    e.add_argument("--domain", help="CSV of boundary samples with header x1,...,xn")
    e.add_argument("--diameter", type=float, help="known diameter of the --domain boundary")
    e.add_argument("--refine", action="store_true", help="refine sampled suprema locally")
    e.add_argument("--closed-form", action="store_true",
                   help="for --metric s with |x| = |y|: also print the closed form and extremal angles")
    dim(e)
    fmt(e)

    v = sub.add_parser("verify", help="randomized verification of an inequality, or a sharpness probe")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--name", help="inequality name; 'ball' runs all unit-ball inequalities on one sample")
    g.add_argument("--probe", choices=probes.PROBES)
    g.add_argument("--counterexample", type=float, metavar="LAMBDA",
                   help="find a pair with j > LAMBDA * c_hat (or c, see --against)")
    g.add_argument("--list", action="store_true", help="list inequality names")
    v.add_argument("--dim", type=int, default=2)
    v.add_argument("--samples", type=int, default=10000)
    v.add_argument("--seed", type=int, default=None, help=f"default from {SEED_ENV}, else 0")
    v.add_argument("--tolerance", type=float)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--oracle-checks", type=int, default=4)
    v.add_argument("--steps", type=int, default=20, help="points along the probe family")
    v.add_argument("--against", choices=("chat", "c"), default="chat")
    fmt(v)

    c = sub.add_parser("constants", help="sharp constant and auxiliary functions")
    c.add_argument("--m-at", type=float, metavar="T", help="evaluate m(T) instead")
    c.add_argument("--lemma", choices=("f", "g", "h", "fb"), help="evaluate an auxiliary function at --arg")
    c.add_argument("--arg", type=float)
    c.add_argument("--aux", type=float)
    c.add_argument("--gap", type=float, metavar="T", help="evaluate 4 arth(T/2) - a log(1+T)")
    fmt(c)

    d = sub.add_parser("distort", help="distortion functions and bounds")
    d.add_argument("--K", type=float, default=1.0)
    d.add_argument("--tol", type=float, default=1e-12)
    q = d.add_mutually_exclusive_group(required=True)
    q.add_argument("--phi", type=float, metavar="R")
    q.add_argument("--eta", type=float, metavar="T")
    q.add_argument("--c-of-k", action="store_true")
    q.add_argument("--casgrow", type=float, metavar="T", help="growth bound at c(0, x) = T")
    q.add_argument("--rho-growth", type=float, metavar="RHO")
    q.add_argument("--mu", type=float, metavar="R")
    q.add_argument("--mu-inverse", type=float, metavar="M")
    fmt(d)

    o = sub.add_parser("oracle", help="brute-force supremum over the boundary circle")
    o.add_argument("--metric", choices=("c", "s"), required=True)
    o.add_argument("--x", type=_point, required=True)
    o.add_argument("--y", type=_point, required=True)
    o.add_argument("--grid", type=int, default=1 << 16)
    o.add_argument("--refine-iters", type=int, default=80)
    dim(o)
    fmt(o)

    t = sub.add_parser("table", help="CSV data tables")
    t.add_argument("--which", choices=tuple(tables.TABLES), required=True)
    t.add_argument("--steps", type=int)
    t.add_argument("--x", type=_point, help="first focus for --which oval")
    t.add_argument("--y", type=_point, help="second focus for --which oval")
    t.add_argument("--format", choices=("csv",), default="csv")
    return p


_VALUE_FLAGS = {"--x", "--y", "--z", "--phi", "--eta", "--casgrow", "--rho-growth", "--mu",
                "--mu-inverse", "--m-at", "--arg", "--aux", "--gap", "--K", "--counterexample",
                "--tolerance", "--seed"}
_NEGATIVE = re.compile(r"^-(\d|\.\d|inf|nan)", re.IGNORECASE)


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # lets "--y -0.5,0" through; argparse would read -0.5,0 as an option
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# --- commands -----------------------------------------------------------------------

def _check_dim(args, *pts) -> None:
    n = pts[0].size
    for q in pts:
        if q.size != n:
            raise UsageError(f"points have different dimensions ({n} and {q.size})")
    if getattr(args, "dim", None) is not None and args.dim != n:
        raise UsageError(f"--dim {args.dim} does not match point dimension {n}")


def _cmd_eval(args) -> dict:
    x, y = args.x, args.y
    pts = [x, y] + ([args.z] if args.z is not None else [])
    _check_dim(args, *pts)
    m = args.metric
    if args.domain is not None:
        dom = load_boundary_csv(args.domain, diameter_hint=args.diameter)
        if dom.dim != x.size:
            raise UsageError(f"domain is {dom.dim}-dimensional, points are {x.size}-dimensional")
        if m == "j":
            return ball.MetricValue(generic.j_generic(dom, x, y)).to_dict()
        if m == "c":
            return generic.cassinian_generic(dom, x, y, refine=args.refine).to_dict()
        if m == "s":
            return generic.s_generic(dom, x, y, refine=args.refine).to_dict()
        raise UsageError(f"--metric {m} is defined on the unit ball only")
    if m == "certificate":
        if args.z is None:
            raise UsageError("--metric certificate needs --z")
        return ball.tangency_certificate(x, y, args.z).to_dict()
    if m == "product-bound":
        return oracles.cassinian_product_bound(x, y).to_dict()
    if m == "rho":
        return ball.MetricValue(ball.rho_ball(x, y)).to_dict()
    if m == "sh":
        return ball.MetricValue(ball.sh_half_rho(x, y)).to_dict()
    if m == "j":
        return ball.MetricValue(ball.j_ball(x, y)).to_dict()
    if m == "chat":
        return ball.hat_c_ball(x, y).to_dict()
    if m == "c":
        return ball.cassinian_ball(x, y).to_dict()
    out = ball.s_ball(x, y).to_dict()
    if args.closed_form:
        r1, r2 = float(np.linalg.norm(x)), float(np.linalg.norm(y))
        if abs(r1 - r2) > ball.EQUAL_MODULUS_TOL:
            raise DomainError("--closed-form needs |x| = |y|")
        omega = angle_between(x, y)
        out["closed_form"] = ball.s_closed_form(r1, omega)
        out["extremal_angles"] = list(ball.s_extremal_angle(r1, omega))
    return out


def _cmd_verify(args, out) -> int:
    if args.list:
        payload = {"inequalities": [{"name": q.name, "statement": q.statement, "sampled": q.sampled}
                                    for q in harness.REGISTRY.values()]}
        _emit(payload, args.format, out)
        return EXIT_OK
    if args.probe is not None:
        if args.steps < 1:
            raise UsageError("--steps must be positive")
        rows = probes.sharpness_probe(args.probe, args.steps)
        _emit({"probe": args.probe, "values": [list(r) for r in rows]}, args.format, out)
        return EXIT_OK
    if args.counterexample is not None:
        _emit(probes.lambda_counterexample(args.counterexample, args.against).to_dict(), args.format, out)
        return EXIT_OK
    seed = _default_seed() if args.seed is None else args.seed
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    if args.tolerance is not None and not (args.tolerance >= 0 and math.isfinite(args.tolerance)):
        raise UsageError("--tolerance must be a finite non-negative number")
    if args.name == "ball":
        names = harness.ball_inequalities()
    elif args.name in harness.REGISTRY:
        names = [args.name]
    else:
        raise UsageError(f"unknown inequality {args.name!r}; see 'cassinian verify --list'")
    reports = harness.verify_suite(names, args.dim, args.samples, seed, args.tolerance,
                                   args.oracle_checks, args.workers)
    if len(reports) == 1:
        _emit(reports[0].to_dict(), args.format, out)
    else:
        _emit({"reports": [r.to_dict() for r in reports]}, args.format, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATIONS


def _cmd_constants(args) -> dict:
    if args.m_at is not None:
        return {"t": args.m_at, "m": constants.m_function(args.m_at)}
    if args.lemma is not None:
        if args.arg is None:
            raise UsageError("--lemma needs --arg")
        return {"function": args.lemma, "arg": args.arg, "aux": args.aux,
                "value": constants.lemma21_eval(args.lemma, args.arg, args.aux)}
    if args.gap is not None:
        return {"t": args.gap, "gap": constants.log_arth_gap(args.gap)}
    return constants.solve_alpha().to_dict()


def _cmd_distort(args) -> dict:
    p = distortion.DistortionParams(args.K, args.tol)
    if args.phi is not None:
        return {"K": p.K, "r": args.phi, "phi": distortion.phi_K(p, args.phi),
                "upper": distortion.phi_K_upper(p, args.phi)}
    if args.eta is not None:
        return {"K": p.K, "t": args.eta, "eta": distortion.eta_K(p, args.eta),
                "upper": distortion.eta_K_upper(p, args.eta)}
    if args.c_of_k:
        return {"K": p.K, "c": distortion.c_of_K(p), "upper": distortion.c_of_K_upper(p)}
    if args.casgrow is not None:
        return {"K": p.K, "t": args.casgrow, "bound": distortion.casgrow_bound(p, args.casgrow),
                "eta": distortion.eta_K(p, args.casgrow),
                "eta_within_bound": distortion.verify_casgrow_against_eta(p, args.casgrow)}
    if args.rho_growth is not None:
        return {"K": p.K, "rho": args.rho_growth, "bound": distortion.rho_growth_bound(p, args.rho_growth)}
    if args.mu is not None:
        return {"r": args.mu, "mu": distortion.mu(args.mu)}
    r, rc = distortion.mu_inverse(args.mu_inverse, p.tol)
    return {"m": args.mu_inverse, "r": r, "r_complement": rc}


def _cmd_oracle(args) -> dict:
    _check_dim(args, args.x, args.y)
    return oracles.brute_force_extremum(args.metric, args.x, args.y, args.grid, args.refine_iters).to_dict()


def _cmd_table(args, out) -> int:
    kw = {}
    if args.steps is not None:
        if args.steps < 1:
            raise UsageError("--steps must be positive")
        kw["steps"] = args.steps
    if args.which == "oval":
        if args.x is not None:
            kw["x"] = args.x
        if args.y is not None:
            kw["y"] = args.y
    elif args.x is not None or args.y is not None:
        raise UsageError("--x/--y apply to --which oval only")
    header, rows = tables.TABLES[args.which](**kw)
    _emit_table(header, rows, out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
        if args.command == "verify":
            return _cmd_verify(args, out)
        if args.command == "table":
            return _cmd_table(args, out)
        handler = {"eval": _cmd_eval, "constants": _cmd_constants,
                   "distort": _cmd_distort, "oracle": _cmd_oracle}[args.command]
        payload = handler(args)
        _emit(payload, args.format, out)
        return EXIT_OK
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, ValueError, ArithmeticError, OSError, KeyError) as exc:
        err.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
