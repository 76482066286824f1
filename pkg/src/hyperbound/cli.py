"""Command-line front end.

Usage examples::

    python -m hyperbound eval --A 1 --B 2 --x 1
    python -m hyperbound bounds --family luke --A 1 --B 2 --x 0
    python -m hyperbound check --A 2,2 --B 1,3
    python -m hyperbound cm-scan --A 1 --B 2 --grid log:0.01:20:64

Exit codes: 0 computed and every asserted property passed; 2 computed
but some hypothesis failed (results are advisory); 3 numerical failure or
a property failed although its hypotheses held; 1 usage error.

Output is deterministic: floats are printed with 15 significant digits and
JSON keys are sorted. The CSV header is fixed::

    command,index,inputs,value,lower,upper,error_estimate,status
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, is_dataclass

import numpy as np

from . import bounds as _bounds
from .errors import DomainError, HyperboundError, ShapeError, SpecViolation
from .gkernel import KernelSpec, kernel_eval
from .monotone import cm_check, log_cm_check, logconvex_check, ratio_monotone_check
from .params import condition_report
from .representations import SplitSpec, hyp_eval, rep_vs_series

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_NUMERIC = 0, 1, 2, 3
CSV_HEADER = ("command", "index", "inputs", "value", "lower", "upper", "error_estimate", "status")
DEFAULT_TOL = 1e-9
BOUND_FAMILIES = tuple(_bounds.FAMILIES) + ("f01",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ----------------------------------------------------------------------------
# argument parsing helpers


def parse_vector(text):
    """Comma-separated reals; the empty string is the empty vector."""
    text = text.strip()
    if not text:
        return ()
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse parameter vector {text!r}") from exc
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"parameter vector {text!r} has non-finite entries")
    return vals


def parse_grid(text):
    """``start:stop:count`` (linear) or ``log:start:stop:count`` (geometric)."""
    log = text.startswith("log:")
    body = text[4:] if log else text
    parts = body.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid {text!r} must look like start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc
    if count < 2 or not start < stop:
        raise UsageError("grid needs count >= 2 and start < stop")
    if log:
        if start <= 0:
            raise UsageError("log grid needs start > 0")
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)


def _points(args, scalar="x"):
    if getattr(args, "grid", None):
        return parse_grid(args.grid)
    v = getattr(args, scalar, None)
    if v is None:
        raise UsageError(f"give --{scalar} or --grid")
    return np.array([v])


def default_tolerance():
    env = os.environ.get("HYPERBOUND_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        tol = float(env)
    except ValueError as exc:
        raise UsageError(f"HYPERBOUND_TOL={env!r} is not a number") from exc
    if not tol > 0:
        raise UsageError("HYPERBOUND_TOL must be positive")
    return tol


# ----------------------------------------------------------------------------
# number formatting


def _clean(obj):
    """Recursively convert to JSON-ready values with 15 significant digits."""
    if is_dataclass(obj):
        obj = asdict(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(f"{v:.15g}")
    return obj


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.15g}"
    return json.dumps(v, sort_keys=True, separators=(",", ":")) if isinstance(v, (dict, list)) else str(v)


def render(report, fmt):
    report = _clean(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for i, row in enumerate(report["results"]):
            w.writerow([
                report["request"]["command"], i, _fmt(row.get("inputs")), _fmt(row.get("value")),
                _fmt(row.get("lower")), _fmt(row.get("upper")), _fmt(row.get("error_estimate")), row.get("status", ""),
            ])
        return buf.getvalue()
    lines = [f"command: {report['request']['command']}"]
    for i, row in enumerate(report["results"]):
        parts = [f"{k}={_fmt(row[k])}" for k in sorted(row) if k not in ("certificate", "report")]
        lines.append(f"[{i}] " + " ".join(parts))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# commands; each returns (results, exit_code)


def _worst(codes):
    if not codes:
        return EXIT_OK
    if EXIT_NUMERIC in codes:
        return EXIT_NUMERIC
    return max(codes)


def cmd_eval(args, tol):
    rows, codes = [], []
    for x in _points(args):
        try:
            r = hyp_eval(args.A, args.B, float(x))
            rows.append({"inputs": {"x": x}, "value": r.value, "error_estimate": r.abs_err, "method": r.method, "status": "ok"})
            codes.append(EXIT_OK)
        except HyperboundError as exc:
            rows.append({"inputs": {"x": x}, "error_estimate": None, "status": f"error: {exc}"})
            codes.append(EXIT_NUMERIC)
    return rows, _worst(codes)


def cmd_kernel(args, tol):
    spec = KernelSpec(args.A, args.B)
    rows, codes = [], []
    for t in _points(args, "t"):
        try:
            r = kernel_eval(spec, float(t), method=args.method)
            rows.append({"inputs": {"t": t}, "value": r.value, "error_estimate": r.abs_err, "method": r.method, "status": "ok"})
            codes.append(EXIT_OK)
        except HyperboundError as exc:
            rows.append({"inputs": {"t": t}, "error_estimate": None, "status": f"error: {exc}"})
            codes.append(EXIT_NUMERIC)
    return rows, _worst(codes)


def cmd_check(args, tol):
    rep = condition_report(args.A, args.B)
    failed = rep.failed()
    row = {"inputs": {"A": args.A, "B": args.B}, "certificate": rep, "error_estimate": None,
           "status": "ok" if not failed else "hypothesis_failed: " + ",".join(failed)}
    return [row], EXIT_HYPOTHESIS if failed else EXIT_OK


def _bound_row(fam, A, B, x, sigma, tol, skip_code=EXIT_HYPOTHESIS):
    try:
        c = _bounds.certify(fam, A, B, float(x), sigma)
    except (ShapeError, DomainError) as exc:
        return {"inputs": {"family": fam, "x": x}, "error_estimate": None, "status": f"not_applicable: {exc}"}, skip_code
    except HyperboundError as exc:
        return {"inputs": {"family": fam, "x": x}, "error_estimate": None, "status": f"error: {exc}"}, EXIT_NUMERIC
    ok = c.sandwich_ok(tol)
    if c.advisory:
        status, code = "advisory", EXIT_HYPOTHESIS
    elif c.reference_value is None:
        status, code = "no_reference", EXIT_NUMERIC
    elif ok:
        status, code = "ok", EXIT_OK
    else:
        status, code = "sandwich_violated", EXIT_NUMERIC
    row = {"inputs": {"family": fam, "x": x}, "lower": c.lower, "upper": c.upper, "value": c.reference_value,
           "certificate": c, "error_estimate": None, "status": status}
    return row, code


def cmd_bounds(args, tol):
    rows, codes = [], []
    for x in _points(args):
        row, code = _bound_row(args.family, args.A, args.B, x, args.sigma, tol)
        rows.append(row)
        codes.append(code)
    return rows, _worst(codes)


def _split_from(args):
    return SplitSpec(args.A1, args.B1, args.A2, args.B2)


def cmd_verify_rep(args, tol):
    kw = {}
    if args.rep == "split":
        kw["split"] = _split_from(args)
    else:
        kw.update(A=args.A, B=args.B)
        if args.rep == "stieltjes":
            kw["sigma"] = args.sigma if args.sigma is not None else 1.0
        if args.rep in ("laplace", "cosine") and args.variant:
            kw["variant"] = args.variant
        if args.rep == "small_p":
            kw["alphas"] = args.alphas
    try:
        rep = rep_vs_series(args.rep, parse_grid(args.grid), rel_tol=tol, **kw)
    except SpecViolation as exc:
        return [{"inputs": {"rep": args.rep}, "error_estimate": None, "status": f"hypothesis_failed: {exc}"}], EXIT_HYPOTHESIS
    except HyperboundError as exc:
        return [{"inputs": {"rep": args.rep}, "error_estimate": None, "status": f"error: {exc}"}], EXIT_NUMERIC
    rows = []
    for z, r, s, b in zip(rep.z, rep.rep, rep.series, rep.budget):
        rows.append({"inputs": {"z": z}, "value": r, "reference": s, "error_estimate": b,
                     "status": "ok" if abs(r - s) <= b else "mismatch"})
    rows.append({"inputs": {"summary": args.rep}, "report": rep, "error_estimate": rep.max_abs,
                 "status": "ok" if rep.passed else "failed"})
    return rows, EXIT_OK if rep.passed else EXIT_NUMERIC


def _scan_rows(rep):
    hyp_ok = all(h.status is not False for h in rep.hypotheses)
    if rep.passed:
        code = EXIT_OK if hyp_ok else EXIT_HYPOTHESIS
    else:
        code = EXIT_HYPOTHESIS if not hyp_ok else EXIT_NUMERIC
    status = ("ok" if rep.passed else "failed") + ("" if hyp_ok else " (hypotheses failed)")
    return [{"inputs": rep.grid, "value": rep.min_margin, "report": rep, "error_estimate": rep.tolerance, "status": status}], code


def cmd_cm_scan(args, tol):
    from .series import HyperSpec

    grid = parse_grid(args.grid) if args.grid else None
    if args.log_cm:
        rep = log_cm_check(args.sigma if args.sigma is not None else 1.0, args.A, args.B, grid, tolerance=tol)
    elif args.composite:
        rep = cm_check((args.sigma if args.sigma is not None else 1.0, args.A, args.B), min(args.n_max, 8), grid, tol)
    else:
        A = args.A if args.sigma is None else (args.sigma,) + args.A
        rep = cm_check(HyperSpec(A, args.B), args.n_max, grid, tol)
    return _scan_rows(rep)


def cmd_ratio_scan(args, tol):
    grid = parse_grid(args.grid) if args.grid else None
    return _scan_rows(ratio_monotone_check(_split_from(args), args.mu, grid, tol))


def cmd_convexity_scan(args, tol):
    mu = parse_grid(args.mu_grid)
    return _scan_rows(logconvex_check(_split_from(args), mu, args.x, tol))


def _campaign_task(task):
    fam, A, B, x, sigma, tol = task
    # families that do not fit the shape of (A, B) are skipped, not failed
    return _bound_row(fam, A, B, x, sigma, tol, skip_code=EXIT_OK)


def cmd_campaign(args, tol):
    fams = args.families.split(",") if args.families else list(BOUND_FAMILIES)
    for f in fams:
        if f not in BOUND_FAMILIES:
            raise UsageError(f"unknown family {f!r}")
    tasks = [(f, args.A, args.B, float(x), args.sigma, tol) for f in fams for x in parse_grid(args.grid)]
    if args.jobs > 1:
        # map preserves input order whatever the completion order
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            out = list(ex.map(_campaign_task, tasks))
    else:
        out = [_campaign_task(t) for t in tasks]
    rows = [row for row, _ in out]
    return rows, _worst([code for _, code in out])


COMMANDS = {
    "eval": cmd_eval,
    "kernel": cmd_kernel,
    "check": cmd_check,
    "bounds": cmd_bounds,
    "verify-rep": cmd_verify_rep,
    "cm-scan": cmd_cm_scan,
    "ratio-scan": cmd_ratio_scan,
    "convexity-scan": cmd_convexity_scan,
    "campaign": cmd_campaign,
}


def build_parser():
    # output options are accepted before or after the command name
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="property tolerance (default: $HYPERBOUND_TOL or 1e-9)")
    p = _Parser(prog="hyperbound", parents=[common],
                description="Evaluate, bound and scan generalized hypergeometric functions.",
                epilog="Grids are start:stop:count or log:start:stop:count; write --grid=-1:1:5 when start is negative.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def vec(sp, *names):
        for n in names:
            sp.add_argument(f"--{n}", type=parse_vector, default=())

    s = sub.add_parser("eval", help="value of pFq(A; B; x)")
    vec(s, "A", "B")
    s.add_argument("--x", type=float)
    s.add_argument("--grid")

    s = sub.add_parser("kernel", help="G-function density with bottom row A and top row B")
    vec(s, "A", "B")
    s.add_argument("--t", type=float)
    s.add_argument("--grid")
    s.add_argument("--method", default="auto", choices=("auto", "residue", "mellin_barnes"))

    s = sub.add_parser("check", help="hypothesis predicates for (A, B)")
    vec(s, "A", "B")

    s = sub.add_parser("bounds", help="certified envelopes")
    s.add_argument("--family", required=True, choices=BOUND_FAMILIES)
    vec(s, "A", "B")
    s.add_argument("--sigma", type=float)
    s.add_argument("--x", type=float)
    s.add_argument("--grid")

    s = sub.add_parser("verify-rep", help="integral representation against the series")
    s.add_argument("--rep", required=True, choices=("stieltjes", "split", "laplace", "cosine", "small_p"))
    vec(s, "A", "B", "A1", "B1", "A2", "B2", "alphas")
    s.add_argument("--sigma", type=float)
    s.add_argument("--variant")
    s.add_argument("--grid", required=True)

    s = sub.add_parser("cm-scan", help="complete monotonicity scan")
    vec(s, "A", "B")
    s.add_argument("--sigma", type=float, help="prepend sigma to A (q+1Fq case)")
    s.add_argument("--composite", action="store_true", help="scan x^-sigma F(sigma, A; B; -1/x)")
    s.add_argument("--log-cm", action="store_true", help="logarithmic complete monotonicity of the composite")
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--grid")

    s = sub.add_parser("ratio-scan", help="decrease of the shifted ratio in x")
    vec(s, "A1", "B1", "A2", "B2")
    s.add_argument("--mu", type=float, required=True)
    s.add_argument("--grid")

    s = sub.add_parser("convexity-scan", help="log-convexity in the shift")
    vec(s, "A1", "B1", "A2", "B2")
    s.add_argument("--mu-grid", required=True)
    s.add_argument("--x", type=float, required=True)

    s = sub.add_parser("campaign", help="all bound families over a grid")
    vec(s, "A", "B")
    s.add_argument("--families")
    s.add_argument("--sigma", type=float)
    s.add_argument("--grid", required=True)
    s.add_argument("--jobs", type=int, default=1)
    return p


def _request_record(args, tol):
    rec = {k: v for k, v in vars(args).items() if v is not None and v != () and v is not False}
    rec["tol"] = tol
    return rec


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.format = getattr(args, "format", "json")
        args.tol = getattr(args, "tol", None)
        if not args.command:
            raise UsageError("a command is required")
        tol = args.tol if args.tol is not None else default_tolerance()
        if not tol > 0:
            raise UsageError("--tol must be positive")
        results, code = COMMANDS[args.command](args, tol)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        parser.print_usage(stderr)
        return EXIT_USAGE
    except (SpecViolation, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except HyperboundError as exc:
        print(f"numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    stdout.write(render({"request": _request_record(args, tol), "results": results}, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
