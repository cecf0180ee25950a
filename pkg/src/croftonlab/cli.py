"""Command-line front end.

Subcommands ``perimeter``, ``distance``, ``verify`` and ``measures``.  Exit codes:
0 success, 1 verification failure, 2 input error, 3 nonconvergence.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .body import Polygon, load_body, validate
from .errors import GeometryError
from .frames import tangent_frames
from .hilbert import (HilbertDomain, cauchy_perimeter_hilbert, crofton_length_mc, discrete_cauchy_distance,
                      hilbert_distance, hilbert_perimeter_oracle)
from .models import chart_distance, check_in_chart
from .perimeter import METHODS, PerimeterReport, applicable_methods, measure_ratios, perimeter
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NONCONVERGED = 0, 1, 2, 3
DEFAULT_K = {"euclidean": 0.0, "sphere": 1.0, "hyperbolic": -1.0}
HILBERT_METHODS = ("hilbert-cauchy", "hilbert-oracle")
MEASURE_COLUMNS = ("t", "s", "rho", "theta", "alpha", "r", "x", "omega", "phi", "phi_tilde", "kappa_g",
                   "dtheta_ds", "domega_ds", "domega_dtheta", "dphi_domega", "dphi_dtheta",
                   "dphitilde_domega", "dphi_dtheta_poincare")


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit(rows, fmt, columns=None, stream=None):
    """Write rows (dicts) as CSV with 17 significant digits, or as JSON."""
    stream = stream or sys.stdout
    columns = columns or (list(rows[0].keys()) if rows else [])
    if fmt == "json":
        data = [{c: _jsonable(r.get(c)) for c in columns} for r in rows]
        stream.write(json.dumps(data[0] if len(data) == 1 else data, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    stream.write(buf.getvalue())


def parse_point(text):
    try:
        if text.strip().startswith("["):
            vals = json.loads(text)
        else:
            vals = [float(x) for x in text.split(",")]
        p = np.array(vals, dtype=float)
    except (ValueError, json.JSONDecodeError) as exc:
        raise GeometryError("BAD_INPUT", f"cannot parse point {text!r}") from exc
    if p.shape != (2,) or not np.all(np.isfinite(p)):
        raise GeometryError("BAD_INPUT", f"point must be 'x,y', got {text!r}")
    return p


def resolve_k(args):
    if args.space == "hilbert":
        return None
    k = DEFAULT_K[args.space] if args.k is None else float(args.k)
    if (args.space == "euclidean" and k != 0) or (args.space == "sphere" and not k > 0) \
            or (args.space == "hyperbolic" and not k < 0):
        raise GeometryError("BAD_INPUT", f"--k {k} does not match --space {args.space}")
    return k


def _require(value, flag):
    if value is None:
        raise GeometryError("BAD_INPUT", f"{flag} is required")
    return value


def _load_domain(path):
    return HilbertDomain(load_body(_require(path, "--domain")))


def cmd_perimeter(args):
    if args.tol <= 0:
        raise GeometryError("BAD_INPUT", "--tol must be positive")
    body = load_body(_require(args.body, "--body"))
    if args.space == "hilbert":
        domain = _load_domain(args.domain)
        if not (isinstance(body, Polygon) and len(body) < 3):
            validate(body, 0.0)
        methods = HILBERT_METHODS if args.method == "all" else (args.method,)
        reports = []
        for m in methods:
            if m == "hilbert-cauchy":
                res = cauchy_perimeter_hilbert(domain, body, tol=args.tol)
                reports.append(PerimeterReport(m, res.value, res.error_estimate, res.evaluations, res.converged))
            elif m == "hilbert-oracle":
                n = args.samples or 4096
                reports.append(PerimeterReport(m, hilbert_perimeter_oracle(domain, body, n), math.nan, n))
            else:
                raise GeometryError("BAD_INPUT", f"method {m!r} is not available for --space hilbert")
    else:
        k = resolve_k(args)
        validate(body, k)
        if args.method == "all":
            methods = applicable_methods(k, body)
        else:
            if args.method not in METHODS:
                raise GeometryError("BAD_INPUT", f"unknown method {args.method!r}")
            if args.method.startswith("projective") and k >= 0:
                raise GeometryError("BAD_INPUT", f"{args.method} needs --space hyperbolic")
            methods = [args.method]
        reports = [perimeter(k, body, m, tol=args.tol) for m in methods]
    emit([r.as_row() for r in reports], args.out,
         ["method", "value", "error_estimate", "evaluations", "converged"])
    return EXIT_OK if all(r.converged for r in reports) else EXIT_NONCONVERGED


def cmd_distance(args):
    p = parse_point(_require(args.p, "--p"))
    q = parse_point(_require(args.q, "--q"))
    if args.space == "hilbert":
        domain = _load_domain(args.domain)
        method = args.method or "exact"
        if method == "exact":
            row = {"method": method, "value": hilbert_distance(domain, p, q)}
        elif method == "discrete":
            row = {"method": method, "value": discrete_cauchy_distance(domain, p, q)}
        elif method == "crofton-mc":
            res = crofton_length_mc(domain, np.stack([p, q]), args.samples or 10**6, args.seed)
            emit([res.to_json()], args.out, ["estimate", "std_error", "n", "seed"])
            return EXIT_OK
        else:
            raise GeometryError("BAD_INPUT", f"unknown distance method {method!r}")
    else:
        k = resolve_k(args)
        check_in_chart(k, np.stack([p, q]))
        row = {"method": "chart", "value": chart_distance(k, p, q)}
    emit([row], args.out, ["method", "value"])
    return EXIT_OK


def cmd_verify(args):
    results = run_suite(args.suite, args.seed, args.threshold_scale)
    rows = [{"suite": r.suite, "check": r.name, "deviation": r.deviation, "threshold": r.threshold,
             "status": "PASS" if r.passed else "FAIL"} for r in results]
    emit(rows, args.out, ["suite", "check", "deviation", "threshold", "status"])
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_measures(args):
    if args.space == "hilbert":
        raise GeometryError("BAD_INPUT", "measures needs a constant-curvature space")
    k = resolve_k(args)
    body = load_body(_require(args.body, "--body"))
    validate(body, k)
    if isinstance(body, Polygon):
        raise GeometryError("BAD_INPUT", "measures needs a smooth body")
    n = args.samples or 256
    if n < 1:
        raise GeometryError("BAD_INPUT", "--samples must be positive")
    t = 2 * math.pi * np.arange(n) / n
    fr = tangent_frames(body, k, t, arclength=True)
    m = measure_ratios(k, body, t, frame=fr)
    rows = []
    for i in range(n):
        row = {c: getattr(fr, c)[i] for c in MEASURE_COLUMNS[:11]}
        row.update({c: getattr(m, c)[i] for c in MEASURE_COLUMNS[11:]})
        rows.append(row)
    emit(rows, args.out, list(MEASURE_COLUMNS))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="croftonlab", description="Integral-geometry perimeters and distances.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, body=True):
        p.add_argument("--space", choices=("euclidean", "sphere", "hyperbolic", "hilbert"), default="euclidean")
        p.add_argument("--k", type=float, default=None, help="curvature (defaults 0, 1, -1 by space)")
        if body:
            p.add_argument("--body", help="body JSON file")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--out", choices=("csv", "json"), default="csv")

    p = sub.add_parser("perimeter", help="perimeter of a convex body")
    common(p)
    p.add_argument("--method", default="all", help="one of %s, hilbert-cauchy, hilbert-oracle or all" % ", ".join(METHODS))
    p.add_argument("--domain", help="Hilbert domain JSON file")
    p.set_defaults(func=cmd_perimeter)

    p = sub.add_parser("distance", help="distance between two points")
    common(p, body=False)
    p.add_argument("--domain", help="Hilbert domain JSON file")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--method", default=None, help="hilbert: exact, discrete or crofton-mc")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.add_argument("--threshold-scale", type=float, default=1.0,
                   help="multiply every threshold (0 forces failure; for testing the exit path)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("measures", help="tabulate boundary frames and measure ratios")
    common(p)
    p.set_defaults(func=cmd_measures)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeometryError as exc:
        sys.stdout.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
