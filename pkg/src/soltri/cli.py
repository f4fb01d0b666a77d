"""Command-line front end: triangle reports, table sweeps, curves, scans.

Exit codes: 0 success, 1 usage error, 2 degenerate input, 3 property
violation.  Output is a single JSON envelope by default, or CSV rows with
--format csv.  Angles are radians unless --degrees is given; all numbers
are emitted at full precision so output files can be re-parsed losslessly.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys

from . import __version__
from .core import SolPoint
from .curves import (
    PARAMS_RESIDUAL_TOL,
    POINT_EQUALITY_TOL,
    CurveParams,
    Direction,
    endpoint_branch,
    params_from_endpoint,
    sample_curve,
    translation_distance,
)
from .triangles import (
    COPLANARITY_TOL,
    MIN_VERTEX_SEPARATION,
    SUM_VS_PI_TOL,
    Triangle,
    report,
)
from . import verify

# a leading dash followed by a digit or .digit is data, not an option
_NEGATIVE_TOKEN = re.compile(r"^-(\d|\.\d)")


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _float(text: str) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"number must be finite: {text!r}")
    return value


def _triple(text: str) -> tuple[float, float, float]:
    parts = text.strip().split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {text!r}")
    return tuple(_float(p) for p in parts)


def _template(text: str) -> tuple[float | None, float | None, float | None]:
    parts = text.strip().split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated fields, got {text!r}")
    out = []
    for p in parts:
        out.append(None if p.strip() in ("?", "_") else _float(p))
    if sum(1 for v in out if v is None) != 1:
        raise argparse.ArgumentTypeError("template must mark exactly one free coordinate with '?'")
    return tuple(out)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default json)")
    common.add_argument("--tol", type=_float, default=1e-9, metavar="REAL",
                        help="check/display tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized scans")
    common.add_argument("--degrees", action="store_true",
                        help="emit angle outputs in degrees (inputs stay in radians)")

    parser = _Parser(prog="soltri", description="Translation-curve geometry in Sol space")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("triangle", parents=[common],
                       help="interior angles and planarity report for a triangle")
    p.add_argument("a1", type=_triple, help="first vertex X,Y,Z")
    p.add_argument("a2", type=_triple, help="second vertex X,Y,Z")
    p.add_argument("a3", type=_triple, help="third vertex X,Y,Z")
    p.set_defaults(func=_cmd_triangle)

    p = sub.add_parser("tables", parents=[common], help="built-in angle-sum table sweeps")
    p.add_argument("which", type=int, choices=(1, 2), help="which built-in sweep")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("curve", parents=[common], help="sample points along a curve segment")
    p.add_argument("phi", type=_float, help="direction angle in [-pi, pi] (radians)")
    p.add_argument("theta", type=_float, help="direction angle in [-pi/2, pi/2] (radians)")
    p.add_argument("t", type=_float, help="arc length >= 0")
    p.add_argument("--samples", type=int, default=50, metavar="N",
                   help="number of sample points, >= 2 (default 50)")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("params", parents=[common],
                       help="curve parameters (phi, theta, t) reaching a point")
    p.add_argument("x", type=_float)
    p.add_argument("y", type=_float)
    p.add_argument("z", type=_float)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("distance", parents=[common], help="translation distance between two points")
    p.add_argument("p", type=_triple, help="first point X,Y,Z")
    p.add_argument("q", type=_triple, help="second point X,Y,Z")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("sweep", parents=[common],
                       help="angle table for a custom one-parameter triangle family")
    p.add_argument("--a1", type=_triple, default=(0.0, 0.0, 0.0), help="first vertex (default origin)")
    p.add_argument("--a2", type=_triple, required=True, help="second vertex X,Y,Z")
    p.add_argument("--template", type=_template, required=True,
                   help="third vertex with one coordinate replaced by '?', e.g. 0.5,5,?")
    p.add_argument("--values", type=_float, nargs="+", required=True,
                   help="values for the free coordinate")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run randomized property suites")
    p.add_argument("--trials", type=int, default=1000, help="trials per suite (default 1000)")
    p.add_argument("--suite", choices=("all", "theorem", "planar", "antipodality", "roundtrip", "ode"),
                   default="all", help="which suite to run (default all)")
    p.set_defaults(func=_cmd_verify)

    return parser


def _deg(args, value: float) -> float:
    return math.degrees(value) if args.degrees else value


def _envelope(args, command: str, input_echo: dict, results: dict) -> dict:
    return {
        "command": command,
        "input": input_echo,
        "results": results,
        "version": __version__,
        "angle_unit": "degrees" if args.degrees else "radians",
        "tolerances": {
            "check": args.tol,
            "branch_residual": PARAMS_RESIDUAL_TOL,
            "coplanarity": COPLANARITY_TOL,
            "angle_sum_vs_pi": SUM_VS_PI_TOL,
            "point_equality": POINT_EQUALITY_TOL,
            "min_vertex_separation": MIN_VERTEX_SEPARATION,
        },
    }


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(args, env: dict, header=None, rows=None) -> None:
    if args.format == "json":
        print(json.dumps(env, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def _cmd_triangle(args) -> int:
    try:
        tri = Triangle(SolPoint(*args.a1), SolPoint(*args.a2), SolPoint(*args.a3))
    except ValueError as exc:
        print(f"soltri triangle: {exc}", file=sys.stderr)
        return 2
    rep = report(tri)
    results = {
        "vertices": {"a1": list(rep.vertices[0]), "a2": list(rep.vertices[1]), "a3": list(rep.vertices[2])},
        "images": {k: list(p) for k, p in rep.images.items()},
        "tangents": {k: list(v) for k, v in rep.tangents.items()},
        "omega1": _deg(args, rep.omega1),
        "omega2": _deg(args, rep.omega2),
        "omega3": _deg(args, rep.omega3),
        "angle_sum": _deg(args, rep.angle_sum),
        "excess": _deg(args, rep.excess),
        "coplanar": rep.coplanar,
        "coplanarity_residual": rep.coplanarity_residual,
        "degenerate": rep.degenerate,
        "side_lengths": dict(rep.side_lengths),
    }
    rows = [
        ("omega1", results["omega1"]),
        ("omega2", results["omega2"]),
        ("omega3", results["omega3"]),
        ("angle_sum", results["angle_sum"]),
        ("excess", results["excess"]),
        ("coplanar", rep.coplanar),
        ("coplanarity_residual", rep.coplanarity_residual),
        ("degenerate", rep.degenerate),
    ]
    rows += [(k, v) for k, v in rep.side_lengths.items()]
    for name, point in zip(("a1", "a2", "a3"), rep.vertices):
        rows += [(f"{name}.{ax}", c) for ax, c in zip("xyz", point)]
    for key in sorted(rep.images):
        rows += [(f"{key}.{ax}", c) for ax, c in zip("xyz", rep.images[key])]
    for key in sorted(rep.tangents):
        rows += [(f"{key}.{ax}", c) for ax, c in zip("xyz", rep.tangents[key])]
    env = _envelope(args, "triangle", {"a1": list(args.a1), "a2": list(args.a2), "a3": list(args.a3)}, results)
    _emit(args, env, ("field", "value"), rows)
    return 0


def _sweep_rows(args, rows, include_flag: bool):
    header = ["value", "omega1", "omega2", "omega3", "angle_sum"]
    if include_flag:
        header.append("degenerate")
    out_json = []
    out_csv = []
    for r in rows:
        entry = {
            "value": r.value,
            "omega1": _deg(args, r.omega1),
            "omega2": _deg(args, r.omega2),
            "omega3": _deg(args, r.omega3),
            "angle_sum": _deg(args, r.angle_sum),
            "degenerate": r.degenerate,
        }
        out_json.append(entry)
        line = [r.value, entry["omega1"], entry["omega2"], entry["omega3"], entry["angle_sum"]]
        if include_flag:
            line.append(r.degenerate)
        out_csv.append(line)
    return header, out_json, out_csv


def _cmd_tables(args) -> int:
    spec = verify.table_spec(args.which)
    rows = verify.table_sweep(spec)
    header, out_json, out_csv = _sweep_rows(args, rows, include_flag=False)
    results = {
        "a1": list(spec.a1),
        "a2": list(spec.a2),
        "template": [c for c in spec.template],
        "rows": out_json,
    }
    env = _envelope(args, "tables", {"which": args.which}, results)
    _emit(args, env, header, out_csv)
    return 0


def _cmd_curve(args) -> int:
    try:
        params = CurveParams(Direction(args.phi, args.theta), args.t)
        points = sample_curve(params, args.samples)
    except ValueError as exc:
        print(f"soltri curve: {exc}", file=sys.stderr)
        return 1
    step = args.t / (args.samples - 1)
    rows = [(i * step, p.x, p.y, p.z) for i, p in enumerate(points)]
    results = {"points": [list(r) for r in rows]}
    env = _envelope(args, "curve",
                    {"phi": args.phi, "theta": args.theta, "t": args.t, "samples": args.samples},
                    results)
    _emit(args, env, ("t", "x", "y", "z"), rows)
    return 0


def _cmd_params(args) -> int:
    point = SolPoint(args.x, args.y, args.z)
    try:
        params = params_from_endpoint(point)
    except ValueError as exc:
        print(f"soltri params: degenerate input: {exc}", file=sys.stderr)
        return 2
    results = {
        "phi": _deg(args, params.phi),
        "theta": _deg(args, params.theta),
        "t": params.t,
        "branch": endpoint_branch(point),
        "distance": params.t,
    }
    env = _envelope(args, "params", {"x": args.x, "y": args.y, "z": args.z}, results)
    _emit(args, env, ("phi", "theta", "t", "branch", "distance"),
          [(results["phi"], results["theta"], params.t, results["branch"], params.t)])
    return 0


def _cmd_distance(args) -> int:
    d = translation_distance(SolPoint(*args.p), SolPoint(*args.q))
    env = _envelope(args, "distance", {"p": list(args.p), "q": list(args.q)}, {"distance": d})
    _emit(args, env, ("distance",), [(d,)])
    return 0


def _cmd_sweep(args) -> int:
    spec = verify.SweepSpec(
        a1=SolPoint(*args.a1),
        a2=SolPoint(*args.a2),
        template=args.template,
        values=tuple(args.values),
    )
    rows = verify.table_sweep(spec)
    header, out_json, out_csv = _sweep_rows(args, rows, include_flag=True)
    results = {
        "a1": list(spec.a1),
        "a2": list(spec.a2),
        "template": [c for c in spec.template],
        "rows": out_json,
    }
    env = _envelope(args, "sweep",
                    {"a1": list(args.a1), "a2": list(args.a2),
                     "template": [c for c in args.template], "values": list(spec.values)},
                    results)
    _emit(args, env, header, out_csv)
    return 0


_SUITES = ("theorem", "planar", "antipodality", "roundtrip", "ode")


def _cmd_verify(args) -> int:
    names = _SUITES if args.suite == "all" else (args.suite,)
    suite_rows = []
    total = 0
    for name in names:
        if name == "theorem":
            sr = verify.theorem_scan(args.trials, args.seed, tol=args.tol)
            row = {
                "suite": "theorem",
                "trials": sr.trials,
                "violations": sr.violations,
                "worst": math.pi - sr.min_sum,
                "seed": sr.seed,
                "detail": repr(sr.min_triangle) if sr.violations else "",
            }
        else:
            if name == "planar":
                res = verify.planar_scan(args.trials, args.seed, tol=args.tol)
            elif name == "antipodality":
                res = verify.antipodality_scan(args.trials, args.seed, tol=args.tol)
            elif name == "roundtrip":
                res = verify.roundtrip_scan(args.trials, args.seed, tol=args.tol)
            else:
                # the integration oracle has its own accuracy scale
                res = verify.ode_scan(args.trials, args.seed)
            row = {
                "suite": res.suite,
                "trials": res.trials,
                "violations": res.violations,
                "worst": res.worst,
                "seed": res.seed,
                "detail": res.detail,
            }
        total += row["violations"]
        suite_rows.append(row)
    results = {"suites": suite_rows, "violations": total}
    env = _envelope(args, "verify", {"trials": args.trials, "suite": args.suite, "seed": args.seed},
                    results)
    _emit(args, env, ("suite", "trials", "violations", "worst", "seed", "detail"),
          [(r["suite"], r["trials"], r["violations"], r["worst"], r["seed"], r["detail"])
           for r in suite_rows])
    return 3 if total else 0


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = [" " + a if _NEGATIVE_TOKEN.match(a) else a for a in argv]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
