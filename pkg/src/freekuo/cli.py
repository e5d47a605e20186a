"""Command-line front end: ``python -m freekuo <command> ...``.

Exit codes: 0 success, 1 a check failed (nonzero residual, out-of-tolerance
deviation), 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import condensation as cond
from . import correlations as corr
from . import formulas
from .counting import count_region
from .lattice import RegionError, parse_region
from .regions import RegionParams
from .render import RenderError, RenderSpec, render

DEFAULT_SEED = 20240601
REGION_KINDS = ("hexagon", "butterfly", "flashlight", "reduced-flashlight", "trapezoid")


class UsageError(Exception):
    pass


def _str(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, mpmath.mp.dps)
    return str(v)


def _grid(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc


def _emit(rows: list[dict], doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    if not rows:
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    out.write(buf.getvalue())


def _add_region_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--region", choices=REGION_KINDS)
    g.add_argument("--region-file", type=Path, help="text file: 'col row U|D' and 'FREE col row H|L|R' lines")
    for name in ("x", "y", "z", "k", "p", "a", "b", "c"):
        p.add_argument(f"--{name}", type=int, default=0)


def _region_from(args):
    if args.region_file is not None:
        try:
            text = args.region_file.read_text()
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        return parse_region(text), {"file": str(args.region_file)}
    params = RegionParams(args.region, args.x, args.y, args.z, args.k, args.p, args.a, args.b, args.c)
    return params.build(), params.as_dict()


# --- commands ------------------------------------------------------------------

def cmd_count(args, out) -> int:
    region, desc = _region_from(args)
    value = count_region(region, args.engine)
    doc = {"region": desc, "engine": args.engine, "count": str(value)}
    _emit([{**{f"region_{k}": v for k, v in desc.items()}, "engine": args.engine, "count": str(value)}], doc, args.format, out)
    return 0


def _formula_value(args):
    name = args.name
    x, y, z, k, p, a, b = args.x, args.y, args.z, args.k, args.p, args.a, args.b
    if name == "macmahon":
        return {"x": x, "y": y, "z": z}, formulas.macmahon_box(x, y, z)
    if name == "spp":
        return {"a": a, "b": b}, formulas.spp(a, b)
    if name == "flashlight":
        return {"x": x, "z": z, "k": k, "p": p}, formulas.flashlight_formula(x, z, k, p)
    if name == "butterfly":
        return {"x": x, "y": y, "k": k, "p": p}, formulas.butterfly_sym_formula(x, y, k, p)
    if name == "corner":
        return {"k": k, "p": p}, formulas.corner_correlation(k, p)
    if name == "bulk":
        return {"k": k}, formulas.bulk_correlation(k)
    if name == "bulk-asymptote":
        return {"k": k, "digits": args.digits}, formulas.bulk_asymptote(k, args.digits)
    raise UsageError(f"unknown formula {name!r}")


def cmd_formula(args, out) -> int:
    params, value = _formula_value(args)
    if isinstance(value, formulas.PiScaledRational):
        shown = value.as_dict()
        decimal = mpmath.nstr(value.to_mpf(args.digits), args.digits)
    elif isinstance(value, mpmath.mpf):
        shown = mpmath.nstr(value, args.digits)
        decimal = shown
    else:
        shown = _str(value)
        decimal = None
    doc = {"name": args.name, "params": params, "value": shown}
    if decimal is not None:
        doc["decimal"] = decimal
    row = {"name": args.name, **params, "value": json.dumps(shown) if isinstance(shown, dict) else shown}
    _emit([row], doc, args.format, out)
    return 0


IDENTITY_SETUP = {
    "eight": dict(anchors=(cond.AC,)),
    "eight-bd": dict(anchors=(cond.BD,)),
    "four-even": dict(anchors=(cond.AC, cond.BD)),
    "four-odd": dict(anchors=(cond.AC, cond.BD)),
    "kuo": dict(anchors=(), empty_free=True),
    "ebh": dict(anchors=(), empty_free=True),
}


def cmd_verify_condensation(args, out) -> int:
    setup = IDENTITY_SETUP[args.identity]
    residual = cond.RESIDUALS[args.identity]
    rows = []
    for i in range(args.trials):
        trial_seed = args.seed * 1_000_003 + i
        quad = cond.random_separated_quad(trial_seed, args.budget, args.weights, **setup)
        r = residual(quad)
        rows.append({
            "trial": i, "seed": trial_seed, "vertices": len(quad.graph),
            "free": len(quad.graph.free), "residual": _str(Fraction(r)),
        })
    ok = all(r["residual"] == "0" for r in rows)
    doc = {"identity": args.identity, "seed": args.seed, "trials": rows, "all_zero": ok}
    _emit(rows, doc, args.format, out)
    print(f"seed={args.seed} identity={args.identity} trials={args.trials} all_zero={ok}", file=sys.stderr)
    return 0 if ok else 1


def cmd_verify_recurrence(args, out) -> int:
    if args.grid:
        cases = [(x, z, k, p) for x in range(1, 6) for z in range(2, 5) for k in range(3) for p in range(3)]
    else:
        cases = [(args.x, args.z, args.k, args.p)]
    rows = [{"x": x, "z": z, "k": k, "p": p, "holds": cond.verify_flashlight_recurrence(x, z, k, p)}
            for x, z, k, p in cases]
    ok = all(r["holds"] for r in rows)
    _emit(rows, {"recurrence": rows, "all_hold": ok}, args.format, out)
    return 0 if ok else 1


def _report_doc(rep: corr.ConvergenceReport) -> dict:
    return {"label": rep.label, "rows": rep.rows(), "monotone": rep.monotone,
            "tolerance": rep.tolerance, "verdict": rep.verdict}


def cmd_correlate(args, out) -> int:
    if args.which == "corner":
        reps = [corr.corner_convergence(args.k, args.p, args.grid, args.digits)]
    elif args.which == "bulk":
        reps = [corr.bulk_ratio_check(args.grid, args.digits)]
    else:
        reps = list(corr.log_asymptotics_table(args.grid, args.digits))
    rows = [{"series": r.label, **row} for r in reps for row in r.rows()]
    doc = {"reports": [_report_doc(r) for r in reps]}
    _emit(rows, doc, args.format, out)
    return 0 if all(r.verdict for r in reps) else 1


def cmd_render(args, out) -> int:
    region, _ = _region_from(args)
    svg = render(RenderSpec(region, overlay=args.overlay, scale=args.scale))
    if args.out:
        Path(args.out).write_text(svg)
    else:
        out.write(svg)
    return 0


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    digits = corr.default_digits()
    ap = argparse.ArgumentParser(prog="freekuo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count free-boundary tilings of a region")
    _add_region_args(p)
    p.add_argument("--engine", choices=("dp", "enum", "oracle"), default="dp")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("formula", help="evaluate a product formula exactly")
    p.add_argument("--name", required=True,
                   choices=("macmahon", "spp", "flashlight", "butterfly", "corner", "bulk", "bulk-asymptote"))
    for name in ("x", "y", "z", "k", "p", "a", "b"):
        p.add_argument(f"--{name}", type=int, default=0)
    p.add_argument("--digits", type=int, default=digits)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="check identities exactly")
    vsub = p.add_subparsers(dest="what", required=True)
    q = vsub.add_parser("condensation", help="residuals on seeded random quads")
    q.add_argument("--identity", required=True, choices=sorted(IDENTITY_SETUP))
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--budget", type=int, default=20)
    q.add_argument("--weights", choices=("unit", "rational"), default="rational")
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_verify_condensation)
    q = vsub.add_parser("recurrence", help="the bilinear flashlight recurrence via DP counts")
    for name in ("x", "z", "k", "p"):
        q.add_argument(f"--{name}", type=int, default=0)
    q.add_argument("--grid", action="store_true", help="run 1<=x<=5, 2<=z<=4, 0<=k,p<=2")
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_verify_recurrence)

    p = sub.add_parser("correlate", help="convergence reports for the correlation laws")
    p.add_argument("which", choices=("corner", "bulk", "log"))
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--grid", type=_grid, default=None)
    p.add_argument("--digits", type=int, default=digits)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("render", help="SVG picture of a region")
    _add_region_args(p)
    p.add_argument("--overlay", action="store_true", help="draw the first tiling")
    p.add_argument("--scale", type=float, default=20.0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_render)
    return ap


DEFAULT_GRIDS = {"corner": [64, 128, 256, 512], "bulk": [8, 16, 32, 64], "log": [16, 32, 64, 128]}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) == "correlate" and args.grid is None:
        args.grid = DEFAULT_GRIDS[args.which]
    try:
        with mpmath.workdps(getattr(args, "digits", None) or corr.default_digits()):
            return args.func(args, out)
    except (UsageError, RegionError, RenderError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
