"""Command line interface.

Exit codes: 0 when a verdict or listing was computed, 1 when a property
suite fails (or a signature is requested for a flat web), 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys
from fractions import Fraction

import mpmath
import numpy as np
import scipy

from . import __version__
from . import catalog
from .criterion import DEFAULT_TOL, decide_linearizable, verify_appendix
from .errors import WebcheckError
from .expr import parse_profile
from .polycore import MultiPoly
from .symweb import invariant_frame, make_profile

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


# -- number formatting ----------------------------------------------------------
def fmt_number(v):
    """Decimal string with 17 significant digits; rationals as "num/den"."""
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (float, np.floating, mpmath.mpf)):
        v = float(v)
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return format(v, ".17g")
    if isinstance(v, complex):
        return {"re": fmt_number(v.real), "im": fmt_number(v.imag)}
    if isinstance(v, MultiPoly):
        return str(v)
    return v


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, str) or obj is None:
        return obj
    return fmt_number(obj)


def parse_number(text):
    """Exact for integers and fractions ("3", "1/3"); float for decimals ("0.4", "1e-3")."""
    text = text.strip()
    try:
        if any(c in text for c in ".eE") or text.lower() in ("inf", "nan"):
            return float(text)
        return Fraction(text)
    except ValueError as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_number(v)
    return out


def _provenance(args, extra=None):
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "func", "json")}
    out = {
        "inputs": inputs,
        "seed": getattr(args, "seed", None),
        "versions": {"webcheck": __version__, "python": platform.python_version(),
                     "numpy": np.__version__, "scipy": scipy.__version__, "mpmath": mpmath.__version__},
    }
    if extra:
        out.update(extra)
    return out


def _emit(args, doc, text):
    body = json.dumps(to_jsonable(doc), indent=2, sort_keys=False) + "\n" if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# -- profiles -------------------------------------------------------------------
def _profile_from_args(args, sample_count, spacing=None):
    """(profile, description) from --profile or --form.

    A catalog profile is only accepted when it can be evaluated at the
    ``sample_count`` points ``k * spacing``.
    """
    if bool(args.profile) == bool(args.form):
        raise UsageError("give exactly one of --profile or --form")
    if args.profile:
        node = parse_profile(args.profile)
        t0 = parse_number(args.base) if args.base else Fraction(1)
        if isinstance(t0, tuple):
            raise UsageError("--base for a profile is a single t value")
        return make_profile(node, t0, label=args.profile, spacing=spacing), {"profile": args.profile, "t0": t0}
    web = catalog.instantiate(args.form, parse_params(args.param))
    base = None
    if args.base:
        parts = args.base.split(",")
        if len(parts) != 2:
            raise UsageError("--base for a catalog form is X,Y")
        base = tuple(float(parse_number(p)) for p in parts)
    prof, bp = catalog.normalized_profile(web, base, seed=args.seed, sample_count=sample_count,
                                          spacing=spacing or catalog_spacing())
    return prof, {"form": args.form, "parameters": getattr(web, "values", {}),
                  "base_point": [bp.x, bp.y], "line_parameters": list(bp.params)}


def catalog_spacing():
    # catalog profiles live on a leaf inside the windows; keep the stencil short
    return 0.01


# -- commands -------------------------------------------------------------------
def cmd_linearizable(args):
    if args.samples < 3:
        raise UsageError("--samples must be at least 3")
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    spacing = args.spacing or (catalog_spacing() if args.form else None)
    prof, source = _profile_from_args(args, args.samples, spacing)
    verdict = decide_linearizable(prof, sample_count=args.samples, tol=args.tol, spacing=spacing)
    rows = []
    for d in sorted(verdict.diagnostics, key=lambda r: float(r["t"])):
        rows.append({k: d.get(k) for k in ("t", "X", "F", "F1", "F2", "F3", "rho", "omega", "ratio",
                                            "gcd_degree", "skipped") if k in d})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "linearizable",
        "source": source,
        "verdict": {"kind": verdict.kind, "count": verdict.count,
                    "omega_residual": verdict.omega_residual, "reason": verdict.reason},
        "samples": rows,
        "provenance": _provenance(args),
    }
    lines = [f"verdict: {verdict.kind}"]
    if verdict.kind == "Linearizable":
        lines.append(f"linearizations: {verdict.count}")
    if verdict.reason:
        lines.append(f"reason: {verdict.reason}")
    lines.append(f"max omega ratio: {fmt_number(verdict.omega_residual)}")
    for r in rows:
        cells = ", ".join(f"{k}={fmt_number(v)}" for k, v in r.items())
        lines.append("  " + cells)
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_verify_appendix(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    results = verify_appendix(args.trials, args.seed)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify-appendix",
        "properties": [{"name": r.name, "passed": r.passed, "checked": r.checked, "witness": r.witness}
                       for r in results],
        "provenance": _provenance(args),
    }
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checked} checks)" for r in results]
    for r in results:
        if not r.passed:
            lines.append(f"  witness for {r.name}: {json.dumps(to_jsonable(r.witness))}")
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_catalog(args):
    sub = args.subcommand
    if sub == "list":
        forms = catalog.list_forms()
        doc = {"schema_version": SCHEMA_VERSION, "command": "catalog list",
               "forms": [{"id": i, "parameters": list(p)} for i, p in forms]}
        text = "".join(f"{i}\t{','.join(p) if p else '-'}\n" for i, p in forms)
        _emit(args, doc, text)
        return 0
    if not args.id:
        raise UsageError(f"catalog {sub} needs a form id")
    params = parse_params(args.param)
    if sub == "show":
        if args.id in catalog.EXTRA_IDS:
            web = catalog.instantiate(args.id)
            rec = {"id": args.id, "focal_curves": [c.text() for c in web.curves],
                   "geometric_operator": list(web.symmetry_text)}
        else:
            rec = catalog.form_record(args.id, params)
        doc = {"schema_version": SCHEMA_VERSION, "command": "catalog show", "form": rec}
        text = "".join(f"{k}: {json.dumps(to_jsonable(v))}\n" for k, v in rec.items())
        _emit(args, doc, text)
        return 0
    if sub == "reduce":
        worst, samples = catalog.reduction_check(args.id, params, count=args.samples, seed=args.seed)
        rows = [{"z": s.z, "w": s.w, "residual": s.residual, "scale": s.scale, "real": s.real} for s in samples]
        doc = {"schema_version": SCHEMA_VERSION, "command": "catalog reduce", "id": args.id,
               "max_relative_residual": worst, "samples": rows, "provenance": _provenance(args)}
        text = (f"{args.id}: {len(samples)} web-equation solutions, "
                f"max |f(z,w)|/scale = {fmt_number(worst)}\n")
        _emit(args, doc, text)
        return 0
    if sub == "flatness":
        web = catalog.instantiate(args.id, params)
        gs = catalog.graf_sauer_test(web)
        bps = catalog.find_base_points(web, 1, seed=args.seed, allow_complex=False, strict=False)
        hexa = catalog.hexagonality_exponent(web, (bps[0].x, bps[0].y))
        doc = {"schema_version": SCHEMA_VERSION, "command": "catalog flatness", "id": args.id,
               "graf_sauer": {"min_singular": gs.min_singular, "rank": gs.rank, "is_flat": gs.is_flat},
               "hexagonality": {"point": [bps[0].x, bps[0].y], "defects": list(hexa.defects),
                                "radii": list(hexa.radii), "exponent": hexa.exponent,
                                "hexagonal": hexa.hexagonal},
               "is_flat": gs.is_flat}
        text = (f"{args.id}: is_flat = {str(gs.is_flat).lower()} (cubic rank {gs.rank}); "
                f"hexagon exponent {fmt_number(hexa.exponent)}\n")
        _emit(args, doc, text)
        return 0
    raise UsageError(f"unknown catalog subcommand {sub!r}")


def cmd_signature(args):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    span = args.span if args.span is not None else (Fraction(1, 5) if args.form else Fraction(1))
    step = span / (args.points - 1)
    prof, source = _profile_from_args(args, args.points, float(step))
    if prof.flat:
        sys.stderr.write("no signature for flat web\n")
        return 1
    t0 = prof.t0
    exact = isinstance(t0, Fraction) and isinstance(span, Fraction)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["X", "F"])
    skipped = 0
    for k in range(args.points):
        t = t0 + k * step if exact else float(t0) + k * float(step)
        try:
            fr = invariant_frame(prof, t)
        except (WebcheckError, ArithmeticError, ValueError):
            skipped += 1
            continue
        writer.writerow([fmt_number(fr.X), fmt_number(fr.F)])
    if skipped:
        sys.stderr.write(f"skipped {skipped} grid points (stationary or singular X)\n")
    body = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


# -- parser ---------------------------------------------------------------------
def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--out", help="write the report to this path")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--profile", help="S(t) expression")
    source.add_argument("--form", help="catalog id, e.g. Xi1:2")
    source.add_argument("--param", action="append", help="catalog parameter name=value")
    source.add_argument("--base", help="t0 for a profile, X,Y for a catalog form")
    source.add_argument("--spacing", type=float, help="t spacing of the samples")

    p = argparse.ArgumentParser(prog="webcheck", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"webcheck {__version__}")
    subs = p.add_subparsers(dest="command", required=True)

    lin = subs.add_parser("linearizable", parents=[common, source], help="decide linearizability")
    lin.add_argument("--samples", type=int, default=5)
    lin.add_argument("--tol", type=float, default=DEFAULT_TOL)
    lin.set_defaults(func=cmd_linearizable)

    ver = subs.add_parser("verify-appendix", parents=[common], help="self-check the coefficient tables")
    ver.add_argument("--trials", type=int, default=10)
    ver.set_defaults(func=cmd_verify_appendix)

    cat = subs.add_parser("catalog", parents=[common], help="browse the normal forms")
    cat.add_argument("subcommand", choices=("list", "show", "reduce", "flatness"))
    cat.add_argument("id", nargs="?")
    cat.add_argument("--param", action="append")
    cat.add_argument("--samples", type=int, default=20)
    cat.set_defaults(func=cmd_catalog)

    sig = subs.add_parser("signature", parents=[common, source], help="CSV samples of (X, F)")
    sig.add_argument("--points", type=int, default=50)
    sig.add_argument("--span", type=parse_number, help="length of the t-grid")
    sig.set_defaults(func=cmd_signature)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except WebcheckError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
