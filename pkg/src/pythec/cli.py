"""Command-line interface: ``pythec <command> [options]``.

Exit codes: 0 success, 2 usage error or degenerate input, 3 computational
failure.  Results go to stdout and diagnostics to stderr.  Negative values
must be attached with ``=``, e.g. ``--t=-49/10`` or ``--alpha=-3..3``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .curve import Curve, SingularCurveError, point_to_json
from .factor import FactorizationTimeout
from .families import (SUBSTITUTION_FAMILY, DegenerateParameterError, Family, ParameterKindError,
                       PythTriple, construct, enumerate_ppts)
from .heights.canonical import HeightError, Normalization, canonical_height, naive_height
from .heights.regulator import DEFAULT_EPSILON, determinant, regulator
from .heights.reproduce import reproduce_determinants
from .numeric import DEFAULT_PRECISION, format_rational, to_rational
from .torsion import (NonPrimitiveTripleError, certify_positive_rank, lemma2_nonintegrality_certificate,
                      point_order, remark_divisibility_certificate, torsion_points)

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 2, 3

PARAM_KINDS = ("t", "alpha", "T", "m", "u")
GLOBAL_DEFAULTS = {"precision": DEFAULT_PRECISION, "epsilon": str(DEFAULT_EPSILON),
                   "format": "json", "jobs": 1}


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_csv(header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def parse_triple(text: str) -> PythTriple:
    try:
        a, b, c = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--triple expects a,b,c integers, got {text!r}") from None
    try:
        return PythTriple(a, b, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_pair(text: str, what: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"{what} expects x,y, got {text!r}")
    return to_rational(parts[0]), to_rational(parts[1])


def parse_range(text: str) -> tuple[Fraction, Fraction]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"range must look like lo..hi, got {text!r}")
    return to_rational(lo), to_rational(hi)


def _instance_from_args(args):
    """The family instance named by ``--family`` plus one parameter flag, or None."""
    if not getattr(args, "family", None):
        return None
    fam = Family.parse(args.family)
    given = [k for k in PARAM_KINDS if getattr(args, k, None) is not None]
    if getattr(args, "triple", None):
        given.append("triple")
    if len(given) != 1:
        raise UsageError(f"give exactly one parameter for {fam.value} (got {given or 'none'})")
    kind = given[0]
    if kind == "triple":
        return construct(fam, parse_triple(args.triple))
    return construct(fam, to_rational(getattr(args, kind)), kind)


def _curve_from_args(args) -> Curve:
    parts = args.curve.split(",")
    if len(parts) != 3:
        raise UsageError(f"--curve expects a2,a4,a6, got {args.curve!r}")
    return Curve(*parts)


def _target(args):
    """``(curve, named points)`` from either ``--curve`` or the family flags."""
    inst = _instance_from_args(args)
    if inst is not None:
        if getattr(args, "curve", None):
            raise UsageError("--curve cannot be combined with --family")
        return inst.curve, dict(inst.points)
    if not getattr(args, "curve", None):
        raise UsageError("give --curve a2,a4,a6 or --family with a parameter")
    return _curve_from_args(args), {}


def _resolve_points(E: Curve, named: dict, specs: list[str]) -> list:
    out = []
    for spec in specs:
        for item in spec.split(";"):
            item = item.strip()
            if item in named:
                out.append(named[item])
            elif "," in item:
                x, y = parse_pair(item, "--point")
                out.append(E.point(x, y))
            else:
                raise UsageError(f"unknown point {item!r}; catalogued: {sorted(named)}")
    return out


def _add_instance_flags(p: argparse.ArgumentParser, *, required: bool = False) -> None:
    p.add_argument("--family", required=required, help="family id, e.g. F1_a2c2 or F1")
    for kind in PARAM_KINDS:
        p.add_argument(f"--{kind}", metavar="Q", help=f"rational parameter {kind}")
    p.add_argument("--triple", metavar="a,b,c", help="Pythagorean triple")


# --- commands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    inst = _instance_from_args(args)
    if inst is None:
        raise UsageError("construct needs --family")
    if args.format == "csv":
        _emit_csv(["name", "x", "y"], [[n, format_rational(P.x), format_rational(P.y)]
                                       for n, P in inst.points.items()])
    else:
        _emit(inst.to_json())
    return EXIT_OK


def cmd_certify(args) -> int:
    fam = Family.parse(args.family)
    if args.triple:
        triples = [parse_triple(args.triple)]
    elif args.all_ppt_up_to:
        triples = enumerate_ppts(args.all_ppt_up_to)
    else:
        raise UsageError("certify needs --triple or --all-ppt-up-to")
    failures = 0
    rows = []
    for T in triples:
        cert = certify_positive_rank(fam, T)
        out = cert.to_json()
        if args.remark and not fam.is_short:
            verdict = remark_divisibility_certificate(fam, T)
            out["remark"] = "inconclusive" if verdict is None else verdict.to_json()
        if not cert.verdict.is_infinite:
            failures += 1
        if args.format == "csv":
            rows.append([fam.value, str(T), format_rational(cert.witness.x),
                         format_rational(cert.witness.y), out["verdict"], out.get("certificate", "")])
        else:
            sys.stdout.write(json.dumps(out) + "\n")
    if args.format == "csv":
        _emit_csv(["family", "triple", "x", "y", "verdict", "certificate"], rows)
    if failures:
        print(f"{failures} triple(s) without an infinite-order witness", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


def cmd_torsion(args) -> int:
    E, named = _target(args)
    if args.point:
        pts = _resolve_points(E, named, args.point)
        out = []
        for P in pts:
            verdict = (lemma2_nonintegrality_certificate(E, P) if E.is_integral() else None)
            verdict = verdict or point_order(E, P)
            out.append({"point": point_to_json(P), **verdict.to_json()})
        _emit({"curve": str(E), "points": out})
        return EXIT_OK
    tors = torsion_points(E)
    _emit({"curve": str(E), "order": len(tors), "torsion": [point_to_json(P) for P in tors]})
    return EXIT_OK


def cmd_height(args) -> int:
    E, named = _target(args)
    if not args.point:
        raise UsageError("height needs --point")
    rows = []
    for P in _resolve_points(E, named, args.point):
        h = canonical_height(E, P, args.precision, normalization=args.normalization)
        rows.append({
            "point": point_to_json(P),
            "height": h.value.to_string(),
            "error": f"{h.value.error:.2e}",
            "naive": naive_height(P, args.precision).to_string(),
            "normalization": h.normalization.value,
        })
    if args.format == "csv":
        _emit_csv(["x", "y", "height", "naive"],
                  [[r["point"]["x"], r["point"]["y"], r["height"], r["naive"]] for r in rows])
    else:
        _emit({"curve": str(E), "precision": args.precision, "heights": rows})
    return EXIT_OK


def cmd_regulator(args) -> int:
    E, named = _target(args)
    pts = _resolve_points(E, named, args.point) if args.point else list(named.values())
    if not pts:
        raise UsageError("regulator needs points (--point, or a family instance)")
    rep = regulator(E, pts, args.precision, args.epsilon, normalization=args.normalization)
    if args.format == "csv":
        _emit_csv([f"col{j}" for j in range(len(pts))],
                  [[x.to_string() for x in row] for row in rep.gram])
    else:
        _emit(rep.to_json())
    return EXIT_OK


def cmd_reproduce(args) -> int:
    report = reproduce_determinants(args.precision)
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        _emit(report.to_json())
    for row in report.rows:
        for note in row.notes:
            print(f"{row.claim.family} {row.claim.instance}: {note}", file=sys.stderr)
    if report.failed:
        return EXIT_COMPUTE
    return EXIT_OK if report.ok else EXIT_COMPUTE


def _sweep_one(task):
    family, kind, value, precision, epsilon = task
    record = {"param": format_rational(value) if kind != "triple" else str(value)}
    try:
        inst = construct(family, value, kind) if kind != "triple" else construct(family, value)
    except DegenerateParameterError as exc:
        return None, str(exc)
    if "t" in inst.param:
        record["t"] = format_rational(inst.param["t"])
    record["curve"] = str(inst.curve)
    record["points"] = list(inst.points)
    try:
        rep = regulator(inst.curve, list(inst.points.values()), precision, epsilon)
    except (HeightError, ArithmeticError, FactorizationTimeout) as exc:
        record.update(det=None, rank_lower_bound=None, status="error", error=str(exc))
        return record, None
    names = list(inst.points)
    basis = [names[i] for i in rep.basis]
    sub = [[rep.gram[i][j] for j in rep.basis] for i in rep.basis]
    record.update(det=rep.det.to_string(20), status=rep.status.value,
                  rank_lower_bound=rep.rank_lower_bound, basis=basis,
                  basis_det=determinant(sub).to_string(20) if basis else None)
    return record, None


def _sweep_values(args):
    kinds = [k for k in PARAM_KINDS if getattr(args, k, None) is not None]
    if args.ppt_up_to is not None:
        kinds.append("triple")
    if len(kinds) != 1:
        raise UsageError("sweep needs exactly one of --t/--alpha/--T/--m/--u RANGE or --ppt-up-to C")
    kind = kinds[0]
    if kind == "triple":
        if args.ppt_up_to < 5:
            raise UsageError("--ppt-up-to must be at least 5")
        return kind, enumerate_ppts(args.ppt_up_to)
    lo, hi = parse_range(getattr(args, kind))
    step = to_rational(args.step)
    if step <= 0:
        raise UsageError("--step must be positive")
    if hi < lo:
        raise UsageError(f"empty range {format_rational(lo)}..{format_rational(hi)}")
    values, v = [], lo
    while v <= hi:
        values.append(v)
        v += step
    return kind, values


def cmd_sweep(args) -> int:
    fam = Family.parse(args.family)
    kind, values = _sweep_values(args)
    if kind in SUBSTITUTION_FAMILY and SUBSTITUTION_FAMILY[kind] is not fam:
        raise UsageError(f"--{kind} applies to {SUBSTITUTION_FAMILY[kind].value}, not {fam.value}")
    if kind != "triple" and not fam.is_short:
        raise UsageError(f"{fam.value} takes --ppt-up-to")
    epsilon = Decimal(args.epsilon)
    tasks = [(fam.value, kind, v, args.precision, epsilon) for v in values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, tasks, chunksize=max(1, len(tasks) // (4 * args.jobs))))
    else:
        results = [_sweep_one(t) for t in tasks]
    records = [r for r, _ in results if r is not None]
    skipped = [msg for r, msg in results if r is None]
    for msg in skipped:
        print(f"skipped: {msg}", file=sys.stderr)
    if not records:
        print("no admissible parameter values in range", file=sys.stderr)
        return EXIT_USAGE
    stats = {
        "records": len(records),
        "skipped_degenerate": len(skipped),
        "independent": sum(r["status"] == "independent" for r in records),
        "not_certified": sum(r["status"] == "not_certified" for r in records),
        "indeterminate": sum(r["status"] == "indeterminate" for r in records),
        "errors": sum(r["status"] == "error" for r in records),
        "max_rank_lower_bound": max((r["rank_lower_bound"] or 0) for r in records),
    }
    for r in records:
        if r["status"] == "indeterminate":
            print(f"indeterminate at {kind}={r['param']}: raise --precision", file=sys.stderr)
    if args.format == "csv":
        _emit_csv(["param", "det", "status", "rank_lower_bound", "basis", "basis_det"],
                  [[r["param"], r["det"] or "", r["status"],
                    "" if r["rank_lower_bound"] is None else r["rank_lower_bound"],
                    " ".join(r.get("basis") or []), r.get("basis_det") or ""] for r in records])
    else:
        _emit({"family": fam.value, "kind": kind, "precision": args.precision,
               "epsilon": format(epsilon, "e"), "records": records, "stats": stats})
    return EXIT_COMPUTE if stats["errors"] else EXIT_OK


# --- parser -----------------------------------------------------------------


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # shared by the top-level parser and every subcommand so flags work in either position
    p = argparse.ArgumentParser(add_help=False)
    d = GLOBAL_DEFAULTS if defaults else {k: argparse.SUPPRESS for k in GLOBAL_DEFAULTS}
    p.add_argument("--precision", type=int, default=d["precision"], help="decimal digits (default 50)")
    p.add_argument("--epsilon", default=d["epsilon"], help="independence threshold (default 1e-4)")
    p.add_argument("--format", choices=("json", "csv"), default=d["format"])
    p.add_argument("--jobs", type=int, default=d["jobs"], help="worker processes for sweep")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pythec", parents=[_global_flags(True)],
                                     description="Elliptic curves from Pythagorean triples.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _global_flags(False)

    p = sub.add_parser("construct", parents=[common], help="build a family instance")
    _add_instance_flags(p, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", parents=[common], help="positive-rank certificates")
    p.add_argument("--family", required=True)
    p.add_argument("--triple", metavar="a,b,c")
    p.add_argument("--all-ppt-up-to", type=int, metavar="C")
    p.add_argument("--remark", action="store_true", help="also run the divisibility test (F6/F7)")
    p.set_defaults(func=cmd_certify)

    for name, func, helptext in (("torsion", cmd_torsion, "torsion points or point orders"),
                                 ("height", cmd_height, "canonical heights"),
                                 ("regulator", cmd_regulator, "Gram determinant of points")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--curve", metavar="a2,a4,a6")
        _add_instance_flags(p)
        p.add_argument("--point", action="append", metavar="x,y|NAME",
                       help="point coordinates or catalogued name; repeatable")
        if name != "torsion":
            p.add_argument("--normalization", choices=[n.value for n in Normalization],
                           default=Normalization.BSD.value)
        p.set_defaults(func=func)

    p = sub.add_parser("reproduce", parents=[common], help="recompute the reference determinants")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("sweep", parents=[common], help="rank lower bounds over a parameter range")
    p.add_argument("--family", required=True)
    for kind in PARAM_KINDS:
        p.add_argument(f"--{kind}", metavar="LO..HI")
    p.add_argument("--step", default="1")
    p.add_argument("--ppt-up-to", type=int, metavar="C")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.precision < 1 or args.jobs < 1:
            raise UsageError("--precision and --jobs must be positive")
        try:
            if Decimal(args.epsilon) <= 0:
                raise UsageError("--epsilon must be positive")
        except InvalidOperation:
            raise UsageError(f"bad --epsilon {args.epsilon!r}") from None
        return args.func(args)
    except (UsageError, DegenerateParameterError, ParameterKindError, NonPrimitiveTripleError,
            SingularCurveError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HeightError, FactorizationTimeout, ArithmeticError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
