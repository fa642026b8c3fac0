"""Command line front-end: enumerate, build, verify and report.

Exit status 0 means every check passed, 1 that a mathematical check failed
(the report carries witnesses), 2 a usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import branching as br
from . import hecke, suite
from .bitableaux import Bipartition, Marker, ShapeError, enumerate_bipartitions, enumerate_standard
from .exactfield import BadSpecialization, Specialization
from .seminormal import build_rep, verify_relations

SCHEMA = "hecke-branch/1"
OUT_ENV = "HECKE_BRANCH_OUT"
MARKERS = ("sharp", "flat", "natural", "dagger")

# verb -> largest n run without --allow-large
N_CAPS = {"bipartitions": 8, "ranks": 8, "rep": 4, "crossed-check": 4, "branch": 6, "basic-set": 5}


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--u0", type=_fraction, default=Fraction(1), help="value of u at the specialization")
    common.add_argument("--q0", type=_fraction, default=Fraction(5, 7), help="value of q at the specialization")
    common.add_argument("--precision-bits", type=_positive, default=128)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=Path, default=None,
                        help=f"report path (default: ${OUT_ENV}/<verb>.<format>, else stdout)")
    common.add_argument("--no-plots", action="store_true", help="skip the PNG figures next to --out")
    common.add_argument("--allow-large", action="store_true", help="lift the default n caps")

    p = argparse.ArgumentParser(prog="hecke-branch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("bipartitions", parents=[common], help="list bipartitions of n")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--count", action="store_true", help="print only the number of bipartitions")

    s = sub.add_parser("rep", parents=[common], help="seminormal representations")
    s.add_argument("action", choices=("build",))
    s.add_argument("--shape", required=True)
    s.add_argument("--gens", choices=("a", "b"), default="b")
    s.add_argument("--u-one", action="store_true", help="build at u = 1")

    s = sub.add_parser("ranks", parents=[common], help="normal monomial counts by parity filter")
    s.add_argument("--n", type=_positive, required=True)

    s = sub.add_parser("crossed-check", parents=[common], help="crossed product conditions for a Z/2 grading")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--marker", choices=suite.CROSSED, action="append",
                   help="grading to check (repeatable; default all six)")

    s = sub.add_parser("branch", parents=[common], help="restrict and split one shape")
    s.add_argument("--shape", required=True)
    s.add_argument("--marker", choices=MARKERS, required=True)

    s = sub.add_parser("basic-set", parents=[common], help="basic set of a fixed subalgebra")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--marker", choices=MARKERS, required=True)
    s.add_argument("--certify", action="store_true", help="confirm constituent counts by commutants")

    s = sub.add_parser("suite", parents=[common], help="run the acceptance matrix")
    s.add_argument("--level", choices=("desk",), default="desk")
    s.add_argument("--criteria", default=None, help="comma separated subset, e.g. 1,2,10")
    return p


# -- verbs -------------------------------------------------------------------


def _cap(args, verb: str, n: int) -> None:
    cap = N_CAPS[verb]
    if n > cap:
        if not args.allow_large:
            raise UsageError(f"{verb} is capped at n = {cap}; pass --allow-large to run n = {n}")
        print(f"warning: n = {n} exceeds the default cap {cap} for {verb}; expect a long run",
              file=sys.stderr)


def _shape(text: str) -> Bipartition:
    try:
        return Bipartition.parse(text)
    except (ValueError, ShapeError) as exc:
        raise UsageError(f"bad shape {text!r}: {exc}") from exc


def cmd_bipartitions(args, point):
    _cap(args, "bipartitions", args.n)
    shapes = enumerate_bipartitions(args.n)
    if args.count:
        return {"n": args.n, "count": len(shapes)}, True, []
    rows = [{"shape": str(s), "dim": len(enumerate_standard(s))} for s in shapes]
    return {"n": args.n, "count": len(shapes), "shapes": rows}, True, rows


def cmd_rep(args, point):
    lam = _shape(args.shape)
    _cap(args, "rep", lam.n)
    rep = build_rep(lam, args.gens, args.u_one)
    rel = verify_relations(rep)
    ok = all(r["status"] == "pass" for r in rel)
    return {**rep.to_json(), "relations": rel}, ok, rel


def cmd_ranks(args, point):
    _cap(args, "ranks", args.n)
    counts = hecke.count_normal_monomials(args.n)
    ranks = {k: hecke.filter_count(counts, k) for k in ("all", "sharp", "natural", "flat", "dagger")}
    rec = hecke.rank_recursion(args.n)
    classes = {c.name: counts[c] for c in counts}
    ok = counts == rec
    rows = [{"filter": k, "rank": v} for k, v in ranks.items()]
    return {"n": args.n, "ranks": ranks, "classes": classes, "recursion_agrees": ok}, ok, rows


def cmd_crossed(args, point):
    _cap(args, "crossed-check", args.n)
    if args.n < 2:
        raise UsageError("crossed products need n >= 2")
    names = args.marker or list(suite.CROSSED)
    out, rows = {}, []
    for name in names:
        rep = hecke.crossed_check(args.n, hecke.decomposition(args.n, name), point)
        out[name] = rep
        rows.extend({"decomposition": name, **r} for r in rep)
    ok = all(r["status"] == "pass" for r in rows)
    return {"n": args.n, "decompositions": out}, ok, rows


def cmd_branch(args, point):
    lam = _shape(args.shape)
    _cap(args, "branch", lam.n)
    marker = Marker.parse(args.marker)
    try:
        if br.is_fixed(lam, marker):
            rpt = br.split(lam, marker, point, args.precision_bits)
        else:
            rpt = br.unsplit_report(lam, marker, point)
    except ShapeError as exc:
        raise UsageError(str(exc)) from exc
    j = rpt.to_json()
    return j, rpt.ok, j["checks"]


def cmd_basic_set(args, point):
    _cap(args, "basic-set", args.n)
    try:
        r = br.basic_set(args.n, args.marker, certify=args.certify, point=point)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    irr = [{"orbit": [str(s) for s in x.orbit], "family": x.family, "label": x.label, "degree": x.degree}
           for x in r["irreducibles"]]
    out = {**r, "irreducibles": irr}
    rows = [{**x, "orbit": " ".join(x["orbit"])} for x in irr]
    return out, r["audit"] == "pass", rows


def cmd_suite(args, point):
    select = None
    if args.criteria:
        try:
            select = {int(x) for x in args.criteria.split(",") if x.strip()}
        except ValueError as exc:
            raise UsageError(f"bad --criteria {args.criteria!r}") from exc
        unknown = select - set(suite.CRITERIA)
        if unknown:
            raise UsageError(f"unknown criteria {sorted(unknown)}")
    results = suite.run_desk(select)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    table = [{"criterion": r["criterion"], "title": r["title"], "status": r["status"]} for r in rows]
    return {"level": args.level, "criteria": rows, "passed": sum(r.passed for r in results),
            "total": len(results)}, ok, table


VERBS = {
    "bipartitions": cmd_bipartitions,
    "rep": cmd_rep,
    "ranks": cmd_ranks,
    "crossed-check": cmd_crossed,
    "branch": cmd_branch,
    "basic-set": cmd_basic_set,
    "suite": cmd_suite,
}


# -- output ------------------------------------------------------------------


def header(args, point: Specialization) -> dict:
    return {
        "schema": SCHEMA,
        "command": args.verb,
        "specialization": {"u0": str(point.u0), "q0": str(point.q0)},
        "precision_bits": args.precision_bits,
        "tolerance": f"{float(br.DEFAULT_TOLERANCE):.1e}",
        "seed": args.seed,
    }


def render(args, head: dict, result: dict, ok: bool, rows: list[dict]) -> str:
    if args.format == "json":
        return json.dumps({**head, "status": "pass" if ok else "fail", "result": result},
                          indent=2, default=str) + "\n"
    buf = io.StringIO()
    for k, v in head.items():
        buf.write(f"# {k}: {json.dumps(v) if isinstance(v, dict) else v}\n")
    buf.write(f"# status: {'pass' if ok else 'fail'}\n")
    if args.verb == "bipartitions" and args.count:
        rows = [{"n": result["n"], "count": result["count"]}]
    fields: list[str] = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


def _destination(args) -> Path | None:
    if args.out is not None:
        return args.out
    base = os.environ.get(OUT_ENV)
    if base:
        return Path(base) / f"{args.verb}.{args.format}"
    return None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        point = Specialization(args.u0, args.q0)
        point.check(8)
        head = header(args, point)
        result, ok, rows = VERBS[args.verb](args, point)
    except (UsageError, BadSpecialization) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(args, head, result, ok, rows)
    dest = _destination(args)
    if dest is None:
        if args.verb == "bipartitions" and args.count and args.format == "json":
            sys.stdout.write(f"{result['count']}\n")
        else:
            sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
        if not args.no_plots:
            from .plotting import plot_report
            for path in plot_report(args.verb, result, dest):
                print(f"wrote {path}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
