"""Command-line entry point: ``bundlechar <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import arithmetic as ar
from . import variety as va
from .errors import BundleError
from .fibonacci import fib
from .report import SUITES, ReportConfig, _df_section, _family_section, point_cloud_csv, report, verify

_RANGE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def parse_range(text: str) -> range:
    m = _RANGE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _preprocess(argv: list[str]) -> list[str]:
    """Glue values that start with '-' to their flag, so '--range -30..30' parses."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--range", "--k-range", "-n", "--n") and i + 1 < len(argv) and re.match(r"^-\d", argv[i + 1]):
            out.append(f"{'--n' if a == '-n' else a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _emit(data, args) -> None:
    text = json.dumps(data, sort_keys=True, indent=2)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bundlechar", description="Character varieties of a family of punctured torus bundles.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help_, n=False, rng=False):
        sp = sub.add_parser(name, help=help_)
        if n:
            sp.add_argument("-n", "--n", type=int, required=True, dest="n")
        if rng:
            sp.add_argument("--range", type=parse_range, dest="range")
        sp.add_argument("--json", metavar="PATH")
        sp.add_argument("--tol", type=float, default=va.MEMBERSHIP_TOL)
        return sp

    sp = sub.add_parser("poly", help="Fibonacci polynomial or factor family")
    sp.add_argument("which", choices=["fib", "family"])
    sp.add_argument("-n", "--n", type=int, required=True, dest="n")
    sp.add_argument("--json", metavar="PATH")

    add("tracefield", "trace-field certificate", n=True)
    add("df", "discrete-faithful candidates", n=True)
    add("alexander", "twisted Alexander polynomial", n=True).add_argument("--sample", type=int, default=20)
    add("dilatation", "dilatation and d = 2g + alpha", rng=True)
    add("fillings", "lens-space filling characters", n=True).add_argument(
        "--k-range", type=parse_range, default=range(-3, 4), dest="k_range"
    )
    rp = add("report", "full per-n report", n=True)
    rp.add_argument("--csv", metavar="PATH")
    rp.add_argument("--k-range", type=parse_range, default=range(-3, 4), dest="k_range")
    vp = add("verify", "run verification suites", rng=True)
    vp.add_argument("--suite", default=",".join(SUITES))
    return p


def _cmd_poly(args):
    if args.which == "fib":
        f = fib(args.n)
        data = {"n": args.n, "f": f.to_json(), "text": f.format("u")}
    else:
        data = {"n": args.n, **_family_section(args.n)}
    _emit(data, args)
    return 0


def _cmd_alexander(args):
    n = args.n
    worst = 0.0
    for p in va.canonical_descriptor(n).sample(args.sample):
        ta = ar.twisted_alexander(p)
        for T in (2.0, -1.5, 0.5 + 1j, 1.0, -1.0):
            worst = max(worst, abs(ar.fox_calculus_oracle(p, n, T) - ta(T)))
    data = {"n": n, "Z": ar.z_values(n), "samples": args.sample, "oracle_max_deviation": worst, "tol": 1e-8}
    _emit(data, args)
    return 0 if worst <= 1e-8 else 1


def _cmd_dilatation(args):
    rng = args.range or range(3, 51)
    rows = [ar.genus_relation(n).to_json() for n in rng if abs(n) > 2]
    _emit(rows, args)
    return 0 if all(r["holds"] for r in rows) else 1


def _cmd_report(args):
    rep = report(args.n, ReportConfig(tol=args.tol, k_range=args.k_range))
    data = rep.to_json()
    _emit(data, args)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(point_cloud_csv(rep.point_cloud()))
    return 1 if rep.errors else 0


def _cmd_verify(args):
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        print(f"unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    out = verify(args.range, suites, args.tol)
    if args.json:
        _emit(out.to_json(), args)
    for s in suites:
        rs = [r for r in out.results if r.suite == s]
        fails = [r for r in rs if r.status == "fail"]
        print(f"{s:15s} {'FAIL' if fails else 'pass'}  ({len(rs) - len(fails)}/{len(rs)})")
        for r in fails:
            print(f"  n={r.n}: {r.detail}")
    return out.exit_code


def main(argv=None) -> int:
    argv = _preprocess(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "poly":
            return _cmd_poly(args)
        if args.verb == "tracefield":
            _emit(ar.trace_field(args.n).to_json(), args)
            return 0
        if args.verb == "df":
            data = _df_section(args.n, args.tol)
            _emit(data, args)
            return 0 if data["count"] else 1
        if args.verb == "alexander":
            return _cmd_alexander(args)
        if args.verb == "dilatation":
            return _cmd_dilatation(args)
        if args.verb == "fillings":
            fams = ar.filling_characters(args.n, args.k_range)
            _emit({"n": args.n, "families": [f.to_json() for f in fams],
                   "lens": [vars(f) for f in ar.filling_table(-(args.n + 2))]}, args)
            return 0
        if args.verb == "report":
            return _cmd_report(args)
        return _cmd_verify(args)
    except BundleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
