"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

from . import apoly, qjones, saddle
from .knots import KnotSpec
from .report import Check, Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _fmt(v: float, decimals: int | None = None) -> str:
    return f"{v:.{decimals}f}" if decimals is not None else f"{v:.17g}"


def _knot(text: str) -> KnotSpec:
    try:
        return KnotSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _p_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if not sep or a > b:
        raise argparse.ArgumentTypeError(f"expected a nonempty range a..b, got {text!r}")
    return list(range(a, b + 1))


def _eval_param(text: str):
    key, sep, val = text.partition("=")
    if not sep or key.strip() != "r":
        raise argparse.ArgumentTypeError(f"expected r=<real>, got {text!r}")
    val = val.strip()
    try:
        return Fraction(val) if "." not in val and "e" not in val.lower() else float(val)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad value for r: {val!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotasym", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apoly", parents=[common], help="A-polynomial of a twist or torus knot")
    p.add_argument("--knot", type=_knot, required=True, help="twist:<p> or torus:<p>")
    p.add_argument("--crosscheck", action="store_true",
                   help="also run the three-term route (twist) or the saddle bridge (torus)")

    p = sub.add_parser("jones", parents=[common], help="colored Jones polynomial")
    p.add_argument("--knot", type=_knot, required=True)
    p.add_argument("--color", type=int, required=True, help="color N >= 1")
    p.add_argument("--eval", type=_eval_param, dest="r", help="evaluate at q = exp(2 pi i r / N)")
    p.add_argument("--method", choices=("exact", "sum"), default="exact")
    p.add_argument("--max-chains", type=int, default=qjones.DEFAULT_MAX_CHAINS)

    p = sub.add_parser("volume", parents=[common], help="twist-knot volumes at m^2 = 1")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=int)
    g.add_argument("--p-range", type=_p_range)
    g.add_argument("--paper-table", action="store_true")
    p.add_argument("--limit-check", action="store_true",
                   help="check monotone approach to 4 D(i) over the range")

    p = sub.add_parser("vzeros", parents=[common], help="zeros of V_k")
    p.add_argument("--k", type=_int_list, required=True)
    p.add_argument("--upper-half", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("all", "poly", "jones", "apoly", "dilog", "saddle"),
                   default="all")
    return parser


def _config(args: argparse.Namespace) -> dict[str, Any]:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in ("output",):
            continue
        if isinstance(val, (KnotSpec, Fraction)):
            val = str(val)
        elif isinstance(val, list) and len(val) > 20:
            val = f"{val[0]}..{val[-1]}"
        out[key] = val
    return out


def _rows_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(command: str, args, results: list, checks: list[Check]) -> str:
    doc = {"command": command, "config": _config(args), "results": results,
           "checks": [c.as_dict() for c in checks]}
    return json.dumps(doc, indent=2, default=str) + "\n"


def _checks_text(checks: list[Check]) -> str:
    lines = []
    for c in checks:
        tag = "PASS" if c.status else "FAIL"
        lines.append(f"{tag} {c.identity}" + ("" if c.status else f"  {json.dumps(c.witness, default=str)}"))
    return "\n".join(lines) + ("\n" if lines else "")


def cmd_apoly(args) -> tuple[str, int]:
    knot: KnotSpec = args.knot
    poly = apoly.apoly_twist(knot.p) if knot.kind == "twist" else apoly.apoly_torus(knot.p)
    checks: list[Check] = []
    if args.crosscheck:
        if knot.kind == "twist":
            other = apoly.apoly_twist_3term(knot.p)
            checks.append(Check(f"matrix route = 3-term route ({knot})", other == poly,
                                None if other == poly else str(other - poly)))
        else:
            checks.extend(saddle.crosscheck_apoly_saddle(knot, saddle.generic_m_samples(5)).checks)
    terms = [{"l": i, "m": j, "coef": c}
             for (i, j), c in sorted(poly.terms.items(), key=lambda t: (-t[0][0], -t[0][1]))]
    if args.format == "json":
        out = _json("apoly", args, [{"knot": str(knot), "poly": str(poly), "terms": terms}], checks)
    elif args.format == "csv":
        out = _rows_csv(["deg_l", "deg_m", "coef"], [[t["l"], t["m"], t["coef"]] for t in terms])
    else:
        out = str(poly) + "\n" + _checks_text(checks)
    return out, EXIT_OK if all(c.status for c in checks) else EXIT_FAIL


def _complex_text(z: complex) -> str:
    sign = "-" if z.imag < 0 or (z.imag == 0 and str(z.imag).startswith("-")) else "+"
    return f"{_fmt(z.real)} {sign} {_fmt(abs(z.imag))}i"


def cmd_jones(args) -> tuple[str, int]:
    if args.color < 1:
        raise UsageError("--color must be >= 1")
    knot: KnotSpec = args.knot
    if args.r is not None:
        if args.r == 0:
            raise UsageError("r must be nonzero")
        q = qjones.JonesQuery(knot, args.color, args.r)
        val = qjones.jones_eval(q, method=args.method, max_chains=args.max_chains)
        result = {"knot": str(knot), "N": args.color, "r": str(args.r),
                  "re": val.real, "im": val.imag}
        if args.format == "json":
            return _json("jones", args, [result], []), EXIT_OK
        if args.format == "csv":
            return _rows_csv(["knot", "N", "r", "re", "im"],
                             [[str(knot), args.color, str(args.r), _fmt(val.real), _fmt(val.imag)]]), EXIT_OK
        return _complex_text(val) + "\n", EXIT_OK
    poly = qjones.jones(knot, args.color, max_chains=args.max_chains)
    if args.format == "json":
        terms = [{"q": e, "coef": c} for e, c in sorted(poly.terms.items(), reverse=True)]
        return _json("jones", args, [{"knot": str(knot), "N": args.color, "poly": str(poly),
                                      "terms": terms}], []), EXIT_OK
    if args.format == "csv":
        return _rows_csv(["deg_q", "coef"], sorted(poly.terms.items(), reverse=True)), EXIT_OK
    return str(poly) + "\n", EXIT_OK


def cmd_volume(args) -> tuple[str, int]:
    decimals = None
    checks: list[Check] = []
    if args.paper_table:
        ps = list(saddle.REFERENCE_TABLE)
        decimals = 5
        checks.extend(saddle.table_check().checks)
    elif args.p is not None:
        ps = [args.p]
    else:
        ps = args.p_range
    if 0 in ps:
        raise UsageError("p range must exclude 0")
    rows = saddle.volumes(ps)
    if args.limit_check:
        pos = [p for p in ps if p >= 2]
        neg = [p for p in ps if p <= -1]
        if (not pos or max(pos) < 10) and (not neg or min(neg) > -10):
            raise UsageError("--limit-check needs a range reaching |p| >= 10")
        if pos and max(pos) >= 10:
            checks.extend(saddle.whitehead_limit(max(pos)).checks)
        if neg and min(neg) <= -10:
            checks.extend(saddle.whitehead_limit(-min(neg), sign=-1).checks)
    if args.format == "json":
        out = _json("volume", args, [r.as_dict() for r in rows], checks)
    elif args.format == "csv":
        out = saddle.rows_to_csv(rows, decimals)
    else:
        out = saddle.rows_to_csv(rows, decimals) + _checks_text(checks)
    return out, EXIT_OK if all(c.status for c in checks) else EXIT_FAIL


def cmd_vzeros(args) -> tuple[str, int]:
    if 0 in args.k:
        raise UsageError("k must be nonzero")
    zs = saddle.vzeros(args.k, upper_half=args.upper_half)
    if args.format == "json":
        return _json("vzeros", args, [{"k": z.k, "re": z.root.real, "im": z.root.imag,
                                       "residual": z.residual} for z in zs], []), EXIT_OK
    rows = [[z.k, _fmt(z.root.real), _fmt(z.root.imag), _fmt(z.residual)] for z in zs]
    return _rows_csv(["k", "re", "im", "residual"], rows), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    from .verify import run_suite

    rep: Report = run_suite(args.suite)
    code = EXIT_OK if rep.ok else EXIT_FAIL
    if args.format == "json":
        return _json("verify", args, [{"suite": args.suite, "ok": rep.ok,
                                       "failures": len(rep.failures())}], rep.checks), code
    if args.format == "csv":
        rows = [[c.identity, "pass" if c.status else "fail", json.dumps(c.witness, default=str)]
                for c in rep.checks]
        return _rows_csv(["identity", "status", "witness"], rows), code
    passed = sum(c.status for c in rep.checks)
    return _checks_text(rep.checks) + f"{passed}/{len(rep.checks)} checks passed\n", code


class UsageError(ValueError):
    pass


COMMANDS = {"apoly": cmd_apoly, "jones": cmd_jones, "volume": cmd_volume,
            "vzeros": cmd_vzeros, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"knotasym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except qjones.ResourceCapError as exc:
        print(f"knotasym: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
