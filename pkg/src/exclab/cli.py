"""Command line interface: ``exclab {stats,enumerate,poly,verify}``.

Exit codes: 0 success, 1 verification failure or enumeration cap refusal,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .distribution import VARIANTS, distribution
from .errors import DomainError, ResourceLimitError
from .perm import GroupSpec, Restriction, enumerate_elements, format_window, parse_window
from .stats import OrderKind, exc_full, stat_bundle
from .verify import TARGETS, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

STAT_FIELDS = ("excAbs", "excClr", "excA", "excUnderlying", "csum", "cyc", "fixAbs")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exclab",
        description="Excedance statistics on colored permutation groups G(r,n) and D_n.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("stats", help="statistics of one element given in window notation")
    p.add_argument("window", nargs="+", help='window tokens, e.g. 3 1^1 2^2 (or one quoted string)')
    p.add_argument("--r", type=_positive, required=True, help="number of colors")
    p.add_argument("--format", choices=("json", "human"), default="json")

    restrictions = [x.value for x in Restriction]

    p = sub.add_parser("enumerate", help="list the elements of a group or subset")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--restriction", choices=restrictions, default="all")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--with-stats", action="store_true", help="attach the statistics bundle")
    p.add_argument("--cap", type=_nonneg, default=None)

    p = sub.add_parser("poly", help="brute-force generating polynomial")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="abs")
    p.add_argument("--restriction", choices=restrictions, default="all")
    p.add_argument("--t", type=int, default=None, help="substitute an integer for t")
    p.add_argument("--s", type=int, default=None, help="substitute an integer for s")
    p.add_argument("--format", choices=("json", "csv", "human"), default="json")
    p.add_argument("--cap", type=_nonneg, default=None)
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    p = sub.add_parser("verify", help="check the closed forms, recursions and proof maps")
    p.add_argument("--theorem", choices=TARGETS, default="all")
    p.add_argument("--max-r", type=_positive, default=None)
    p.add_argument("--max-n", type=_positive, default=None)
    p.add_argument("--cap", type=_nonneg, default=None)
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_stats(args, out) -> int:
    sigma = parse_window(" ".join(args.window), args.r)
    record = {"window": format_window(sigma), "r": sigma.r, "n": sigma.n}
    record.update(stat_bundle(sigma).to_json())
    record["excFull"] = {
        "color": exc_full(sigma, OrderKind.COLOR),
        "absolute": exc_full(sigma, OrderKind.ABSOLUTE),
    }
    if args.format == "json":
        print(_dump(record), file=out)
    else:
        for key, value in record.items():
            if isinstance(value, dict):
                value = ", ".join(f"{k}={v}" for k, v in value.items())
            print(f"{key}: {value}", file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    spec = GroupSpec(args.r, args.n, Restriction(args.restriction))
    elements = enumerate_elements(spec, args.cap)
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("window",) + (STAT_FIELDS if args.with_stats else ()))
        for sigma in elements:
            row = [format_window(sigma)]
            if args.with_stats:
                b = stat_bundle(sigma).to_json()
                row += [b[k] for k in STAT_FIELDS]
            writer.writerow(row)
        return EXIT_OK
    out.write("[")
    first = True
    for sigma in elements:
        rec = {"window": format_window(sigma)}
        if args.with_stats:
            rec.update(stat_bundle(sigma).to_json())
        out.write(("\n" if first else ",\n") + json.dumps(rec))
        first = False
    out.write("\n]\n" if not first else "]\n")
    return EXIT_OK


def cmd_poly(args, out) -> int:
    spec = GroupSpec(args.r, args.n, Restriction(args.restriction))
    poly = distribution(spec, args.variant, args.cap, args.jobs)
    subs = {k: v for k, v in (("t", args.t), ("s", args.s)) if v is not None}
    if subs:
        poly = poly.substitute(**subs)
    univariate = args.t is not None and args.s is not None
    if args.format == "human":
        print(str(poly), file=out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        if univariate:
            writer.writerow(("power", "coeff"))
            writer.writerows(enumerate(poly.q_coefficients()))
        else:
            writer.writerow(("a", "b", "c", "coeff"))
            writer.writerows((t["a"], t["b"], t["c"], t["coeff"]) for t in poly.to_records())
    else:
        doc = {
            "r": args.r,
            "n": args.n,
            "variant": args.variant,
            "restriction": args.restriction,
            "t": args.t,
            "s": args.s,
        }
        if univariate:
            doc["coefficients"] = poly.q_coefficients()
        else:
            doc["terms"] = poly.to_records()
        doc["polynomial"] = str(poly)
        print(_dump(doc), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_verify(args.theorem, args.max_r, args.max_n, args.cap, args.jobs)
    print(_dump(report), file=out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


COMMANDS = {"stats": cmd_stats, "enumerate": cmd_enumerate, "poly": cmd_poly, "verify": cmd_verify}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # buffer so that a refusal half-way never leaves partial output behind
    buf = io.StringIO()
    try:
        code = COMMANDS[args.verb](args, buf)
    except ResourceLimitError as exc:
        print(f"exclab: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except DomainError as exc:
        print(f"exclab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
