"""Command-line entry point: ``sawlab <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from .enumeration import (
    CLASSES,
    closing_count,
    closing_probability,
    enumerate_class,
    estimate_mu,
    export_counts_csv,
    exponents,
    polygon_count,
    save_ensemble,
    walk_count,
)
from .errors import SawlabError
from .exact import rational
from .harness import CHECKS, SuiteConfig, run_verification_suite
from .lattice import Polygon
from .madras import RgjParams, build_rgj, find_madras_join, madras_join, shift_set
from .snake import SnakeParams, snake_hypothesis_eval
from .surgery import global_join_plaquettes, polygons


def _fraction(text: str) -> Fraction:
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a decimal or rational: {text!r}") from exc


def read_polygon(path) -> Polygon:
    """A polygon file holds ``DIRS`` or ``x,y:DIRS`` (start vertex, then steps)."""
    text = Path(path).read_text().strip()
    if ":" in text:
        head, dirs = text.split(":", 1)
        x, y = (int(t) for t in head.split(","))
        return Polygon.from_directions(dirs.strip(), (x, y))
    return Polygon.from_directions(text)


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        print(text)
    else:
        Path(out).write_text(text + "\n")


def _csv_out(path, columns, rows) -> None:
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.DictWriter(fh, fieldnames=columns)
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_enumerate(args) -> int:
    res = enumerate_class(
        args.cls, args.n, m=args.m, mode="full" if args.full else "count", shards=args.shards
    )
    if args.out:
        save_ensemble(res, args.out)
    print(f"{res.class_token} n={res.n} count={res.count}")
    return 0


def cmd_counts(args) -> int:
    if args.csv in (None, "-"):
        export_counts_csv(args.max_n, sys.stdout)
    else:
        export_counts_csv(args.max_n, args.csv)
    return 0


def cmd_closing(args) -> int:
    n = args.n
    q = closing_probability(n)
    row = {"n": n, "c_n": walk_count(n), "closing_count": closing_count(n), "probability": str(q)}
    if n % 2:
        p = polygon_count(n + 1)
        row["p_next"] = p
        row["identity_holds"] = closing_count(n) == 2 * (n + 1) * p
    print(json.dumps(row))
    return 0


def cmd_join(args) -> int:
    left, right = read_polygon(args.left), read_polygon(args.right)
    if args.scan_shifts:
        shifts = sorted(shift_set(left, right))
        print(json.dumps({"shifts": [list(u) for u in shifts]}))
        return 0
    found = find_madras_join(left, right)
    if found is None:
        print("no horizontal translate of the right polygon can be joined", file=sys.stderr)
        return 1
    if found.shift:
        print(f"not joinable in place; first admissible horizontal shift is {found.shift}",
              file=sys.stderr)
        return 1
    print(madras_join(left, right).to_json())
    return 0


def cmd_rgj(args) -> int:
    params = RgjParams(args.k, args.l, args.rho)
    build = build_rgj(params)
    lines = [r.to_json() for r in build.records]
    if args.out:
        Path(args.out).write_text("".join(line + "\n" for line in lines))
    else:
        for line in lines:
            print(line)
    summary = {
        "k": params.k,
        "l": params.l,
        "rho": str(params.rho),
        "window": params.window,
        "records": len(build.records),
        "distinct": len(build.outputs),
        "expected": build.expected_size,
        "unjoinable": len(build.unjoinable),
    }
    print(json.dumps(summary), file=sys.stderr)
    return 0


def cmd_snake(args) -> int:
    params = SnakeParams(args.n, args.l, args.alpha, args.beta, args.eta)
    rep = snake_hypothesis_eval(params)
    _emit(json.dumps(rep.to_dict(), indent=2), args.report)
    return 0


def cmd_verify(args) -> int:
    cfg = SuiteConfig(max_n=args.max_n, rho=args.rho, suites=args.suite or None, budget=args.budget)
    rep = run_verification_suite(cfg)
    for c in rep.checks:
        print(f"{c.status.upper():8s} {c.name} ({c.seconds:.2f}s)")
    if args.report:
        Path(args.report).write_text(rep.to_json() + "\n")
    return 0 if rep.passed else 1


def gj_histogram_rows(max_n: int) -> list[dict]:
    rows = []
    for n in range(4, max_n + 1, 2):
        hist = Counter(len(global_join_plaquettes(p)) for p in polygons(n))
        rows.extend({"n": n, "global_joins": g, "polygons": c} for g, c in sorted(hist.items()))
    return rows


def cmd_export(args) -> int:
    if args.what == "counts":
        return cmd_counts(args)
    if args.what == "exponents":
        mu = args.mu if args.mu is not None else estimate_mu(args.max_n).estimate
        rows = []
        for n in range(4, args.max_n + 1, 2):
            r = exponents(n, mu)
            rows.append({"n": n, "mu": mu, "theta": r.theta, "xi": r.xi,
                         "closing_probability": str(r.closing_probability)})
        _csv_out(args.csv, ["n", "mu", "theta", "xi", "closing_probability"], rows)
    else:
        _csv_out(args.csv, ["n", "global_joins", "polygons"], gj_histogram_rows(args.max_n))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sawlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate a class and optionally save it")
    p.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="total length for first_nm")
    p.add_argument("--full", action="store_true", help="list members, not just the count")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("counts", help="walk, polygon and closing counts as CSV")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("closing", help="closing count and probability at one length")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_closing)

    p = sub.add_parser("join", help="Madras join of two polygon files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--scan-shifts", action="store_true")
    p.set_defaults(func=cmd_join)

    p = sub.add_parser("rgj", help="build regulation joins as JSON lines")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--rho", type=_fraction, default=Fraction(1, 10))
    p.add_argument("--out")
    p.set_defaults(func=cmd_rgj)

    p = sub.add_parser("snake", help="evaluate the charming-snake hypothesis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--alpha", type=_fraction, required=True)
    p.add_argument("--beta", type=_fraction, default=Fraction(1))
    p.add_argument("--eta", type=_fraction, default=Fraction(0))
    p.add_argument("--report")
    p.set_defaults(func=cmd_snake)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--suite", action="append", choices=list(CHECKS))
    p.add_argument("--rho", type=_fraction, default=Fraction(1))
    p.add_argument("--budget", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="CSV tables")
    p.add_argument("--what", required=True, choices=("counts", "exponents", "gj-histogram"))
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--mu", type=float)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SawlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
