"""Command line entry point: `toritally <subcommand> ...`."""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import abelian, arith, census, cubics, latgrp, nforder, quartics, sextics


def _int(s: str) -> int:
    """Integers, also written as 1e6."""
    v = float(s) if any(c in s for c in "eE.") else int(s)
    if int(v) != v:
        raise argparse.ArgumentTypeError(f"not an integer: {s}")
    return int(v)


def _csv_out(header, rows, fh=None):
    w = csv.writer(fh or sys.stdout, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if v is None else v for v in r])


def cmd_abh(args) -> int:
    gens = [latgrp.parse_matrix(g) for g in args.gens.split("|") if g.strip()]
    G = latgrp.generate_group(gens)
    print(json.dumps(latgrp.describe(G), sort_keys=True))
    return 0


def cmd_h3(args) -> int:
    counts = cubics.CubicCounts(args.dmax)
    rows = []
    for d in arith.fundamental_discs(1, args.dmax):
        if d < 0:
            rows.append((d, arith.class_group_imaginary(d, with_table=False).h3, "bqf"))
        else:
            rows.append((d, counts.h3(d), "cubic"))
    _csv_out(["d", "h3", "route"], rows)
    return 0


def cmd_quad(args) -> int:
    rows = []
    for d in arith.fundamental_discs(1, args.dmax):
        if d < 0:
            rows.append((d, len(arith.reduced_forms(d)), None, None))
        else:
            x, y = arith.fundamental_unit(d)
            rows.append((d, None, x, y))
    _csv_out(["d", "h", "unit_x", "unit_y"], rows)
    return 0


def cmd_disc(args) -> int:
    # leading coefficient first, as written: "1,0,-1,-1" is x^3 - x - 1
    f = [int(c) for c in args.poly.split(",")][::-1]
    info = nforder.field_disc_info(f)
    print(json.dumps({"poly_disc": info.poly_disc, "field_disc": info.field_disc,
                      "index": info.index}, sort_keys=True))
    return 0


def cmd_cubics(args) -> int:
    sign = {"both": "both", "real": "real", "imag": "imag"}[args.sign]
    rows = []
    for F in cubics.enumerate_cubics(args.dmax, sign):
        dE, f = F.resolvent if F.gal == "S3" else (None, None)
        rows.append((F.disc, F.sign, F.gal, dE, f))
    _csv_out(["D_F", "sign", "gal", "D_E", "f"], rows)
    return 0


def cmd_g(args) -> int:
    grid = census.default_grid(args.xmax, args.grid)
    _csv_out(["X", "g"], cubics.g_function(args.xmax, grid))
    return 0


def cmd_abelian(args) -> int:
    grid = census.default_grid(args.ymax, args.grid, start=10)
    _csv_out(["Y", "count"], abelian.conductor_grid_counts(args.group, args.ymax, grid))
    return 0


def cmd_d4(args) -> int:
    rows = []
    for D in arith.fundamental_discs(1, args.xmax):
        for q in quartics.enumerate_relquad(D, args.xmax, ("D4",)):
            rows.append((q.D_K, q.D_L, q.C, q.gal))
    rows.sort(key=lambda r: (r[2], abs(r[0]), r[0], r[1]))
    _csv_out(["D_K", "D_L", "C", "gal"], rows)
    return 0


def cmd_d6(args) -> int:
    pairs = sorted(sextics.d6_pairs(args.xmax))
    _csv_out(["D_F", "D_K", "D_L", "C", "a", "b", "m"],
             [(p.D_F, p.D_K, p.D_L, p.C, p.a, p.b, p.m) for p in pairs])
    if args.emit_ab_table:
        print()
        _csv_out(["a", "b", "count"], [(a, b, n) for (a, b), n in sextics.ab_table(pairs).items()])
    return 0


def cmd_census(args) -> int:
    table = census.run_census(args.xmax, args.groups, args.grid, jobs=args.jobs,
                              include_trivial=args.include_trivial)
    violations = list(table.violations)
    if len(table.x_grid) >= 5:
        census.fit_report(table)
    if "H12A" in table.rows:
        from .sextics import _LocalCache, d6_pairs
        cap = table.rows["H12A"].cap or args.xmax
        for p in d6_pairs(min(cap, args.xmax), cache=_LocalCache()):
            if not (0 <= p.a <= 9 and 0 <= p.b <= 3) or p.C * 2 ** p.a * 3 ** p.b * p.m ** 2 != p.D_F * p.D_K ** 2:
                violations.append({"check": "exponent_structure", "D_F": p.D_F, "D_K": p.D_K, "a": p.a, "b": p.b})
    if set(table.rows) == set(census.LABELS):
        violations += census.bounds_report(table)["violations"]
    paths = census.emit(table, args.format, args.out)
    vpath = census.write_violations(violations, args.out)
    for p in paths + [vpath]:
        print(p)
    for i, X in enumerate(table.x_grid):
        print(f"X={X} total={table.total[i]}", file=sys.stderr)
    if violations:
        print(f"{len(violations)} violation(s), see {vpath}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toritally", description="Counting two-dimensional tori by conductor.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("census", help="all twelve rows on a grid, with fits and checks")
    p.add_argument("--xmax", type=_int, required=True)
    p.add_argument("--groups", default="all")
    p.add_argument("--grid", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", default="csv,json,svg")
    p.add_argument("--out", default="census_out")
    p.add_argument("--include-trivial", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("abh", help="order, classes, cyclotomic orbits and (a, b) of a matrix group")
    p.add_argument("--gens", required=True, help='matrices "a,b;c,d" separated by |')
    p.set_defaults(func=cmd_abh)

    p = sub.add_parser("h3", help="3-torsion of quadratic class groups")
    p.add_argument("--dmax", type=_int, required=True)
    p.set_defaults(func=cmd_h3)

    p = sub.add_parser("quad", help="fundamental discriminants with class number or unit")
    p.add_argument("--dmax", type=_int, required=True)
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("disc", help="polynomial and field discriminant")
    p.add_argument("--poly", required=True, help="coefficients, leading term first")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("cubics", help="cubic fields by discriminant")
    p.add_argument("--dmax", type=_int, required=True)
    p.add_argument("--sign", choices=["both", "real", "imag"], default="both")
    p.set_defaults(func=cmd_cubics)

    p = sub.add_parser("g", help="partial sums of h3 times tau")
    p.add_argument("--xmax", type=_int, required=True)
    p.add_argument("--grid", type=int, default=16)
    p.set_defaults(func=cmd_g)

    p = sub.add_parser("abelian", help="cyclic fields by conductor")
    p.add_argument("--group", choices=["C3", "C4", "C6"], required=True)
    p.add_argument("--ymax", type=_int, required=True)
    p.add_argument("--grid", type=int, default=16)
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("d4", help="D4 quartic fields by C = D_L / D_K")
    p.add_argument("--xmax", type=_int, required=True)
    p.set_defaults(func=cmd_d4)

    p = sub.add_parser("d6", help="D6 sextic fields F K by C = D_L / (D_F D_K)")
    p.add_argument("--xmax", type=_int, required=True)
    p.add_argument("--emit-ab-table", action="store_true")
    p.set_defaults(func=cmd_d6)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as e:
        print(f"{ap.prog}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
