"""Command-line interface: ``flatpin <command> ...``.

Group arguments are paths to group files or catalog names (M1, M2p,
G_0_1(3), T4, dG1p, ...).  ``--json`` switches to a canonical JSON report.

Exit codes: 0 ok, 1 reproduce mismatch or other failure, 2 parse error,
3 validation error, 4 spin requested on a non-orientable group, 5 group not
of diagonal type, 6 unknown catalog name.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog
from .bieberbach import BieberbachGroup
from .clifford import Convention
from .dyadic import RootTwoDyadic
from .errors import (FlatpinError, GroupFileError, NotDiagonalType, NotOrientable,
                     UnknownName, ValidationError)
from .groupfile import format_group, read_group
from .invariants import (betti_numbers, homology_h1, isospectral_diagonal,
                         shortest_geodesic_sq, sunada_profile)
from .pinspin import count, enumerate_structures, nonexistence_witness
from .reproduce import run_all

EXIT_CODES = [
    (GroupFileError, 2),
    (ValidationError, 3),
    (NotOrientable, 4),
    (NotDiagonalType, 5),
    (UnknownName, 6),
]


def load_group(arg: str) -> BieberbachGroup:
    if os.path.exists(arg):
        stem = os.path.splitext(os.path.basename(arg))[0]
        return read_group(arg, name=stem)
    return catalog.builtin(arg).group


def exact_sqrt(x: Fraction):
    """sqrt(x) as a Fraction or a multiple of sqrt(2) when possible, else None."""
    from math import isqrt
    for mult, radical in ((1, False), (2, True)):
        y = x * mult
        p, q = y.numerator, y.denominator
        if isqrt(p) ** 2 == p and isqrt(q) ** 2 == q:
            r = Fraction(isqrt(p), isqrt(q))
            if not radical:
                return r
            d = r.denominator * 2
            if d & (d - 1) == 0:
                return RootTwoDyadic(0, r.numerator, d.bit_length() - 1)
    return None


def _plain(obj):
    """Convert report values to JSON-ready data with exact string numbers."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, RootTwoDyadic):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return str(obj)


def render_json(report: dict) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def render_text(report: dict) -> str:
    data = _plain(report)
    width = max((len(k) for k in data), default=0)
    lines = []
    for key, value in data.items():
        if isinstance(value, list) and value and (
                isinstance(value[0], (dict, list)) or " " in str(value[0])):
            lines.append(f"{key}:")
            lines.extend(f"  {v if isinstance(v, str) else json.dumps(v, sort_keys=True)}"
                         for v in value)
        elif isinstance(value, list):
            lines.append(f"{key:<{width}}  {' '.join(str(v) for v in value) or '-'}")
        elif isinstance(value, dict):
            lines.append(f"{key:<{width}}  {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key:<{width}}  {value}")
    return "\n".join(lines) + "\n"


def _sunada_json(profile: dict) -> dict:
    return {f"{d},{t}": c for (d, t), c in profile.items()}


def _emit(args, report: dict):
    sys.stdout.write(render_json(report) if args.json else render_text(report))


def structures_report(group: BieberbachGroup, convention, enumerate_: bool = False,
                      limit: int = 4096) -> dict:
    convention = Convention.parse(convention)
    result = count(group, convention)
    report = {
        "group": group.name or "-",
        "convention": convention.value,
        "count": result.total,
        "rank": result.rank,
        "exponent": result.exponent,
        "delta_constraints": result.constraints(),
        "free_deltas": [f"d{i}" for i in result.free_deltas()] if result.exists else [],
        "witness": None,
    }
    if not result.exists:
        w = nonexistence_witness(group, convention)
        report["witness"] = {"kind": w.kind, "text": w.describe(result.system),
                             "rows": [result.system.rows[i].describe(group.n) for i in w.rows]}
    if enumerate_ and result.exists:
        report["structures"] = [str(s) for s in enumerate_structures(group, convention, limit)]
    return report


def invariants_report(group: BieberbachGroup) -> dict:
    h1 = homology_h1(group)
    geo = shortest_geodesic_sq(group, 3)
    length = exact_sqrt(geo)
    report = {
        "group": group.name or "-",
        "dim": group.n,
        "holonomy_rank": group.k,
        "orientable": group.is_orientable(),
        "diagonal_type": group.is_diagonal_type(),
        "sunada": (_sunada_json(sunada_profile(group)) if group.is_diagonal_type()
                   else "not diagonal type"),
        "betti": betti_numbers(group),
        "h1": {"free_rank": h1.free_rank, "torsion": h1.torsion, "text": str(h1)},
        "geodesic_sq": geo,
        "geodesic": length if length is not None else f"sqrt({_plain(geo)})",
    }
    return report


def cmd_structures(args) -> int:
    group = load_group(args.group)
    _emit(args, structures_report(group, args.convention, args.enumerate, args.limit))
    return 0


def cmd_invariants(args) -> int:
    _emit(args, invariants_report(load_group(args.group)))
    return 0


def cmd_isospectral(args) -> int:
    g1, g2 = load_group(args.group1), load_group(args.group2)
    verdict = isospectral_diagonal(g1, g2)
    _emit(args, {"sunada": [_sunada_json(sunada_profile(g1)), _sunada_json(sunada_profile(g2))],
                 "isospectral": verdict})
    return 0


def cmd_reproduce(args) -> int:
    checks = run_all()
    bad = [c for c in checks if not c.ok]
    if args.json:
        sys.stdout.write(render_json({
            "checks": [{"block": c.block, "label": c.label, "expected": c.expected,
                        "got": c.got, "ok": c.ok} for c in checks],
            "mismatches": len(bad)}))
        return 1 if bad else 0
    order = list(dict.fromkeys(c.block for c in checks))
    block = None
    for c in sorted(checks, key=lambda c: order.index(c.block)):
        if c.block != block:
            block = c.block
            print(f"== {block}")
        mark = "ok  " if c.ok else "FAIL"
        print(f"  {mark} {c.label:<12} {json.dumps(_plain(c.got), sort_keys=True)}")
        if not c.ok:
            print(f"       expected {json.dumps(_plain(c.expected), sort_keys=True)}")
    counts = [c for c in checks if c.block == "counts"]
    if all(c.ok for c in counts):
        print(f"all {len(counts)} manifolds match the structure-count table")
    print(f"{len(checks) - len(bad)}/{len(checks)} checks match")
    return 1 if bad else 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            e = catalog.builtin(name)
            print(f"{name:<10} n={e.group.n} k={e.group.k}  {e.note}")
        return 0
    if not args.name:
        raise SystemExit("catalog show/export needs a name")
    entry = catalog.builtin(args.name)
    if args.action == "export":
        sys.stdout.write(format_group(entry.group))
        return 0
    report = {"name": entry.name, "note": entry.note, "expected": entry.expected,
              "group_file": format_group(entry.group)}
    if args.json:
        sys.stdout.write(render_json(report))
    else:
        print(f"{entry.name}  ({entry.note})")
        for k, v in entry.expected.items():
            print(f"  {k}: {json.dumps(_plain(v), sort_keys=True)}")
        sys.stdout.write(format_group(entry.group))
    return 0


def cmd_double(args) -> int:
    sys.stdout.write(format_group(load_group(args.group).double()))
    return 0


def cmd_search(args) -> int:
    pairs = catalog.search_pairs(args.dim, args.holonomy, args.budget)
    report = {"pairs": [{"first": format_group(a), "second": format_group(b),
                         "sunada": _sunada_json(info["sunada"]),
                         "differs": info["differs"]} for a, b, info in pairs],
              "count": len(pairs)}
    if args.json:
        sys.stdout.write(render_json(report))
    else:
        print(f"{len(pairs)} isospectral pairs with differing structure existence")
        for i, p in enumerate(report["pairs"], 1):
            print(f"-- pair {i}: differs in {', '.join(p['differs'])}; sunada {json.dumps(p['sunada'], sort_keys=True)}")
            sys.stdout.write(p["first"])
            print("--")
            sys.stdout.write(p["second"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatpin",
                                     description="Pin and spin structures on flat manifolds.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("structures", parents=[common], help="count pin+/pin-/spin structures")
    p.add_argument("group")
    p.add_argument("--convention", default="pin+", choices=["pin+", "pin-", "spin"])
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--limit", type=int, default=4096)
    p.set_defaults(func=cmd_structures)

    p = sub.add_parser("invariants", parents=[common], help="Betti, H1, Sunada, geodesics")
    p.add_argument("group")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("isospectral", parents=[common], help="compare Sunada numbers")
    p.add_argument("group1")
    p.add_argument("group2")
    p.set_defaults(func=cmd_isospectral)

    p = sub.add_parser("reproduce", parents=[common], help="recompute all published values")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("catalog", parents=[common], help="built-in groups")
    p.add_argument("action", choices=["list", "show", "export"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("double", parents=[common], help="print the doubled group")
    p.add_argument("group")
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("search", parents=[common], help="search isospectral pairs")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--holonomy", type=int, default=2)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FlatpinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for cls, code in EXIT_CODES:
            if isinstance(exc, cls):
                return code
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
