"""Command line front end.

Subcommands:

  tables   reproduce the two skew-PDS parameter tables, certifying rows
  scan     sweep recipes over a range of prime powers into a JSON-lines catalog
  verify   classify explicit sets from a JSON file or inline JSON
  cycnum   print/compare cyclotomic number tables
  catalog  re-verify a previously written catalog

Exit code 0 means success everywhere; verification failures and row
mismatches exit nonzero.  CYCLOSKEW_JOBS overrides --jobs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .constructions import (
    Construction,
    apply as apply_recipe,
    enumerate_applicable,
    get_recipe,
    registry,
)
from .cyclotomy import bruteforce_table, classes, closed_form_table
from .diffsets import Certificate, check_ads, check_family, check_pds, check_skew_pds, verify_certificate
from .errors import BoundTooLarge, CycloskewError, ParseError, UnknownMode
from .field import build_field
from .numtheory import is_prime_power, two_squares_rep

MAX_TABLE_BOUND = 10**8


def _jobs_default() -> int:
    env = os.environ.get("CYCLOSKEW_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# ---- tables ----


def table1_rows(bound: int) -> list[dict]:
    """Paley skew PDS rows: q = s^2 + 4 prime powers, q = 5 (mod 8)."""
    rows = []
    s = 3
    while s * s + 4 <= bound:
        q = s * s + 4
        if is_prime_power(q):
            signed = s if s % 4 == 1 else -s
            rows.append(
                {
                    "q": q,
                    "rep": f"{signed if signed > 0 else f'({signed})'}²+(±2)²",
                    "params": (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4),
                    "recipe": "R1",
                }
            )
        s += 2
    return rows


def table2_rows(bound: int) -> list[dict]:
    """Skew Paley rows q = l^2 with l = d^2 + 2 = 3 (mod 8) a prime power."""
    rows = []
    d = 1
    while (d * d + 2) ** 2 <= bound:
        ell = d * d + 2
        if ell % 8 == 3 and is_prime_power(ell):
            q = ell * ell
            rows.append(
                {
                    "q": q,
                    "rep": f"{ell}={d}²+2",
                    "params": (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4),
                    "recipe": "R10",
                }
            )
        d += 2
    return rows


def _certify_row(row: dict) -> str:
    from .numtheory import prime_power_decompose

    p, m = prime_power_decompose(row["q"])
    field = build_field(p, m)
    recipe = get_recipe(row["recipe"])
    cons = apply_recipe(recipe, field)
    main_plan = next(c for c in cons if c.plan.label == "D")
    got = main_plan.certificate.params
    want = row["params"]
    if (got["v"], got["k"], got["lambda"], got["mu"]) != want:
        return f"MISMATCH:{got}"
    return "certified"


def cmd_tables(args) -> int:
    if args.bound > MAX_TABLE_BOUND:
        raise BoundTooLarge(f"bound {args.bound} exceeds {MAX_TABLE_BOUND}")
    rows = table1_rows(args.bound) if args.table == 1 else table2_rows(args.bound)
    to_certify = [r for r in rows if r["q"] <= args.certify_cap]
    statuses = {}
    if to_certify:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            for row, status in zip(to_certify, pool.map(_certify_row, to_certify)):
                statuses[row["q"]] = status
    bad = 0
    for row in rows:
        status = statuses.get(row["q"], "not-oracle-verified")
        if status.startswith("MISMATCH"):
            bad += 1
        params = "(" + ",".join(str(v) for v in row["params"]) + ")"
        print(f"{row['q']}\t{row['rep']}\t{params}\t{status}")
    print(f"# table {args.table}: {len(rows)} rows, {len(to_certify)} certified, {bad} mismatches", file=sys.stderr)
    return 1 if bad else 0


# ---- scan ----


def construction_entry(con: Construction) -> dict:
    entry = con.to_json()
    entry["version"] = __version__
    entry["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return entry


def cmd_scan(args) -> int:
    recipe_ids = None if args.recipes == "all" else args.recipes.split(",")
    cons = enumerate_applicable(
        args.q_min, args.q_max, recipe_ids, certify_cap=args.certify_cap, jobs=args.jobs
    )
    lines = [json.dumps(construction_entry(c)) for c in cons]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
        print(f"# wrote {len(lines)} entries to {args.out}", file=sys.stderr)
    else:
        for line in lines:
            print(line)
    return 0


# ---- verify ----


def _load_sets(arg: str) -> list[list[int]]:
    try:
        if os.path.exists(arg):
            with open(arg, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        else:
            data = json.loads(arg)
    except (json.JSONDecodeError, OSError) as exc:
        raise ParseError(f"cannot parse sets: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
        raise ParseError("sets must be a JSON array of arrays of element codes")
    return [[int(c) for c in s] for s in data]


def _field_from_args(args):
    poly = None
    if args.poly:
        try:
            poly = [int(c) for c in args.poly.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad polynomial coefficients: {args.poly}") from exc
    return build_field(args.p, args.m, poly=poly, generator=args.gen)


def cmd_verify(args) -> int:
    field = _field_from_args(args)
    sets = _load_sets(args.sets)
    reference = None
    if args.reference:
        try:
            data = json.loads(args.reference)
        except json.JSONDecodeError as exc:
            raise ParseError(f"cannot parse reference: {exc}") from exc
        if data and isinstance(data[0], list):
            data = data[0]
        reference = [int(c) for c in data]
    mode = args.mode
    if mode == "pds":
        cert = check_pds(field, sets[0])
    elif mode == "skew":
        cert = check_skew_pds(field, sets[0])
    elif mode == "ads":
        cert = check_ads(field, sets[0])
    elif mode in ("internal", "external"):
        cert = check_family(field, sets, mode, reference=reference)
    else:
        raise UnknownMode(f"mode {mode!r} is not one of pds|skew|ads|internal|external")
    print(json.dumps(cert.to_json(), indent=2))
    return 0 if cert.ok else 1


# ---- cycnum ----


def cmd_cycnum(args) -> int:
    field = _field_from_args(args)
    part = classes(field, args.e)
    header = {"q": field.q, "p": field.p, "m": field.m, "e": args.e, "f": part.f}
    if field.q % 4 == 1:
        s, t = two_squares_rep(field)
        header.update({"s": s, "t": t})
    tables = {}
    if args.variant in ("brute-force", "compare"):
        tables["brute-force"] = bruteforce_table(part)
    if args.variant in ("closed-form", "compare"):
        tables["closed-form"] = closed_form_table(field, args.e)
        cf = tables["closed-form"]
        header.update({k: v for k, v in cf.reps.items()})
        if cf.resolved_y is not None:
            header.update({"resolved_y": cf.resolved_y, "resolved_b": cf.resolved_b})
    print(" ".join(f"{k}={v}" for k, v in header.items()))
    show = tables.get("closed-form", tables.get("brute-force"))
    for row in show.counts:
        print(" ".join(str(int(v)) for v in row))
    if args.variant == "compare":
        same = np.array_equal(tables["brute-force"].counts, tables["closed-form"].counts)
        print("MATCH" if same else "MISMATCH")
        return 0 if same else 1
    return 0


# ---- catalog ----


def cmd_catalog(args) -> int:
    bad = total = 0
    with open(args.file, "r", encoding="utf-8") as fh:
        entries = [json.loads(line) for line in fh if line.strip()]
    if args.limit:
        entries = entries[: args.limit]
    for entry in entries:
        if not entry.get("oracle_verified"):
            continue
        total += 1
        fs = entry["field"]
        field = build_field(fs["p"], fs["m"], poly=fs["poly"], generator=fs["generator"])
        cert = Certificate.from_json(entry["certificate"])
        if not verify_certificate(field, cert):
            bad += 1
            print(f"FAIL q={entry['q']} {entry['recipe']}[{entry['label']}]")
    print(f"# re-verified {total} certificates, {bad} failures", file=sys.stderr)
    return 1 if bad else 0


# ---- registry dump ----


def cmd_recipes(args) -> int:
    for recipe in registry():
        print(json.dumps(recipe.describe()))
    return 0


def _add_field_args(sub):
    sub.add_argument("--p", type=int, required=True, help="field characteristic")
    sub.add_argument("--m", type=int, default=1, help="extension degree")
    sub.add_argument("--poly", help="defining polynomial coefficients c0,c1,...,cm")
    sub.add_argument("--gen", type=int, help="generator element code")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycloskew")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    t = subs.add_parser("tables", help="reproduce the skew-PDS parameter tables")
    t.add_argument("table", type=int, choices=(1, 2))
    t.add_argument("bound", type=int)
    t.add_argument("--certify-cap", type=int, default=10**5)
    t.add_argument("--jobs", type=int, default=_jobs_default())
    t.set_defaults(func=cmd_tables)

    s = subs.add_parser("scan", help="sweep recipes over a prime power range")
    s.add_argument("q_min", type=int)
    s.add_argument("q_max", type=int)
    s.add_argument("--recipes", default="all", help="comma separated recipe ids, or 'all'")
    s.add_argument("--certify-cap", type=int, default=5000)
    s.add_argument("--jobs", type=int, default=_jobs_default())
    s.add_argument("--out", help="output catalog path (JSON lines); stdout if omitted")
    s.set_defaults(func=cmd_scan)

    v = subs.add_parser("verify", help="classify explicit sets")
    _add_field_args(v)
    v.add_argument("--sets", required=True, help="JSON array of arrays, inline or a file path")
    v.add_argument("--mode", required=True)
    v.add_argument("--reference", help="reference set as a JSON array (wrapped or not)")
    v.set_defaults(func=cmd_verify)

    c = subs.add_parser("cycnum", help="cyclotomic number tables")
    _add_field_args(c)
    c.add_argument("--e", type=int, required=True)
    group = c.add_mutually_exclusive_group()
    group.add_argument("--closed-form", dest="variant", action="store_const", const="closed-form")
    group.add_argument("--brute-force", dest="variant", action="store_const", const="brute-force")
    group.add_argument("--compare", dest="variant", action="store_const", const="compare")
    c.set_defaults(variant="compare", func=cmd_cycnum)

    k = subs.add_parser("catalog", help="re-verify a catalog file")
    k.add_argument("file")
    k.add_argument("--limit", type=int, default=0, help="spot-check only the first N entries")
    k.set_defaults(func=cmd_catalog)

    r = subs.add_parser("recipes", help="dump the recipe registry")
    r.set_defaults(func=cmd_recipes)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CycloskewError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
