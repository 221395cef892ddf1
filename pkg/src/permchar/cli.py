"""Command-line front end.

Verbs: table, decompose, fsind, real-classes, verify, reproduce, sweep.
Exit status is the machine contract: 0 when every requested check passes,
1 on a verification failure, 2 on usage errors. All runs are reproducible
for fixed flags (seed defaults to 0).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus, verify
from .charfun import atlas_string, decompose as decompose_pi
from .classes import DEFAULT_ENUMERATION_THRESHOLD
from .cyclo import render_cyclotomic
from .group import PermGroup
from .tableio import find_representatives, load_table, serialize_table


def _add_common(p: argparse.ArgumentParser, subgroup: bool = False) -> None:
    p.add_argument("--family", help="corpus family name, e.g. s4, d10, agl1_27, m22")
    p.add_argument("--group-file", help="group definition file (degree + cycle lines)")
    if subgroup:
        p.add_argument("--subgroup", help="subgroup selector (family-specific, or sylow2/trivial/whole/pointN)")
    p.add_argument("--table-file", help="use this character-table file instead of computing/bundled")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=int, default=DEFAULT_ENUMERATION_THRESHOLD,
                   help="class-enumeration threshold")
    p.add_argument("--data-dir", help="override the bundled data directory")
    p.add_argument("--json", action="store_true", dest="as_json")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for independent reports")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permchar",
        description="exact character theory for finite permutation groups",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("table", help="print the character table")
    _add_common(p)

    p = sub.add_parser("decompose", help="decompose the permutation character on cosets of a subgroup")
    _add_common(p, subgroup=True)

    p = sub.add_parser("fsind", help="print degrees and Frobenius-Schur indicators")
    _add_common(p)

    p = sub.add_parser("real-classes", help="list the real conjugacy classes")
    _add_common(p)

    p = sub.add_parser("verify", help="run one mechanical theorem check")
    p.add_argument("statement", choices=[
        "theorem-a", "theorem-b", "theorem-d", "real-coverage",
        "lemma-bob", "theorem-46", "burnside", "c3q16", "simple-avoidance",
    ])
    _add_common(p, subgroup=True)

    p = sub.add_parser("reproduce", help="recompute every tabulated decomposition byte-exactly")
    _add_common(p)

    p = sub.add_parser("sweep", help="run the corpus property sweeps")
    _add_common(p)
    p.add_argument("--min-pairs", type=int, default=500)

    return ap


def _context_from_args(args) -> verify.GroupContext:
    if args.data_dir:
        corpus.set_data_dir(args.data_dir)
    if args.group_file:
        G = corpus.load_group_file(args.group_file)
        name = Path(args.group_file).stem
        if args.table_file:
            table = load_table(args.table_file)
            matching = find_representatives(G, table, seed=args.seed)
            return verify.GroupContext(name, G, table, matching.reps, matching=matching)
        return verify.GroupContext.for_group(name, G, seed=args.seed, threshold=args.threshold)
    if not args.family:
        raise SystemExit2("one of --family or --group-file is required")
    if args.table_file:
        cg = corpus.build(args.family)
        table = load_table(args.table_file)
        matching = find_representatives(cg.group, table, seed=args.seed)
        ctx = verify.GroupContext(cg.name, cg.group, table, matching.reps, matching=matching)
        ctx.corpus_group = cg
        return ctx
    return verify.GroupContext.for_family(args.family, seed=args.seed, threshold=args.threshold)


class SystemExit2(Exception):
    pass


def _subgroup_from_args(ctx, args) -> PermGroup:
    if not getattr(args, "subgroup", None):
        raise SystemExit2("--subgroup is required for this verb")
    return ctx.subgroup(args.subgroup)


def _emit_reports(reports, as_json: bool) -> int:
    if as_json:
        print(verify.reports_to_json(reports))
    else:
        for r in reports:
            print(r.render())
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    verb = args.verb

    if verb == "reproduce":
        if args.data_dir:
            corpus.set_data_dir(args.data_dir)
        reports = _run_reproduce(args)
        return _emit_reports(reports, args.as_json)

    if verb == "sweep":
        if args.data_dir:
            corpus.set_data_dir(args.data_dir)
        result = verify.theorem_a_sweep(seed=args.seed, min_pairs=args.min_pairs)
        burnside_reports = []
        for fam in ["c3", "c15", "c21", "f7_3", "f13_3"]:
            burnside_reports.append(verify.check_burnside(verify.context(fam, seed=args.seed)))
        reports = result["reports"] + burnside_reports
        summary = {
            "pairs": result["pairs"],
            "checks": len(reports),
            "failures": len([r for r in reports if not r.passed]),
        }
        if args.as_json:
            print(json.dumps({"summary": summary, "reports": [r.to_json() for r in reports]}, indent=2))
        else:
            for r in reports:
                if not r.passed:
                    print(r.render())
            print(f"sweep: {summary['pairs']} pairs, {summary['checks']} checks, "
                  f"{summary['failures']} failures")
        return 0 if summary["failures"] == 0 else 1

    ctx = _context_from_args(args)

    if verb == "table":
        if args.as_json:
            print(json.dumps(_table_json(ctx.table), indent=2))
        else:
            print(serialize_table(ctx.table), end="")
        return 0

    if verb == "fsind":
        table = ctx.table
        rows = [
            {"row": table.row_name(i), "degree": table.degrees[i],
             "indicator": table.fs_indicators()[i]}
            for i in range(len(table.rows))
        ]
        if args.as_json:
            print(json.dumps(rows, indent=2))
        else:
            for r in rows:
                print(f"{r['row']}: degree {r['degree']} indicator {r['indicator']:+d}")
        return 0

    if verb == "real-classes":
        table = ctx.table
        real = table.real_class_indices()
        payload = [
            {"class": k, "order": table.orders[k], "size": table.sizes[k]}
            for k in real
        ]
        if args.as_json:
            print(json.dumps(payload, indent=2))
        else:
            for row in payload:
                print(f"class {row['class']}: element order {row['order']}, size {row['size']}")
            print(f"{len(real)} real classes of {table.n_classes}")
        return 0

    if verb == "decompose":
        H = _subgroup_from_args(ctx, args)
        pi, mults = ctx.decompose_perm_character(H)
        rendered = atlas_string(mults, ctx.table)
        if args.as_json:
            print(json.dumps({
                "group": ctx.name,
                "subgroup": args.subgroup,
                "index": ctx.group.order() // H.order(),
                "decomposition": rendered,
                "multiplicities": {
                    ctx.table.row_name(i): m for i, m in enumerate(mults) if m
                },
            }, indent=2))
        else:
            print(rendered)
        return 0

    if verb == "verify":
        return _emit_reports([_run_verify(ctx, args)], args.as_json)

    raise SystemExit2(f"unknown verb {verb!r}")


def _run_verify(ctx, args) -> verify.VerificationReport:
    statement = args.statement
    if statement == "theorem-d":
        return verify.check_theorem_D(ctx, seed=args.seed)
    if statement == "burnside":
        return verify.check_burnside(ctx)
    if statement == "c3q16":
        return verify.check_c3q16_phenomenon(seed=args.seed)
    if statement == "simple-avoidance":
        return verify.check_simple_sylow_avoidance(ctx, seed=args.seed)
    H = _subgroup_from_args(ctx, args)
    name = args.subgroup
    if statement == "theorem-a":
        return verify.check_theorem_A(ctx, H, subgroup_name=name)
    if statement == "theorem-b":
        return verify.check_theorem_B(ctx, H, subgroup_name=name, seed=args.seed)
    if statement == "real-coverage":
        return verify.check_real_coverage(ctx, H, subgroup_name=name)
    if statement == "lemma-bob":
        return verify.check_lemma_bob(ctx, H, subgroup_name=name)
    if statement == "theorem-46":
        return verify.check_theorem_4_6(ctx, H, subgroup_name=name, seed=args.seed)
    raise SystemExit2(f"unknown statement {statement!r}")


def _reproduce_one(item_and_seed):
    item, seed = item_and_seed
    report = verify.reproduce_paper_tables(seed=seed, items=[item])[0]
    return report


def _run_reproduce(args) -> list:
    items = verify.PAPER_TABLE_ITEMS
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_reproduce_one, [(it, args.seed) for it in items]))
        return reports
    return verify.reproduce_paper_tables(seed=args.seed)


def _table_json(table) -> dict:
    return {
        "name": table.name,
        "order": table.order,
        "classes": table.n_classes,
        "sizes": list(table.sizes),
        "orders": list(table.orders),
        "power_maps": {str(p): list(m) for p, m in table.power_maps.items()},
        "rows": [
            {
                "name": table.row_name(i),
                "indicator": table.fs_indicators()[i],
                "values": [render_cyclotomic(v) for v in row.values],
            }
            for i, row in enumerate(table.rows)
        ],
    }


if __name__ == "__main__":
    sys.exit(main())
