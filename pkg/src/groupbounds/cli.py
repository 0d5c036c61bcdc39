"""Command line: ``groupbounds {analyze,scan,lemma,bounds,import,export}``.

Exit codes: 0 all checks passed, 1 usage or structural error, 2 a checked
inequality failed (a counterexample).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds, catalog, lemmas
from .automorphisms import DEFAULT_AUT_CAP
from .core import center, commuting_probability
from .errors import CounterexampleFound, GroupBoundsError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2


def fmt(x) -> str:
    """Fractions print as 'p/q' (or 'p' when integral), never as decimals."""
    return str(Fraction(x))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _report_text(d: dict) -> str:
    lines = [f"group {d['group']} (order {d['order']})"]
    for key in ("lambda_m1", "lambda_2", "lambda_3", "lambda_status", "aut_order", "cp",
                "fit_order", "fit_index", "rad_order", "rad_index", "dl_rad"):
        lines.append(f"  {key:<14} {d[key]}")
    for v in d["verdicts"]:
        mark = "PASS" if v["passed"] else "FAIL"
        note = f"  ({v['note']})" if v["note"] else ""
        lines.append(f"  [{mark}] {v['name']}: {v['lhs']} {v['relation']} {v['rhs']}{note}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    G = catalog.construct(args.group)
    rep = bounds.verify_group(G, args.aut_cap, strict=False)
    d = rep.to_dict()
    if args.format == "json":
        _emit(dumps({"schema_version": SCHEMA_VERSION, "report": d}), args.out)
    else:
        _emit(_report_text(d), args.out)
    return EXIT_OK if rep.all_passed else EXIT_COUNTEREXAMPLE


def _scan_one(job):
    spec, cap = job
    G = catalog.construct(spec)
    return bounds.verify_group(G, cap, strict=False).to_dict()


CSV_FIELDS = ["group", "order", "lambda_m1", "lambda_2", "lambda_3", "lambda_status", "aut_order", "cp",
              "fit_order", "rad_order", "dl_rad", "all_passed", "failed"]


def run_scan(max_order: int, aut_cap: int = DEFAULT_AUT_CAP, workers: int = 1) -> list[dict]:
    """verify_group over the default scan set; rows in (order, name) order whatever ``workers`` is."""
    jobs = [(str(s), aut_cap) for s in catalog.default_scan_set(max_order)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_scan_one, jobs))
    else:
        rows = [_scan_one(j) for j in jobs]
    return sorted(rows, key=lambda r: (r["order"], r["group"]))


def cmd_scan(args) -> int:
    if not 1 <= args.max_order <= catalog.DEFAULT_ORDER_CAP:
        raise SystemExit(f"--max-order must be in 1..{catalog.DEFAULT_ORDER_CAP}")
    rows = run_scan(args.max_order, args.aut_cap, args.workers)
    failed = [r["group"] for r in rows if not r["all_passed"]]
    if args.format == "json":
        text = dumps({"schema_version": SCHEMA_VERSION, "max_order": args.max_order,
                      "aut_cap": args.aut_cap, "groups": rows, "counterexamples": failed})
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**{k: r.get(k) for k in CSV_FIELDS},
                        "failed": ";".join(v["name"] for v in r["verdicts"] if not v["passed"])})
        text = buf.getvalue()
    else:
        text = "".join(
            f"{r['group']:<36} {r['order']:>4}  l-1={r['lambda_m1']:<6} l2={r['lambda_2']:<6} "
            f"l3={r['lambda_3']:<6} cp={r['cp']:<6} |Fit|={r['fit_order']:<3} |Rad|={r['rad_order']:<3} "
            f"dl={r['dl_rad']} {'ok' if r['all_passed'] else 'FAIL'}"
            f"{'' if r['lambda_status'] == 'exact' else ' (inner only)'}\n"
            for r in rows)
        text += f"{len(rows)} groups, {len(failed)} counterexamples\n"
    _emit(text, args.out)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def cmd_lemma(args) -> int:
    rho = bounds.as_rho(args.rho)
    summary = lemmas.intersection_suite(args.families, rhos=(rho,), universes=(args.universe,), seed=args.seed)
    d = {"schema_version": SCHEMA_VERSION, "rho": fmt(rho), "universe": args.universe, "seed": args.seed,
         **summary.to_dict()}
    if args.format == "json":
        _emit(dumps(d), None)
    else:
        for k, v in d.items():
            print(f"{k:<18} {v}")
        print("zero counterexamples" if not summary.counterexamples else "COUNTEREXAMPLES FOUND")
    return EXIT_OK


def bounds_table(rho) -> dict:
    c = bounds.rho_constants(rho)
    sq = bounds.squaring_bounds(c.rho)
    return {
        "rho": fmt(c.rho),
        "k": c.k,
        "triangle_index": c.triangle_index,
        "delta": c.delta,
        "t": fmt(c.t),
        "inversion_cp_lower": fmt(bounds.inversion_cp_lower(c.rho)),
        "inversion_fit_index_upper": fmt(bounds.inversion_fit_index_upper(c.rho)),
        "inversion_dl_upper_rule": "dl <= 2 or 2*rho <= (3/4)^(dl-3)",
        "inversion_dl_max_allowed": max(dl for dl in range(2, 200) if bounds.inversion_dl_bound_holds(dl, c.rho)),
        "squaring_cp_lower": fmt(sq.cp_lower),
        "squaring_fit_index_upper": fmt(sq.fit_index_upper),
        "squaring_dl_upper": sq.dl_upper,
        "squaring_dl_set": list(sq.dl_set),
    }


def cmd_bounds(args) -> int:
    d = bounds_table(args.rho)
    if args.format == "json":
        _emit(dumps({"schema_version": SCHEMA_VERSION, **d}), None)
    else:
        for k, v in d.items():
            print(f"{k:<26} {v}")
    return EXIT_OK


def cmd_import(args) -> int:
    G = catalog.parse_cayley_file(args.file)
    d = {"schema_version": SCHEMA_VERSION, "group": G.name, "order": G.order,
         "abelian": G.is_abelian(), "center_order": len(center(G)), "cp": fmt(commuting_probability(G))}
    _emit(dumps(d), None)
    return EXIT_OK


def cmd_export(args) -> int:
    G = catalog.construct(args.group)
    catalog.serialize_cayley(G, args.file)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="groupbounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="verify every bound for one group")
    a.add_argument("--group", required=True, help="family:params, A*B, or file:path")
    a.add_argument("--aut-cap", type=int, default=DEFAULT_AUT_CAP)
    a.add_argument("--format", choices=("json", "text"), default="text")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="verify the default catalog up to an order")
    s.add_argument("--max-order", type=int, default=32)
    s.add_argument("--aut-cap", type=int, default=DEFAULT_AUT_CAP)
    s.add_argument("--format", choices=("json", "csv", "text"), default="text")
    s.add_argument("--out")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_scan)

    m = sub.add_parser("lemma", help="seeded random checks of the intersection lemma")
    m.add_argument("--families", type=int, default=1000)
    m.add_argument("--rho", default="1/2")
    m.add_argument("--universe", type=int, default=64)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--format", choices=("json", "text"), default="text")
    m.set_defaults(func=cmd_lemma)

    b = sub.add_parser("bounds", help="tabulate constants and bounds at rho")
    b.add_argument("--rho", required=True, help="exact rational p/q")
    b.add_argument("--format", choices=("json", "text"), default="text")
    b.set_defaults(func=cmd_bounds)

    i = sub.add_parser("import", help="read and validate a Cayley table file")
    i.add_argument("--file", required=True)
    i.set_defaults(func=cmd_import)

    e = sub.add_parser("export", help="write a catalog group as a Cayley table file")
    e.add_argument("--group", required=True)
    e.add_argument("--file", required=True)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CounterexampleFound as exc:
        sys.stderr.write(dumps({"schema_version": SCHEMA_VERSION, "error": exc.to_dict()}))
        return EXIT_COUNTEREXAMPLE
    except (GroupBoundsError, OSError) as exc:
        err = exc.to_dict() if isinstance(exc, GroupBoundsError) else {"code": "os_error", "message": str(exc)}
        sys.stderr.write(dumps({"schema_version": SCHEMA_VERSION, "error": err}))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
