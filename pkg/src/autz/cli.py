"""Command line front end.

Exit codes: 0 success, 1 invalid input or a mismatch against expected
values, 2 internal error. ``AUTZ_JOBS`` sets the number of worker processes
used by ``reproduce`` (default 1).
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import casefile
from .casefile import CaseFileError
from .catalog import catalog
from .elliptic import EllipticGroupError
from .fpgroup import FpGroupError
from .invariants import InvariantsError
from .monodromy import MonodromyError, classify, simplify

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2
INPUT_ERRORS = (CaseFileError, EllipticGroupError, MonodromyError, InvariantsError, FpGroupError)


class ExpectedMismatch(Exception):
    pass


def jobs():
    try:
        return max(1, int(os.environ.get("AUTZ_JOBS", "1")))
    except ValueError:
        return 1


def _error(exc):
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)


# -- analyze -------------------------------------------------------------------

def _human_report(r):
    lines = [
        f"case        {r['name']}",
        f"group       {r['input']['group']}",
        f"datum       {r['input']['datum']}  type {r['input']['type']}",
        f"monE        {r['input']['monE']}",
        f"genus C     {r['genus_C']}",
        f"label       {r['case']}" + ("" if r["minimal"] else " (not minimal)"),
        f"|K|         {r['K_order']}  {{{', '.join(r['K'])}}}",
        f"H1(S,Z)     {_inv_str(r['h1_S'])}",
        f"Aut_Z(S)    {r['aut_z']['structure']}  [{r['aut_z']['certainty']}]",
    ]
    for rule in r["aut_z"]["rules"]:
        lines.append(f"  rule: {rule}")
    for key, c in r["checks"].items():
        mark = "ok" if c["ok"] else "FAIL"
        lines.append(f"  expected {key} = {c['expected']}: {mark} (got {c['actual']})")
    return "\n".join(lines)


def _inv_str(h):
    parts = []
    if h["free_rank"]:
        parts.append("Z" if h["free_rank"] == 1 else f"Z^{h['free_rank']}")
    parts += [f"Z/{d}" for d in h["torsion"]]
    return " + ".join(parts) or "0"


def cmd_analyze(args):
    case = casefile.load_case(args.file)
    report = casefile.analyze(case)
    if args.format == "machine":
        sys.stdout.write(casefile.dumps(report))
    else:
        print(_human_report(report))
    return EXIT_OK if casefile.report_passed(report) else EXIT_INVALID


# -- reproduce -----------------------------------------------------------------

def _run_entry(args):
    list_id, index = args
    entry = catalog(list_id)[index]
    case = casefile.case_from_dict(casefile.catalog_case_dict(entry))
    report = casefile.analyze(case)
    return report


def reproduce(list_id, n_jobs=None):
    entries = catalog(list_id)
    tasks = [(list_id, i) for i in range(len(entries))]
    n_jobs = n_jobs or jobs()
    if n_jobs > 1:
        with ProcessPoolExecutor(n_jobs) as ex:
            return list(ex.map(_run_entry, tasks))
    return [_run_entry(t) for t in tasks]


def _table(reports):
    head = f"{'case':<22} {'|K|':>4}  {'H1(S,Z)':<22} {'Aut_Z':<8} {'certainty':<11} check"
    lines = [head, "-" * len(head)]
    for r in reports:
        mark = "ok" if casefile.report_passed(r) else "MISMATCH"
        lines.append(f"{r['name']:<22} {r['K_order']:>4}  {_inv_str(r['h1_S']):<22} "
                     f"{r['aut_z']['structure']:<8} {r['aut_z']['certainty']:<11} {mark}")
    return "\n".join(lines)


def cmd_reproduce(args):
    list_id = {"a1": 1, "a2": 2}[args.which]
    reports = reproduce(list_id)
    if args.format == "machine":
        sys.stdout.write(casefile.dumps({"list": args.which, "cases": reports}))
    else:
        print(_table(reports))
    bad = [r["name"] for r in reports if not casefile.report_passed(r)]
    if bad:
        _error(ExpectedMismatch(", ".join(bad)))
        return EXIT_INVALID
    return EXIT_OK


# -- simplify ------------------------------------------------------------------

def cmd_simplify(args):
    case = casefile.load_case(args.file)
    d = case.datum
    final, label, steps = simplify(d)
    print(f"start  {d.format()}  [{classify(d)}]")
    for n, (kind, text, after) in enumerate(steps, 1):
        print(f"{n:>3}. ({kind}) {text}: {after.format()}  [{classify(after)}]")
    print(f"minimal {final.format()}  [{label}]  ({len(steps)} steps)")
    return EXIT_OK


# -- catalog -------------------------------------------------------------------

def cmd_catalog(args):
    lists = [args.list] if args.list else [1, 2]
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for list_id in lists:
        for entry in catalog(list_id):
            obj = casefile.catalog_case_dict(entry)
            if out:
                fname = f"a{list_id}_{entry.group}_{entry.name.replace(' ', '_')}.json"
                (out / fname).write_text(casefile.dumps(obj), encoding="utf-8")
            d = entry.datum()
            print(f"a{list_id}  {entry.label:<22} {d.format()}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="autz", description="Cohomologically trivial automorphisms "
                                "of surfaces isogenous to a higher elliptic product.")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyze a JSON case file")
    a.add_argument("file")
    a.add_argument("--format", choices=("human", "machine"), default="human")
    a.set_defaults(func=cmd_analyze)
    r = sub.add_parser("reproduce", help="recompute a tabulated list")
    r.add_argument("which", choices=("a1", "a2"))
    r.add_argument("--format", choices=("human", "machine"), default="human")
    r.set_defaults(func=cmd_reproduce)
    s = sub.add_parser("simplify", help="reduce a case to its minimal form")
    s.add_argument("file")
    s.set_defaults(func=cmd_simplify)
    c = sub.add_parser("catalog", help="list catalog entries, optionally writing case files")
    c.add_argument("--list", type=int, choices=(1, 2))
    c.add_argument("--out", help="directory for case files")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        _error(exc)
        return EXIT_INVALID
    except OSError as exc:
        _error(exc)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        _error(exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
