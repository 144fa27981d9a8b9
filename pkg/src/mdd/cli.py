"""Command-line interface: ``mdd <subcommand> [options]``.

Exit codes: 0 success, 1 negative result (failed check, Impossible verdict,
structural violation, truncated search), 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .constructions import build
from .errors import BudgetExceeded, DomainError, MddError, TargetTooLarge
from .feasibility import (Status, best_upper_bound, scan_table, table_csv, table_json,
                          verdict)
from .graph6 import iter_graph6_lines, parse_any, write_graph6
from .metrics import GraphSpec, check_spec, defect_analysis, moore_bound, report
from .search import SearchOptions, enumerate_graphs, save_catalogue
from .structure import verify_structure

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def default_jobs() -> int:
    env = os.environ.get("MDD_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"MDD_JOBS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, sort_keys=True) + "\n" if args.json else text
    if getattr(args, "output", None) and args.command not in ("construct", "search"):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _spec(args, need=("delta", "diameter", "defect")) -> GraphSpec:
    missing = [f"--{k}" for k in need if getattr(args, k, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join(missing))
    return GraphSpec(args.delta, args.diameter, args.defect)


# ---------------------------------------------------------------- subcommands

def cmd_bound(args) -> int:
    if args.delta is None or args.diameter is None:
        raise UsageError("bound needs --delta and --diameter")
    mb = moore_bound(args.delta, args.diameter)
    ub = best_upper_bound(args.delta, args.diameter)
    payload = {"delta": args.delta, "diameter": args.diameter, "moore_bound": str(mb),
               "best_upper_bound": str(ub.bound), "exact": ub.exact,
               "justification": list(ub.justification)}
    rel = "=" if ub.exact else "<="
    text = (f"M^b({args.delta},{args.diameter}) = {mb}\n"
            f"best upper bound: N^b {rel} {ub.bound}\n"
            + "".join(f"  {j}\n" for j in ub.justification))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check(args) -> int:
    spec = None
    if any(getattr(args, k) is not None for k in ("delta", "diameter", "defect")):
        spec = _spec(args)
    results = []
    failed = False
    lines = []
    for name in args.files:
        try:
            data = Path(name).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {name}: {exc}")
        for lineno, rec in iter_graph6_lines(data):
            entry = {"file": name, "line": lineno}
            try:
                g = parse_any(rec)
            except (MddError, ValueError) as exc:
                entry.update(ok=False, failures=[f"parse: {exc}"], report=None)
            else:
                rep = report(g)
                if spec is not None:
                    chk = check_spec(g, spec)
                    entry.update(ok=chk.ok, failures=list(chk.failures), report=rep)
                else:
                    entry.update(ok=True, failures=[], report=rep)
            failed |= not entry["ok"]
            results.append(entry)
            status = "ok" if entry["ok"] else "FAIL " + "; ".join(entry["failures"])
            lines.append(f"{name}:{lineno}: {status}\n")
    if not results:
        raise UsageError("no graphs in input")
    payload = {"spec": None if spec is None else str(spec), "results": results,
               "ok": not failed}
    _emit(args, payload, "".join(lines))
    return EXIT_NEGATIVE if failed else EXIT_OK


def cmd_feasible(args) -> int:
    v = verdict(_spec(args))
    lines = [f"{v.spec}: {v.status.value}\n"]
    lines += [f"  {r.tag}: {r.detail}" + (" [extension of the parity argument]" if r.extension
                                          else "") + "\n" for r in v.reasons]
    if v.witness:
        lines.append(f"  witness: {v.witness}\n")
    lines += [f"  note: {n}\n" for n in v.notes]
    _emit(args, v.to_dict(), "".join(lines))
    return EXIT_NEGATIVE if v.status == Status.IMPOSSIBLE else EXIT_OK


def cmd_table(args) -> int:
    D_range = range(args.D_min, args.D_max + 1)
    if args.residues:
        rows = scan_table(args.defect if args.defect is not None else 4, None, D_range,
                          residues=True, jobs=args.jobs)
    else:
        d_range = range(args.d_min, args.d_max + 1)
        rows = scan_table(args.defect if args.defect is not None else 4, d_range, D_range,
                          jobs=args.jobs)
    out = table_json(rows) + "\n" if args.json else table_csv(rows)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_construct(args) -> int:
    g = build(args.name)
    line = write_graph6(g)
    if args.output:
        Path(args.output).write_bytes(line + b"\n")
    if args.json:
        sys.stdout.write(json.dumps({"name": args.name, "graph6": line.decode(),
                                     "report": report(g)}, sort_keys=True) + "\n")
    elif not args.output:
        sys.stdout.write(line.decode() + "\n")
    return EXIT_OK


def cmd_search(args) -> int:
    spec = _spec(args)
    opts = SearchOptions(spec, jobs=args.jobs, girth_floor=args.girth_floor,
                         checkpoint_path=args.checkpoint, budget=args.budget,
                         strategy=args.strategy, max_order=args.max_order)
    code = EXIT_OK
    try:
        cat = enumerate_graphs(opts)
    except BudgetExceeded as exc:
        cat = exc.partial
        code = EXIT_NEGATIVE
    if args.output:
        save_catalogue(cat, args.output)
    if args.json:
        sys.stdout.write(json.dumps(cat.to_dict(), sort_keys=True) + "\n")
    else:
        state = "complete" if cat.complete else "incomplete (budget exhausted)"
        sys.stdout.write(f"{spec}: {len(cat)} graphs, {cat.regular_count()} regular, {state}\n")
        if not args.output:
            for k in cat.keys():
                sys.stdout.write(k.decode() + "\n")
    return code


def cmd_verify_structure(args) -> int:
    try:
        data = Path(args.file).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}")
    records = list(iter_graph6_lines(data))
    if not records:
        raise UsageError("no graphs in input")
    reports = []
    bad = False
    text = []
    for lineno, rec in records:
        g = parse_any(rec)
        if args.delta is None and args.diameter is None and args.defect is None:
            a = defect_analysis(g)
            spec = GraphSpec(a.delta, a.diameter, a.defect)
        else:
            spec = _spec(args)
        rep = verify_structure(g, spec)
        bad |= not rep.ok
        d = rep.to_dict()
        d.update(line=lineno, spec=str(spec))
        reports.append(d)
        text.append(f"{args.file}:{lineno} {spec}: {'ok' if rep.ok else 'VIOLATIONS'}"
                    f"{'' if rep.applicable else ' (irregular host, clauses exempt)'}\n")
        text += [f"  {v}\n" for v in rep.violations]
        if rep.partition is not None:
            text.append(f"  partition: {rep.partition}\n")
    _emit(args, {"file": args.file, "reports": reports, "ok": not bad}, "".join(text))
    return EXIT_NEGATIVE if bad else EXIT_OK


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _shared() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--delta", type=int, help="maximum degree")
    p.add_argument("--diameter", type=int, help="diameter D")
    p.add_argument("--defect", type=int, help="defect (Moore bipartite bound minus order)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-o", "--output", help="write result to this path")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $MDD_JOBS, else CPU count)")
    p.add_argument("--budget", type=int, default=None, help="node-expansion cap")
    return p


def build_parser() -> argparse.ArgumentParser:
    shared = _shared()
    parser = _Parser(prog="mdd", description="Bipartite graphs near the Moore bound.")
    parser.add_argument("--version", action="version", version=f"mdd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("bound", parents=[shared], help="Moore bound and best upper bound")
    p = sub.add_parser("check", parents=[shared], help="check graph6 files against a class")
    p.add_argument("files", nargs="+")
    sub.add_parser("feasible", parents=[shared], help="existence verdict for a class")
    p = sub.add_parser("table", parents=[shared], help="verdict table over a range")
    p.add_argument("--residues", action="store_true",
                   help="one row per class of d-1 modulo D-1 (defect 4, D >= 5)")
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--D-min", dest="D_min", type=int, default=5)
    p.add_argument("--D-max", dest="D_max", type=int, default=20)
    p = sub.add_parser("construct", parents=[shared], help="build a named graph")
    p.add_argument("name", help="delorme-22, delorme-38, heawood, claw, cycle:K, path:K, "
                                "kab:A,B, pg2:Q or circulant:N:o1,o2,...")
    p = sub.add_parser("search", parents=[shared], help="exhaustive catalogue search")
    p.add_argument("--strategy", choices=["matrix", "bfs"], default="matrix")
    p.add_argument("--checkpoint", default=None, help="checkpoint file for resumable runs")
    p.add_argument("--girth-floor", type=int, default=None)
    p.add_argument("--max-order", type=int, default=32)
    p = sub.add_parser("verify-structure", parents=[shared],
                       help="structural checks for defect-4 hosts")
    p.add_argument("file")
    return parser


COMMANDS = {"bound": cmd_bound, "check": cmd_check, "feasible": cmd_feasible,
            "table": cmd_table, "construct": cmd_construct, "search": cmd_search,
            "verify-structure": cmd_verify_structure}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        elif args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, TargetTooLarge) as exc:
        sys.stderr.write(f"mdd {args.command}: {exc}\n")
        return EXIT_USAGE
    except MddError as exc:
        sys.stderr.write(f"mdd {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_NEGATIVE
    except Exception as exc:  # noqa: BLE001 - last-resort handler for the exit-code contract
        sys.stderr.write(f"mdd {args.command}: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
