"""``crossnum`` command line: census, reduce, cr, verify, exact.

Exit codes: 0 success, 1 unresolved graphs (census) or failed verdicts
(verify), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .census import run_census
from .drawing import load_drawings
from .graph import Graph, Graph6Error, is_connected, is_cubic, parse_graph6, read_graph6, write_graph6
from .heuristic import escalate, schedule
from .named import NAMED_GRAPHS
from .oracle import DEFAULT_MAX_TESTS, exact_crossing_number
from .reductions import ReductionError, eliminate_girth3, split_at_bridges
from .verify import verify_drawing

EXIT_OK = 0
EXIT_UNRESOLVED = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _graph_arg(text: str) -> Graph:
    if text in NAMED_GRAPHS:
        return NAMED_GRAPHS[text]()
    try:
        return parse_graph6(text)
    except Graph6Error as exc:
        raise InputError(f"bad graph6 {text!r}: {exc}") from None


def _read_lines(path: str) -> list[str]:
    try:
        if path == "-":
            return sys.stdin.read().splitlines()
        return Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _add_schedule_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--schedule", choices=("quick", "default", "thorough"), default="default")
    p.add_argument("--seed", type=int, default=0)


def cmd_census(args: argparse.Namespace, out: TextIO) -> int:
    lines = _read_lines(args.input)
    if args.target < 1:
        raise InputError("--target must be >= 1")
    report = run_census(
        lines,
        target=args.target,
        schedule_name=args.schedule,
        seed=args.seed,
        chunk=args.chunk,
        jobs=args.jobs,
        split_bridges=args.split_bridges,
        out=Path(args.out) if args.out else None,
        resume=args.resume,
        corpus=Path(args.input).name if args.input != "-" else None,
    )
    out.write(report.table())
    return EXIT_UNRESOLVED if report.unresolved else EXIT_OK


def cmd_reduce(args: argparse.Namespace, out: TextIO) -> int:
    lines = _read_lines(args.input)
    trace_fh: TextIO = sys.stderr
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        out = (Path(args.out) / "reduced.g6").open("w")
        trace_fh = (Path(args.out) / "traces.txt").open("w")
    try:
        for lineno, g in read_graph6(lines):
            if isinstance(g, Graph6Error):
                trace_fh.write(f"# line {lineno}: malformed graph6: {g}\n")
                continue
            if not is_cubic(g) or not is_connected(g) or g.n <= 4:
                out.write(write_graph6(g) + "\n")
                trace_fh.write(f"# line {lineno}: passed through unchanged\n")
                continue
            try:
                h, trace = eliminate_girth3(g)
                traces = [trace] if trace.steps else []
                parts = [h]
                if args.split_bridges and h.n > 4:
                    parts, split = split_at_bridges(h)
                    if split.steps:
                        traces.append(split)
            except ReductionError as exc:
                trace_fh.write(f"# line {lineno}: {exc} ({exc.reason})\n")
                out.write(write_graph6(g) + "\n")
                continue
            for p in parts:
                out.write(write_graph6(p) + "\n")
            trace_fh.write(f"# line {lineno}\n")
            for t in traces:
                trace_fh.write(t.dumps())
    finally:
        if args.out:
            out.close()
            trace_fh.close()
    return EXIT_OK


def cmd_cr(args: argparse.Namespace, out: TextIO) -> int:
    g = _graph_arg(args.graph)
    if not is_connected(g):
        raise InputError("graph must be connected")
    d, effort = escalate(g, schedule(args.schedule, args.target, args.seed))
    report = verify_drawing(g, d)
    if not report.ok:
        # a heuristic bug; never print an unverified bound
        sys.stderr.write(f"internal error: drawing failed verification: {report.cause}\n")
        return EXIT_UNRESOLVED
    out.write(f"{d.crossing_count}\n")
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "drawing.jsonl").write_text(d.dumps() + "\n")
    else:
        out.write(d.dumps() + "\n")
    if args.verbose:
        for st in effort.stages:
            sys.stderr.write(f"stage {st.name}: {len(st.configs)} runs, best {st.best}\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    lines = _read_lines(args.input)
    status = EXIT_OK
    for lineno, item in load_drawings(lines):
        if isinstance(item, Exception):
            record = {"line": lineno, "graph6": None, "crossings": None, "verdict": False, "cause": str(item)}
        else:
            record = {"line": lineno, **verify_drawing(item.graph, item).to_record()}
        if not record["verdict"]:
            status = EXIT_UNRESOLVED
        out.write(json.dumps(record) + "\n")
    return status


def cmd_exact(args: argparse.Namespace, out: TextIO) -> int:
    g = _graph_arg(args.graph)
    if not is_connected(g):
        raise InputError("graph must be connected")
    if args.k_max < 0:
        raise InputError("k_max must be >= 0")
    out.write(f"{exact_crossing_number(g, args.k_max, max_tests=args.max_tests)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="run the heuristic over a graph6 corpus")
    p.add_argument("input", help="graph6 file, one graph per line ('-' for stdin)")
    p.add_argument("--target", type=int, required=True, help="resolved means fewer than this many crossings")
    p.add_argument("--chunk", type=int, default=50_000, help="graphs per checkpoint")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--split-bridges", action="store_true")
    p.add_argument("--out", help="directory for drawings, report, summary and journal")
    p.add_argument("--resume", action="store_true", help="skip chunks already in the journal")
    _add_schedule_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("reduce", help="eliminate triangles (and optionally bridges)")
    p.add_argument("input")
    p.add_argument("--split-bridges", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cr", help="best drawing of one graph")
    p.add_argument("graph", help="graph6 string or a built-in name: " + ", ".join(NAMED_GRAPHS))
    p.add_argument("--target", type=int, default=0, help="stop once below this count")
    p.add_argument("--out")
    p.add_argument("-v", "--verbose", action="store_true")
    _add_schedule_flags(p)
    p.set_defaults(func=cmd_cr)

    p = sub.add_parser("verify", help="check a drawings file")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact crossing number of a small graph")
    p.add_argument("graph")
    p.add_argument("k_max", type=int)
    p.add_argument("--max-tests", type=int, default=DEFAULT_MAX_TESTS)
    p.set_defaults(func=cmd_exact)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out or sys.stdout)
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"crossnum: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
