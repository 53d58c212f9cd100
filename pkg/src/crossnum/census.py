"""Batch crossing-number census over graph6 corpora.

Every graph is handled independently: girth-3 graphs are reduced first
(optionally also split at bridges), the heuristic schedule runs on the
reduced pieces with a seed derived from the base seed and the graph's
ordinal, and the resulting drawing is lifted back to the input graph and
verified there.  Results are merged by ordinal, so the report does not
depend on how many worker processes were used.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .drawing import Drawing
from .graph import Graph, Graph6Error, girth, is_connected, is_cubic, parse_graph6, read_graph6, write_graph6
from .heuristic import EffortReport, derive_seed, escalate, schedule
from .oracle import euler_lower_bound
from .reductions import ReductionTrace, eliminate_girth3, join_drawings, lift_drawing, split_at_bridges
from .verify import verify_drawing

__all__ = [
    "CensusReport",
    "GraphRecord",
    "SolveResult",
    "load_corpus",
    "run_census",
    "solve_graph",
]

RESOLVED = "resolved"
UNRESOLVED = "unresolved"
SKIPPED = "skipped"
ERROR = "error"

JOURNAL = "checkpoint.jsonl"


@dataclass
class SolveResult:
    drawing: Drawing
    reduced: bool
    reduced_graph6: list[str]
    stage: str
    runs: int
    exhausted: bool


@dataclass
class GraphRecord:
    ordinal: int
    line: int
    graph6: str
    status: str
    n: int | None = None
    girth: int | None = None
    reduced: bool = False
    reduced_graph6: list[str] = field(default_factory=list)
    best: int | None = None
    stage: str | None = None
    runs: int = 0
    exhausted: bool = False
    verified: bool = False
    note: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> GraphRecord:
        return cls(**data)


def _reduce(g: Graph, split_bridges: bool) -> tuple[list[Graph], list[ReductionTrace]]:
    traces = []
    pieces = [g]
    if girth(g) == 3 and g.n > 4:
        h, trace = eliminate_girth3(g)
        if trace.steps:
            traces.append(trace)
        pieces = [h]
    if split_bridges and pieces[0].n > 4:
        parts, trace = split_at_bridges(pieces[0])
        if trace.steps:
            traces.append(trace)
            pieces = parts
    return pieces, traces


def _run_parts(parts: Sequence[Graph], target: int, schedule_name: str, seed: int) -> tuple[list[Drawing], list[EffortReport]]:
    """Escalate each part toward its share of ``target``.

    A part stops early once the total, with the Euler bound standing in
    for parts not yet drawn, is below ``target``.  If the total still ends
    at or above ``target``, parts that stopped early get the full schedule
    so an unresolved verdict always means every part was exhausted.
    """
    bounds = [euler_lower_bound(p) for p in parts]
    drawings: list[Drawing] = []
    reports: list[EffortReport] = []
    for i, part in enumerate(parts):
        share = target - sum(d.crossing_count for d in drawings) - sum(bounds[i + 1 :])
        d, rep = escalate(part, schedule(schedule_name, max(share, 0), derive_seed(seed, i)))
        drawings.append(d)
        reports.append(rep)
    if sum(d.crossing_count for d in drawings) >= target:
        for i, part in enumerate(parts):
            if reports[i].reached_target:
                d, rep = escalate(part, schedule(schedule_name, 0, derive_seed(seed, i)))
                if d.crossing_count < drawings[i].crossing_count:
                    drawings[i] = d
                reports[i] = rep
    return drawings, reports


def solve_graph(g: Graph, target: int, schedule_name: str, seed: int, split_bridges: bool = False) -> SolveResult:
    """Best drawing of ``g`` found by reduction plus escalation, lifted back to ``g``."""
    pieces, traces = _reduce(g, split_bridges)
    if len(pieces) == 1:
        d, rep = escalate(pieces[0], schedule(schedule_name, target, seed))
        drawings, reports = [d], [rep]
    else:
        drawings, reports = _run_parts(pieces, target, schedule_name, seed)
    d = drawings[0] if len(drawings) == 1 else join_drawings(traces[-1].final, drawings)
    for trace in reversed(traces):
        d = lift_drawing(trace, d)
    stage_index = max(len(r.stages) for r in reports) - 1
    stage = next(r.last_stage for r in reports if len(r.stages) == stage_index + 1)
    return SolveResult(
        drawing=d,
        reduced=bool(traces),
        reduced_graph6=[write_graph6(p) for p in pieces] if traces else [],
        stage=stage or "",
        runs=sum(r.runs for r in reports),
        exhausted=all(r.exhausted for r in reports),
    )


@dataclass(frozen=True)
class _Task:
    ordinal: int
    line: int
    graph6: str
    target: int
    schedule: str
    seed: int
    split_bridges: bool


def _process(task: _Task) -> tuple[GraphRecord, str | None]:
    rec = GraphRecord(task.ordinal, task.line, task.graph6, ERROR)
    g = parse_graph6(task.graph6)
    rec.n = g.n
    gi = girth(g)
    rec.girth = None if math.isinf(gi) else int(gi)
    if not is_cubic(g):
        rec.status = SKIPPED
        rec.note = "not cubic"
        return rec, None
    if not is_connected(g):
        rec.status = SKIPPED
        rec.note = "disconnected"
        return rec, None
    res = solve_graph(g, task.target, task.schedule, derive_seed(task.seed, task.ordinal), task.split_bridges)
    report = verify_drawing(g, res.drawing)
    rec.reduced = res.reduced
    rec.reduced_graph6 = res.reduced_graph6
    rec.best = res.drawing.crossing_count
    rec.stage = res.stage
    rec.runs = res.runs
    rec.exhausted = res.exhausted
    rec.verified = report.ok
    if not report.ok:
        rec.status = ERROR
        rec.note = f"drawing failed verification: {report.cause}"
        return rec, None
    rec.status = RESOLVED if rec.best < task.target else UNRESOLVED
    return rec, res.drawing.dumps()


@dataclass
class CensusReport:
    corpus: str
    target: int
    schedule: str
    seed: int
    records: list[GraphRecord] = field(default_factory=list)

    @property
    def histogram(self) -> dict[int, int]:
        counts = Counter(r.best for r in self.records if r.best is not None and r.status != ERROR)
        return dict(sorted(counts.items()))

    @property
    def unresolved(self) -> list[GraphRecord]:
        return [r for r in self.records if r.status == UNRESOLVED]

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.records)

    def summary(self) -> dict:
        return {
            "corpus": self.corpus,
            "target": self.target,
            "schedule": self.schedule,
            "seed": self.seed,
            "graphs": len(self.records),
            "resolved": self.count(RESOLVED),
            "unresolved": self.count(UNRESOLVED),
            "skipped": self.count(SKIPPED),
            "errors": self.count(ERROR),
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "unresolved_graph6": [r.graph6 for r in self.unresolved],
            "error_lines": [{"line": r.line, "note": r.note} for r in self.records if r.status == ERROR],
        }

    def table(self) -> str:
        head = f"{'#':>6} {'line':>6} {'n':>4} {'girth':>5} {'red':>3} {'best':>4} {'stage':<8} {'ver':>3}  status      graph6"
        rows = [head]
        for r in self.records:
            rows.append(
                f"{r.ordinal:>6} {r.line:>6} {_cell(r.n):>4} {_cell(r.girth):>5} {'y' if r.reduced else '-':>3} "
                f"{_cell(r.best):>4} {r.stage or '-':<8} {'y' if r.verified else '-':>3}  {r.status:<11} {r.graph6}"
                + (f"  # {r.note}" if r.note else "")
            )
        s = self.summary()
        rows.append("")
        rows.append(
            f"graphs {s['graphs']}  resolved {s['resolved']}  unresolved {s['unresolved']}  "
            f"skipped {s['skipped']}  errors {s['errors']}  (target < {self.target})"
        )
        rows.append("histogram of best counts: " + ", ".join(f"{k}:{v}" for k, v in self.histogram.items()))
        return "\n".join(rows) + "\n"


def _cell(x: int | None) -> str:
    return "-" if x is None else str(x)


def load_corpus(lines: Iterable[str]) -> Iterator[tuple[int, str | Graph6Error]]:
    """``(line number, graph6 text or parse error)`` for each non-blank line."""
    raw = list(lines)
    for lineno, item in read_graph6(raw):
        if isinstance(item, Graph6Error):
            yield lineno, item
        else:
            yield lineno, write_graph6(item)


def _chunks(items: list, size: int) -> Iterator[list]:
    for i in range(0, len(items), size):
        yield items[i : i + size]


def _corpus_id(lines: Sequence[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.rstrip("\r\n").encode() + b"\n")
    return h.hexdigest()[:16]


def _read_journal(path: Path, header: dict) -> dict[int, tuple[GraphRecord, str | None]]:
    done: dict[int, tuple[GraphRecord, str | None]] = {}
    if not path.exists():
        return done
    lines = path.read_text().splitlines()
    if not lines or json.loads(lines[0]) != header:
        return done
    for line in lines[1:]:
        try:
            entry = json.loads(line)
        except json.JSONDecodeError:
            break  # torn last write
        for rec, drawing in entry["records"]:
            r = GraphRecord.from_dict(rec)
            done[r.ordinal] = (r, drawing)
    return done


def run_census(
    lines: Sequence[str],
    target: int,
    schedule_name: str = "default",
    seed: int = 0,
    chunk: int = 50_000,
    jobs: int = 1,
    split_bridges: bool = False,
    out: Path | None = None,
    resume: bool = False,
    corpus: str | None = None,
) -> CensusReport:
    """Run the census; with ``out`` set, write drawings, report, summary and journal there.

    ``chunk`` only controls how often the journal is appended to.
    """
    if target < 1:
        raise ValueError("target must be >= 1")
    if chunk < 1 or jobs < 1:
        raise ValueError("chunk and jobs must be >= 1")
    schedule(schedule_name)  # validates the name
    lines = list(lines)
    report = CensusReport(corpus or _corpus_id(lines), target, schedule_name, seed)
    header = {
        "corpus": report.corpus,
        "target": target,
        "schedule": schedule_name,
        "seed": seed,
        "split_bridges": split_bridges,
    }
    journal = out / JOURNAL if out else None
    done = _read_journal(journal, header) if journal and resume else {}
    if journal:
        out.mkdir(parents=True, exist_ok=True)
        if not done:
            journal.write_text(json.dumps(header) + "\n")

    results: dict[int, tuple[GraphRecord, str | None]] = dict(done)
    tasks: list[_Task] = []
    for ordinal, (lineno, item) in enumerate(load_corpus(lines)):
        if ordinal in done:
            continue
        if isinstance(item, Graph6Error):
            rec = GraphRecord(ordinal, lineno, lines[lineno - 1].strip(), ERROR, note=f"malformed graph6: {item}")
            results[ordinal] = (rec, None)
            continue
        tasks.append(_Task(ordinal, lineno, item, target, schedule_name, seed, split_bridges))

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for batch in _chunks(tasks, chunk):
            outcomes = list(pool.map(_process, batch) if pool else map(_process, batch))
            for rec, drawing in outcomes:
                results[rec.ordinal] = (rec, drawing)
            if journal:
                with journal.open("a") as fh:
                    fh.write(json.dumps({"records": [[r.to_dict(), d] for r, d in outcomes]}) + "\n")
    finally:
        if pool:
            pool.shutdown()

    report.records = [results[k][0] for k in sorted(results)]
    if out:
        with (out / "drawings.jsonl").open("w") as fh:
            for k in sorted(results):
                if results[k][1] is not None:
                    fh.write(results[k][1] + "\n")
        with (out / "records.jsonl").open("w") as fh:
            for r in report.records:
                fh.write(json.dumps(r.to_dict()) + "\n")
        (out / "report.txt").write_text(report.table())
        (out / "summary.json").write_text(json.dumps(report.summary(), indent=2) + "\n")
    return report
