"""Combinatorial drawings: who crosses whom, and in which order.

A :class:`Drawing` stores, for every edge of the host graph, the partner
edges it crosses in the order met when travelling from its lower-numbered
endpoint.  The on-disk form is one JSON object per line::

    {"graph6": "EFz_", "crossings": 1, "edges": {"0-4": ["1-3"], "1-3": ["0-4"]}}

Only crossed edges appear under ``"edges"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import EdgeRef, Graph, parse_graph6, write_graph6

__all__ = ["Drawing", "DrawingError", "dump_drawings", "load_drawings"]


class DrawingError(ValueError):
    """A crossing record that cannot describe a good drawing."""

    def __init__(self, message: str, pair: tuple[EdgeRef, EdgeRef] | None = None) -> None:
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class Drawing:
    graph: Graph
    orders: tuple[tuple[int, ...], ...]

    @classmethod
    def empty(cls, g: Graph) -> Drawing:
        return cls(g, tuple(() for _ in range(g.m)))

    @classmethod
    def from_orders(cls, g: Graph, orders: Mapping[int, Sequence[int]]) -> Drawing:
        return cls(g, tuple(tuple(orders.get(i, ())) for i in range(g.m)))

    @property
    def crossing_count(self) -> int:
        return sum(len(o) for o in self.orders) // 2

    def pairs(self) -> list[tuple[int, int]]:
        """Crossing pairs as sorted edge-index tuples."""
        return sorted({(min(e, f), max(e, f)) for e, o in enumerate(self.orders) for f in o})

    def check(self) -> None:
        """Raise :class:`DrawingError` unless the record is a consistent good drawing."""
        g = self.graph
        if len(self.orders) != g.m:
            raise DrawingError(f"expected {g.m} crossing lists, got {len(self.orders)}")
        for e, order in enumerate(self.orders):
            ee = g.edges[e]
            seen = set()
            for f in order:
                if not 0 <= f < g.m:
                    raise DrawingError(f"edge {ee} crosses unknown edge index {f}")
                ff = g.edges[f]
                if f == e:
                    raise DrawingError(f"edge {ee} crosses itself", (ee, ee))
                if ee.touches(ff):
                    raise DrawingError(f"adjacent edges {ee} and {ff} cross", (ee, ff))
                if f in seen:
                    raise DrawingError(f"edges {ee} and {ff} cross more than once", (ee, ff))
                seen.add(f)
                if e not in self.orders[f]:
                    raise DrawingError(f"crossing {ee} x {ff} is recorded on one edge only", (ee, ff))

    # -- serialisation ----------------------------------------------------

    def to_record(self) -> dict:
        g = self.graph
        return {
            "graph6": write_graph6(g),
            "crossings": self.crossing_count,
            "edges": {str(g.edges[e]): [str(g.edges[f]) for f in o] for e, o in enumerate(self.orders) if o},
        }

    @classmethod
    def from_record(cls, record: Mapping) -> Drawing:
        try:
            g = parse_graph6(record["graph6"])
            raw = record.get("edges", {})
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise DrawingError(f"malformed drawing record: {exc}") from None
        orders: dict[int, list[int]] = {}
        try:
            for key, partners in raw.items():
                e = g.edge_index(*EdgeRef.parse(key))
                orders[e] = [g.edge_index(*EdgeRef.parse(p)) for p in partners]
        except (KeyError, ValueError, AttributeError, TypeError) as exc:
            raise DrawingError(f"record names an edge not in the graph: {exc}") from None
        d = cls.from_orders(g, orders)
        stated = record.get("crossings")
        if stated is not None and stated != d.crossing_count:
            raise DrawingError(f"stated crossing count {stated} != {d.crossing_count} listed")
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def loads(cls, line: str) -> Drawing:
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DrawingError(f"not a JSON record: {exc}") from None
        if not isinstance(record, dict):
            raise DrawingError("drawing record must be a JSON object")
        return cls.from_record(record)


def dump_drawings(drawings: Iterable[Drawing], fh) -> None:
    for d in drawings:
        fh.write(d.dumps() + "\n")


def load_drawings(lines: Iterable[str]) -> Iterator[tuple[int, Drawing | DrawingError]]:
    """Yield ``(line_number, drawing_or_error)``; malformed lines don't stop the stream."""
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield lineno, Drawing.loads(line)
        except DrawingError as exc:
            yield lineno, exc
