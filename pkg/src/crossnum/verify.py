"""Independent drawing verification: planarize a crossing list, test planarity.

Nothing here touches the heuristic's internal data structures; a drawing is
rebuilt from its crossing lists alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .drawing import Drawing, DrawingError
from .graph import EdgeRef, Graph, write_graph6
from .planarity import is_planar

__all__ = ["PlanarizedGraph", "VerificationReport", "planarize", "verify_drawing"]


@dataclass(frozen=True)
class PlanarizedGraph:
    """Graph with one degree-4 dummy vertex per crossing.

    ``dummies[k]`` describes vertex ``original.n + k`` as
    ``(e, f, i, j)``: edges ``e < f`` (indices) cross, at position ``i`` of
    ``e``'s order and ``j`` of ``f``'s.  ``segments`` maps each edge of
    :attr:`graph` to ``(original edge index, segment index)``.
    """

    original: Graph
    graph: Graph
    dummies: tuple[tuple[int, int, int, int], ...]
    segments: dict[EdgeRef, tuple[int, int]]

    def straighten(self) -> Graph:
        """Undo planarization by walking each original edge's segment chain."""
        n = self.original.n
        chains: dict[int, list[tuple[int, EdgeRef]]] = {}
        for ref, (e, k) in self.segments.items():
            chains.setdefault(e, []).append((k, ref))
        edges = []
        for e, segs in sorted(chains.items()):
            segs.sort()
            u, v = self.original.edges[e]
            at = u
            for _, ref in segs:
                at = ref.other(at)
            if at != v or any(x >= n for x in (u, v)):
                raise DrawingError(f"segment chain of edge {self.original.edges[e]} is broken")
            edges.append((u, v))
        return Graph(n, edges)


def planarize(g: Graph, d: Drawing) -> PlanarizedGraph:
    d.check()
    n = g.n
    dummy_of: dict[tuple[int, int], int] = {}
    dummies = []
    for e, f in d.pairs():
        dummy_of[(e, f)] = n + len(dummies)
        dummies.append((e, f, d.orders[e].index(f), d.orders[f].index(e)))
    edges = []
    segments: dict[EdgeRef, tuple[int, int]] = {}
    for e, (u, v) in enumerate(g.edges):
        chain = [u, *(dummy_of[(min(e, f), max(e, f))] for f in d.orders[e]), v]
        for k, (a, b) in enumerate(zip(chain, chain[1:])):
            ref = EdgeRef.of(a, b)
            if ref in segments:
                raise DrawingError(f"planarization would double segment {ref}")
            segments[ref] = (e, k)
            edges.append(ref)
    pg = Graph(n + len(dummies), edges)
    return PlanarizedGraph(g, pg, tuple(dummies), segments)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    crossings: int
    cause: str | None = None
    graph6: str = ""

    def to_record(self) -> dict:
        return {"graph6": self.graph6, "crossings": self.crossings, "verdict": self.ok, "cause": self.cause}


def verify_drawing(g: Graph, d: Drawing) -> VerificationReport:
    """Valid iff the crossing record planarizes and the result is planar.

    A valid report certifies ``cr(g) <= crossings``.
    """
    g6 = write_graph6(g)
    if d.graph != g:
        return VerificationReport(False, d.crossing_count, "drawing belongs to a different graph", g6)
    try:
        pg = planarize(g, d)
    except DrawingError as exc:
        return VerificationReport(False, d.crossing_count, f"structurally invalid: {exc}", g6)
    if not is_planar(pg.graph):
        return VerificationReport(False, d.crossing_count, "planarized graph is not planar", g6)
    return VerificationReport(True, d.crossing_count, None, g6)
