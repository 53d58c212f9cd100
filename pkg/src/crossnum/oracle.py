"""Exact crossing numbers of small graphs.

The search is over good drawings only (no self crossings, no crossings
between adjacent edges, each pair crossing at most once).  Some
crossing-minimal drawing of every graph is good: a self crossing or a double
crossing can be uncrossed by swapping arcs, and a crossing between edges that
share an endpoint can be removed the same way, each without adding new
crossings.

Search strategy.  A node of the search is a partial crossing record: a set of
crossing pairs with their positions along each edge.  Planarize it; if the
result is planar we have a drawing.  Otherwise take a Kuratowski subdivision
``W`` of the planarization.  Any completion of the record draws ``W`` with
crossings, and those crossings are between segments of ``W``, so branching
on "the next crossing is between segment ``s`` and segment ``t`` of ``W``"
(independent edges, pair not yet used) loses no solution.  Depths are tried
in increasing order from the Euler lower bound, so the first drawing found
is optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .drawing import Drawing
from .graph import EdgeRef, Graph, girth
from .planarity import is_planar_adjacency, kuratowski_edges
from .verify import planarize

__all__ = ["CrossingNumberResult", "euler_lower_bound", "exact_crossing_number"]

DEFAULT_MAX_TESTS = 10**8


def euler_lower_bound(g: Graph) -> int:
    """``max(0, m - 3n + 6)``, sharpened to ``m - 2n + 4`` for triangle-free graphs."""
    if g.n < 3:
        return 0
    bound = max(0, g.m - 3 * g.n + 6)
    if girth(g) >= 4:
        bound = max(bound, g.m - 2 * g.n + 4)
    return bound


@dataclass(frozen=True)
class CrossingNumberResult:
    """Outcome of :func:`exact_crossing_number`.

    ``value`` is ``None`` when the crossing number exceeds ``k_max`` or when
    the planarity-test budget ran out first (``budget_exhausted``); it is
    never a guess.
    """

    value: int | None
    k_max: int
    budget_exhausted: bool
    planarity_tests: int
    drawing: Drawing | None = None

    @property
    def exceeds(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        if self.budget_exhausted:
            return f"exceeds k_max={self.k_max} (budget exhausted)"
        return f"exceeds k_max={self.k_max}"


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, max_tests: int) -> None:
        self.g = g
        self.max_tests = max_tests
        self.tests = 0
        self.failed: dict[tuple[tuple[int, ...], ...], int] = {}
        self.independent = [
            [not a.touches(b) for b in g.edges] for a in g.edges
        ]

    def planar(self, n: int, adj: Sequence[Sequence[int]]) -> bool:
        if self.tests >= self.max_tests:
            raise _BudgetExhausted
        self.tests += 1
        return is_planar_adjacency(n, adj)

    def packing(self, h: Graph, first: list[tuple[int, int]], limit: int) -> tuple[int, list[list[tuple[int, int]]]]:
        """Edge-disjoint Kuratowski subgraphs found greedily, counting up to ``limit``.

        Each needs a crossing between two of its own edges, so the count is
        a lower bound on the crossings still to come.  Returns the count and
        the subgraphs actually extracted.
        """
        found = [first]
        rest = set(h.edges) - {EdgeRef.of(a, b) for a, b in first}
        count = 1
        while count < limit:
            edges = sorted(rest)
            adj: list[list[int]] = [[] for _ in range(h.n)]
            for a, b in edges:
                adj[a].append(b)
                adj[b].append(a)
            if self.planar(h.n, adj):
                break
            count += 1
            if count >= limit:
                break
            w = kuratowski_edges(h.n, edges, self.planar)
            found.append(w)
            rest -= {EdgeRef.of(a, b) for a, b in w}
        return count, found

    def branches(self, pg, orders, witness) -> list[tuple[int, int, int, int]]:
        h = pg.graph
        segs = sorted({pg.segments[h.edges[h.edge_index(a, b)]] for a, b in witness})
        used = {(min(e, f), max(e, f)) for e, o in enumerate(orders) for f in o}
        return [
            (e, i, f, j)
            for (e, i), (f, j) in combinations(segs, 2)
            if e != f and self.independent[e][f] and (min(e, f), max(e, f)) not in used
        ]

    def run(self, orders: tuple[tuple[int, ...], ...], budget: int) -> Drawing | None:
        d = Drawing(self.g, orders)
        pg = planarize(self.g, d)
        h = pg.graph
        if self.planar(h.n, h.adjacency):
            return d
        if budget == 0 or self.failed.get(orders, -1) >= budget:
            return None
        if h.m - 3 * h.n + 6 > budget:
            self.failed[orders] = budget
            return None
        first = kuratowski_edges(h.n, [tuple(e) for e in h.edges], self.planar)
        count, witnesses = self.packing(h, first, budget + 1)
        if count > budget:
            self.failed[orders] = budget
            return None
        # any witness will do; the one allowing the fewest crossings branches least
        options = min((self.branches(pg, orders, w) for w in witnesses), key=len)
        for e, i, f, j in options:
            nxt = list(orders)
            nxt[e] = orders[e][:i] + (f,) + orders[e][i:]
            nxt[f] = orders[f][:j] + (e,) + orders[f][j:]
            found = self.run(tuple(nxt), budget - 1)
            if found is not None:
                return found
        self.failed[orders] = budget
        return None


def exact_crossing_number(g: Graph, k_max: int, *, max_tests: int = DEFAULT_MAX_TESTS) -> CrossingNumberResult:
    """Smallest ``k <= k_max`` admitting a good drawing with ``k`` crossings.

    Practical for graphs with up to roughly two dozen edges and ``k_max``
    around 4; ``max_tests`` caps the number of planarity tests so a hard
    instance reports exhaustion instead of running forever.
    """
    search = _Search(g, max_tests)
    start = euler_lower_bound(g)
    empty = tuple(() for _ in range(g.m))
    try:
        for k in range(start, k_max + 1):
            found = search.run(empty, k)
            if found is not None:
                return CrossingNumberResult(found.crossing_count, k_max, False, search.tests, found)
    except _BudgetExhausted:
        return CrossingNumberResult(None, k_max, True, search.tests)
    return CrossingNumberResult(None, k_max, False, search.tests)
