"""Test-only oracles, kept independent of the package's own algorithms."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, permutations, product
from pathlib import Path

import networkx as nx

from crossnum.drawing import Drawing
from crossnum.graph import Graph, parse_graph6

DATA = Path(__file__).parent / "data"


def load_g6(name: str) -> list[Graph]:
    return [parse_graph6(line) for line in (DATA / name).read_text().splitlines() if line.strip()]


@lru_cache(maxsize=None)
def named_table() -> dict[str, str]:
    rows = (line.split("\t") for line in (DATA / "named.tsv").read_text().splitlines() if line)
    return {name: enc for name, enc in rows}


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_planar(n: int, edges) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    return nx.check_planarity(h)[0]


# -- straight-line drawings -------------------------------------------------


def _segment_hit(p, q, r, s) -> float | None:
    """Parameter along ``pq`` where it properly crosses ``rs``."""
    (x1, y1), (x2, y2), (x3, y3), (x4, y4) = p, q, r, s
    den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if abs(den) < 1e-12:
        return None
    t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den
    u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den
    if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
        return t
    return None


def straight_line_drawing(g: Graph, pos) -> Drawing:
    """Crossing record of the straight-line drawing with vertex coordinates ``pos``."""
    hits: dict[int, list[tuple[float, int]]] = {e: [] for e in range(g.m)}
    for e, f in combinations(range(g.m), 2):
        a, b = g.edges[e]
        c, d = g.edges[f]
        if {a, b} & {c, d}:
            continue
        t = _segment_hit(pos[a], pos[b], pos[c], pos[d])
        if t is None:
            continue
        u = _segment_hit(pos[c], pos[d], pos[a], pos[b])
        hits[e].append((t, f))
        hits[f].append((u, e))
    return Drawing.from_orders(g, {e: [f for _, f in sorted(h)] for e, h in hits.items()})


def circle(k: int, radius: float = 1.0, phase: float = 0.0):
    return [(radius * math.cos(phase + 2 * math.pi * i / k), radius * math.sin(phase + 2 * math.pi * i / k)) for i in range(k)]


# -- brute-force crossing number ------------------------------------------


def _planarized_edges(g: Graph, pairs, orders) -> tuple[int, list[tuple[int, int]]]:
    dummy = {p: g.n + i for i, p in enumerate(pairs)}
    edges = []
    for e, (u, v) in enumerate(g.edges):
        chain = [u] + [dummy[tuple(sorted((e, f)))] for f in orders.get(e, ())] + [v]
        edges += list(zip(chain, chain[1:]))
    return g.n + len(pairs), edges


def brute_force_realizable(g: Graph, k: int) -> bool:
    """Does some set of ``k`` independent edge pairs, in some encounter order, planarize?"""
    indep = [(e, f) for e, f in combinations(range(g.m), 2) if not set(g.edges[e]) & set(g.edges[f])]
    for pairs in combinations(indep, k):
        partners: dict[int, list[int]] = {}
        for e, f in pairs:
            partners.setdefault(e, []).append(f)
            partners.setdefault(f, []).append(e)
        keys = sorted(partners)
        for combo in product(*(permutations(partners[e]) for e in keys)):
            n, edges = _planarized_edges(g, pairs, dict(zip(keys, combo)))
            if nx_planar(n, edges):
                return True
    return False


def brute_force_crossing_number(g: Graph, k_max: int) -> int | None:
    for k in range(k_max + 1):
        if brute_force_realizable(g, k):
            return k
    return None


# -- brute-force Kuratowski subdivision search --------------------------------


def _disjoint_paths(adj, pairs, blocked) -> bool:
    """Internally vertex-disjoint paths joining every pair, avoiding ``blocked``."""
    if not pairs:
        return True
    (s, t), rest = pairs[0], pairs[1:]

    def walk(v, used):
        for w in adj[v]:
            if w == t:
                if _disjoint_paths(adj, rest, blocked | used):
                    return True
            elif w not in blocked and w not in used:
                if walk(w, used | {w}):
                    return True
        return False

    return walk(s, frozenset())


def has_kuratowski_subdivision(g: Graph) -> bool:
    adj = [set(a) for a in g.adjacency]
    big = [v for v in range(g.n) if len(adj[v]) >= 3]
    for five in combinations([v for v in big if len(adj[v]) >= 4], 5):
        if _disjoint_paths(adj, list(combinations(five, 2)), frozenset(five)):
            return True
    for six in combinations(big, 6):
        for left in combinations(six[1:], 2):
            a = (six[0], *left)
            b = tuple(v for v in six if v not in a)
            if _disjoint_paths(adj, [(x, y) for x in a for y in b], frozenset(six)):
                return True
    return False
