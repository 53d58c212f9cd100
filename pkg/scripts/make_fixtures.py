"""Regenerate the graph6 fixtures under tests/data.

Needs networkx (dev only).  Output is deterministic for a given networkx
version; the committed files are the reference, not this script.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

import networkx as nx

from crossnum.graph import Graph, girth, is_cubic, write_graph6
from crossnum.named import NAMED_GRAPHS
from crossnum.reductions import eliminate_girth3

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
CUBIC_COUNTS = {10: 19, 12: 85}


def to_graph(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), h.edges())


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class IsoSet:
    def __init__(self) -> None:
        self.buckets: dict[str, list[nx.Graph]] = {}

    def add(self, h: nx.Graph) -> bool:
        key = nx.weisfeiler_lehman_graph_hash(h, iterations=4)
        bucket = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, o) for o in bucket):
            return False
        bucket.append(h)
        return True


def connected_cubic(n: int, count: int, rng: random.Random) -> list[Graph]:
    seen = IsoSet()
    found = []
    while len(found) < count:
        h = nx.random_regular_graph(3, n, seed=rng.randrange(2**32))
        if nx.is_connected(h) and seen.add(h):
            found.append(to_graph(h))
    return sorted(found, key=write_graph6)


def girth3_corpus(count: int, rng: random.Random) -> list[Graph]:
    seen = IsoSet()
    found = []
    while len(found) < count:
        n = rng.choice((8, 10, 12, 14))
        h = nx.random_regular_graph(3, n, seed=rng.randrange(2**32))
        if not nx.is_connected(h):
            continue
        g = to_graph(h)
        if girth(g) != 3:
            continue
        _, trace = eliminate_girth3(g)
        if trace.steps and seen.add(h):
            found.append(g)
    return sorted(found, key=lambda g: (g.n, write_graph6(g)))


def subdivide(g: Graph, picks: list[int]) -> tuple[Graph, list[int]]:
    """Subdivide the edges ``picks`` of ``g``; new degree-2 vertices are labelled from ``g.n``."""
    edges = [x for i, x in enumerate(g.edges) if i not in picks]
    ports = []
    for k, e in enumerate(picks):
        u, v = g.edges[e]
        w = g.n + k
        edges += [(u, w), (w, v)]
        ports.append(w)
    return Graph(g.n + len(picks), edges), ports


def bridge_chain(blocks: list[tuple[Graph, int]]) -> Graph:
    """Join blocks in a path by bridges between subdivision vertices."""
    edges: list[tuple[int, int]] = []
    offset = 0
    prev_port = None
    for i, (g, e) in enumerate(blocks):
        inner = 0 < i < len(blocks) - 1
        h, ports = subdivide(g, [e, (e + 1) % g.m] if inner else [e])
        edges += [(x + offset, y + offset) for x, y in h.edges]
        if prev_port is not None:
            edges.append((prev_port, ports[0] + offset))
        prev_port = ports[-1] + offset
        offset += h.n
    return Graph(offset, edges)


def bridged_corpus(rng: random.Random, cubic10: list[Graph]) -> list[Graph]:
    named = {k: NAMED_GRAPHS[k]() for k in ("K4", "K3,3", "prism", "cube", "petersen")}
    specs = [
        ["K4", "K4"],
        ["K4", "K3,3"],
        ["K3,3", "K3,3"],
        ["prism", "cube"],
        ["K3,3", "petersen"],
        ["petersen", "petersen"],
        ["cube", "petersen"],
        ["K4", "K3,3", "K4"],
        ["K3,3", "K4", "K3,3"],
        ["K4", "petersen", "K4"],
    ]
    out = []
    for spec in specs:
        out.append(bridge_chain([(named[k], rng.randrange(named[k].m)) for k in spec]))
    for g in rng.sample([g for g in cubic10 if not nx.has_bridges(to_nx(g))], 4):
        other = named[rng.choice(("K4", "K3,3"))]
        out.append(bridge_chain([(g, rng.randrange(g.m)), (other, rng.randrange(other.m))]))
    for g in out:
        assert is_cubic(g) and nx.has_bridges(to_nx(g))
    return out


def main() -> int:
    rng = random.Random(20240601)
    DATA.mkdir(parents=True, exist_ok=True)
    cubic = {}
    for n, count in CUBIC_COUNTS.items():
        cubic[n] = connected_cubic(n, count, rng)
        (DATA / f"cubic{n}.g6").write_text("".join(write_graph6(g) + "\n" for g in cubic[n]))
    corpus = girth3_corpus(60, rng)
    (DATA / "girth3.g6").write_text("".join(write_graph6(g) + "\n" for g in corpus))
    bridged = bridged_corpus(rng, cubic[10])
    (DATA / "bridged.g6").write_text("".join(write_graph6(g) + "\n" for g in bridged))
    rows = []
    for name, make in NAMED_GRAPHS.items():
        enc = nx.to_graph6_bytes(to_nx(make()), header=False).decode().strip()
        rows.append(f"{name}\t{enc}\n")
    (DATA / "named.tsv").write_text("".join(rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())
