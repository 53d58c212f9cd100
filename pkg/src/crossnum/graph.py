"""Simple undirected graphs, the graph6 codec and structural queries."""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "EdgeRef",
    "Graph",
    "Graph6Error",
    "bridges",
    "components",
    "degree_sequence",
    "diamonds",
    "girth",
    "is_connected",
    "is_cubic",
    "parse_graph6",
    "read_graph6",
    "triangles",
    "write_graph6",
]

GRAPH6_HEADER = ">>graph6<<"
_MAX_SMALL_N = 62
_MAX_MEDIUM_N = 258047
_MAX_LARGE_N = 68719476735


class EdgeRef(NamedTuple):
    """Canonical edge identity: ``u < v``."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> EdgeRef:
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{self.u}-{self.v}"

    @classmethod
    def parse(cls, text: str) -> EdgeRef:
        a, _, b = text.partition("-")
        if not _:
            raise ValueError(f"bad edge key {text!r}")
        return cls.of(int(a), int(b))

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x} is not an endpoint of {self}")

    def touches(self, other: EdgeRef) -> bool:
        return self.u in other or self.v in other


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are kept as a sorted tuple of :class:`EdgeRef`; the position of an
    edge in :attr:`edges` is its *index*, used throughout as a stable id.
    """

    __slots__ = ("_n", "_edges", "_adj", "_index", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon: set[EdgeRef] = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for n={n}")
            e = EdgeRef.of(a, b)
            if e in canon:
                raise ValueError(f"parallel edge {e}")
            canon.add(e)
        self._n = n
        self._edges = tuple(sorted(canon))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._index = {e: i for i, e in enumerate(self._edges)}
        self._hash: int | None = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[EdgeRef, ...]:
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return EdgeRef.of(a, b) in self._index

    def edge_index(self, a: int, b: int) -> int:
        """Index of edge ``{a, b}``; raises ``KeyError`` if absent."""
        return self._index[EdgeRef.of(a, b)]

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled in increasing vertex order."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        return Graph(
            len(keep),
            ((pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos),
        )

    def with_edges(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = ()) -> Graph:
        gone = {EdgeRef.of(a, b) for a, b in remove}
        kept = [e for e in self._edges if e not in gone]
        return Graph(self._n, [*kept, *add])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


class Graph6Error(ValueError):
    """Malformed graph6 record; ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty record", 0)
    for i, c in enumerate(data[:8]):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte 0x{c:02x} outside graph6 range 63..126 in length prefix", i)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte length prefix", len(data))
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        if n <= _MAX_MEDIUM_N:
            raise Graph6Error(f"non-minimal length prefix for n={n}", 0)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte length prefix", len(data))
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    if n <= _MAX_SMALL_N:
        raise Graph6Error(f"non-minimal length prefix for n={n}", 0)
    return n, 4


def parse_graph6(line: str | bytes) -> Graph:
    """Decode one graph6 record (optional ``>>graph6<<`` header, trailing newline ok)."""
    data = line.encode("ascii", errors="replace") if isinstance(line, str) else bytes(line)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    try:
        n, start = _decode_size(data)
    except Graph6Error as exc:
        raise Graph6Error(str(exc).rsplit(" (byte", 1)[0], exc.offset + base) from None

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = data[start:]
    if len(payload) != nbytes:
        raise Graph6Error(
            f"payload has {len(payload)} bytes, expected {nbytes} for n={n}",
            base + start + min(len(payload), nbytes),
        )
    for i, c in enumerate(payload):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte 0x{c:02x} outside graph6 range 63..126 in payload", base + start + i)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = payload[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbytes:
        pad = nbytes * 6 - nbits
        if (payload[-1] - 63) & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", base + start + nbytes - 1)
    return Graph(n, edges)


def write_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no newline)."""
    n = g.n
    if n <= _MAX_SMALL_N:
        out = [chr(n + 63)]
    elif n <= _MAX_MEDIUM_N:
        out = ["~"] + [chr(((n >> s) & 63) + 63) for s in (12, 6, 0)]
    elif n <= _MAX_LARGE_N:
        out = ["~~"] + [chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0)]
    else:
        raise ValueError(f"graph6 cannot encode n={n}")

    nbits = n * (n - 1) // 2
    bits = bytearray((nbits + 5) // 6 * 6)
    for u, v in g.edges:
        bits[v * (v - 1) // 2 + u] = 1
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    text = "".join(out)
    return GRAPH6_HEADER + text if header else text


def read_graph6(lines: Iterable[str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Yield ``(line_number, graph_or_error)`` for each non-blank line.

    Decoding errors are yielded, not raised, so a batch keeps going past a
    bad record.
    """
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            yield lineno, parse_graph6(text)
        except Graph6Error as exc:
            yield lineno, exc


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------


def degree_sequence(g: Graph) -> list[int]:
    return [len(a) for a in g.adjacency]


def is_cubic(g: Graph) -> bool:
    return g.n > 0 and all(len(a) == 3 for a in g.adjacency)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.

    BFS from every vertex; the first non-tree edge met closes a cycle of
    length ``d(x) + d(y) + 1`` through the root or shorter.
    """
    best = math.inf
    adj = g.adjacency
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles as sorted triples, in lexicographic order."""
    adj = [set(a) for a in g.adjacency]
    out = []
    for u, v in g.edges:
        for w in adj[u] & adj[v]:
            if w > v:
                out.append((u, v, w))
    return sorted(out)


def diamonds(g: Graph) -> list[tuple[int, int, int, int]]:
    """Vertex sets inducing K4 minus an edge.

    Each is reported as ``(s, t, a, b)``: ``s < t`` is the shared edge of the
    two triangles, ``a < b`` the non-adjacent tips.
    """
    adj = [set(a) for a in g.adjacency]
    out = []
    for s, t in g.edges:
        common = sorted(adj[s] & adj[t])
        for i, a in enumerate(common):
            for b in common[i + 1 :]:
                if b not in adj[a]:
                    out.append((s, t, a, b))
    return out


def bridges(g: Graph) -> list[EdgeRef]:
    """Cut edges of a connected graph, in canonical edge order."""
    if not is_connected(g):
        raise ValueError("bridges() requires a connected graph")
    n = g.n
    if n == 0:
        return []
    disc = [-1] * n
    low = [0] * n
    found: list[EdgeRef] = []
    timer = 0
    disc[0] = low[0] = timer
    # frames: (vertex, parent, neighbour cursor)
    stack = [(0, -1, 0)]
    while stack:
        v, p, i = stack[-1]
        nbrs = g.adjacency[v]
        if i < len(nbrs):
            stack[-1] = (v, p, i + 1)
            w = nbrs[i]
            if w == p:
                continue
            if disc[w] == -1:
                timer += 1
                disc[w] = low[w] = timer
                stack.append((w, v, 0))
            else:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if p != -1:
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    found.append(EdgeRef.of(p, v))
    return sorted(found)
