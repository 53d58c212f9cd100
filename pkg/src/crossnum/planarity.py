"""Planarity testing, planar embeddings and Kuratowski witnesses.

The test is the left-right (de Fraysseix-Rosenstiehl) criterion in Brandes'
formulation: one DFS orients the graph and computes lowpoints, a second DFS
maintains a stack of conflict pairs, and on success the side assignments are
resolved into a rotation system.  All three passes are iterative, so there is
no recursion limit on graph size.

Rotation lists are cyclic neighbour orders.  The face to the left of the dart
``u -> v`` continues with ``v -> w`` where ``w`` is the neighbour preceding
``u`` in ``rotation[v]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import EdgeRef, Graph, components

__all__ = [
    "KuratowskiWitness",
    "PlanarityError",
    "RotationSystem",
    "is_planar",
    "is_planar_adjacency",
    "kuratowski_edges",
    "kuratowski_witness",
    "planar_embedding",
    "trace_faces",
]

Edge = tuple[int, int]


class PlanarityError(ValueError):
    """Operation needs a planar (or non-planar) graph and got the other kind."""


class _Interval:
    __slots__ = ("low", "high")

    def __init__(self, low: Edge | None = None, high: Edge | None = None) -> None:
        self.low = low
        self.high = high

    def empty(self) -> bool:
        return self.low is None and self.high is None

    def copy(self) -> _Interval:
        return _Interval(self.low, self.high)


class _ConflictPair:
    __slots__ = ("left", "right")

    def __init__(self, left: _Interval | None = None, right: _Interval | None = None) -> None:
        self.left = left if left is not None else _Interval()
        self.right = right if right is not None else _Interval()

    def swap(self) -> None:
        self.left, self.right = self.right, self.left


class _LRPlanarity:
    def __init__(self, n: int, adj: Sequence[Sequence[int]]) -> None:
        self.n = n
        self.adj = adj
        self.height: list[int | None] = [None] * n
        self.parent_edge: list[Edge | None] = [None] * n
        self.lowpt: dict[Edge, int] = {}
        self.lowpt2: dict[Edge, int] = {}
        self.nesting_depth: dict[Edge, int] = {}
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.oriented: set[Edge] = set()
        self.roots: list[int] = []
        self.S: list[_ConflictPair] = []
        self.stack_bottom: dict[Edge, _ConflictPair | None] = {}
        self.lowpt_edge: dict[Edge, Edge] = {}
        self.ref: dict[Edge | None, Edge | None] = {}
        self.side: dict[Edge | None, int] = {}
        self.ordered: list[list[int]] = []
        self._orient_ind = [0] * n

    # -- phase 1 ----------------------------------------------------------

    def orient(self, root: int) -> None:
        height, lowpt, lowpt2 = self.height, self.lowpt, self.lowpt2
        ind = self._orient_ind
        skip: set[Edge] = set()
        stack = [root]
        while stack:
            v = stack.pop()
            e = self.parent_edge[v]
            nbrs = self.adj[v]
            while ind[v] < len(nbrs):
                w = nbrs[ind[v]]
                vw = (v, w)
                if vw not in skip:
                    if vw in self.oriented or (w, v) in self.oriented:
                        ind[v] += 1
                        continue
                    self.oriented.add(vw)
                    self.out[v].append(w)
                    lowpt[vw] = lowpt2[vw] = height[v]  # type: ignore[assignment]
                    if height[w] is None:
                        self.parent_edge[w] = vw
                        height[w] = height[v] + 1  # type: ignore[operator]
                        stack.append(v)
                        stack.append(w)
                        skip.add(vw)
                        break
                    lowpt[vw] = height[w]  # type: ignore[assignment]
                nd = 2 * lowpt[vw]
                if lowpt2[vw] < height[v]:  # type: ignore[operator]
                    nd += 1
                self.nesting_depth[vw] = nd
                if e is not None:
                    if lowpt[vw] < lowpt[e]:
                        lowpt2[e] = min(lowpt[e], lowpt2[vw])
                        lowpt[e] = lowpt[vw]
                    elif lowpt[vw] > lowpt[e]:
                        lowpt2[e] = min(lowpt2[e], lowpt[vw])
                    else:
                        lowpt2[e] = min(lowpt2[e], lowpt2[vw])
                ind[v] += 1

    # -- phase 2 ----------------------------------------------------------

    def _conflicting(self, iv: _Interval, b: Edge) -> bool:
        return not iv.empty() and self.lowpt[iv.high] > self.lowpt[b]  # type: ignore[index]

    def _lowest(self, p: _ConflictPair) -> int:
        if p.left.empty():
            return self.lowpt[p.right.low]  # type: ignore[index]
        if p.right.empty():
            return self.lowpt[p.left.low]  # type: ignore[index]
        return min(self.lowpt[p.left.low], self.lowpt[p.right.low])  # type: ignore[index]

    def test(self, root: int) -> bool:
        ordered = self.ordered
        ind = [0] * self.n
        skip: set[Edge] = set()
        stack = [root]
        S = self.S
        while stack:
            v = stack.pop()
            e = self.parent_edge[v]
            descended = False
            nbrs = ordered[v]
            while ind[v] < len(nbrs):
                w = nbrs[ind[v]]
                ei = (v, w)
                if ei not in skip:
                    self.stack_bottom[ei] = S[-1] if S else None
                    if ei == self.parent_edge[w]:
                        stack.append(v)
                        stack.append(w)
                        skip.add(ei)
                        descended = True
                        break
                    self.lowpt_edge[ei] = ei
                    S.append(_ConflictPair(right=_Interval(ei, ei)))
                if self.lowpt[ei] < self.height[v]:  # type: ignore[operator]
                    if w == nbrs[0]:
                        self.lowpt_edge[e] = self.lowpt_edge[ei]  # type: ignore[index]
                    elif not self._add_constraints(ei, e):  # type: ignore[arg-type]
                        return False
                ind[v] += 1
            if not descended and e is not None:
                self._remove_back_edges(e)
        return True

    def _add_constraints(self, ei: Edge, e: Edge) -> bool:
        S, lowpt, ref = self.S, self.lowpt, self.ref
        P = _ConflictPair()
        while True:
            Q = S.pop()
            if not Q.left.empty():
                Q.swap()
            if not Q.left.empty():
                return False
            if lowpt[Q.right.low] > lowpt[e]:  # type: ignore[index]
                if P.right.empty():
                    P.right = Q.right.copy()
                else:
                    ref[P.right.low] = Q.right.high
                P.right.low = Q.right.low
            else:
                ref[Q.right.low] = self.lowpt_edge[e]
            if (S[-1] if S else None) is self.stack_bottom[ei]:
                break
        while S and (self._conflicting(S[-1].left, ei) or self._conflicting(S[-1].right, ei)):
            Q = S.pop()
            if self._conflicting(Q.right, ei):
                Q.swap()
            if self._conflicting(Q.right, ei):
                return False
            ref[P.right.low] = Q.right.high
            if Q.right.low is not None:
                P.right.low = Q.right.low
            if P.left.empty():
                P.left = Q.left.copy()
            else:
                ref[P.left.low] = Q.left.high
            P.left.low = Q.left.low
        if not (P.left.empty() and P.right.empty()):
            S.append(P)
        return True

    def _remove_back_edges(self, e: Edge) -> None:
        S, ref, side = self.S, self.ref, self.side
        u = e[0]
        hu = self.height[u]
        while S and self._lowest(S[-1]) == hu:
            P = S.pop()
            if P.left.low is not None:
                side[P.left.low] = -1
        if S:
            P = S.pop()
            while P.left.high is not None and P.left.high[1] == u:
                P.left.high = ref.get(P.left.high)
            if P.left.high is None and P.left.low is not None:
                ref[P.left.low] = P.right.low
                side[P.left.low] = -1
                P.left.low = None
            while P.right.high is not None and P.right.high[1] == u:
                P.right.high = ref.get(P.right.high)
            if P.right.high is None and P.right.low is not None:
                ref[P.right.low] = P.left.low
                side[P.right.low] = -1
                P.right.low = None
            S.append(P)
        if self.lowpt[e] < hu:  # type: ignore[operator]
            top = S[-1]
            hl, hr = top.left.high, top.right.high
            if hl is not None and (hr is None or self.lowpt[hl] > self.lowpt[hr]):
                ref[e] = hl
            else:
                ref[e] = hr

    # -- phase 3 ----------------------------------------------------------

    def _sign(self, e: Edge) -> int:
        chain = [e]
        while self.ref.get(chain[-1]) is not None:
            chain.append(self.ref[chain[-1]])  # type: ignore[arg-type]
        for i in range(len(chain) - 2, -1, -1):
            self.side[chain[i]] = self.side.get(chain[i], 1) * self.side.get(chain[i + 1], 1)
            self.ref[chain[i]] = None
        return self.side.get(e, 1)

    def run(self, embed: bool) -> list[list[int]] | None:
        n = self.n
        m = sum(len(a) for a in self.adj) // 2
        if n > 2 and m > 3 * n - 6:
            return None
        for v in range(n):
            if self.height[v] is None:
                self.height[v] = 0
                self.roots.append(v)
                self.orient(v)
        nd = self.nesting_depth
        self.ordered = [sorted(self.out[v], key=lambda w, v=v: nd[(v, w)]) for v in range(n)]
        for r in self.roots:
            if not self.test(r):
                return None
        if not embed:
            return []
        for v in range(n):
            for w in self.out[v]:
                nd[(v, w)] *= self._sign((v, w))
        ordered = [sorted(self.out[v], key=lambda w, v=v: nd[(v, w)]) for v in range(n)]
        rot = [list(o) for o in ordered]
        left_ref = [-1] * n
        right_ref = [-1] * n
        ind = [0] * n
        for r in self.roots:
            stack = [r]
            while stack:
                v = stack.pop()
                while ind[v] < len(ordered[v]):
                    w = ordered[v][ind[v]]
                    ind[v] += 1
                    ei = (v, w)
                    if ei == self.parent_edge[w]:
                        rot[w].insert(0, v)
                        left_ref[v] = right_ref[v] = w
                        stack.append(v)
                        stack.append(w)
                        break
                    if self.side.get(ei, 1) == 1:
                        rw = rot[w]
                        rw.insert(rw.index(right_ref[w]) + 1, v)
                    else:
                        rw = rot[w]
                        rw.insert(rw.index(left_ref[w]), v)
                        left_ref[w] = v
        return rot


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def is_planar_adjacency(n: int, adj: Sequence[Sequence[int]]) -> bool:
    """Planarity of a simple graph given as adjacency lists on ``0..n-1``."""
    return _LRPlanarity(n, adj).run(embed=False) is not None


def is_planar(g: Graph) -> bool:
    """True iff ``g`` admits a crossing-free drawing in the plane."""
    return is_planar_adjacency(g.n, g.adjacency)


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


def trace_faces(rotation: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    """Faces of a rotation system as lists of darts, in discovery order."""
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                rb = rotation[b]
                a, b = b, rb[pos[b][a] - 1]
            faces.append(face)
    return faces


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of neighbours around each vertex."""

    rotation: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def faces(self) -> list[list[tuple[int, int]]]:
        return trace_faces(self.rotation)

    def face_count(self) -> int:
        """Faces of the plane drawing; components share the unbounded face."""
        traced = len(self.faces())
        isolated = sum(1 for r in self.rotation if not r)
        comps = self._component_count()
        return traced + isolated - comps + 1 if self.n else 1

    def _component_count(self) -> int:
        g = Graph(self.n, {(min(u, v), max(u, v)) for u, r in enumerate(self.rotation) for v in r})
        return len(components(g))

    def is_planar_embedding(self) -> bool:
        """Euler check: ``V - E + F = 1 + C`` with ``F`` counted in the plane."""
        if not self._consistent():
            return False
        return self.n - self.m + self.face_count() == 1 + self._component_count()

    def _consistent(self) -> bool:
        for u, r in enumerate(self.rotation):
            if len(set(r)) != len(r):
                return False
            for v in r:
                if u not in self.rotation[v]:
                    return False
        return True


def planar_embedding(g: Graph) -> RotationSystem:
    """A combinatorial planar embedding of ``g``; raises if ``g`` is non-planar."""
    rot = _LRPlanarity(g.n, g.adjacency).run(embed=True)
    if rot is None:
        raise PlanarityError("graph is not planar")
    return RotationSystem(tuple(tuple(r) for r in rot))


def embed_adjacency(n: int, adj: Sequence[Sequence[int]]) -> list[list[int]] | None:
    """Rotation lists for a planar adjacency structure, ``None`` if non-planar."""
    return _LRPlanarity(n, adj).run(embed=True)


# ---------------------------------------------------------------------------
# Kuratowski subgraphs
# ---------------------------------------------------------------------------


def kuratowski_edges(
    n: int,
    edges: Sequence[tuple[int, int]],
    planar_test: Callable[[int, Sequence[Sequence[int]]], bool] = is_planar_adjacency,
) -> list[tuple[int, int]]:
    """An edge-minimal non-planar subset of ``edges`` (a K5 or K3,3 subdivision).

    Deletion search in halving chunks: a chunk is dropped whenever the rest
    stays non-planar.  The closing single-edge pass makes the result minimal,
    because a subgraph of a planar graph is planar.
    """
    keep = list(edges)
    if planar_test(n, _adjacency(n, keep)):
        raise PlanarityError("graph is planar")
    chunk = max(1, len(keep) // 2)
    while True:
        i = 0
        while i < len(keep):
            trial = keep[:i] + keep[i + chunk :]
            if not planar_test(n, _adjacency(n, trial)):
                keep = trial
            else:
                i += chunk
        if chunk == 1:
            return keep
        chunk = max(1, chunk // 2)


@dataclass(frozen=True)
class KuratowskiWitness:
    """Subdivision of K5 or K3,3 inside a host graph.

    ``paths`` join branch vertices; each is a vertex list whose interior
    vertices have degree 2 in the witness.
    """

    kind: str
    branch_vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def edges(self) -> list[EdgeRef]:
        out = []
        for p in self.paths:
            out.extend(EdgeRef.of(a, b) for a, b in zip(p, p[1:]))
        return sorted(out)

    def validate(self, host: Graph | None = None) -> bool:
        """Structural check: disjoint paths whose contraction is K5 or K3,3."""
        branch = set(self.branch_vertices)
        interior_seen: set[int] = set()
        ends: set[frozenset[int]] = set()
        for p in self.paths:
            if len(p) < 2 or p[0] not in branch or p[-1] not in branch or p[0] == p[-1]:
                return False
            inner = p[1:-1]
            if any(x in branch or x in interior_seen for x in inner) or len(set(inner)) != len(inner):
                return False
            interior_seen.update(inner)
            key = frozenset((p[0], p[-1]))
            if key in ends:
                return False
            ends.add(key)
            if host is not None and any(not host.has_edge(a, b) for a, b in zip(p, p[1:])):
                return False
        if self.kind == "K5":
            return len(branch) == 5 and len(ends) == 10
        if self.kind == "K3,3":
            if len(branch) != 6 or len(ends) != 9:
                return False
            b = sorted(branch)
            side = {b[0]}
            side |= {x for x in b if frozenset((b[0], x)) not in ends and x != b[0]}
            if len(side) != 3:
                return False
            other = branch - side
            return all(frozenset((x, y)) in ends for x in side for y in other)
        return False


def kuratowski_witness(g: Graph) -> KuratowskiWitness:
    """Extract a K5 or K3,3 subdivision from a non-planar graph."""
    if is_planar(g):
        raise PlanarityError("graph is planar; no Kuratowski subgraph exists")
    sub = kuratowski_edges(g.n, [tuple(e) for e in g.edges])
    adj: dict[int, list[int]] = {}
    for u, v in sub:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    branch = sorted(x for x, a in adj.items() if len(a) > 2)
    kind = "K5" if len(branch) == 5 else "K3,3"
    paths = []
    done: set[tuple[int, int]] = set()
    for b in branch:
        for nxt in sorted(adj[b]):
            if (b, nxt) in done:
                continue
            path = [b, nxt]
            while len(adj[path[-1]]) == 2:
                a, c = adj[path[-1]]
                path.append(c if a == path[-2] else a)
            done.add((path[-1], path[-2]))
            paths.append(tuple(path))
    return KuratowskiWitness(kind, tuple(branch), tuple(paths))
