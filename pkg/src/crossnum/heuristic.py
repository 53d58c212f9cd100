"""Crossing minimisation by planarization, edge insertion and local search.

One run of :func:`find_drawing`:

1. pick a maximal planar subgraph (greedy over a random edge order, or a
   random DFS tree extended greedily) and embed it;
2. insert every remaining edge along a shortest route through the faces of
   the current planarization, turning each crossed segment into a degree-4
   dummy vertex;
3. local search until nothing improves or the pass budget runs out:
   remove one edge and re-route it optimally; remove one vertex with its
   incident edges and put it back in the face minimising the summed
   distances to its neighbours.

Routes never cross an edge adjacent to the one being inserted and cross any
other edge at most once, so every intermediate state is a good drawing.
Randomness is drawn from a Philox generator keyed by ``(seed, restart)``.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Sequence

import numpy as np

from .drawing import Drawing
from .graph import Graph, bridges, is_connected
from .planarity import embed_adjacency, is_planar, is_planar_adjacency

__all__ = [
    "INITIAL_SCHEMES",
    "ORDER_SCHEMES",
    "EffortReport",
    "EscalationSchedule",
    "EscalationStage",
    "HeuristicConfig",
    "StageReport",
    "escalate",
    "find_drawing",
    "improve",
    "schedule",
]

INITIAL_SCHEMES = ("spanning-planar-greedy", "dfs-tree-plus-greedy")
ORDER_SCHEMES = ("static-random", "max-degree-first", "random-each-restart")

# A* expansions allowed when the plain shortest route crosses an edge twice
_ROUTE_EXPANSION_LIMIT = 20000
# local-search sweeps allowed without a strict improvement
_PATIENCE = 10


@dataclass(frozen=True)
class HeuristicConfig:
    seed: int = 0
    initial: str = "spanning-planar-greedy"
    order: str = "random-each-restart"
    passes: int = 50
    restarts: int = 1

    def __post_init__(self) -> None:
        if self.initial not in INITIAL_SCHEMES:
            raise ValueError(f"unknown initial-subgraph scheme {self.initial!r}")
        if self.order not in ORDER_SCHEMES:
            raise ValueError(f"unknown insertion-order scheme {self.order!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.passes < 0:
            raise ValueError("passes must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


# independent random streams within one restart
_SUBGRAPH, _ORDER, _SEARCH = range(3)


def _rng(seed: int, restart: int, stream: int = _SUBGRAPH) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, restart, stream])))


def derive_seed(*key: int) -> int:
    """Stable 64-bit seed from a tuple of non-negative integers."""
    return int(np.random.SeedSequence(list(key)).generate_state(1, np.uint64)[0])


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _insert_before(lst: list[int], ref: int | None, x: int) -> None:
    if ref is None:
        lst.append(x)
    else:
        lst.insert(lst.index(ref), x)


class _Planarization:
    """Embedded planarization of a partial drawing.

    ``rot`` holds the rotation of every vertex (original ids ``0..n-1``,
    dummies above); ``owner`` maps each segment to its original edge index;
    ``cross`` maps each dummy to its crossing pair.
    """

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.rot: dict[int, list[int]] = {v: [] for v in range(g.n)}
        self.owner: dict[tuple[int, int], int] = {}
        self.cross: dict[int, tuple[int, int]] = {}
        self.next_id = g.n
        self.present: set[int] = set()
        touching = [set() for _ in range(g.m)]
        for v in range(g.n):
            inc = [g.edge_index(v, w) for w in g.neighbors(v)]
            for e in inc:
                touching[e].update(inc)
        self.touching = [frozenset(t) for t in touching]

    def copy(self) -> _Planarization:
        other = object.__new__(_Planarization)
        other.g = self.g
        other.rot = {v: list(r) for v, r in self.rot.items()}
        other.owner = dict(self.owner)
        other.cross = dict(self.cross)
        other.next_id = self.next_id
        other.present = set(self.present)
        other.touching = self.touching
        return other

    @classmethod
    def from_embedding(cls, g: Graph, edges: Sequence[int], rotation: Sequence[Sequence[int]]) -> _Planarization:
        p = cls(g)
        for v in range(g.n):
            p.rot[v] = list(rotation[v])
        for e in edges:
            p.owner[tuple(g.edges[e])] = e  # type: ignore[index]
            p.present.add(e)
        return p

    @property
    def crossings(self) -> int:
        return len(self.cross)

    def faces(self) -> tuple[list[list[tuple[int, int]]], dict[tuple[int, int], int]]:
        rot = self.rot
        face_of: dict[tuple[int, int], int] = {}
        faces = []
        for u, r in rot.items():
            for v in r:
                if (u, v) in face_of:
                    continue
                fid = len(faces)
                face = []
                a, b = u, v
                while (a, b) not in face_of:
                    face_of[(a, b)] = fid
                    face.append((a, b))
                    rb = rot[b]
                    a, b = b, rb[rb.index(a) - 1]
                faces.append(face)
        return faces, face_of

    # -- edges ------------------------------------------------------------

    def chain(self, e: int) -> list[int]:
        u, v = self.g.edges[e]
        owner = self.owner
        path = [u]
        prev, cur = -1, u
        while cur != v:
            nxt = next(w for w in self.rot[cur] if w != prev and owner.get(_key(cur, w)) == e)
            path.append(nxt)
            prev, cur = cur, nxt
        return path

    def remove_edge(self, e: int) -> None:
        path = self.chain(e)
        rot, owner = self.rot, self.owner
        for a, b in zip(path, path[1:]):
            del owner[_key(a, b)]
        for d in path[1:-1]:
            a, f = self.cross.pop(d)
            if f == e:
                f = a
            x, y = (w for w in rot[d] if owner.get(_key(d, w)) == f)
            rx, ry = rot[x], rot[y]
            rx[rx.index(d)] = y
            ry[ry.index(d)] = x
            del owner[_key(d, x)], owner[_key(d, y)]
            owner[_key(x, y)] = f
            del rot[d]
        u, v = path[0], path[-1]
        rot[u].remove(path[1])
        rot[v].remove(path[-2])
        self.present.discard(e)

    def _route(
        self,
        faces: list[list[tuple[int, int]]],
        face_of: dict[tuple[int, int], int],
        sources: Sequence[int],
        b: int,
        forbidden: frozenset[int],
    ) -> list[tuple[int, int]] | None:
        """Darts to cross, in order, on a cheapest valid route from ``sources`` to ``b``."""
        targets = {face_of[(u, b)] for u in self.rot[b]}
        owner = self.owner
        hit = sorted(set(sources) & targets)
        if hit:
            return []
        parent: dict[int, tuple[int, tuple[int, int]] | None] = {s: None for s in sources}
        queue = deque(sorted(sources))
        end = None
        while queue and end is None:
            fa = queue.popleft()
            for x, y in faces[fa]:
                if owner[_key(x, y)] in forbidden:
                    continue
                fb = face_of[(y, x)]
                if fb in parent:
                    continue
                parent[fb] = (fa, (x, y))
                if fb in targets:
                    end = fb
                    break
                queue.append(fb)
        if end is None:
            return None
        darts = []
        while parent[end] is not None:
            fa, dart = parent[end]  # type: ignore[misc]
            darts.append(dart)
            end = fa
        darts.reverse()
        crossed = [owner[_key(*d)] for d in darts]
        if len(set(crossed)) == len(crossed):
            return darts
        return self._route_constrained(faces, face_of, sources, targets, forbidden)

    def _route_constrained(
        self,
        faces: list[list[tuple[int, int]]],
        face_of: dict[tuple[int, int], int],
        sources: Sequence[int],
        targets: set[int],
        forbidden: frozenset[int],
    ) -> list[tuple[int, int]] | None:
        """A* over (face, edges crossed so far); no edge may be crossed twice."""
        owner = self.owner
        # unconstrained distance to target is an admissible estimate
        h = {t: 0 for t in targets}
        queue = deque(sorted(targets))
        while queue:
            fa = queue.popleft()
            for x, y in faces[fa]:
                if owner[_key(x, y)] in forbidden:
                    continue
                fb = face_of[(y, x)]
                if fb not in h:
                    h[fb] = h[fa] + 1
                    queue.append(fb)
        tie = 0
        heap: list = []
        for s in sorted(sources):
            if s in h:
                heapq.heappush(heap, (h[s], tie, s, frozenset(), ()))
                tie += 1
        seen: set = set()
        expansions = 0
        while heap:
            _, _, fa, used, darts = heapq.heappop(heap)
            if fa in targets:
                return list(darts)
            if (fa, used) in seen:
                continue
            seen.add((fa, used))
            expansions += 1
            if expansions > _ROUTE_EXPANSION_LIMIT:
                return None
            for x, y in faces[fa]:
                f = owner[_key(x, y)]
                if f in forbidden or f in used:
                    continue
                fb = face_of[(y, x)]
                if fb == fa or fb not in h:
                    continue
                nu = used | {f}
                heapq.heappush(heap, (len(nu) + h[fb], tie, fb, nu, (*darts, (x, y))))
                tie += 1
        return None

    def _realize(self, e: int, a: int, start_in: int | None, darts: list[tuple[int, int]], b: int, end_in: int) -> None:
        rot, owner = self.rot, self.owner
        prev = (a, start_in)
        for x, y in darts:
            f = owner.pop(_key(x, y))
            d = self.next_id
            self.next_id += 1
            rx, ry = rot[x], rot[y]
            rx[rx.index(y)] = d
            ry[ry.index(x)] = d
            rot[d] = [x, y]
            owner[_key(x, d)] = f
            owner[_key(d, y)] = f
            self.cross[d] = (e, f)
            self._link(prev, (d, x), e)
            prev = (d, y)
        self._link(prev, (b, end_in), e)
        self.present.add(e)

    def _link(self, c1: tuple[int, int | None], c2: tuple[int, int | None], e: int) -> None:
        (p, pin), (q, qin) = c1, c2
        _insert_before(self.rot[p], pin, q)
        _insert_before(self.rot[q], qin, p)
        self.owner[_key(p, q)] = e

    def insert_edge(self, e: int, start_face: int | None = None, faces=None) -> bool:
        """Route edge ``e`` optimally; ``start_face`` places an isolated endpoint."""
        u, v = self.g.edges[e]
        if faces is None:
            faces = self.faces()
        fl, face_of = faces
        # route from the endpoint with the smaller rotation (an isolated one must be the source)
        if not self.rot[v] and self.rot[u]:
            u, v = v, u
        a, b = u, v
        if self.rot[a]:
            sources = sorted({face_of[(w, a)] for w in self.rot[a]})
        elif start_face is not None:
            sources = [start_face]
        else:
            return False
        darts = self._route(fl, face_of, sources, b, self.touching[e])
        if darts is None:
            return False
        first = face_of[darts[0]] if darts else None
        last = face_of[(darts[-1][1], darts[-1][0])] if darts else None
        if darts:
            start_face_id = first
        else:
            targets = {face_of[(w, b)] for w in self.rot[b]}
            start_face_id = min(set(sources) & targets)
            last = start_face_id
        start_in = None
        if self.rot[a]:
            start_in = next(x for x, y in fl[start_face_id] if y == a)
        end_in = next(x for x, y in fl[last] if y == b)
        self._realize(e, a, start_in, darts, b, end_in)
        return True

    # -- vertices ---------------------------------------------------------

    def distances_from(self, faces, face_of, b: int, forbidden: frozenset[int]) -> dict[int, int]:
        """Dual BFS distance from the faces around ``b``."""
        owner = self.owner
        dist = {face_of[(w, b)]: 0 for w in self.rot[b]}
        queue = deque(sorted(dist))
        while queue:
            fa = queue.popleft()
            for x, y in faces[fa]:
                if owner[_key(x, y)] in forbidden:
                    continue
                fb = face_of[(y, x)]
                if fb not in dist:
                    dist[fb] = dist[fa] + 1
                    queue.append(fb)
        return dist

    def reinsert_vertex(self, v: int) -> bool:
        g = self.g
        inc = [g.edge_index(v, w) for w in g.neighbors(v)]
        for e in inc:
            if e in self.present:
                self.remove_edge(e)
        faces, face_of = self.faces()
        total: dict[int, int] | None = None
        for e, w in zip(inc, g.neighbors(v)):
            dist = self.distances_from(faces, face_of, w, self.touching[e])
            if total is None:
                total = dist
            else:
                total = {f: total[f] + d for f, d in dist.items() if f in total}
        if not total:
            return False
        best = min(total, key=lambda f: (total[f], f))
        order = sorted(zip(inc, g.neighbors(v)), key=lambda t: t[1])
        first = True
        for e, _ in order:
            if first:
                ok = self.insert_edge(e, start_face=best, faces=(faces, face_of))
                first = False
            else:
                ok = self.insert_edge(e)
            if not ok:
                return False
        return True

    def to_drawing(self) -> Drawing:
        g = self.g
        orders: dict[int, list[int]] = {}
        for e in range(g.m):
            path = self.chain(e)
            seq = []
            for d in path[1:-1]:
                a, b = self.cross[d]
                seq.append(b if a == e else a)
            orders[e] = seq
        return Drawing.from_orders(g, orders)


# ---------------------------------------------------------------------------
# construction and local search
# ---------------------------------------------------------------------------


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _planar_subgraph(g: Graph, cfg: HeuristicConfig, rng: np.random.Generator) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    keep: list[int] = []
    chosen = [False] * g.m
    if cfg.initial == "dfs-tree-plus-greedy" and g.n:
        root = int(rng.integers(g.n))
        seen = {root}
        stack = [root]
        nbrs = {v: [int(x) for x in rng.permutation(list(g.neighbors(v)))] for v in range(g.n)}
        while stack:
            v = stack[-1]
            while nbrs[v] and nbrs[v][-1] in seen:
                nbrs[v].pop()
            if not nbrs[v]:
                stack.pop()
                continue
            w = nbrs[v].pop()
            seen.add(w)
            e = g.edge_index(v, w)
            keep.append(e)
            chosen[e] = True
            adj[v].append(w)
            adj[w].append(v)
            stack.append(w)
    for e in rng.permutation(g.m):
        e = int(e)
        if chosen[e]:
            continue
        u, v = g.edges[e]
        adj[u].append(v)
        adj[v].append(u)
        if is_planar_adjacency(g.n, adj):
            keep.append(e)
            chosen[e] = True
        else:
            adj[u].pop()
            adj[v].pop()
    return keep


def _insertion_order(g: Graph, missing: list[int], cfg: HeuristicConfig, restart: int) -> list[int]:
    if cfg.order == "max-degree-first":
        return sorted(missing, key=lambda e: (-(g.degree(g.edges[e].u) + g.degree(g.edges[e].v)), e))
    rng = _rng(cfg.seed, 0 if cfg.order == "static-random" else restart, _ORDER)
    rank = {int(e): i for i, e in enumerate(rng.permutation(g.m))}
    return sorted(missing, key=lambda e: rank[e])


def _construct(g: Graph, cfg: HeuristicConfig, restart: int) -> _Planarization | None:
    rng = _rng(cfg.seed, restart)
    keep = _planar_subgraph(g, cfg, rng)
    rotation = embed_adjacency(g.n, _adjacency(g.n, (g.edges[e] for e in keep)))
    assert rotation is not None
    p = _Planarization.from_embedding(g, keep, rotation)
    kept = set(keep)
    for e in _insertion_order(g, [e for e in range(g.m) if e not in kept], cfg, restart):
        if not p.insert_edge(e):
            return None
    return p


def _cut_vertices(g: Graph) -> set[int]:
    out = set()
    for v in range(g.n):
        rest = g.induced(x for x in range(g.n) if x != v)
        if not is_connected(rest):
            out.add(v)
    return out


def _local_search(p: _Planarization, passes: int, rng: np.random.Generator) -> _Planarization:
    """Sweeps of edge and vertex reinsertion, visited in random order.

    Moves that keep the count equal are taken too, which lets the search
    drift along plateaus; it stops after ``passes`` sweeps or after
    ``_PATIENCE`` sweeps without a strict improvement, returning the best
    state seen.
    """
    g = p.g
    bridge_ids = {g.edge_index(*b) for b in bridges(g)}
    cut = _cut_vertices(g)
    best = p
    stale = 0
    for _ in range(passes):
        if p.crossings == 0:
            break
        crossed = sorted({e for pair in p.cross.values() for e in pair} - bridge_ids)
        for i in rng.permutation(len(crossed)):
            e = crossed[i]
            trial = p.copy()
            trial.remove_edge(e)
            if trial.insert_edge(e) and trial.crossings <= p.crossings:
                p = trial
        for v in rng.permutation(g.n):
            v = int(v)
            if v in cut:
                continue
            trial = p.copy()
            if trial.reinsert_vertex(v) and trial.crossings <= p.crossings:
                p = trial
        if p.crossings < best.crossings:
            best = p
            stale = 0
        else:
            stale += 1
            if stale >= _PATIENCE:
                break
    return best


def _from_drawing(d: Drawing) -> _Planarization:
    """Rebuild an embedded planarization from a crossing record."""
    g = d.graph
    d.check()
    dummy: dict[tuple[int, int], int] = {}
    for e, f in d.pairs():
        dummy[(e, f)] = g.n + len(dummy)
    n = g.n + len(dummy)
    owner: dict[tuple[int, int], int] = {}
    for e, (u, v) in enumerate(g.edges):
        chain = [u, *(dummy[_key(e, f)] for f in d.orders[e]), v]
        for a, b in zip(chain, chain[1:]):
            owner[_key(a, b)] = e
    rotation = embed_adjacency(n, _adjacency(n, owner))
    if rotation is None:
        raise ValueError("drawing does not planarize to a planar graph")
    p = _Planarization(g)
    p.rot = {v: list(rotation[v]) for v in range(n)}
    p.owner = owner
    p.cross = {k: pair for pair, k in dummy.items()}
    p.next_id = n
    p.present = set(range(g.m))
    return p


def improve(g: Graph, d: Drawing, passes: int) -> Drawing:
    """Local search from drawing ``d``; never returns more crossings than it got."""
    if d.graph != g:
        raise ValueError("drawing is not of this graph")
    start = _from_drawing(d)  # raises on an invalid or unrealizable record
    if passes <= 0 or d.crossing_count == 0:
        return d
    p = _local_search(start, passes, _rng(0, 0, _SEARCH))
    out = p.to_drawing()
    return out if out.crossing_count <= d.crossing_count else d


def find_drawing(g: Graph, cfg: HeuristicConfig | None = None) -> Drawing:
    """Best drawing over ``cfg.restarts`` independent runs; deterministic in ``(g, cfg)``."""
    cfg = cfg or HeuristicConfig()
    if not is_connected(g):
        raise ValueError("find_drawing needs a connected graph")
    if is_planar(g):
        return Drawing.empty(g)
    best: _Planarization | None = None
    for restart in range(cfg.restarts):
        p = _construct(g, cfg, restart)
        if p is None:
            continue
        p = _local_search(p, cfg.passes, _rng(cfg.seed, restart, _SEARCH))
        if best is None or p.crossings < best.crossings:
            best = p
    if best is None:
        raise RuntimeError("no restart produced a drawing")
    return best.to_drawing()


# ---------------------------------------------------------------------------
# escalation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EscalationStage:
    """``budget`` runs of ``template``, each with its own derived seed.

    With ``vary`` set, runs also cycle through every combination of
    initial-subgraph and insertion-order scheme.
    """

    name: str
    template: HeuristicConfig
    budget: int
    vary: bool = False

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("stage budget must be positive")

    def configs(self, base_seed: int, stage_index: int) -> list[HeuristicConfig]:
        grid = list(product(INITIAL_SCHEMES, ORDER_SCHEMES))
        out = []
        for i in range(self.budget):
            seed = base_seed if stage_index == 0 and i == 0 else derive_seed(base_seed, stage_index, i)
            cfg = replace(self.template, seed=seed)
            if self.vary:
                initial, order = grid[i % len(grid)]
                cfg = replace(cfg, initial=initial, order=order)
            out.append(cfg)
        return out


@dataclass(frozen=True)
class EscalationSchedule:
    stages: tuple[EscalationStage, ...]
    target: int = 0

    def __post_init__(self) -> None:
        if self.target < 0:
            raise ValueError("target must be non-negative")
        if not self.stages:
            raise ValueError("schedule needs at least one stage")

    def with_target(self, target: int) -> EscalationSchedule:
        return replace(self, target=target)


@dataclass
class StageReport:
    name: str
    configs: list[HeuristicConfig] = field(default_factory=list)
    best: int | None = None


@dataclass
class EffortReport:
    stages: list[StageReport] = field(default_factory=list)
    best: int | None = None
    reached_target: bool = False

    @property
    def runs(self) -> int:
        return sum(len(s.configs) for s in self.stages)

    @property
    def exhausted(self) -> bool:
        return not self.reached_target

    @property
    def last_stage(self) -> str | None:
        return self.stages[-1].name if self.stages else None


def schedule(name: str = "default", target: int = 0, seed: int = 0) -> EscalationSchedule:
    """Named schedules: ``quick``, ``default``, ``thorough``.

    All start with one run of the default configuration, then eight runs
    over the parameter grid; ``default`` and ``thorough`` finish with a
    hundred random seeds.
    """
    base = HeuristicConfig(seed=seed)
    stages = [EscalationStage("default", base, 1), EscalationStage("varied", base, 8, vary=True)]
    if name == "quick":
        pass
    elif name == "default":
        stages.append(EscalationStage("seeds", base, 100))
    elif name == "thorough":
        stages.append(EscalationStage("seeds", replace(base, restarts=4, passes=200), 100, vary=True))
    else:
        raise ValueError(f"unknown schedule {name!r}")
    return EscalationSchedule(tuple(stages), target)


def escalate(g: Graph, sched: EscalationSchedule) -> tuple[Drawing, EffortReport]:
    """Run the schedule stage by stage, stopping once a drawing beats ``sched.target``."""
    if not is_connected(g):
        raise ValueError("escalate needs a connected graph")
    report = EffortReport()
    best: Drawing | None = None
    base_seed = sched.stages[0].template.seed
    for si, stage in enumerate(sched.stages):
        sr = StageReport(stage.name)
        report.stages.append(sr)
        for cfg in stage.configs(base_seed, si):
            d = find_drawing(g, cfg)
            sr.configs.append(cfg)
            if best is None or d.crossing_count < best.crossing_count:
                best = d
            sr.best = best.crossing_count
            if best.crossing_count < sched.target:
                report.best = best.crossing_count
                report.reached_target = True
                return best, report
    assert best is not None
    report.best = best.crossing_count
    return best, report
