"""Crossing-number-preserving reductions of cubic graphs.

Contracting a lone triangle or a diamond, suppressing a degree-2 vertex and
cutting at a bridge all keep the crossing number (bridges: additively over
the two sides).  Every operation here refuses rather than produce a loop or
a parallel edge, so graphs stay simple.

Vertex relabelling is uniform: surviving vertices keep their relative order
and are packed to ``0..k-1``; a vertex created by a contraction is appended
last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .drawing import Drawing
from .graph import (
    EdgeRef,
    Graph,
    bridges,
    components,
    diamonds,
    is_connected,
    is_cubic,
    parse_graph6,
    triangles,
    write_graph6,
)

__all__ = [
    "ReductionError",
    "ReductionStep",
    "ReductionTrace",
    "contract_diamond",
    "contract_triangle",
    "eliminate_girth3",
    "join_drawings",
    "lift_drawing",
    "lone_triangles",
    "split_at_bridges",
    "suppress_degree2",
]

TRIANGLE = "triangle-contraction"
DIAMOND = "diamond-contraction"
DEGREE2 = "degree2-suppression"
BRIDGE = "bridge-split"
KINDS = (TRIANGLE, DIAMOND, DEGREE2, BRIDGE)


class ReductionError(ValueError):
    """A reduction's precondition failed; ``reason`` names which one.

    Reasons: ``not-cubic``, ``k4``, ``not-a-triangle``, ``shared-triangle``,
    ``not-a-diamond``, ``loop``, ``parallel-edge``, ``bad-degree``,
    ``disconnected``.
    """

    def __init__(self, message: str, reason: str) -> None:
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class ReductionStep:
    """One reduction.

    ``pre`` lists the affected vertices of the graph before the step (the
    bridge endpoints for a split); ``post`` the replacement in the graph
    after it: the new vertex of a triangle contraction, or the endpoints of
    the edge replacing a diamond or a suppressed vertex.  ``vertex_map[x]``
    is the new label of old vertex ``x``, or -1 if it was removed.
    """

    kind: str
    pre: tuple[int, ...]
    post: tuple[int, ...]
    vertex_map: tuple[int, ...]

    def apply(self, g: Graph) -> Graph:
        """Re-run this step on ``g``, checking it reproduces the recorded step."""
        if len(self.vertex_map) != g.n:
            raise ReductionError(f"step recorded for n={len(self.vertex_map)}, got n={g.n}", "replay")
        try:
            if self.kind == TRIANGLE:
                h, again = contract_triangle(g, self.pre)
            elif self.kind == DIAMOND:
                h, again = contract_diamond(g, self.pre)
            elif self.kind == DEGREE2:
                (v,) = self.pre
                h, again = _suppress(g, v)
            else:
                u, v = self.pre
                if not g.has_edge(u, v):
                    raise ReductionError(f"no edge {u}-{v} to cut", "replay")
                again = ReductionStep(BRIDGE, (u, v), (), tuple(range(g.n)))
                h = again._build(g)
        except ValueError as exc:
            raise ReductionError(f"step does not replay: {exc}", "replay") from None
        if again != self:
            raise ReductionError("step does not match the graph it is applied to", "replay")
        return h

    def _build(self, g: Graph) -> Graph:
        vm = self.vertex_map
        new_n = sum(x >= 0 for x in vm) + (self.kind == TRIANGLE)
        edges = {EdgeRef.of(vm[a], vm[b]) for a, b in g.edges if vm[a] >= 0 and vm[b] >= 0}
        if self.kind == BRIDGE:
            edges.discard(EdgeRef.of(*self.pre))
        elif self.kind == TRIANGLE:
            (w,) = self.post
            inside = set(self.pre)
            for x in self.pre:
                edges.add(EdgeRef.of(w, vm[_external(g, x, inside)]))
        else:
            edges.add(EdgeRef.of(*self.post))
        return Graph(new_n, edges)

    def to_line(self) -> str:
        def ints(xs: Iterable[int]) -> str:
            return ",".join(map(str, xs))

        return f"{self.kind}\tpre={ints(self.pre)}\tpost={ints(self.post)}\tmap={ints(self.vertex_map)}"

    @classmethod
    def from_line(cls, line: str) -> ReductionStep:
        kind, *fields = line.rstrip("\n").split("\t")
        if kind not in KINDS:
            raise ValueError(f"unknown reduction kind {kind!r}")
        vals = {}
        for f in fields:
            key, _, raw = f.partition("=")
            vals[key] = tuple(int(x) for x in raw.split(",") if x)
        return cls(kind, vals.get("pre", ()), vals.get("post", ()), vals.get("map", ()))


@dataclass(frozen=True)
class ReductionTrace:
    """Steps taking ``origin`` to ``final``.

    ``final`` may be disconnected after bridge splits; :meth:`parts` lists
    its components.
    """

    origin: Graph
    steps: tuple[ReductionStep, ...] = ()
    final: Graph = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.final is None:
            object.__setattr__(self, "final", self.origin)

    def replay(self) -> Graph:
        g = self.origin
        for s in self.steps:
            g = s.apply(g)
        return g

    def parts(self) -> list[Graph]:
        return [self.final.induced(c) for c in components(self.final)]

    def dumps(self) -> str:
        lines = [f"origin\t{write_graph6(self.origin)}"]
        lines += [s.to_line() for s in self.steps]
        lines.append(f"final\t{write_graph6(self.final)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> ReductionTrace:
        origin = final = None
        steps = []
        for line in text.splitlines():
            if not line.strip():
                continue
            head, _, rest = line.partition("\t")
            if head == "origin":
                origin = parse_graph6(rest)
            elif head == "final":
                final = parse_graph6(rest)
            else:
                steps.append(ReductionStep.from_line(line))
        if origin is None:
            raise ValueError("trace has no origin line")
        return cls(origin, tuple(steps), final if final is not None else origin)


# ---------------------------------------------------------------------------
# single steps
# ---------------------------------------------------------------------------


def _relabel(n: int, removed: set[int]) -> list[int]:
    vm = [-1] * n
    k = 0
    for x in range(n):
        if x not in removed:
            vm[x] = k
            k += 1
    return vm


def _external(g: Graph, x: int, inside: set[int]) -> int:
    (y,) = [y for y in g.neighbors(x) if y not in inside]
    return y


def _require_cubic(g: Graph) -> None:
    if not is_cubic(g):
        raise ReductionError("graph is not cubic", "not-cubic")


def contract_triangle(g: Graph, t: Iterable[int]) -> tuple[Graph, ReductionStep]:
    """Contract a triangle none of whose vertices lies in another triangle."""
    _require_cubic(g)
    tri = tuple(sorted(t))
    if g.n == 4:
        raise ReductionError("K4 cannot be contracted", "k4")
    if len(tri) != 3 or len(set(tri)) != 3 or not all(g.has_edge(a, b) for a, b in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2]))):
        raise ReductionError(f"{tri} is not a triangle", "not-a-triangle")
    inside = set(tri)
    ext = [_external(g, x, inside) for x in tri]
    if len(set(ext)) != 3:
        raise ReductionError(f"triangle {tri} shares a vertex with another triangle", "shared-triangle")
    vm = _relabel(g.n, inside)
    w = g.n - 3
    step = ReductionStep(TRIANGLE, tri, (w,), tuple(vm))
    return step._build(g), step


def _diamond_parts(g: Graph, d: Iterable[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    vs = sorted(set(d))
    if len(vs) != 4:
        raise ReductionError(f"{tuple(vs)} is not a 4-vertex set", "not-a-diamond")
    inside = set(vs)
    deg = {x: sum(1 for y in g.neighbors(x) if y in inside) for x in vs}
    spine = tuple(x for x in vs if deg[x] == 3)
    tips = tuple(x for x in vs if deg[x] == 2)
    if len(spine) != 2 or len(tips) != 2 or g.has_edge(*tips):
        raise ReductionError(f"{tuple(vs)} does not induce a diamond", "not-a-diamond")
    return spine, tips  # type: ignore[return-value]


def contract_diamond(g: Graph, d: Iterable[int]) -> tuple[Graph, ReductionStep]:
    """Replace a diamond by a single edge joining its two outside neighbours.

    Equivalent to contracting the diamond to a vertex of degree 2 and then
    suppressing that vertex.
    """
    _require_cubic(g)
    spine, tips = _diamond_parts(g, d)
    inside = set(spine) | set(tips)
    xa, xb = (_external(g, a, inside) for a in tips)
    if xa == xb:
        raise ReductionError(f"contracting {sorted(inside)} would leave a loop at {xa}", "loop")
    if g.has_edge(xa, xb):
        raise ReductionError(f"contracting {sorted(inside)} would double edge {xa}-{xb}", "parallel-edge")
    vm = _relabel(g.n, inside)
    step = ReductionStep(DIAMOND, (*spine, *tips), (vm[xa], vm[xb]), tuple(vm))
    return step._build(g), step


def _suppress(g: Graph, v: int) -> tuple[Graph, ReductionStep]:
    if g.degree(v) != 2:
        raise ReductionError(f"vertex {v} has degree {g.degree(v)}, not 2", "bad-degree")
    p, q = g.neighbors(v)
    if g.has_edge(p, q):
        raise ReductionError(f"suppressing {v} would double edge {p}-{q}", "parallel-edge")
    vm = _relabel(g.n, {v})
    step = ReductionStep(DEGREE2, (v,), (vm[p], vm[q]), tuple(vm))
    return step._build(g), step


def suppress_degree2(g: Graph, v: int) -> Graph:
    """Remove degree-2 vertex ``v`` and join its two neighbours."""
    return _suppress(g, v)[0]


def lone_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """Triangles sharing no vertex with any other triangle."""
    tris = triangles(g)
    count: dict[int, int] = {}
    for t in tris:
        for x in t:
            count[x] = count.get(x, 0) + 1
    return [t for t in tris if all(count[x] == 1 for x in t)]


# ---------------------------------------------------------------------------
# compound reductions
# ---------------------------------------------------------------------------


def eliminate_girth3(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Contract diamonds, then lone triangles, until none can be contracted.

    Stops at K4.  Triangle clusters that are neither lone nor diamonds, and
    diamonds whose contraction would create a loop or parallel edge, are
    left in place.
    """
    _require_cubic(g)
    if g.n == 4:
        raise ReductionError("K4 is excluded from girth-3 elimination", "k4")
    cur = g
    steps: list[ReductionStep] = []
    while cur.n > 4:
        step = None
        for s, t, a, b in diamonds(cur):
            try:
                cur, step = contract_diamond(cur, (s, t, a, b))
                break
            except ReductionError:
                continue
        if step is None:
            lone = lone_triangles(cur)
            if not lone:
                break
            cur, step = contract_triangle(cur, lone[0])
        steps.append(step)
    return cur, ReductionTrace(g, tuple(steps), cur)


def _all_bridges(g: Graph, skip: set[int]) -> list[EdgeRef]:
    out = []
    for comp in components(g):
        if comp[0] in skip or len(comp) < 2:
            continue
        sub = g.induced(comp)
        out.extend(EdgeRef.of(comp[a], comp[b]) for a, b in bridges(sub))
    return sorted(out)


def split_at_bridges(g: Graph) -> tuple[list[Graph], ReductionTrace]:
    """Cut every bridge and suppress the degree-2 ends that appear.

    Bridges are cut in canonical edge order.  When an end cannot be
    suppressed without a parallel edge, its whole component is returned as
    is and no further bridges inside it are cut.  The crossing numbers of
    the returned graphs sum to that of ``g``.
    """
    _require_cubic(g)
    if not is_connected(g):
        raise ReductionError("graph is disconnected", "disconnected")
    cur = g
    steps: list[ReductionStep] = []
    frozen: set[int] = set()
    while True:
        found = _all_bridges(cur, frozen)
        if not found:
            break
        u, v = found[0]
        identity = tuple(range(cur.n))
        step = ReductionStep(BRIDGE, (u, v), (), identity)
        cur = step._build(cur)
        steps.append(step)
        ends = [u, v]
        for i in range(2):
            x = ends[i]
            try:
                cur, step = _suppress(cur, x)
            except ReductionError:
                comp = next(c for c in components(cur) if x in c)
                frozen |= set(comp)
                continue
            steps.append(step)
            vm = step.vertex_map
            ends = [vm[y] if y >= 0 else -1 for y in ends]
            frozen = {vm[y] for y in frozen if vm[y] >= 0}
    trace = ReductionTrace(g, tuple(steps), cur)
    return trace.parts(), trace


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------


def _lift_step(pre: Graph, step: ReductionStep, d: Drawing) -> Drawing:
    """Drawing of ``pre`` with the same crossings as ``d`` (a drawing of the post graph).

    Each post edge hands its crossings to one pre edge ``(x, y)``, travelled
    from ``x``; the removed gadget is drawn small near the other end.
    """
    post = d.graph
    vm = step.vertex_map
    # post edge -> (pre edge travelled from x to y, post vertex standing for x)
    carrier: dict[int, tuple[int, int, int]] = {}
    for a, b in pre.edges:
        if vm[a] >= 0 and vm[b] >= 0 and post.has_edge(vm[a], vm[b]):
            carrier[post.edge_index(vm[a], vm[b])] = (a, b, vm[a])
    if step.kind == TRIANGLE:
        (w,) = step.post
        inside = set(step.pre)
        for t in step.pre:
            x = _external(pre, t, inside)
            carrier[post.edge_index(w, vm[x])] = (t, x, w)
    elif step.kind == DIAMOND:
        tip = step.pre[2]
        xa = _external(pre, tip, set(step.pre))
        carrier[post.edge_index(*step.post)] = (xa, tip, vm[xa])
    elif step.kind == DEGREE2:
        (v,) = step.pre
        p = vm.index(step.post[0])
        carrier[post.edge_index(*step.post)] = (p, v, step.post[0])

    orders: dict[int, list[int]] = {}
    for e, order in enumerate(d.orders):
        if not order:
            continue
        x, y, start = carrier[e]
        seq = [pre.edge_index(*carrier[f][:2]) for f in order]
        if start != post.edges[e].u:
            seq.reverse()
        if x > y:
            seq.reverse()
        orders[pre.edge_index(x, y)] = seq
    return Drawing.from_orders(pre, orders)


def lift_drawing(trace: ReductionTrace, d: Drawing) -> Drawing:
    """Carry a drawing of ``trace.final`` back to ``trace.origin``, same crossing count."""
    if d.graph != trace.final:
        raise ValueError("drawing is not of the trace's final graph")
    graphs = [trace.origin]
    for s in trace.steps:
        graphs.append(s.apply(graphs[-1]))
    for pre, step in zip(reversed(graphs[:-1]), reversed(trace.steps)):
        d = _lift_step(pre, step, d)
    return d


def join_drawings(g: Graph, drawings: Sequence[Drawing]) -> Drawing:
    """One drawing of ``g`` from drawings of its components, as listed by ``components``."""
    comps = components(g)
    if len(comps) != len(drawings):
        raise ValueError(f"expected {len(comps)} component drawings, got {len(drawings)}")
    orders: dict[int, list[int]] = {}
    for comp, d in zip(comps, drawings):
        part = d.graph
        if part != g.induced(comp):
            raise ValueError("component drawing does not match its component")
        glob = [g.edge_index(comp[a], comp[b]) for a, b in part.edges]
        for e, order in enumerate(d.orders):
            if order:
                orders[glob[e]] = [glob[f] for f in order]
    return Drawing.from_orders(g, orders)
