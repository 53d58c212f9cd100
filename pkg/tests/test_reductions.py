import networkx as nx
import pytest

from crossnum.drawing import Drawing
from crossnum.graph import Graph, bridges, girth, is_cubic
from crossnum.heuristic import HeuristicConfig, find_drawing
from crossnum.named import complete, complete_bipartite, cube, petersen, prism
from crossnum.oracle import exact_crossing_number
from crossnum.reductions import (
    BRIDGE,
    DEGREE2,
    DIAMOND,
    TRIANGLE,
    ReductionError,
    ReductionStep,
    ReductionTrace,
    contract_diamond,
    contract_triangle,
    eliminate_girth3,
    join_drawings,
    lift_drawing,
    lone_triangles,
    split_at_bridges,
    suppress_degree2,
)
from crossnum.verify import verify_drawing
from helpers import load_g6, to_nx


def iso(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


def diamond_gadget(host: Graph, u: int, v: int) -> Graph:
    """Replace edge ``u-v`` of ``host`` by ``u - a, diamond(s,t,a,b), b - v``."""
    s, t, a, b = range(host.n, host.n + 4)
    edges = [e for e in host.edges if set(e) != {u, v}]
    edges += [(s, t), (s, a), (t, a), (s, b), (t, b), (u, a), (b, v)]
    return Graph(host.n + 4, edges)


def subdivide(g: Graph, u: int, v: int) -> Graph:
    w = g.n
    return Graph(g.n + 1, [e for e in g.edges if set(e) != {u, v}] + [(u, w), (w, v)])


def bridged(a: Graph, ea: tuple[int, int], b: Graph, eb: tuple[int, int]) -> Graph:
    sa = subdivide(a, *ea)
    sb = subdivide(b, *eb)
    edges = list(sa.edges) + [(x + sa.n, y + sa.n) for x, y in sb.edges] + [(sa.n - 1, sa.n + sb.n - 1)]
    return Graph(sa.n + sb.n, edges)


def cr(g: Graph) -> int:
    res = exact_crossing_number(g, 4)
    assert res.value is not None
    return res.value


# -- triangle contraction ---------------------------------------------------


def test_prism_triangle_contracts_to_k4():
    g, step = contract_triangle(prism(), (0, 1, 2))
    assert iso(g, complete(4))
    assert step.kind == TRIANGLE and step.pre == (0, 1, 2) and step.post == (3,)
    assert step.apply(prism()) == g


@pytest.mark.parametrize(
    "g, t, reason",
    [
        (petersen(), (0, 1, 2), "not-a-triangle"),
        (complete(4), (0, 1, 2), "k4"),
        (complete(5), (0, 1, 2), "not-cubic"),
        (diamond_gadget(complete_bipartite(3, 3), 0, 3), (6, 7, 8), "shared-triangle"),
    ],
)
def test_triangle_errors(g, t, reason):
    with pytest.raises(ReductionError) as info:
        contract_triangle(g, t)
    assert info.value.reason == reason


def test_lone_triangles():
    assert lone_triangles(prism()) == [(0, 1, 2), (3, 4, 5)]
    assert lone_triangles(diamond_gadget(complete_bipartite(3, 3), 0, 3)) == []


# -- diamond contraction ----------------------------------------------------


def test_diamond_gadget_in_k33():
    g = diamond_gadget(complete_bipartite(3, 3), 0, 3)
    assert g.n == 10 and is_cubic(g)
    h, step = contract_diamond(g, (6, 7, 8, 9))
    assert iso(h, complete_bipartite(3, 3))
    assert step.kind == DIAMOND and step.apply(g) == h
    assert cr(g) == cr(h) == 1


def test_diamond_in_cubic_host_on_eight_vertices():
    g = diamond_gadget(complete(4), 0, 1)
    assert g.n == 8 and is_cubic(g)
    h, _ = contract_diamond(g, (4, 5, 6, 7))
    assert h.n == 4 and iso(h, complete(4))
    assert cr(g) == cr(h) == 0


def test_diamond_errors():
    with pytest.raises(ReductionError) as info:
        contract_diamond(petersen(), (0, 1, 2, 3))
    assert info.value.reason == "not-a-diamond"

    # both tips lead to one vertex: contraction would make a loop
    unit = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 4)]
    loop = Graph(10, unit + [(x + 5, y + 5) for x, y in unit] + [(4, 9)])
    with pytest.raises(ReductionError) as info:
        contract_diamond(loop, (0, 1, 2, 3))
    assert info.value.reason == "loop"

    # the tips' outside neighbours are already adjacent
    unit = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 6)]
    par = Graph(14, unit + [(x + 7, y + 7) for x, y in unit] + [(6, 13)])
    assert is_cubic(par)
    with pytest.raises(ReductionError) as info:
        contract_diamond(par, (0, 1, 2, 3))
    assert info.value.reason == "parallel-edge"


# -- degree-2 suppression ------------------------------------------------------


def test_suppress_path_in_subdivided_k4():
    g = subdivide(complete(4), 0, 1)
    assert suppress_degree2(g, 4) == complete(4)


def test_suppress_errors():
    g = subdivide(complete(4), 0, 1).with_edges(add=[(0, 1)])
    with pytest.raises(ReductionError) as info:
        suppress_degree2(g, 4)
    assert info.value.reason == "parallel-edge"
    with pytest.raises(ReductionError) as info:
        suppress_degree2(complete(4), 0)
    assert info.value.reason == "bad-degree"


def test_suppress_subdivided_petersen_keeps_crossing_number():
    g = subdivide(petersen(), 0, 1)
    h = suppress_degree2(g, 10)
    assert h == petersen()
    assert cr(g) == cr(h) == 2


# -- bridges ------------------------------------------------------------------


def test_bridgeless_split_is_identity():
    parts, trace = split_at_bridges(petersen())
    assert parts == [petersen()] and trace.steps == ()


def test_split_two_k4_blocks():
    g = bridged(complete(4), (0, 1), complete(4), (2, 3))
    assert is_cubic(g) and len(bridges(g)) == 1
    parts, trace = split_at_bridges(g)
    assert [p.n for p in parts] == [4, 4] and all(iso(p, complete(4)) for p in parts)
    assert [s.kind for s in trace.steps] == [BRIDGE, DEGREE2, DEGREE2]
    assert trace.replay() == trace.final


def test_split_double_petersen():
    g = bridged(petersen(), (0, 1), petersen(), (5, 7))
    assert g.n == 22
    parts, trace = split_at_bridges(g)
    assert len(parts) == 2 and all(iso(p, petersen()) for p in parts)
    assert cr(g) == sum(cr(p) for p in parts) == 4


def test_split_freezes_component_on_failed_suppression():
    # K4 with a subdivided edge whose suppression would be a parallel edge
    k = Graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 4)])
    # pendant cluster: 4 hangs on 0 and 3, which are not adjacent, so this works;
    # make it fail by joining the bridge to a vertex whose neighbours are adjacent
    g = bridged(prism(), (0, 3), complete(4), (0, 1))
    parts, trace = split_at_bridges(g)
    assert sum(p.n for p in parts) == trace.final.n
    assert trace.replay() == trace.final
    assert k.n == 5


# -- girth-3 elimination ----------------------------------------------------------


def test_eliminate_prism():
    h, trace = eliminate_girth3(prism())
    assert iso(h, complete(4)) and len(trace.steps) == 1


def test_eliminate_girth4_is_identity():
    for g in (cube(), petersen(), complete_bipartite(3, 3)):
        h, trace = eliminate_girth3(g)
        assert h == g and trace.steps == ()


def test_eliminate_rejects_k4():
    with pytest.raises(ReductionError) as info:
        eliminate_girth3(complete(4))
    assert info.value.reason == "k4"


def test_eliminate_corpus_outputs():
    for g in load_g6("girth3.g6"):
        h, trace = eliminate_girth3(g)
        assert is_cubic(h) and h.n < g.n
        assert trace.replay() == h
        assert len(trace.steps) <= g.n // 2
        if h.n > 4:
            assert not lone_triangles(h)


# -- traces and lifting ------------------------------------------------------------


def test_trace_text_roundtrip():
    g = load_g6("girth3.g6")[-1]
    _, trace = eliminate_girth3(g)
    again = ReductionTrace.loads(trace.dumps())
    assert again == trace
    for step in trace.steps:
        assert ReductionStep.from_line(step.to_line()) == step


def test_replay_detects_tampering():
    g = load_g6("girth3.g6")[0]
    _, trace = eliminate_girth3(g)
    bad = ReductionStep(TRIANGLE, (0, 1, 2), (0,), trace.steps[0].vertex_map)
    with pytest.raises(ReductionError):
        ReductionTrace(g, (bad,), g).replay()


@pytest.mark.parametrize("corpus", ["girth3.g6", "bridged.g6"])
def test_lift_drawing_verifies_on_origin(corpus):
    for g in load_g6(corpus):
        h, trace = eliminate_girth3(g) if girth(g) == 3 else (g, ReductionTrace(g))
        parts, split = split_at_bridges(h) if h.n > 4 else ([h], ReductionTrace(h))
        ds = [find_drawing(p, HeuristicConfig(seed=1)) for p in parts]
        d = join_drawings(split.final, ds)
        lifted = lift_drawing(trace, lift_drawing(split, d))
        assert lifted.graph == g
        assert lifted.crossing_count == sum(x.crossing_count for x in ds)
        assert verify_drawing(g, lifted).ok


def test_lift_rejects_foreign_drawing():
    _, trace = eliminate_girth3(prism())
    with pytest.raises(ValueError):
        lift_drawing(trace, Drawing.empty(petersen()))


def test_oracle_equivalence_sample():
    for g in load_g6("girth3.g6")[::12]:
        h, _ = eliminate_girth3(g)
        assert cr(g) == cr(h)
