import io
import json

import pytest

from crossnum.drawing import Drawing, DrawingError, dump_drawings, load_drawings
from crossnum.graph import EdgeRef, Graph
from crossnum.heuristic import HeuristicConfig, find_drawing
from crossnum.named import NAMED_GRAPHS, complete, complete_bipartite, petersen
from crossnum.verify import planarize, verify_drawing
from helpers import circle, load_g6, nx_planar, straight_line_drawing


def k33_one_crossing() -> Drawing:
    g = complete_bipartite(3, 3)
    e, f = g.edge_index(0, 4), g.edge_index(1, 3)
    return Drawing.from_orders(g, {e: [f], f: [e]})


def petersen_standard() -> Drawing:
    g = petersen()
    pos = circle(5, 2.0, 0.3) + circle(5, 1.0, 0.3)
    return straight_line_drawing(g, pos)


# -- Drawing ----------------------------------------------------------------


def test_empty_and_counts():
    g = complete(4)
    d = Drawing.empty(g)
    assert d.crossing_count == 0 and d.pairs() == []
    d.check()
    d = k33_one_crossing()
    assert d.crossing_count == 1
    assert d.pairs() == [(1, 3)]


def test_standard_petersen_drawing_has_five_crossings():
    d = petersen_standard()
    assert d.crossing_count == 5
    d.check()
    assert verify_drawing(d.graph, d).ok


@pytest.mark.parametrize(
    "orders, fragment",
    [
        ({0: [0]}, "itself"),
        ({0: [1], 1: [0]}, "adjacent"),
        ({1: [3]}, "one edge only"),
        ({1: [3, 3], 3: [1, 1]}, "more than once"),
        ({1: [42]}, "index"),
    ],
)
def test_check_rejects_bad_records(orders, fragment):
    d = Drawing.from_orders(complete_bipartite(3, 3), orders)
    with pytest.raises(DrawingError) as info:
        d.check()
    assert fragment in str(info.value)


def test_record_roundtrip():
    d = petersen_standard()
    rec = d.to_record()
    assert rec["crossings"] == 5
    assert all(EdgeRef.parse(k) in d.graph.edges for k in rec["edges"])
    assert Drawing.from_record(rec) == d
    assert Drawing.loads(d.dumps()) == d
    # only crossed edges are listed
    assert len(rec["edges"]) == sum(1 for o in d.orders if o)


def test_record_errors():
    with pytest.raises(DrawingError):
        Drawing.loads("[1, 2]")
    with pytest.raises(DrawingError):
        Drawing.loads("{")
    with pytest.raises(DrawingError):
        Drawing.from_record({"graph6": "C~", "edges": {"0-9": []}})
    with pytest.raises(DrawingError):
        Drawing.from_record({"graph6": "bad!"})
    rec = k33_one_crossing().to_record()
    rec["crossings"] = 2
    with pytest.raises(DrawingError):
        Drawing.from_record(rec)


def test_stream_io_keeps_going():
    buf = io.StringIO()
    dump_drawings([k33_one_crossing(), petersen_standard()], buf)
    lines = buf.getvalue().splitlines()
    lines.insert(1, "not json")
    out = list(load_drawings(lines + [""]))
    assert [ln for ln, _ in out] == [1, 2, 3]
    assert isinstance(out[1][1], DrawingError)
    assert out[2][1] == petersen_standard()


# -- planarize ----------------------------------------------------------------


def test_planarize_k33_single_crossing():
    pg = planarize(complete_bipartite(3, 3), k33_one_crossing())
    assert (pg.graph.n, pg.graph.m) == (7, 11)
    assert pg.dummies == ((1, 3, 0, 0),)
    assert pg.graph.degree(6) == 4
    assert pg.straighten() == complete_bipartite(3, 3)


def test_planarize_empty_is_identity():
    g = petersen()
    pg = planarize(g, Drawing.empty(g))
    assert pg.graph == g and pg.dummies == ()


def test_planarize_rejects_asymmetric():
    d = Drawing.from_orders(complete_bipartite(3, 3), {1: [3]})
    with pytest.raises(DrawingError):
        planarize(d.graph, d)


@pytest.mark.parametrize("name", ["K5", "K6", "petersen", "heawood", "mcgee"])
def test_planarize_counts_and_segments(name):
    g = NAMED_GRAPHS[name]()
    d = find_drawing(g, HeuristicConfig(seed=3))
    pg = planarize(g, d)
    c = d.crossing_count
    assert pg.graph.n == g.n + c and pg.graph.m == g.m + 2 * c
    for k in range(c):
        assert pg.graph.degree(g.n + k) == 4
    per_edge = {}
    for e, _ in pg.segments.values():
        per_edge[e] = per_edge.get(e, 0) + 1
    assert all(per_edge[e] == len(d.orders[e]) + 1 for e in range(g.m))
    assert pg.straighten() == g


# -- verify_drawing -----------------------------------------------------------


def test_verify_examples():
    g = complete_bipartite(3, 3)
    assert verify_drawing(g, k33_one_crossing()).ok
    bad = verify_drawing(g, Drawing.empty(g))
    assert not bad.ok and "not planar" in bad.cause
    assert bad.to_record() == {"graph6": "EFz_", "crossings": 0, "verdict": False, "cause": bad.cause}


def test_verify_catches_wrong_order():
    # Two crossings on one edge in the wrong order make a non-planar planarization.
    d = petersen_standard()
    e = next(i for i, o in enumerate(d.orders) if len(o) == 2)
    swapped = list(d.orders)
    swapped[e] = tuple(reversed(d.orders[e]))
    r = verify_drawing(d.graph, Drawing(d.graph, tuple(swapped)))
    assert not r.ok


def test_verify_structural_failure_is_a_verdict():
    g = complete_bipartite(3, 3)
    r = verify_drawing(g, Drawing.from_orders(g, {0: [1], 1: [0]}))
    assert not r.ok and r.cause.startswith("structurally invalid")
    r = verify_drawing(complete(4), k33_one_crossing())
    assert not r.ok and "different graph" in r.cause


def test_verify_independent_of_networkx_disagreement():
    # spot check: the planarized graph's planarity agrees with networkx
    d = petersen_standard()
    pg = planarize(d.graph, d)
    assert nx_planar(pg.graph.n, pg.graph.edges)


def test_verify_record_is_json():
    r = verify_drawing(petersen(), petersen_standard())
    assert json.loads(json.dumps(r.to_record()))["verdict"] is True


@pytest.mark.parametrize("corpus", ["cubic10.g6", "girth3.g6"])
def test_random_straight_line_drawings_verify(corpus):
    import numpy as np

    rng = np.random.default_rng(7)
    for g in load_g6(corpus)[:15]:
        pos = [tuple(p) for p in rng.random((g.n, 2))]
        d = straight_line_drawing(g, pos)
        assert verify_drawing(g, d).ok
