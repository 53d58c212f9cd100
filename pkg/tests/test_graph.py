import math

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from crossnum.graph import (
    EdgeRef,
    Graph,
    Graph6Error,
    bridges,
    components,
    degree_sequence,
    diamonds,
    girth,
    is_connected,
    is_cubic,
    parse_graph6,
    read_graph6,
    triangles,
    write_graph6,
)
from crossnum.named import NAMED_GRAPHS, complete, complete_bipartite, cube, petersen, prism
from helpers import named_table, to_nx


@st.composite
def graphs(draw, max_n=32):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, keep in zip(pairs, mask) if keep])


# -- Graph ----------------------------------------------------------------


def test_graph_normalises_edges():
    g = Graph(3, [(2, 0), (1, 0)])
    assert g.edges == (EdgeRef(0, 1), EdgeRef(0, 2))
    assert g.adjacency == ((1, 2), (0,), (0,))
    assert g.edge_index(2, 0) == 1
    assert g == Graph(3, [(0, 1), (0, 2)])
    assert hash(g) == hash(Graph(3, [(0, 2), (0, 1)]))


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)], [(-1, 0)]])
def test_graph_rejects_non_simple(edges):
    with pytest.raises(ValueError):
        Graph(3, edges)


def test_edgeref_text():
    e = EdgeRef.of(5, 2)
    assert str(e) == "2-5"
    assert EdgeRef.parse("2-5") == e
    assert e.other(2) == 5
    assert e.touches(EdgeRef(5, 7)) and not e.touches(EdgeRef(3, 4))
    assert EdgeRef.parse("5-2") == e
    with pytest.raises(ValueError):
        EdgeRef.parse("5-x")


def test_induced_relabels_in_order():
    g = petersen().induced([9, 4, 0, 5])
    assert g.n == 4
    assert sorted(g.edges) == [(0, 1), (0, 2), (1, 3)]


# -- graph6 ---------------------------------------------------------------


@given(graphs())
def test_graph6_roundtrip(g):
    assert parse_graph6(write_graph6(g)) == g


@given(graphs(max_n=20))
def test_graph6_matches_networkx(g):
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert write_graph6(g) == expected


@pytest.mark.parametrize("name", list(NAMED_GRAPHS))
def test_graph6_fixture_table(name):
    assert write_graph6(NAMED_GRAPHS[name]()) == named_table()[name]


def test_graph6_known_strings():
    assert write_graph6(complete(4)) == "C~"
    assert write_graph6(complete(5)) == "D~{"
    assert write_graph6(complete_bipartite(3, 3)) == "EFz_"
    assert write_graph6(Graph(0)) == "?"
    assert write_graph6(Graph(1)) == "@"


def test_graph6_header_and_large_sizes():
    g = Graph(70, [(0, 69), (3, 4)])
    text = write_graph6(g, header=True)
    assert text.startswith(">>graph6<<~?@E")
    assert parse_graph6(text) == g
    assert write_graph6(Graph(62)).startswith("}")
    assert write_graph6(Graph(63)).startswith("~??~")


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("C~~", 2),  # payload too long
        ("C", 1),  # payload too short
        ("D~}", 2),  # nonzero padding bits
        ("C ~", 1),
        ("~??C", 0),  # small size in long form
        ("~~???@?{", 0),
    ],
)
def test_graph6_errors_carry_offsets(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_read_graph6_continues_past_bad_lines():
    items = list(read_graph6(["C~", "", "bad!", "EFz_\n"]))
    assert [ln for ln, _ in items] == [1, 3, 4]
    assert isinstance(items[1][1], Graph6Error)
    assert items[2][1] == complete_bipartite(3, 3)


# -- structural queries -----------------------------------------------------


def test_cubic_and_degrees():
    assert is_cubic(petersen()) and is_cubic(complete(4))
    assert not is_cubic(complete(5)) and not is_cubic(Graph(0))
    assert degree_sequence(Graph(3, [(0, 1)])) == [1, 1, 0]


@given(graphs(max_n=14))
def test_components_match_networkx(g):
    ours = sorted(map(tuple, components(g)))
    theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
    assert is_connected(g) == (g.n <= 1 or nx.is_connected(to_nx(g)))


@given(graphs(max_n=14))
def test_girth_matches_networkx(g):
    assert girth(g) == nx.girth(to_nx(g))


@given(graphs(max_n=14))
def test_girth3_iff_triangles(g):
    assert (girth(g) == 3) == bool(triangles(g))


@given(graphs(max_n=12))
def test_triangles_match_networkx(g):
    h = to_nx(g)
    expected = sorted(tuple(sorted(c)) for c in nx.enumerate_all_cliques(h) if len(c) == 3)
    assert triangles(g) == expected


@given(graphs(max_n=12))
def test_every_diamond_has_two_triangles(g):
    tris = set(triangles(g))
    for s, t, a, b in diamonds(g):
        assert s < t and a < b and not g.has_edge(a, b)
        assert tuple(sorted((s, t, a))) in tris
        assert tuple(sorted((s, t, b))) in tris


def test_named_girths():
    assert girth(complete(4)) == 3
    assert girth(prism()) == 3
    assert girth(cube()) == 4
    assert girth(petersen()) == 5
    assert girth(NAMED_GRAPHS["heawood"]()) == 6
    assert girth(NAMED_GRAPHS["mcgee"]()) == 7
    assert girth(NAMED_GRAPHS["coxeter"]()) == 7
    assert math.isinf(girth(Graph(4, [(0, 1), (1, 2)])))


def test_diamond_in_k4_minus_edge():
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    assert diamonds(g) == [(1, 2, 0, 3)]
    assert diamonds(complete(4)) == []


@given(graphs(max_n=14))
def test_bridges_match_networkx(g):
    if not is_connected(g):
        if g.n > 1:
            with pytest.raises(ValueError):
                bridges(g)
        return
    expected = sorted(EdgeRef.of(u, v) for u, v in nx.bridges(to_nx(g)))
    assert bridges(g) == expected
