import itertools

import networkx as nx
import pytest
from hypothesis import given

from conftest import from_nx, graphs, to_nx
from genconn.graph import (
    Graph,
    GraphFormatError,
    UnsupportedSizeError,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_edges,
    delete_vertices,
    disjoint_union,
    induced_subgraph,
    join,
    line_graph,
    parse_graph,
    path_graph,
    relabel,
    serialize_graph,
    star_graph,
)


def test_graph6_known_strings():
    # reference strings from the networkx encoder
    assert serialize_graph(complete_graph(4)) == "C~"
    assert parse_graph("C~") == complete_graph(4)
    assert parse_graph("@") == Graph(1)
    assert serialize_graph(Graph(0)) == "?"


@given(graphs(min_n=0, max_n=12))
def test_graph6_matches_networkx_codec(g):
    ours = serialize_graph(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs
    assert parse_graph(theirs) == g
    assert from_nx(nx.from_graph6_bytes(ours.encode())) == g


@given(graphs(min_n=0, max_n=9))
def test_edge_list_round_trip(g):
    assert parse_graph(serialize_graph(g, "edge-list"), "edge-list") == g


def test_graph6_rejects_bad_input():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("C~~")
    assert exc.value.offset == 2
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("C\x01")
    assert exc.value.offset == 1
    with pytest.raises(UnsupportedSizeError):
        parse_graph("~" + "?" * 20)
    with pytest.raises(UnsupportedSizeError):
        serialize_graph(Graph(63))


def test_edge_list_errors_report_offsets():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("3 2\n0 1\n1 x\n", "edge-list")
    assert exc.value.offset == 10
    with pytest.raises(GraphFormatError, match="self-loop"):
        parse_graph("3 1\n1 1\n", "edge-list")
    with pytest.raises(GraphFormatError, match="duplicate"):
        parse_graph("3 2\n0 1\n1 0\n", "edge-list")
    with pytest.raises(GraphFormatError, match="outside"):
        parse_graph("3 1\n0 3\n", "edge-list")
    with pytest.raises(GraphFormatError, match="header declares"):
        parse_graph("3 2\n0 1\n", "edge-list")


def test_constructor_validation():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])


def test_standard_graphs():
    assert complete_graph(5).m == 10
    assert path_graph(4).edges == ((0, 1), (1, 2), (2, 3))
    assert cycle_graph(5).min_degree() == 2
    assert star_graph(5).degree(0) == 4
    assert complete_bipartite(2, 3).m == 6
    assert not Graph(3, [(0, 1)]).is_connected()
    assert Graph(3, [(0, 1)]).components() == [[0, 1], [2]]


@given(graphs(max_n=8))
def test_line_graph_matches_networkx(g):
    lg, corr = line_graph(g)
    assert lg.n == g.m
    theirs = nx.line_graph(to_nx(g))
    index = {e: i for i, e in enumerate(corr)}
    assert {tuple(sorted((index[tuple(sorted(a))], index[tuple(sorted(b))]))) for a, b in theirs.edges} == set(lg.edges)


@given(graphs(max_n=8))
def test_complement_is_involution(g):
    gc = complement(g)
    assert gc.m + g.m == g.n * (g.n - 1) // 2
    assert complement(gc) == g


def test_vertex_deletion_returns_renumbering():
    g = cycle_graph(5)
    h, mapping = delete_vertices(g, [1])
    assert mapping == {0: 0, 2: 1, 3: 2, 4: 3}
    assert h == path_graph(4).__class__(4, [(1, 2), (2, 3), (0, 3)])
    sub, mapping = induced_subgraph(g, [0, 1, 2])
    assert sub == path_graph(3)
    with pytest.raises(ValueError):
        delete_vertices(g, [7])


def test_union_join_and_relabel():
    g = disjoint_union(complete_graph(2), complete_graph(3))
    assert g.n == 5 and g.m == 4 and len(g.components()) == 2
    assert join(Graph(2), Graph(3)) == complete_bipartite(2, 3)
    assert relabel(path_graph(3), {0: 2, 1: 1, 2: 0}) == path_graph(3)
    with pytest.raises(ValueError):
        delete_edges(path_graph(3), [(0, 2)])


def test_hash_and_equality_by_value():
    a = Graph(3, [(1, 0), (2, 1)])
    b = Graph(3, [(0, 1), (1, 2)])
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
    assert all(a.has_edge(u, v) for u, v in itertools.permutations(range(2), 2))
