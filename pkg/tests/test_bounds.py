import itertools

import pytest
from hypothesis import given, settings

from conftest import graphs
from genconn.bounds import (
    PartitionLimitError,
    counting_upper_bound,
    crossing_edges,
    terminal_partition_bound,
    tutte_partition_number,
)
from genconn.graph import Graph, complete_bipartite, complete_graph, delete_edges, path_graph, star_graph
from genconn.spanning import max_spanning_tree_packing, pack_forests


def test_counting_bound_examples():
    b = counting_upper_bound(complete_graph(6), [0, 1, 2, 3])
    assert (b.e_in, b.e_cut, b.x_star, b.bound) == (6, 8, 2, 4)
    b = counting_upper_bound(delete_edges(complete_graph(6), [(0, 1)]), [0, 1, 2, 3])
    assert (b.e_in, b.x_star, b.bound) == (5, 1, 3)
    b = counting_upper_bound(delete_edges(complete_graph(5), [(0, 1), (1, 2)]), [0, 1, 2])
    assert (b.e_in, b.x_star, b.bound) == (1, 0, 2)
    assert b.to_dict()["kind"] == "counting"


def test_internal_counting_bound_charges_outside_vertices():
    # four edge-disjoint {0,1,2}-trees would need more non-terminals than K_4 has
    assert counting_upper_bound(complete_graph(4), [0, 1, 2]).bound == 2
    assert counting_upper_bound(complete_graph(4), [0, 1, 2], internal=True).bound == 2
    assert counting_upper_bound(star_graph(4), [1, 2, 3], internal=True).bound == 1


def test_tutte_examples():
    value, cert = tutte_partition_number(path_graph(5))
    assert value == 1 and cert.blocks == tuple((v,) for v in range(5))
    assert tutte_partition_number(complete_graph(4))[0] == 2
    assert tutte_partition_number(complete_bipartite(4, 4))[0] == 2
    assert tutte_partition_number(Graph(4, [(0, 1), (2, 3)]))[0] == 0


def test_tutte_limits():
    with pytest.raises(PartitionLimitError):
        tutte_partition_number(complete_graph(13))
    assert tutte_partition_number(complete_graph(13), partition_limit=13)[0] == 6
    with pytest.raises(ValueError):
        tutte_partition_number(Graph(1))


def brute_partition_number(g):
    best = None
    verts = list(range(g.n))

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for p in partitions(rest):
            yield [[first]] + p
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1:]

    for p in partitions(verts):
        if len(p) >= 2:
            b = crossing_edges(g, p) // (len(p) - 1)
            best = b if best is None else min(best, b)
    return best


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=7, connected=True))
def test_partition_number_equals_spanning_packing(g):
    value, cert = tutte_partition_number(g)
    assert value == brute_partition_number(g)
    assert crossing_edges(g, cert.blocks) == cert.crossing
    assert cert.crossing // (len(cert.blocks) - 1) == value
    trees = max_spanning_tree_packing(g)
    assert len(trees) == value
    used = [e for t in trees for e in t]
    assert len(used) == len(set(used)) and all(len(t) == g.n - 1 for t in trees)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=3, max_n=7, connected=True))
def test_terminal_partition_blocks_each_hold_a_terminal(g):
    s = [0, 1, g.n - 1]
    cert, complete = terminal_partition_bound(g, s)
    assert complete and cert is not None
    assert all(set(b) & set(s) for b in cert.blocks)
    assert sorted(v for b in cert.blocks for v in b) == list(range(g.n))
    assert cert.bound == crossing_edges(g, cert.blocks) // (len(cert.blocks) - 1)


def test_forest_packing_is_maximal():
    forests = pack_forests(complete_graph(5), 3)
    assert sum(len(f) for f in forests) == 10
    assert sorted(e for f in forests for e in f) == list(itertools.combinations(range(5), 2))
