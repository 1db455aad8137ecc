import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genconn.constructions import (
    Family,
    FamilySpec,
    complete_minus,
    construct_family,
    example3_pair,
    figure2_family,
    h_graph,
    join_family,
    pendant_complete,
    planar_family,
    random_graph,
    theorem4_packing,
)
from genconn.flow import edge_connectivity, vertex_connectivity
from genconn.graph import complement, complete_graph, delete_edges
from genconn.packing import generalized_connectivity, stp_number
from genconn.trees import INTERNALLY_DISJOINT, verify_packing


def test_sizes():
    g = join_family(3, 9)
    assert (g.n, g.m) == (9, 21)
    assert figure2_family(1, 0).n == 11 and figure2_family(1, 0).m == 26
    assert (h_graph(2).n, h_graph(2).m) == (7, 12)
    assert (pendant_complete(5).n, pendant_complete(5).m) == (5, 7)
    assert pendant_complete(5).degree(4) == 1


@pytest.mark.parametrize("call", [
    lambda: join_family(3, 8),
    lambda: figure2_family(0, 0),
    lambda: figure2_family(1, 4),
    lambda: h_graph(0),
    lambda: pendant_complete(2),
    lambda: random_graph(4, 1.5),
    lambda: complete_minus(4),
    lambda: construct_family("nope"),
    lambda: construct_family("complete", m=3),
    lambda: planar_family("torus", n=3),
])
def test_invalid_parameters(call):
    with pytest.raises(ValueError):
        call()


@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_figure2_edge_connectivity(s, r):
    assert edge_connectivity(figure2_family(s, r)).value == 4 * s + r


def test_random_graph_is_reproducible():
    assert random_graph(10, 0.4, 7).edges == random_graph(10, 0.4, 7).edges
    assert random_graph(6, 0.0, 1).m == 0
    assert random_graph(6, 1.0, 1).m == 15


def test_complete_minus_sample():
    g = complete_minus(6, size=3, seed=2)
    assert g.m == 12 and g.edges == complete_minus(6, size=3, seed=2).edges
    assert complete_minus(5, [(0, 1)]).m == 9


def test_family_registry():
    fam = construct_family("join_family", k=2, n=6)
    assert isinstance(fam, Family) and fam.declared["kappa_2"] == 2
    spec = FamilySpec("complete_minus", (("n", 5), ("size", 2)), seed=3)
    assert construct_family(spec).graph.m == 8


def test_join_family_declared_values_hold():
    fam = construct_family("join_family", k=2, n=6)
    g = fam.graph
    assert vertex_connectivity(g).value == 2 == g.min_degree()
    assert generalized_connectivity(g, 2, INTERNALLY_DISJOINT).value == 2


@pytest.mark.parametrize("r", [1, 2])
def test_example3_pair(r):
    g, gbar = example3_pair(r)
    assert g.n == gbar.n == 4 * r + 1
    assert complement(g).edges == gbar.edges
    assert gbar.m == 4 * r * r + 2 * r
    assert stp_number(g).value == r
    assert stp_number(gbar).value == r


def test_constructive_packing_examples():
    p = theorem4_packing(5, 3, [(0, 1)], [0, 1, 2])
    g = delete_edges(complete_graph(5), [(0, 1)])
    assert verify_packing(g, p).ok and len(p.trees) == 3
    p = theorem4_packing(7, 5, [(5, 0), (5, 1)], [0, 1, 2, 3, 4])
    g = delete_edges(complete_graph(7), [(5, 0), (5, 1)])
    assert verify_packing(g, p).ok and len(p.trees) == 4


def test_constructive_packing_rejects_bad_input():
    with pytest.raises(ValueError):
        theorem4_packing(5, 4, [], [0, 1, 2, 3])
    with pytest.raises(ValueError):
        theorem4_packing(5, 3, [(0, 1), (0, 2)], [0, 1, 2])
    with pytest.raises(ValueError):
        theorem4_packing(5, 3, [], [0, 1])


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 9), st.data())
def test_constructive_packings_are_valid(n, data):
    k = data.draw(st.sampled_from([k for k in range(3, n + 1) if k % 2]))
    pairs = list(itertools.combinations(range(n), 2))
    removed = data.draw(st.lists(st.sampled_from(pairs), max_size=(k - 1) // 2, unique=True))
    s = data.draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
    g = delete_edges(complete_graph(n), removed)
    p = theorem4_packing(n, k, removed, s)
    check = verify_packing(g, p)
    assert check.ok, check.violations
    assert len(p.trees) == n - (k + 1) // 2


def test_planar_families():
    assert planar_family("grid", rows=2, cols=3).m == 7
    assert planar_family("wheel", n=5).degree(0) == 4
    assert planar_family("prism", n=4).m == 12
