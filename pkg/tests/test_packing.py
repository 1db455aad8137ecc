import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import networkx as nx
from conftest import graphs, to_nx
from genconn.bounds import counting_upper_bound
from genconn.constructions import h_graph, prism_graph, wheel_graph
from genconn.flow import local_edge_connectivity
from genconn.graph import Graph, complete_bipartite, complete_graph, cycle_graph, delete_edges
from genconn.packing import (
    EXACT,
    LOWER_BOUND_ONLY,
    Budget,
    generalized_connectivity,
    max_tree_packing,
    stp_number,
)
from genconn.trees import EDGE_DISJOINT, INTERNALLY_DISJOINT, enumerate_minimal_steiner_trees, verify_packing


def oracle_packing(g, s, internal):
    """Largest disjoint family of minimal trees by plain exhaustive search."""
    sets = []
    for t in enumerate_minimal_steiner_trees(g, s):
        el = set(t.edges)
        if internal:
            el |= {("v", v) for v in t.vertices - set(s)}
        sets.append(frozenset(el))
    best = 0

    def rec(i, used, count):
        nonlocal best
        best = max(best, count)
        if count + len(sets) - i <= best:
            return
        for j in range(i, len(sets)):
            if not sets[j] & used:
                rec(j + 1, used | sets[j], count + 1)

    rec(0, frozenset(), 0)
    return best


def assert_certified(g, r):
    check = verify_packing(g, r.certificate)
    assert check.ok, check.violations
    assert len(r.certificate.trees) == r.value
    if r.status == EXACT and r.upper_certificate is not None:
        assert r.upper_certificate.to_dict().get("bound", r.upper_certificate.to_dict().get("value")) == r.value


def test_packing_examples():
    for s in itertools.combinations(range(4), 3):
        assert max_tree_packing(complete_graph(4), s, EDGE_DISJOINT).value == 2
    for s in itertools.combinations(range(5), 3):
        assert max_tree_packing(complete_graph(5), s, INTERNALLY_DISJOINT).value == 3
    for n in (5, 6, 8):
        for s in itertools.combinations(range(n), 3):
            assert max_tree_packing(cycle_graph(n), s, EDGE_DISJOINT).value == 1


def test_disconnected_terminals_give_zero():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    r = max_tree_packing(g, [0, 1, 3])
    assert r.value == 0 and r.status == EXACT and r.certificate.trees == ()
    assert r.upper_certificate.value == 0


def test_generalized_connectivity_examples():
    assert generalized_connectivity(complete_graph(6), 3, INTERNALLY_DISJOINT).value == 4
    assert generalized_connectivity(h_graph(2), 3, EDGE_DISJOINT).value == 2
    # exhaustive packing oracle: lambda_4 and kappa_4 of K_6 minus an edge are both 3
    g = delete_edges(complete_graph(6), [(0, 1)])
    for mode in (EDGE_DISJOINT, INTERNALLY_DISJOINT):
        r = generalized_connectivity(g, 4, mode)
        assert (r.value, r.status, r.witness_terminals) == (3, EXACT, (0, 1, 2, 3))


@pytest.mark.parametrize("g, lam3, kap3", [
    # values from the exhaustive packing oracle over every triple
    (complete_bipartite(3, 3), 2, 2),
    (prism_graph(3), 2, 2),
    (wheel_graph(6), 2, 2),
    (h_graph(2), 2, 1),
    (Graph(8, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7), (0, 4), (1, 5), (2, 6), (3, 7)]), 2, 2),
])
def test_frozen_oracle_values(g, lam3, kap3):
    assert generalized_connectivity(g, 3, EDGE_DISJOINT).value == lam3
    assert generalized_connectivity(g, 3, INTERNALLY_DISJOINT).value == kap3


def test_argument_errors():
    with pytest.raises(ValueError):
        generalized_connectivity(complete_graph(4), 5)
    with pytest.raises(ValueError):
        generalized_connectivity(complete_graph(4), 1)
    with pytest.raises(ValueError):
        max_tree_packing(complete_graph(4), [0])
    with pytest.raises(ValueError):
        max_tree_packing(complete_graph(4), [0, 1], mode="vertex")


def test_disconnected_graph_has_zero_with_lex_first_witness():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    r = generalized_connectivity(g, 3)
    assert r.value == 0 and r.witness_terminals == (0, 1, 3)


def test_stp_examples():
    assert stp_number(complete_bipartite(3, 3)).value == 1
    assert stp_number(cycle_graph(8)).value == 1
    r = stp_number(complete_graph(5))
    assert r.value == 2 and r.upper_certificate.bound == 2
    assert_certified(complete_graph(5), r)


def test_budget_exhaustion_degrades_status():
    g = complete_graph(7)
    tiny = Budget(node_limit=1, partition_nodes=1, quick_trees=1)
    # a sparse instance the greedy packing cannot settle
    g = delete_edges(g, [(0, 1), (0, 2), (1, 2), (3, 4), (5, 6)])
    r = max_tree_packing(g, [0, 1, 2], EDGE_DISJOINT, tiny)
    full = max_tree_packing(g, [0, 1, 2], EDGE_DISJOINT)
    assert full.status == EXACT
    assert r.value <= full.value
    if r.status == LOWER_BOUND_ONLY:
        assert r.upper_certificate is not None
    assert_certified(g, r)


def test_tree_limit_degrades_status():
    g = delete_edges(complete_graph(8), [(0, 1), (0, 2), (1, 2)])
    r = max_tree_packing(g, [0, 1, 2], EDGE_DISJOINT, Budget(tree_limit=5, quick_trees=5, partition_nodes=1))
    assert r.status in (EXACT, LOWER_BOUND_ONLY)
    assert_certified(g, r)
    assert r.value <= max_tree_packing(g, [0, 1, 2]).value


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=6), st.data())
def test_packing_matches_exhaustive_oracle(g, data):
    k = data.draw(st.integers(2, g.n))
    s = tuple(sorted(data.draw(st.lists(st.integers(0, g.n - 1), min_size=k, max_size=k, unique=True))))
    for mode in (EDGE_DISJOINT, INTERNALLY_DISJOINT):
        r = max_tree_packing(g, s, mode)
        assert r.status == EXACT
        assert r.value == oracle_packing(g, s, mode == INTERNALLY_DISJOINT)
        assert_certified(g, r)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=3, max_n=7, connected=True), st.data())
def test_connectivity_chain(g, data):
    s = tuple(sorted(data.draw(st.lists(st.integers(0, g.n - 1), min_size=3, max_size=3, unique=True))))
    kap = max_tree_packing(g, s, INTERNALLY_DISJOINT).value
    lam = max_tree_packing(g, s, EDGE_DISJOINT).value
    pair = min(local_edge_connectivity(g, x, y).value for x, y in itertools.combinations(s, 2))
    assert kap <= lam <= pair <= min(g.degree(v) for v in s)
    assert lam <= counting_upper_bound(g, s).bound


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=3, max_n=6, connected=True), st.integers(0, 100))
def test_edge_deletion_never_increases(g, pick):
    if not g.m:
        return
    e = g.edges[pick % g.m]
    h = Graph(g.n, [f for f in g.edges if f != e])
    for mode in (EDGE_DISJOINT, INTERNALLY_DISJOINT):
        assert generalized_connectivity(h, 3, mode).value <= generalized_connectivity(g, 3, mode).value


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_k2_agrees_with_classical_connectivity(g):
    h = to_nx(g)
    lam = generalized_connectivity(g, 2, EDGE_DISJOINT)
    kap = generalized_connectivity(g, 2, INTERNALLY_DISJOINT)
    assert lam.value == nx.edge_connectivity(h)
    assert kap.value == nx.node_connectivity(h)
    assert_certified(g, lam)
    assert_certified(g, kap)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=9, connected=True))
def test_spanning_packing_and_partition_agree(g):
    r = stp_number(g)
    assert r.status == EXACT
    assert_certified(g, r)
    lam = nx.edge_connectivity(to_nx(g))
    assert r.value >= lam // 2


def test_results_independent_of_worker_count():
    g = delete_edges(complete_graph(7), [(0, 1), (2, 3), (4, 5)])
    one = generalized_connectivity(g, 3, INTERNALLY_DISJOINT, jobs=1)
    two = generalized_connectivity(g, 3, INTERNALLY_DISJOINT, jobs=2)
    assert one == two
