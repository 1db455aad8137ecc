import copy
import json

import pytest

from genconn.certificate import certificate_document, certificate_json, check_certificate
from genconn.constructions import figure2_family, h_graph
from genconn.graph import Graph, complete_graph, cycle_graph
from genconn.packing import generalized_connectivity, max_tree_packing, stp_number
from genconn.trees import EDGE_DISJOINT, INTERNALLY_DISJOINT


@pytest.fixture(params=["k4", "h2", "c6", "k5stp", "disconnected", "pair"])
def doc(request):
    g, r = {
        "k4": lambda: (complete_graph(4), max_tree_packing(complete_graph(4), [0, 1, 2])),
        "h2": lambda: (h_graph(2), generalized_connectivity(h_graph(2), 3, INTERNALLY_DISJOINT)),
        "c6": lambda: (cycle_graph(6), generalized_connectivity(cycle_graph(6), 4)),
        "k5stp": lambda: (complete_graph(5), stp_number(complete_graph(5))),
        "disconnected": lambda: (Graph(4, [(0, 1), (2, 3)]), max_tree_packing(Graph(4, [(0, 1), (2, 3)]), [0, 2])),
        "pair": lambda: (h_graph(2), generalized_connectivity(h_graph(2), 2, INTERNALLY_DISJOINT)),
    }[request.param]()
    return certificate_document(g, r)


def test_round_trip(doc):
    assert check_certificate(doc) == []
    assert check_certificate(json.loads(json.dumps(doc))) == []


def test_json_is_stable():
    g = complete_graph(4)
    a = certificate_json(g, max_tree_packing(g, [0, 1, 2]))
    b = certificate_json(g, max_tree_packing(g, [0, 1, 2]))
    assert a == b and a.endswith("\n")


def test_inflated_value_is_rejected(doc):
    bad = copy.deepcopy(doc)
    bad["value"] += 1
    assert check_certificate(bad)


@pytest.mark.parametrize("g", [complete_graph(4), h_graph(2), cycle_graph(6)])
def test_dropped_tree_is_rejected(g):
    doc = certificate_document(g, generalized_connectivity(g, 3))
    bad = copy.deepcopy(doc)
    bad["trees"].pop()
    assert check_certificate(bad)


def test_shared_edge_is_rejected():
    g = complete_graph(4)
    doc = certificate_document(g, max_tree_packing(g, [0, 1, 2], EDGE_DISJOINT))
    doc["trees"][1] = doc["trees"][0]
    problems = check_certificate(doc)
    assert any("shared" in p for p in problems)


def test_tampered_partition_is_rejected():
    g = figure2_family(1, 0)
    doc = certificate_document(g, max_tree_packing(g, [0, 1, 2]))
    assert doc["upper_certificate"]["kind"] == "partition"
    bad = copy.deepcopy(doc)
    bad["upper_certificate"]["crossing"] -= 1
    assert check_certificate(bad)
    bad = copy.deepcopy(doc)
    bad["upper_certificate"]["bound"] += 1
    assert check_certificate(bad)


def test_tampered_cut_is_rejected():
    g = cycle_graph(5)
    doc = certificate_document(g, generalized_connectivity(g, 2))
    assert doc["upper_certificate"]["kind"] == "cut"
    bad = copy.deepcopy(doc)
    bad["upper_certificate"]["edges"] = bad["upper_certificate"]["edges"][:1]
    bad["upper_certificate"]["value"] = 1
    assert check_certificate(bad)


def test_malformed_documents():
    assert check_certificate({})
    assert check_certificate({"value": 1, "status": "exact", "mode": "bogus", "witness_terminals": [0, 1],
                              "trees": [], "graph": {"n": 2, "edges": []}})
