import itertools
import os

import networkx as nx
import pytest
from hypothesis import strategies as st

from genconn.graph import Graph

DATA = os.path.join(os.path.dirname(__file__), "data")
ATLAS = os.path.join(DATA, "atlas7_connected.g6")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(len(index), [(index[u], index[v]) for u, v in h.edges])


@st.composite
def graphs(draw, min_n=2, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph(n, [p for p, keep in zip(pairs, picks) if keep])
    if connected and not g.is_connected():
        # join the components by a path through their smallest vertices
        comps = g.components()
        extra = [(a[0], b[0]) for a, b in zip(comps, comps[1:])]
        g = Graph(n, list(g.edges) + extra)
    return g


@pytest.fixture(scope="session")
def atlas_path():
    return ATLAS


_ACCEPTANCE_LINES: list[str] = []


def record_criterion(line: str) -> None:
    print(line)
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
