"""Simple undirected graphs on vertices ``0..n-1`` and the transforms used everywhere else.

Graphs are immutable values.  Operations that drop vertices return a renumbering
map ``old id -> new id`` so certificates computed on the result can be mapped back.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph text.  ``offset`` is the byte offset of the offending input."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class UnsupportedSizeError(GraphFormatError):
    pass


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph with positional vertex ids.

    Edges are stored as a sorted tuple of normalized pairs; ``edge_index`` gives
    each edge's position in that tuple, which is also its bit in edge masks.
    """

    __slots__ = ("n", "edges", "adj", "edge_index", "_hash")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[Edge] = set()
        for pair in edges:
            u, v = pair
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = normalize_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.edge_index: dict[Edge, int] = {e: i for i, e in enumerate(self.edges)}
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2


# ---------------------------------------------------------------------------
# serialization

def _graph6_parse(text: str) -> Graph:
    data = text.strip("\r\n")
    if not data:
        raise GraphFormatError("empty graph6 string", 0)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}", i)
    n = ord(data[0]) - 63
    if n == 63:
        raise UnsupportedSizeError("graph6 long form (n > 62) is not supported", 0)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(data) != expected:
        offset = min(len(data), expected)
        raise GraphFormatError(
            f"graph6 length {len(data)} does not match n={n} (expected {expected})", offset
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(data[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def _graph6_write(g: Graph) -> str:
    if g.n > 62:
        raise UnsupportedSizeError(f"graph6 short form supports n <= 62, got {g.n}")
    bits = [1 if (i, j) in g.edge_index else 0 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + g.n)]
    for p in range(0, len(bits), 6):
        val = 0
        for b in bits[p:p + 6]:
            val = val << 1 | b
        out.append(chr(63 + val))
    return "".join(out)


def _edgelist_parse(text: str) -> Graph:
    # tokens carry their byte offsets for error reporting
    tokens: list[tuple[int, str]] = []
    pos = 0
    raw = text.encode()
    for tok in raw.split():
        pos = raw.index(tok, pos)
        tokens.append((pos, tok.decode()))
        pos += len(tok)

    def number(idx: int) -> int:
        if idx >= len(tokens):
            raise GraphFormatError("unexpected end of edge list", len(raw))
        off, tok = tokens[idx]
        if not tok.isdigit():
            raise GraphFormatError(f"expected a non-negative integer, got {tok!r}", off)
        return int(tok)

    n, m = number(0), number(1)
    if len(tokens) != 2 + 2 * m:
        off = tokens[2 + 2 * m][0] if len(tokens) > 2 + 2 * m else len(raw)
        raise GraphFormatError(f"header declares {m} edges, found {(len(tokens) - 2) / 2:g}", off)
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for i in range(m):
        u, v = number(2 + 2 * i), number(3 + 2 * i)
        off = tokens[2 + 2 * i][0]
        if u >= n or v >= n:
            raise GraphFormatError(f"edge ({u}, {v}) outside vertex range [0, {n})", off)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", off)
        e = normalize_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}", off)
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def _edgelist_write(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


FORMATS = ("graph6", "edge-list")


def parse_graph(text: str, format: str = "graph6") -> Graph:
    """Parse ``text`` in ``graph6`` (short form, header-less) or ``edge-list`` format."""
    if format == "graph6":
        return _graph6_parse(text)
    if format == "edge-list":
        return _edgelist_parse(text)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "graph6") -> str:
    if format == "graph6":
        return _graph6_write(g)
    if format == "edge-list":
        return _edgelist_write(g)
    raise ValueError(f"unknown graph format {format!r}")


# ---------------------------------------------------------------------------
# transforms

def complement(g: Graph) -> Graph:
    return Graph(g.n, (e for e in itertools.combinations(range(g.n), 2) if e not in g.edge_index))


def line_graph(g: Graph) -> tuple[Graph, tuple[Edge, ...]]:
    """Line graph of ``g`` and the correspondence ``vertex i of L(g) -> g.edges[i]``."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    edges = set()
    for inc in incident:
        edges.update(itertools.combinations(inc, 2))
    return Graph(g.m, edges), g.edges


def _check_vertices(g: Graph, vertices: Iterable[int]) -> set[int]:
    vs = set(vertices)
    bad = [v for v in vs if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"unknown vertices {sorted(bad)}")
    return vs


def delete_edges(g: Graph, edges: Iterable[Iterable[int]]) -> Graph:
    drop = set()
    for u, v in edges:
        e = normalize_edge(u, v)
        if e not in g.edge_index:
            raise ValueError(f"edge {e} is not in the graph")
        drop.add(e)
    return Graph(g.n, (e for e in g.edges if e not in drop))


def add_edges(g: Graph, edges: Iterable[Iterable[int]]) -> Graph:
    return Graph(g.n, list(g.edges) + [normalize_edge(u, v) for u, v in edges])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    keep = sorted(_check_vertices(g, vertices))
    mapping = {v: i for i, v in enumerate(keep)}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping]
    return Graph(len(keep), edges), mapping


def delete_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    drop = _check_vertices(g, vertices)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Vertices of ``h`` are shifted by ``g.n``."""
    off = g.n
    return Graph(g.n + h.n, list(g.edges) + [(u + off, v + off) for u, v in h.edges])


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex sets (``h`` shifted by ``g.n``)."""
    off = g.n
    cross = [(u, off + v) for u in range(g.n) for v in range(h.n)]
    return Graph(g.n + h.n, list(g.edges) + [(u + off, v + off) for u, v in h.edges] + cross)


def relabel(g: Graph, mapping: Mapping[int, int]) -> Graph:
    return Graph(g.n, ((mapping[u], mapping[v]) for u, v in g.edges))


# common small graphs

def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star_graph(n: int) -> Graph:
    """``K_{1,n-1}`` with centre 0."""
    return Graph(n, ((0, i) for i in range(1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))
