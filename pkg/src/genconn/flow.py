"""Classical connectivity through unit-capacity maximum flow.

One small augmenting-path engine serves three cut flavours:

* edge cuts (local edge-connectivity, every edge has capacity one);
* vertex cuts (every vertex except the pair has capacity one, edges unbounded);
* mixed cuts, where both edges and unprotected vertices cost one.  The mixed
  value between two terminals bounds the number of internally disjoint trees
  that can connect a terminal set containing them.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Edge, Graph, normalize_edge

_INF = 1 << 30


@dataclass(frozen=True)
class LocalCut:
    """A cut certificate: deleting ``edges`` and ``vertices`` separates ``pair``.

    ``side`` is the part still attached to the first vertex of the pair.  For a
    disconnected graph the value is zero, the cut is empty and ``side`` is one
    component.
    """

    value: int
    edges: tuple[Edge, ...] = ()
    vertices: tuple[int, ...] = ()
    side: tuple[int, ...] = ()
    pair: tuple[int, int] | None = None
    paths: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "kind": "cut",
            "pair": list(self.pair) if self.pair else None,
            "value": self.value,
            "edges": [list(e) for e in self.edges],
            "vertices": list(self.vertices),
            "side": list(self.side),
        }


class _Network:
    __slots__ = ("cap", "flow", "nbrs")

    def __init__(self) -> None:
        self.cap: dict[tuple[int, int], int] = {}
        self.flow: dict[tuple[int, int], int] = {}
        self.nbrs: dict[int, list[int]] = {}

    def arc(self, a: int, b: int, c: int) -> None:
        for p, q in ((a, b), (b, a)):
            if (p, q) not in self.cap:
                self.cap[(p, q)] = 0
                self.flow[(p, q)] = 0
                self.nbrs.setdefault(p, []).append(q)
        self.cap[(a, b)] += c

    def finish(self) -> None:
        for lst in self.nbrs.values():
            lst.sort()

    def max_flow(self, s: int, t: int, limit: int = _INF) -> int:
        total = 0
        cap, flow, nbrs = self.cap, self.flow, self.nbrs
        while total < limit:
            parent = {s: s}
            queue = deque([s])
            while queue and t not in parent:
                a = queue.popleft()
                for b in nbrs.get(a, ()):
                    if b not in parent and cap[(a, b)] - flow[(a, b)] > 0:
                        parent[b] = a
                        queue.append(b)
            if t not in parent:
                break
            b = t
            while b != s:
                a = parent[b]
                flow[(a, b)] += 1
                flow[(b, a)] -= 1
                b = a
            total += 1
        return total

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            a = stack.pop()
            for b in self.nbrs.get(a, ()):
                if b not in seen and self.cap[(a, b)] - self.flow[(a, b)] > 0:
                    seen.add(b)
                    stack.append(b)
        return seen

    def paths(self, s: int, t: int) -> list[list[int]]:
        """Decompose the current flow into ``s``-``t`` paths (node sequences); flow cycles are dropped."""
        residual = {k: v for k, v in self.flow.items() if v > 0}
        out = []
        while True:
            path, pos, a = [s], {s: 0}, s
            while a != t:
                nxt = next((b for b in self.nbrs.get(a, ()) if residual.get((a, b), 0) > 0), None)
                if nxt is None:
                    return out
                if nxt in pos:
                    cycle = path[pos[nxt]:] + [nxt]
                    for p, q in zip(cycle, cycle[1:]):
                        residual[(p, q)] -= 1
                    for v in path[pos[nxt] + 1:]:
                        del pos[v]
                    del path[pos[nxt] + 1:]
                    a = nxt
                    continue
                pos[nxt] = len(path)
                path.append(nxt)
                a = nxt
            for p, q in zip(path, path[1:]):
                residual[(p, q)] -= 1
            out.append(path)


def _build(g: Graph, edge_cap: int, protected: set[int] | None) -> _Network:
    """Vertex ``v`` becomes nodes ``2v`` (in) and ``2v+1`` (out).

    With ``protected`` None vertices are uncapacitated; otherwise every vertex
    outside ``protected`` has capacity one.
    """
    net = _Network()
    for v in range(g.n):
        net.arc(2 * v, 2 * v + 1, _INF if protected is None or v in protected else 1)
    for u, v in g.edges:
        net.arc(2 * u + 1, 2 * v, edge_cap)
        net.arc(2 * v + 1, 2 * u, edge_cap)
    net.finish()
    return net


def _cut(g: Graph, net: _Network, x: int, y: int, value: int, protected) -> LocalCut:
    reach = net.reachable(2 * x + 1)
    cut_vertices = sorted(v for v in range(g.n) if 2 * v in reach and 2 * v + 1 not in reach)
    side = sorted(v for v in range(g.n) if 2 * v + 1 in reach)
    side_set = set(side)
    cut_edges = sorted(
        e for e in g.edges if (e[0] in side_set) != (e[1] in side_set)
        and e[0] not in cut_vertices and e[1] not in cut_vertices
    )
    paths = tuple((x,) + tuple(p[i] // 2 for i in range(1, len(p), 2)) for p in net.paths(2 * x + 1, 2 * y))
    return LocalCut(value, tuple(cut_edges), tuple(cut_vertices), tuple(side), (x, y), paths)


def _check_pair(g: Graph, x: int, y: int) -> None:
    if x == y:
        raise ValueError("local connectivity needs two distinct vertices")
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise ValueError(f"vertex pair {(x, y)} outside the graph")


def local_edge_connectivity(g: Graph, x: int, y: int) -> LocalCut:
    """Maximum number of edge-disjoint ``x``-``y`` paths with a minimum edge cut.

    The decomposed paths are kept on ``LocalCut.paths``.
    """
    _check_pair(g, x, y)
    net = _build(g, 1, None)
    value = net.max_flow(2 * x + 1, 2 * y)
    return _cut(g, net, x, y, value, None)


def local_mixed_connectivity(g: Graph, x: int, y: int, protected: Iterable[int] = ()) -> LocalCut:
    """Minimum number of edges plus unprotected vertices whose removal separates x from y.

    Equals the maximum number of ``x``-``y`` paths that share no edge and no
    vertex outside ``protected`` (``x`` and ``y`` are always protected).  A
    direct edge counts as one path.
    """
    _check_pair(g, x, y)
    keep = set(protected) | {x, y}
    net = _build(g, 1, keep)
    value = net.max_flow(2 * x + 1, 2 * y)
    return _cut(g, net, x, y, value, keep)


def _component_cut(g: Graph) -> LocalCut:
    comps = g.components()
    return LocalCut(0, (), (), tuple(comps[0]), (comps[0][0], comps[1][0]))


def edge_connectivity(g: Graph) -> LocalCut:
    """Global edge-connectivity from ``n - 1`` flows rooted at vertex 0."""
    if g.n <= 1:
        return LocalCut(0)
    if not g.is_connected():
        return _component_cut(g)
    best = None
    for v in range(1, g.n):
        cut = local_edge_connectivity(g, 0, v)
        if best is None or cut.value < best.value:
            best = cut
    return best


def vertex_connectivity(g: Graph) -> LocalCut:
    """Classical vertex connectivity; ``n - 1`` for complete graphs.

    For a complete graph no separating set exists, so the witness is the
    ``n - 1`` vertices whose removal leaves a single vertex.
    """
    if g.n <= 1:
        return LocalCut(0)
    if not g.is_connected():
        return _component_cut(g)
    if g.is_complete():
        return LocalCut(g.n - 1, (), tuple(range(1, g.n)), (0,), None)
    best = None
    for x, y in itertools.combinations(range(g.n), 2):
        if g.has_edge(x, y):
            continue
        net = _build(g, _INF, {x, y})
        value = net.max_flow(2 * x + 1, 2 * y, limit=best.value if best else _INF)
        if best is None or value < best.value:
            best = _cut(g, net, x, y, value, {x, y})
    return best


def pairwise_edge_connectivity(g: Graph) -> dict[tuple[int, int], int]:
    """``lambda(x, y)`` for every pair ``x < y``."""
    return {
        (x, y): local_edge_connectivity(g, x, y).value
        for x, y in itertools.combinations(range(g.n), 2)
    }


def is_set_edge_connected(g: Graph, s: Iterable[int], threshold: int) -> bool:
    """True iff every pair of ``s`` has local edge-connectivity at least ``threshold``."""
    vs = sorted(set(s))
    if len(vs) < 2:
        raise ValueError("an edge-connected set needs at least two vertices")
    return all(local_edge_connectivity(g, x, y).value >= threshold for x, y in itertools.combinations(vs, 2))


def cut_separates(g: Graph, cut: LocalCut) -> bool:
    """Certificate check: the cut's removal leaves its pair in different components."""
    if cut.pair is None:
        return True
    drop_v = set(cut.vertices)
    drop_e = {normalize_edge(*e) for e in cut.edges}
    x, y = cut.pair
    seen = {x}
    stack = [x]
    while stack:
        a = stack.pop()
        for b in g.adj[a]:
            if b in drop_v or b in seen or normalize_edge(a, b) in drop_e:
                continue
            seen.add(b)
            stack.append(b)
    return y not in seen
