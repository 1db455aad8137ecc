"""Edge-disjoint spanning trees by matroid partition (union of graphic matroids)."""

from __future__ import annotations

from collections import deque

from .graph import Edge, Graph


def _forest_path(forest_adj: dict[int, set[int]], u: int, v: int) -> list[Edge] | None:
    """Edges on the forest path from ``u`` to ``v``, or None when they are not connected."""
    parent = {u: u}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        if a == v:
            break
        for b in sorted(forest_adj.get(a, ())):
            if b not in parent:
                parent[b] = a
                queue.append(b)
    if v not in parent:
        return None
    path = []
    while v != u:
        p = parent[v]
        path.append((p, v) if p < v else (v, p))
        v = p
    return path


def pack_forests(g: Graph, count: int) -> list[list[Edge]]:
    """``count`` edge-disjoint forests of maximum total size.

    Edges are offered in sorted order; each one is inserted along a shortest
    exchange sequence (an edge enters a forest, displacing an edge on the cycle
    it closes, which moves on to another forest, and so on).
    """
    forests: list[dict[int, set[int]]] = [{} for _ in range(count)]
    owner: dict[Edge, int] = {}

    def add(i: int, e: Edge) -> None:
        u, v = e
        forests[i].setdefault(u, set()).add(v)
        forests[i].setdefault(v, set()).add(u)
        owner[e] = i

    def remove(i: int, e: Edge) -> None:
        u, v = e
        forests[i][u].discard(v)
        forests[i][v].discard(u)
        del owner[e]

    for e in g.edges:
        label: dict[Edge, tuple[Edge, int] | None] = {e: None}
        queue = deque([e])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for i in range(count):
                if owner.get(x) == i:
                    continue
                cycle = _forest_path(forests[i], x[0], x[1])
                if cycle is None:
                    found = (x, i)
                    break
                for y in sorted(cycle):
                    if y not in label:
                        label[y] = (x, i)
                        queue.append(y)
        if found is None:
            continue
        x, i = found
        # walk the exchange sequence back to the new edge
        while True:
            prev = owner.get(x)
            if prev is not None:
                remove(prev, x)
            add(i, x)
            lab = label[x]
            if lab is None:
                break
            x, i = lab
    out: list[list[Edge]] = [[] for _ in range(count)]
    for e, i in owner.items():
        out[i].append(e)
    return [sorted(f) for f in out]


def max_spanning_tree_packing(g: Graph) -> list[list[Edge]]:
    """A maximum family of edge-disjoint spanning trees (empty when disconnected)."""
    if g.n < 2 or not g.is_connected():
        return []
    for count in range(min(g.m // (g.n - 1), g.min_degree()), 0, -1):
        forests = pack_forests(g, count)
        if all(len(f) == g.n - 1 for f in forests):
            return forests
    raise AssertionError("a connected graph always has a spanning tree")
