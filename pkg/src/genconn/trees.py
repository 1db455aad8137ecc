"""Steiner trees, packings, their verification, and minimal-tree enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Edge, Graph, normalize_edge

EDGE_DISJOINT = "edge-disjoint"
INTERNALLY_DISJOINT = "internally-disjoint"
MODES = (EDGE_DISJOINT, INTERNALLY_DISJOINT)


class EnumerationOverflow(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"more than {limit} minimal Steiner trees; raise the limit or use bounded search")
        self.limit = limit


def check_mode(mode: str) -> bool:
    """True for internally-disjoint mode."""
    if mode not in MODES:
        raise ValueError(f"unknown packing mode {mode!r}; expected one of {MODES}")
    return mode == INTERNALLY_DISJOINT


def check_terminals(g: Graph, s: Iterable[int]) -> tuple[int, ...]:
    terms = tuple(sorted(set(s)))
    if len(terms) < 2:
        raise ValueError("a terminal set needs at least two vertices")
    if terms[0] < 0 or terms[-1] >= g.n:
        raise ValueError(f"terminals {terms} outside the graph")
    return terms


@dataclass(frozen=True)
class SteinerTree:
    terminals: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(sorted(self.terminals)))
        object.__setattr__(self, "edges", tuple(sorted(normalize_edge(u, v) for u, v in self.edges)))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e) | frozenset(self.terminals[:1])

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for u, v in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def is_tree(self) -> bool:
        verts = self.vertices
        if len(self.edges) != len(verts) - 1:
            return False
        adj: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(verts)

    def is_minimal(self) -> bool:
        """Every leaf is a terminal, so no edge can be dropped."""
        s = set(self.terminals)
        return all(d > 1 or v in s for v, d in self.degrees().items())


@dataclass(frozen=True)
class Packing:
    terminals: tuple[int, ...]
    mode: str
    trees: tuple[SteinerTree, ...] = ()

    def __len__(self) -> int:
        return len(self.trees)


@dataclass(frozen=True)
class TreeAccounting:
    """Edges a tree draws from ``E(G[S])`` plus the cut ``E[S, V - S]``."""

    index: int
    inside: bool
    region_edges: int
    expected: str
    ok: bool


@dataclass(frozen=True)
class PackingVerification:
    ok: bool
    violations: tuple[str, ...] = ()
    accounting: tuple[TreeAccounting, ...] = field(default=())

    def __iter__(self):
        return iter((self.ok, self.accounting))


def verify_packing(g: Graph, p: Packing) -> PackingVerification:
    """Check every packing invariant against ``g`` and report per-tree edge accounting.

    A tree inside ``G[S]`` must use exactly ``k - 1`` edges there; a tree that
    reaches outside uses at least ``k`` edges of ``E(G[S])`` and ``E[S, V - S]``.
    """
    violations: list[str] = []
    accounting: list[TreeAccounting] = []
    s = set(p.terminals)
    k = len(s)
    if p.mode not in MODES:
        violations.append(f"unknown mode {p.mode!r}")
    if k < 2:
        violations.append("terminal set has fewer than two vertices")
    edge_owner: dict[Edge, int] = {}
    vertex_owner: dict[int, int] = {}
    for i, t in enumerate(p.trees):
        if tuple(sorted(s)) != t.terminals:
            violations.append(f"tree {i} has terminals {list(t.terminals)}, packing has {sorted(s)}")
        missing = [e for e in t.edges if e not in g.edge_index]
        if missing:
            violations.append(f"tree {i} uses non-edges {missing}")
        if not t.edges or not t.is_tree():
            violations.append(f"tree {i} is not a tree")
        uncovered = sorted(s - t.vertices)
        if uncovered:
            violations.append(f"tree {i} misses terminals {uncovered}")
        for e in t.edges:
            if e in edge_owner:
                violations.append(f"edge {e} shared by trees {edge_owner[e]} and {i}")
            else:
                edge_owner[e] = i
        if p.mode == INTERNALLY_DISJOINT:
            for v in sorted(t.vertices - s):
                if v in vertex_owner:
                    violations.append(f"non-terminal vertex {v} shared by trees {vertex_owner[v]} and {i}")
                else:
                    vertex_owner[v] = i
        inside = all(u in s and v in s for u, v in t.edges)
        region = sum(1 for u, v in t.edges if u in s or v in s)
        if inside:
            acc_ok, expected = region == k - 1, f"=={k - 1}"
        else:
            acc_ok, expected = region >= k, f">={k}"
        accounting.append(TreeAccounting(i, inside, region, expected, acc_ok))
    return PackingVerification(not violations, tuple(violations), tuple(accounting))


# ---------------------------------------------------------------------------
# enumeration

def minimal_tree_masks(g: Graph, terminals: tuple[int, ...], limit: int,
                       max_edges: int | None = None) -> list[tuple[int, int]]:
    """``(edge mask, vertex mask)`` of every minimal Steiner tree, in generation order.

    A tree is grown from the first terminal; each step attaches the smallest
    terminal still outside through a simple path whose interior avoids the
    current tree.  Every tree whose leaves are all terminals arises from
    exactly one such sequence.  ``max_edges`` restricts to trees with at most
    that many edges.
    """
    nbrs = [[(y, g.edge_index[normalize_edge(x, y)]) for y in sorted(g.adj[x])] for x in range(g.n)]
    smask = 0
    for t in terminals:
        smask |= 1 << t
    cap = g.n - 1 if max_edges is None else max_edges
    out: list[tuple[int, int]] = []

    def grow(vmask: int, emask: int, nedges: int) -> None:
        outside = smask & ~vmask
        if not outside:
            out.append((emask, vmask))
            if len(out) > limit:
                raise EnumerationOverflow(limit)
            return
        t = (outside & -outside).bit_length() - 1
        walk(t, 1 << t, 0, 0, vmask, emask, nedges)

    def walk(x: int, pmask: int, pemask: int, plen: int, vmask: int, emask: int, nedges: int) -> None:
        for y, ei in nbrs[x]:
            if vmask >> y & 1:
                # every terminal still outside costs at least one more edge
                nv = vmask | pmask
                if nedges + plen + 1 + bin(smask & ~nv).count("1") <= cap:
                    grow(nv, emask | pemask | 1 << ei, nedges + plen + 1)
            elif not pmask >> y & 1:
                npm = pmask | 1 << y
                rest = bin(smask & ~(vmask | npm)).count("1")
                if nedges + plen + 2 + rest <= cap:
                    walk(y, npm, pemask | 1 << ei, plen + 1, vmask, emask, nedges)

    grow(1 << terminals[0], 0, 0)
    return out


def mask_to_tree(g: Graph, terminals: tuple[int, ...], emask: int) -> SteinerTree:
    edges = []
    while emask:
        low = emask & -emask
        edges.append(g.edges[low.bit_length() - 1])
        emask ^= low
    return SteinerTree(terminals, tuple(edges))


def enumerate_minimal_steiner_trees(g: Graph, s: Iterable[int], limit: int = 200_000) -> list[SteinerTree]:
    """All trees containing ``s`` whose leaves lie in ``s``, ordered by sorted edge list.

    Raises ``EnumerationOverflow`` when more than ``limit`` exist.
    """
    terms = check_terminals(g, s)
    if limit <= 0:
        raise ValueError("limit must be positive")
    masks = minimal_tree_masks(g, terms, limit)
    trees = [mask_to_tree(g, terms, em) for em, _ in masks]
    trees.sort(key=lambda t: t.edges)
    return trees
