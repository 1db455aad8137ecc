"""Upper bounds on the number of disjoint Steiner trees.

* the counting bound: trees that stay inside ``G[S]`` spend ``k - 1`` edges of
  ``E(G[S])``; every other tree spends at least ``k`` edges of
  ``E(G[S]) + E[S, V - S]``;
* the terminal partition bound: for a partition of ``V`` whose blocks each
  contain a terminal, every tree crosses at least ``blocks - 1`` times.  With
  every vertex a terminal this is the classical spanning-tree partition number.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .graph import Graph
from .trees import check_terminals


class PartitionLimitError(RuntimeError):
    """The partition search exceeded its size or node limit."""


@dataclass(frozen=True)
class CountingBound:
    terminals: tuple[int, ...]
    e_in: int
    e_cut: int
    x_star: int
    bound: int

    def to_dict(self) -> dict:
        return {
            "kind": "counting",
            "terminals": list(self.terminals),
            "e_in": self.e_in,
            "e_cut": self.e_cut,
            "x_star": self.x_star,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class PartitionCertificate:
    blocks: tuple[tuple[int, ...], ...]
    crossing: int
    bound: int

    def to_dict(self) -> dict:
        return {
            "kind": "partition",
            "blocks": [list(b) for b in self.blocks],
            "crossing": self.crossing,
            "bound": self.bound,
        }


def region_counts(g: Graph, terminals: Iterable[int]) -> tuple[int, int]:
    s = set(terminals)
    e_in = e_cut = 0
    for u, v in g.edges:
        a, b = u in s, v in s
        if a and b:
            e_in += 1
        elif a or b:
            e_cut += 1
    return e_in, e_cut


def counting_upper_bound(g: Graph, s: Iterable[int], internal: bool = False) -> CountingBound:
    """Counting bound for edge-disjoint trees; ``internal`` also charges a private non-terminal vertex to each outside tree."""
    terms = check_terminals(g, s)
    k = len(terms)
    e_in, e_cut = region_counts(g, terms)
    x_star = e_in // (k - 1)
    total = e_in + e_cut
    if not internal:
        return CountingBound(terms, e_in, e_cut, x_star, x_star + (total - x_star * (k - 1)) // k)
    free = g.n - k
    best = max(x + min((total - x * (k - 1)) // k, free) for x in range(x_star + 1))
    return CountingBound(terms, e_in, e_cut, x_star, best)


def crossing_edges(g: Graph, blocks: Iterable[Iterable[int]]) -> int:
    where = {}
    for i, b in enumerate(blocks):
        for v in b:
            where[v] = i
    return sum(1 for u, v in g.edges if where[u] != where[v])


def _blocks_from_assign(assign: list[int]) -> tuple[tuple[int, ...], ...]:
    by: dict[int, list[int]] = {}
    for v, b in enumerate(assign):
        by.setdefault(b, []).append(v)
    return tuple(tuple(by[b]) for b in sorted(by))


def terminal_partition_bound(g: Graph, s: Iterable[int], initial_best: int | None = None,
                             node_budget: int = 2_000_000) -> tuple[PartitionCertificate | None, bool]:
    """Best partition bound strictly below ``initial_best``.

    Returns ``(certificate or None, complete)``; ``complete`` is False when the
    node budget ran out, in which case any certificate is still valid but may
    not be the minimum.
    """
    terms = check_terminals(g, s)
    if g.n > 64:
        raise PartitionLimitError("partition search supports at most 64 vertices")
    tset = set(terms)
    order = list(terms) + [v for v in range(g.n) if v not in tset]
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    start = g.m + 1 if initial_best is None else initial_best
    best, cross, assign, _nodes, complete = kernels.partition_search(adj, order, len(terms), start, node_budget)
    if assign is None:
        return None, complete
    return PartitionCertificate(_blocks_from_assign(assign), cross, best), complete


def tutte_partition_number(g: Graph, partition_limit: int = 12,
                           node_budget: int = 50_000_000) -> tuple[int, PartitionCertificate]:
    """``min over partitions P of floor(crossing(P) / (|P| - 1))`` with a minimising partition.

    This equals the maximum number of edge-disjoint spanning trees.  Among
    minimisers the all-singletons partition is reported when it attains the
    minimum; otherwise the first minimiser in restricted-growth order.
    Graphs with more than ``partition_limit`` vertices raise
    ``PartitionLimitError``.
    """
    if g.n < 2:
        raise ValueError("the partition number needs at least two vertices")
    if g.n > partition_limit:
        raise PartitionLimitError(f"{g.n} vertices exceeds the partition limit {partition_limit}")
    if not g.is_connected():
        comps = g.components()
        blocks = (tuple(comps[0]), tuple(v for c in comps[1:] for v in c))
        return 0, PartitionCertificate(tuple(sorted(blocks)), 0, 0)
    cert, complete = terminal_partition_bound(g, range(g.n), None, node_budget)
    if not complete:
        raise PartitionLimitError(f"partition search exceeded {node_budget} nodes")
    singles = PartitionCertificate(tuple((v,) for v in range(g.n)), g.m, g.m // (g.n - 1))
    if singles.bound == cert.bound:
        return singles.bound, singles
    return cert.bound, cert
