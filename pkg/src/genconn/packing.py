"""Exact Steiner tree packing: lambda(S), kappa(S), lambda_k, kappa_k with certificates.

``max_tree_packing`` climbs a ladder of methods and stops at the first that
settles the instance:

1. terminals in different components: zero, with a component cut;
2. two terminals: maximum flow (paths are the trees, the minimum cut the proof);
3. every vertex a terminal: matroid partition for spanning trees, with the
   partition number as proof;
4. otherwise an upper bound (counting, pair cuts, terminal partitions) against
   a greedy packing, then exact branch and bound over minimal Steiner trees,
   first restricted to short trees and finally over all of them.

A result is ``exact`` when its packing meets a proven bound or the
unrestricted search finished; otherwise it is ``lower-bound-only``.
"""

from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Union

from . import kernels
from .bounds import (
    CountingBound,
    PartitionCertificate,
    PartitionLimitError,
    counting_upper_bound,
    terminal_partition_bound,
    tutte_partition_number,
)
from .flow import LocalCut, local_edge_connectivity, local_mixed_connectivity
from .graph import Graph, normalize_edge
from .spanning import max_spanning_tree_packing
from .trees import (
    EDGE_DISJOINT,
    INTERNALLY_DISJOINT,
    EnumerationOverflow,
    Packing,
    SteinerTree,
    check_mode,
    check_terminals,
    mask_to_tree,
    minimal_tree_masks,
)

EXACT = "exact"
LOWER_BOUND_ONLY = "lower-bound-only"

UpperCertificate = Union[PartitionCertificate, CountingBound, LocalCut]


@dataclass(frozen=True)
class Budget:
    """Search limits for one terminal set.  Exceeding them degrades the status, never fails."""

    tree_limit: int = 200_000
    node_limit: int = 10_000_000
    partition_nodes: int = 2_000_000
    partition_limit: int = 12
    # full enumeration is tried first when it yields at most this many trees
    quick_trees: int = 3_000


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class ConnectivityResult:
    value: int
    status: str
    mode: str
    k: int
    witness_terminals: tuple[int, ...]
    certificate: Packing
    upper_certificate: UpperCertificate | None = None
    proof: str = ""
    nodes: int = field(default=0, compare=False)

    @property
    def exact(self) -> bool:
        return self.status == EXACT


def _paths_to_trees(terms: tuple[int, ...], paths) -> tuple[SteinerTree, ...]:
    return tuple(SteinerTree(terms, tuple(zip(p, p[1:]))) for p in paths)


def _component_cut(g: Graph, terms: tuple[int, ...]) -> LocalCut | None:
    for comp in g.components():
        if terms[0] in comp:
            cs = set(comp)
            other = next((t for t in terms if t not in cs), None)
            if other is None:
                return None
            return LocalCut(0, (), (), tuple(comp), (terms[0], other))
    raise AssertionError("unreachable")


class _Instance:
    """Mask encoding of one (graph, terminal set, mode) triple for the search kernel."""

    def __init__(self, g: Graph, terms: tuple[int, ...], internal: bool):
        self.g = g
        self.terms = terms
        self.k = len(terms)
        self.internal = internal
        self.smask = sum(1 << t for t in terms)
        tset = set(terms)
        self.groups = []
        for t in terms:
            mask = 0
            for y in g.adj[t]:
                mask |= 1 << g.edge_index[normalize_edge(t, y)]
            self.groups.append(mask)
        self.inner = 0
        self.region = 0
        for i, (u, v) in enumerate(g.edges):
            if u in tset and v in tset:
                self.inner |= 1 << i
            if u in tset or v in tset:
                self.region |= 1 << i
        self.vert = 0
        if internal:
            for v in range(g.n):
                if v not in tset:
                    self.vert |= 1 << (g.m + v)

    def element_mask(self, emask: int, vmask: int) -> int:
        if self.internal:
            return emask | (vmask & ~self.smask) << self.g.m
        return emask


def _bfs_tree(g: Graph, inst: _Instance, avail: int, blocked: int, order: list[list[int]]):
    """Shortest-path heuristic tree in the residual graph, or None."""
    terms = inst.terms
    in_tree = {terms[0]}
    emask = 0
    remaining = set(terms[1:])
    eidx = g.edge_index
    while remaining:
        parent = {v: -1 for v in in_tree}
        queue = deque(sorted(in_tree))
        hit = -1
        while queue and hit < 0:
            x = queue.popleft()
            for y in order[x]:
                if y in parent or blocked >> y & 1:
                    continue
                if not avail >> eidx[(x, y) if x < y else (y, x)] & 1:
                    continue
                parent[y] = x
                if y in remaining:
                    hit = y
                    break
                queue.append(y)
        if hit < 0:
            return None
        y = hit
        while parent[y] != -1:
            x = parent[y]
            emask |= 1 << eidx[(x, y) if x < y else (y, x)]
            in_tree.add(y)
            remaining.discard(y)
            y = x
    vmask = 0
    for v in in_tree:
        vmask |= 1 << v
    return emask, vmask


def _greedy_packing(g: Graph, inst: _Instance, target: int) -> list[tuple[int, int]]:
    """Best of a few deterministic greedy packings."""
    best: list[tuple[int, int]] = []
    plain = [sorted(a) for a in g.adj]
    # second pass prefers edges inside the terminal set, then the rest
    tset = set(inst.terms)
    inside_first = [sorted(a, key=lambda y: (y not in tset, y)) for a in g.adj]
    outside_first = [sorted(a, key=lambda y: (y in tset, y)) for a in g.adj]
    for order in (plain, inside_first, outside_first):
        avail = (1 << g.m) - 1
        blocked = 0
        found = []
        while len(found) < target:
            tree = _bfs_tree(g, inst, avail, blocked, order)
            if tree is None:
                break
            found.append(tree)
            avail &= ~tree[0]
            if inst.internal:
                blocked |= tree[1] & ~inst.smask
        if len(found) > len(best):
            best = found
        if len(best) >= target:
            break
    return best


def _pair_bound(g: Graph, terms: tuple[int, ...], internal: bool, pair_table) -> LocalCut:
    best = None
    for x, y in itertools.combinations(terms, 2):
        if internal:
            cut = local_mixed_connectivity(g, x, y, terms)
        elif pair_table is not None:
            cut = pair_table[(x, y)]
        else:
            cut = local_edge_connectivity(g, x, y)
        if best is None or cut.value < best.value:
            best = cut
    return best


def _result(g, terms, mode, trees, status, upper, proof, nodes=0) -> ConnectivityResult:
    packing = Packing(terms, mode, tuple(trees))
    return ConnectivityResult(len(trees), status, mode, len(terms), terms, packing, upper, proof, nodes)


def _spanning_result(g: Graph, terms: tuple[int, ...], mode: str, budget: Budget) -> ConnectivityResult:
    forests = max_spanning_tree_packing(g)
    trees = [SteinerTree(terms, tuple(f)) for f in forests]
    if g.n <= budget.partition_limit:
        value, cert = tutte_partition_number(g, budget.partition_limit)
        if value != len(trees):
            raise AssertionError(f"spanning tree packing {len(trees)} disagrees with partition number {value}")
        return _result(g, terms, mode, trees, EXACT, cert, "matroid+partition")
    cert = PartitionCertificate(tuple((v,) for v in range(g.n)), g.m, g.m // (g.n - 1))
    upper = cert if cert.bound == len(trees) else None
    return _result(g, terms, mode, trees, EXACT, upper, "matroid")


def max_tree_packing(g: Graph, s: Iterable[int], mode: str = EDGE_DISJOINT, budget: Budget = DEFAULT_BUDGET,
                     cap: int | None = None, pair_table=None) -> ConnectivityResult:
    """Maximum number of edge-disjoint (or internally disjoint) trees connecting ``s``.

    ``cap`` lets the search stop once that many trees are packed; a capped
    result below its proven bound is reported as lower-bound-only.
    ``pair_table`` optionally maps pairs ``x < y`` to precomputed edge cuts.
    """
    internal = check_mode(mode)
    terms = check_terminals(g, s)
    k = len(terms)
    comp_cut = _component_cut(g, terms)
    if comp_cut is not None:
        return _result(g, terms, mode, [], EXACT, comp_cut, "components")
    if k == 2:
        x, y = terms
        cut = local_mixed_connectivity(g, x, y) if internal else local_edge_connectivity(g, x, y)
        return _result(g, terms, mode, _paths_to_trees(terms, cut.paths), EXACT, cut, "flow")
    if k == g.n:
        return _spanning_result(g, terms, mode, budget)
    return _search(g, terms, mode, internal, budget, cap, pair_table)


def _search(g, terms, mode, internal, budget: Budget, cap, pair_table) -> ConnectivityResult:
    k = len(terms)
    inst = _Instance(g, terms, internal)
    counting = counting_upper_bound(g, terms, internal)
    pair_cut = _pair_bound(g, terms, internal, pair_table)
    upper: UpperCertificate = counting
    ub = counting.bound
    if pair_cut.value < ub:
        upper, ub = pair_cut, pair_cut.value

    def target_for(bound):
        return bound if cap is None else min(bound, cap)

    def finish(found, status, proof, nodes):
        trees = [mask_to_tree(g, terms, em) for em, _vm in found]
        return _result(g, terms, mode, trees, status, upper if status == LOWER_BOUND_ONLY or len(trees) == ub else None,
                       proof, nodes)

    found = _greedy_packing(g, inst, target_for(ub))
    if len(found) >= ub:
        return finish(found, EXACT, "bound", 0)
    if cap is not None and len(found) >= cap:
        return finish(found, LOWER_BOUND_ONLY, "capped", 0)

    if g.n <= 64:
        cert, _complete = terminal_partition_bound(g, terms, ub, budget.partition_nodes)
        if cert is not None:
            upper, ub = cert, cert.bound
            if len(found) >= ub:
                return finish(found, EXACT, "bound", 0)

    nodes_left = budget.node_limit
    used = 0
    levels: list[int | None] = []
    try:
        full = minimal_tree_masks(g, terms, budget.quick_trees)
        levels = [None]
    except EnumerationOverflow:
        full = None
        levels = list(range(k - 1, g.n - 1)) + [None]
    last_count = -1
    for level in levels:
        if level is None and full is not None:
            masks = full
        else:
            try:
                masks = minimal_tree_masks(g, terms, budget.tree_limit, level)
            except EnumerationOverflow:
                return finish(found, LOWER_BOUND_ONLY, "tree-limit", used)
        if len(masks) == last_count and level is not None:
            continue
        last_count = len(masks)
        elements = [inst.element_mask(em, vm) for em, vm in masks]
        target = target_for(ub)
        best, chosen, nodes, complete = kernels.pack_search(
            elements, inst.groups, inst.inner, inst.region, inst.vert, k, internal,
            len(found), target, nodes_left)
        used += nodes
        nodes_left -= nodes
        if chosen is not None:
            found = [masks[i] for i in chosen]
        if len(found) >= ub:
            return finish(found, EXACT, "bound", used)
        if cap is not None and len(found) >= cap:
            return finish(found, LOWER_BOUND_ONLY, "capped", used)
        if not complete:
            return finish(found, LOWER_BOUND_ONLY, "node-limit", used)
        if level is None:
            return finish(found, EXACT, "exhaustive", used)
    raise AssertionError("the unrestricted level always ends the search")


# ---------------------------------------------------------------------------
# minimum over terminal sets

_CHUNK = 16


def _solve_chunk(args):
    g, subsets, mode, budget, cap, pair_table = args
    return [max_tree_packing(g, s, mode, budget, cap, pair_table) for s in subsets]


def _pair_cuts(g: Graph) -> dict[tuple[int, int], LocalCut]:
    return {(x, y): local_edge_connectivity(g, x, y) for x, y in itertools.combinations(range(g.n), 2)}


def generalized_connectivity(g: Graph, k: int, mode: str = EDGE_DISJOINT, budget: Budget = DEFAULT_BUDGET,
                             cap: int | None = None, jobs: int = 1) -> ConnectivityResult:
    """``min`` of ``max_tree_packing`` over all ``k``-subsets, with the lexicographically first minimiser.

    Subsets are processed in lexicographic order in fixed-size chunks; each
    chunk is solved with the minimum found so far as a cap, so the output does
    not depend on ``jobs``.  ``cap`` bounds the search from the start (the
    result is then exact only if the minimum falls below it).
    """
    check_mode(mode)
    if not isinstance(k, int) or not 2 <= k <= g.n:
        raise ValueError(f"k must satisfy 2 <= k <= n = {g.n}, got {k}")
    if not g.is_connected():
        comps = g.components()
        where = {v: i for i, c in enumerate(comps) for v in c}
        for s in itertools.combinations(range(g.n), k):
            if len({where[v] for v in s}) > 1:
                return max_tree_packing(g, s, mode, budget)
    if k == g.n:
        return max_tree_packing(g, range(g.n), mode, budget)
    if k == 2:
        return _pairwise_minimum(g, mode)
    pair_table = _pair_cuts(g) if mode == EDGE_DISJOINT else None
    subsets = list(itertools.combinations(range(g.n), k))
    running = cap
    best: ConnectivityResult | None = None
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        start = 0
        while start < len(subsets):
            chunk = subsets[start:start + _CHUNK]
            start += _CHUNK
            if pool is None:
                results = _solve_chunk((g, chunk, mode, budget, running, pair_table))
            else:
                parts = [chunk[i::jobs] for i in range(jobs)]
                outs = list(pool.map(_solve_chunk, [(g, p, mode, budget, running, pair_table) for p in parts]))
                results = [None] * len(chunk)
                for i in range(jobs):
                    results[i::jobs] = outs[i]
            for r in results:
                if best is None or r.value < best.value or (r.value == best.value and r.exact and not best.exact):
                    best = r
            running = best.value if running is None else min(running, best.value)
            if best.value <= 1 and best.exact:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return best


def _pairwise_minimum(g: Graph, mode: str) -> ConnectivityResult:
    internal = mode == INTERNALLY_DISJOINT
    best = None
    for x, y in itertools.combinations(range(g.n), 2):
        cut = local_mixed_connectivity(g, x, y) if internal else local_edge_connectivity(g, x, y)
        if best is None or cut.value < best.value:
            best = cut
    terms = best.pair
    return _result(g, terms, mode, _paths_to_trees(terms, best.paths), EXACT, best, "flow")


def stp_number(g: Graph, budget: Budget = DEFAULT_BUDGET) -> ConnectivityResult:
    """Maximum number of edge-disjoint spanning trees, cross-checked against the partition number."""
    if g.n < 2:
        raise ValueError("spanning tree packing needs at least two vertices")
    if g.n > budget.partition_limit:
        raise PartitionLimitError(f"{g.n} vertices exceeds the partition limit {budget.partition_limit}")
    return _spanning_result(g, tuple(range(g.n)), EDGE_DISJOINT, budget)
