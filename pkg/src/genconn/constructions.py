"""Named graph families with their known connectivity parameters, and a constructive packing for K_n minus few edges."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .graph import (
    Edge,
    Graph,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_edges,
    induced_subgraph,
    normalize_edge,
    path_graph,
    star_graph,
)
from .trees import INTERNALLY_DISJOINT, Packing, SteinerTree


class PackingInvariantError(AssertionError):
    """The constructive packing hit a state its correctness argument rules out."""


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None


@dataclass(frozen=True)
class Family:
    """A constructed graph with the parameter values known for its family.

    ``declared`` maps names such as ``lambda``, ``lambda_3``, ``kappa_n`` to
    values; ``companion`` carries a second graph for families built in pairs.
    """

    name: str
    graph: Graph
    declared: dict[str, int] = field(default_factory=dict)
    companion: Graph | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def random_graph(n: int, p: float, seed: int | None = None) -> Graph:
    """Erdős–Rényi ``G(n, p)``; each pair in lexicographic order draws once from ``random.Random(seed)``."""
    _require(0.0 <= p <= 1.0, f"p must lie in [0, 1], got {p}")
    _require(n >= 0, "n must be non-negative")
    rnd = random.Random(seed)
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < p])


def complete_minus(n: int, removed: Iterable[Iterable[int]] | None = None, size: int | None = None,
                   seed: int | None = None) -> Graph:
    """``K_n`` minus an explicit edge set, or minus ``size`` edges sampled with ``seed``."""
    _require(n >= 1, "n must be at least 1")
    all_edges = list(itertools.combinations(range(n), 2))
    if removed is None:
        _require(size is not None, "complete_minus needs an edge set or a size")
        _require(0 <= size <= len(all_edges), f"size must lie in [0, {len(all_edges)}]")
        removed = random.Random(seed).sample(all_edges, size)
    return delete_edges(complete_graph(n), removed)


def join_family(k: int, n: int) -> Graph:
    """``K_k`` joined to ``n - k`` independent vertices; clique on ``0..k-1``."""
    _require(k >= 1, "k must be at least 1")
    _require(n >= 3 * k, f"join_family needs n >= 3k, got n={n}, k={k}")
    edges = list(itertools.combinations(range(k), 2))
    edges += [(c, v) for c in range(k) for v in range(k, n)]
    return Graph(n, edges)


_FIGURE2_SIZES = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (2, 1)}


def figure2_family(s: int, r: int) -> Graph:
    """Two cliques ``P = X1 + X2`` and ``Q = Y1 + Y2`` with apexes ``u`` (to P), ``v`` (to Q), ``w`` (to X1 + Y1).

    ``X2`` and ``Y2`` are joined by a perfect matching.  Vertex ids: ``u = 0``,
    ``v = 1``, ``w = 2``, then ``X1, X2, Y1, Y2`` in that order.  Edge
    connectivity is ``4s + r``.
    """
    _require(s >= 1, f"figure2_family needs s >= 1, got {s}")
    _require(r in _FIGURE2_SIZES, f"figure2_family needs r in {{0, 1, 2, 3}}, got {r}")
    a, b = _FIGURE2_SIZES[r]
    n1, n2 = 2 * s + a, 2 * s + b
    nxt = itertools.count(3)
    x1 = [next(nxt) for _ in range(n1)]
    x2 = [next(nxt) for _ in range(n2)]
    y1 = [next(nxt) for _ in range(n1)]
    y2 = [next(nxt) for _ in range(n2)]
    p, q = x1 + x2, y1 + y2
    edges = list(itertools.combinations(p, 2)) + list(itertools.combinations(q, 2))
    edges += [(0, x) for x in p] + [(1, y) for y in q] + [(2, z) for z in x1 + y1]
    edges += list(zip(x2, y2))
    return Graph(3 + 2 * (n1 + n2), edges)


def h_graph(t: int) -> Graph:
    """``t`` copies of ``K_4`` glued at vertex 0."""
    _require(t >= 1, f"h_graph needs t >= 1, got {t}")
    edges = []
    for c in range(t):
        block = [0] + [1 + 3 * c + i for i in range(3)]
        edges += itertools.combinations(block, 2)
    return Graph(3 * t + 1, edges)


def pendant_complete(n: int) -> Graph:
    """``K_{n-1}`` on ``0..n-2`` plus the pendant edge ``(0, n-1)``."""
    _require(n >= 3, f"pendant_complete needs n >= 3, got {n}")
    return Graph(n, list(itertools.combinations(range(n - 1), 2)) + [(0, n - 1)])


def example3_pair(r: int) -> tuple[Graph, Graph]:
    """``K_{2r,2r+1}`` minus the edges left over by a maximum spanning tree packing, and its complement.

    Both graphs have exactly ``r`` edge-disjoint spanning trees.
    """
    from .packing import stp_number, Budget

    _require(r >= 1, f"example3_pair needs r >= 1, got {r}")
    base = complete_bipartite(2 * r, 2 * r + 1)
    result = stp_number(base, Budget(partition_limit=max(12, base.n)))
    if result.value != r:
        raise PackingInvariantError(f"K_{{{2 * r},{2 * r + 1}}} packs {result.value} spanning trees, expected {r}")
    used = {e for t in result.certificate.trees for e in t.edges}
    g = delete_edges(base, [e for e in base.edges if e not in used])
    return g, complement(g)


def grid_graph(rows: int, cols: int) -> Graph:
    _require(rows >= 1 and cols >= 1, "grid needs positive dimensions")
    idx = lambda i, j: i * cols + j  # noqa: E731
    edges = [(idx(i, j), idx(i, j + 1)) for i in range(rows) for j in range(cols - 1)]
    edges += [(idx(i, j), idx(i + 1, j)) for i in range(rows - 1) for j in range(cols)]
    return Graph(rows * cols, edges)


def wheel_graph(n: int) -> Graph:
    """Hub 0 joined to a cycle on ``1..n-1``."""
    _require(n >= 4, f"wheel needs n >= 4, got {n}")
    rim = [(i, i + 1) for i in range(1, n - 1)] + [(1, n - 1)]
    return Graph(n, rim + [(0, i) for i in range(1, n)])


def prism_graph(n: int) -> Graph:
    """Two ``n``-cycles ``0..n-1`` and ``n..2n-1`` joined rung by rung."""
    _require(n >= 3, f"prism needs n >= 3, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


def planar_family(kind: str, **params) -> Graph:
    builders = {"grid": grid_graph, "wheel": wheel_graph, "prism": prism_graph}
    _require(kind in builders, f"unknown planar family {kind!r}; choose from {sorted(builders)}")
    return builders[kind](**params)


# ---------------------------------------------------------------------------
# family registry

def _ceil_half(x: int) -> int:
    return (x + 1) // 2


def _declared_complete(n):
    return {f"lambda_{k}": n - _ceil_half(k) for k in range(2, n + 1)} | {
        f"kappa_{k}": n - _ceil_half(k) for k in range(2, n + 1)}


def _fam_complete_minus(n, removed=None, size=None, seed=None):
    if removed is not None:
        removed = [tuple(e) for e in removed]
    return Family("complete_minus", complete_minus(n, removed, size, seed))


def _fam_example3(r):
    g, gbar = example3_pair(r)
    return Family("example3_pair", g, {"n": 4 * r + 1, "kappa_n": r, "complement_kappa_n": r,
                                       "complement_m": 4 * r * r + 2 * r}, gbar)


FAMILIES: dict[str, tuple[tuple[str, ...], Callable[..., Family]]] = {
    "complete": (("n",), lambda n: Family("complete", complete_graph(n), _declared_complete(n))),
    "complete_bipartite": (("a", "b"), lambda a, b: Family(
        "complete_bipartite", complete_bipartite(a, b),
        {"stp": (a * b) // (a + b - 1)} if a >= 1 and b >= 1 and a + b >= 2 else {})),
    "path": (("n",), lambda n: Family("path", path_graph(n))),
    "cycle": (("n",), lambda n: Family("cycle", cycle_graph(n), {"lambda": 2, "lambda_3": 1})),
    "star": (("n",), lambda n: Family("star", star_graph(n))),
    "complete_minus": (("n", "removed", "size", "seed"), _fam_complete_minus),
    "join_family": (("k", "n"), lambda k, n: Family(
        "join_family", join_family(k, n),
        {f"kappa_{k}": k, f"lambda_{k}": k, "kappa": k, "lambda": k, "delta": k})),
    "figure2_family": (("s", "r"), lambda s, r: Family(
        "figure2_family", figure2_family(s, r), {"lambda": 4 * s + r, "lambda_3": 3 * s + _ceil_half(r)})),
    "h_graph": (("t",), lambda t: Family("h_graph", h_graph(t), {"lambda": 3, "lambda_3": 2})),
    "example3_pair": (("r",), _fam_example3),
    "pendant_complete": (("n",), lambda n: Family(
        "pendant_complete", pendant_complete(n),
        {f"kappa_{k}": 1 for k in range(2, n + 1)} | {f"lambda_{k}": 1 for k in range(2, n + 1)})),
    "grid": (("rows", "cols"), lambda rows, cols: Family("grid", grid_graph(rows, cols))),
    "wheel": (("n",), lambda n: Family("wheel", wheel_graph(n))),
    "prism": (("n",), lambda n: Family("prism", prism_graph(n))),
}


def construct_family(spec: FamilySpec | str, **params) -> Family:
    """Build a named family; ``spec`` may be a ``FamilySpec`` or a family name with keyword parameters."""
    if isinstance(spec, FamilySpec):
        name, params = spec.name, dict(spec.params)
        if spec.seed is not None:
            params.setdefault("seed", spec.seed)
    else:
        name = spec
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    allowed, build = FAMILIES[name]
    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise ValueError(f"family {name!r} takes parameters {list(allowed)}, got unexpected {unknown}")
    try:
        return build(**params)
    except TypeError as exc:
        raise ValueError(f"family {name!r}: {exc}") from None


# ---------------------------------------------------------------------------
# constructive packing

def _spanning_trees_of(g: Graph, vertices: list[int], drop: set[Edge], count: int) -> list[list[Edge]]:
    """First ``count`` spanning trees of ``g[vertices]`` minus ``drop`` from the canonical maximum packing."""
    from .packing import Budget, stp_number

    sub, mapping = induced_subgraph(g, vertices)
    back = {i: v for v, i in mapping.items()}
    keep = [e for e in sub.edges if normalize_edge(back[e[0]], back[e[1]]) not in drop]
    residual = Graph(sub.n, keep)
    if count == 0:
        return []
    trees = stp_number(residual, Budget(partition_limit=max(12, residual.n))).certificate.trees
    if len(trees) < count:
        raise PackingInvariantError(
            f"the terminal set minus {sorted(drop)} has {len(trees)} edge-disjoint spanning trees, needed {count}")
    return [[normalize_edge(back[u], back[v]) for u, v in t.edges] for t in trees[:count]]


def theorem4_packing(n: int, k: int, removed: Iterable[Iterable[int]], s: Iterable[int]) -> Packing:
    """``n - (k+1)/2`` internally disjoint ``S``-trees in ``K_n`` minus at most ``(k-1)/2`` edges, ``k`` odd.

    When no removed edge joins ``S`` to the rest, every outside vertex gives a
    star and ``(k-1)/2`` spanning trees of ``G[S]`` finish the packing.
    Otherwise outside vertices are handled in nonincreasing order of missing
    edges into ``S``: each gives a star on its neighbours in ``S``, and every
    missing terminal is attached through an unused edge of ``G[S]`` to the
    smallest such neighbour.  Spanning trees of what is left of ``G[S]`` finish
    the packing.  A missing repair edge raises ``PackingInvariantError``.
    """
    terms = sorted(set(s))
    _require(k % 2 == 1 and 3 <= k <= n, f"need odd k with 3 <= k <= n, got k={k}, n={n}")
    _require(len(terms) == k and all(0 <= v < n for v in terms), f"terminal set must be {k} vertices of 0..{n - 1}")
    missing = {normalize_edge(*e) for e in removed}
    _require(all(0 <= u < n and 0 <= v < n and u != v for u, v in missing), "removed edges must join vertices of K_n")
    _require(len(missing) <= (k - 1) // 2, f"at most {(k - 1) // 2} edges may be removed, got {len(missing)}")
    g = delete_edges(complete_graph(n), missing)
    _require(g.is_connected(), "K_n minus the removed edges must be connected")

    tset = set(terms)
    outside = [w for w in range(n) if w not in tset]
    half = (k - 1) // 2
    trees: list[SteinerTree] = []
    crossing = [e for e in missing if (e[0] in tset) != (e[1] in tset)]
    consumed: set[Edge] = set()
    if not crossing:
        for w in outside:
            trees.append(SteinerTree(tuple(terms), tuple((w, u) for u in terms)))
    else:
        lacks = {w: [u for u in terms if normalize_edge(w, u) in missing] for w in outside}
        for w in sorted(outside, key=lambda w: (-len(lacks[w]), w)):
            nbrs = [u for u in terms if u not in lacks[w]]
            edges = [(w, u) for u in nbrs]
            for u in lacks[w]:
                pick = next((r for r in nbrs
                             if normalize_edge(u, r) not in missing and normalize_edge(u, r) not in consumed), None)
                if pick is None:
                    raise PackingInvariantError(f"no unused edge of G[S] joins terminal {u} to the star at {w}")
                consumed.add(normalize_edge(u, pick))
                edges.append((u, pick))
            trees.append(SteinerTree(tuple(terms), tuple(edges)))
    for t in _spanning_trees_of(g, terms, consumed, half):
        trees.append(SteinerTree(tuple(terms), tuple(t)))
    return Packing(tuple(terms), INTERNALLY_DISJOINT, tuple(trees))
