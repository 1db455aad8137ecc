"""Machine-checkable statements about generalized connectivity, evaluated over graph corpora.

Each check turns one corpus member into zero or more instances.  An instance
passes, fails, or is skipped when the solver could not settle it within its
budget; skipped instances never count as passes.  Instances whose hypotheses
do not hold for the member are not counted at all.

Where only a lower bound is needed the solver is capped at the required
value, so a result that is merely a lower bound can still prove a pass.
"""

from __future__ import annotations

import functools
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator

from .corpus import CorpusMember, CorpusSpec, load_corpus
from .flow import edge_connectivity, local_edge_connectivity, vertex_connectivity
from .graph import Graph, GraphFormatError, complement, line_graph, parse_graph, serialize_graph
from .packing import (
    DEFAULT_BUDGET,
    Budget,
    ConnectivityResult,
    generalized_connectivity,
    max_tree_packing,
    stp_number,
)
from .trees import EDGE_DISJOINT, INTERNALLY_DISJOINT

PASS, FAIL, SKIP, NA = "pass", "fail", "skip", "n/a"


@dataclass(frozen=True)
class CheckOptions:
    """Which ``k`` to evaluate and how large derived line graphs may get.

    ``k_values`` overrides the default range ``3..min(n, k_max)``.  Checks on
    complete graphs default to every ``2..n``.
    """

    k_values: tuple[int, ...] | None = None
    k_max: int = 5
    # vertices allowed in a line graph whose generalized connectivity is computed
    steiner_line_limit: int = 10
    # vertices allowed in a line graph whose classical connectivity is computed
    classical_line_limit: int = 40
    line_graph_max_edges: int = 9

    def ks(self, n: int, lo: int = 3) -> list[int]:
        if self.k_values is not None:
            return [k for k in self.k_values if lo <= k <= n]
        return list(range(lo, min(n, self.k_max) + 1))


@dataclass(frozen=True)
class Outcome:
    status: str
    instance: str
    params: dict = field(default_factory=dict)
    computed: Any = None
    expected: Any = None
    reason: str = ""


@dataclass
class VerificationReport:
    check: str
    corpus: str
    corpus_size: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    not_applicable: int = 0
    counterexamples: list = field(default_factory=list)
    skips: list = field(default_factory=list)
    report_only: bool = False
    wall_time: float = field(default=0.0, compare=False)

    @property
    def evaluated(self) -> int:
        return self.passed + self.failed

    @property
    def status(self) -> str:
        if self.report_only:
            return "counterexample-found" if self.failed else "no-counterexample-found"
        if self.failed:
            return "fail"
        if self.skipped:
            return "skips-present"
        if not self.evaluated:
            return "no-applicable-instances"
        return "pass"

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        if self.skipped:
            return 3
        return 0

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "corpus": self.corpus,
            "corpus_size": self.corpus_size,
            "evaluated": self.evaluated,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "not_applicable": self.not_applicable,
            "status": self.status,
            "report_only": self.report_only,
            "counterexamples": self.counterexamples,
            "skips": self.skips,
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def table(self) -> str:
        rows = [
            ("check", self.check), ("corpus", self.corpus), ("corpus size", self.corpus_size),
            ("evaluated", self.evaluated), ("passed", self.passed), ("failed", self.failed),
            ("skipped", self.skipped), ("not applicable", self.not_applicable),
            ("status", self.status), ("wall time", f"{self.wall_time:.2f}s"),
        ]
        width = max(len(r[0]) for r in rows)
        lines = [f"{name:<{width}}  {value}" for name, value in rows]
        for c in self.counterexamples:
            lines.append(f"  counterexample #{c['index']} {c['instance']}: computed {c['computed']}, "
                         f"expected {c['expected']} [{c['graph']}]")
        for s in self.skips:
            lines.append(f"  skipped #{s['index']} {s['instance']}: {s['reason']}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# solver access with per-process memoisation

@functools.lru_cache(maxsize=16384)
def _gc(g: Graph, k: int, mode: str, budget: Budget, cap: int | None) -> ConnectivityResult:
    return generalized_connectivity(g, k, mode, budget, cap)


@functools.lru_cache(maxsize=4096)
def _edge_conn(g: Graph) -> int:
    return edge_connectivity(g).value


@functools.lru_cache(maxsize=4096)
def _vertex_conn(g: Graph) -> int:
    return vertex_connectivity(g).value


@functools.lru_cache(maxsize=4096)
def _pair_table(g: Graph):
    return {(x, y): local_edge_connectivity(g, x, y) for x, y in itertools.combinations(range(g.n), 2)}


@functools.lru_cache(maxsize=1024)
def _stp(g: Graph, budget: Budget) -> ConnectivityResult:
    return max_tree_packing(g, range(g.n), EDGE_DISJOINT, budget)


def clear_caches() -> None:
    """Forget memoised solver results, e.g. before timing or a fresh comparison run."""
    for fn in (_gc, _edge_conn, _vertex_conn, _pair_table, _stp):
        fn.cache_clear()


def _lam(g, k, budget, cap=None):
    return _gc(g, k, EDGE_DISJOINT, budget, cap)


def _kap(g, k, budget, cap=None):
    return _gc(g, k, INTERNALLY_DISJOINT, budget, cap)


def _ceil_half(x: int) -> int:
    return (x + 1) // 2


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _at_least(r: ConnectivityResult, need: int, instance: str, params: dict) -> Outcome:
    if r.value >= need:
        return Outcome(PASS, instance, params, r.value, f">= {need}")
    if r.exact:
        return Outcome(FAIL, instance, params, r.value, f">= {need}")
    return Outcome(SKIP, instance, params, r.value, f">= {need}", f"search budget exhausted at {r.value} trees")


def _at_most(r: ConnectivityResult, limit: int, instance: str, params: dict) -> Outcome:
    if r.value > limit:
        return Outcome(FAIL, instance, params, r.value, f"<= {limit}")
    if r.exact:
        return Outcome(PASS, instance, params, r.value, f"<= {limit}")
    return Outcome(SKIP, instance, params, r.value, f"<= {limit}", "only a lower bound was established")


def _need_exact(*results: ConnectivityResult) -> bool:
    return all(r.exact for r in results)


def _skip(instance, params, reason="only a lower bound was established") -> Outcome:
    return Outcome(SKIP, instance, params, reason=reason)


def _verdict(ok: bool, instance, params, computed, expected) -> Outcome:
    return Outcome(PASS if ok else FAIL, instance, params, computed, expected)


Check = Callable[[CorpusMember, Budget, CheckOptions], Iterator[Outcome]]


# ---------------------------------------------------------------------------
# checks

def _complete_value(mode_fn, label):
    def check(member, budget, opts):
        g = member.graph
        if g.n < 2 or not g.is_complete():
            return
        ks = opts.ks(g.n, lo=2) if opts.k_values is not None else range(2, g.n + 1)
        for k in ks:
            r = mode_fn(g, k, budget)
            expected = g.n - _ceil_half(k)
            params = {"k": k}
            if not r.exact and r.value <= expected:
                yield _skip(f"{label}_{k}(K_{g.n})", params)
            else:
                yield _verdict(r.value == expected, f"{label}_{k}(K_{g.n})", params, r.value, expected)
    return check


def check_value_range(member, budget, opts):
    g = member.graph
    if not g.is_connected():
        return
    for k in opts.ks(g.n):
        upper = g.n - _ceil_half(k)
        for label, fn in (("kappa", _kap), ("lambda", _lam)):
            r = fn(g, k, budget)
            params = {"k": k}
            inst = f"1 <= {label}_{k} <= {upper}"
            if r.value > upper:
                yield Outcome(FAIL, inst, params, r.value, f"[1, {upper}]")
            elif r.value >= 1 and r.exact:
                yield Outcome(PASS, inst, params, r.value, f"[1, {upper}]")
            elif r.exact:
                yield Outcome(FAIL, inst, params, r.value, f"[1, {upper}]")
            else:
                yield _skip(inst, params)


def check_parameter_chain(member, budget, opts):
    g = member.graph
    if not g.is_connected():
        return
    delta = g.min_degree()
    for k in opts.ks(g.n):
        kap, lam = _kap(g, k, budget), _lam(g, k, budget)
        params = {"k": k}
        inst = f"kappa_{k} <= lambda_{k} <= delta"
        if not _need_exact(kap, lam):
            yield _skip(inst, params)
            continue
        yield _verdict(kap.value <= lam.value <= delta, inst, params, [kap.value, lam.value, delta], "non-decreasing")


def check_edge_deletion_monotone(member, budget, opts):
    g = member.graph
    for k in opts.ks(g.n):
        for label, fn in (("kappa", _kap), ("lambda", _lam)):
            whole = fn(g, k, budget)
            for e in g.edges:
                sub = Graph(g.n, [f for f in g.edges if f != e])
                r = fn(sub, k, budget)
                params = {"k": k, "deleted_edge": list(e)}
                inst = f"{label}_{k}(G - {e[0]}{e[1]}) <= {label}_{k}(G)"
                if not _need_exact(whole, r):
                    yield _skip(inst, params)
                    continue
                yield _verdict(r.value <= whole.value, inst, params, r.value, f"<= {whole.value}")


def check_complement_product(member, budget, opts):
    g = member.graph
    gbar = complement(g)
    disconnected = not g.is_connected() or not gbar.is_connected()
    for k in opts.ks(g.n):
        a, b = _kap(g, k, budget), _kap(gbar, k, budget)
        params = {"k": k}
        inst = f"kappa_{k}(G) * kappa_{k}(co-G) == 0 iff G or co-G disconnected"
        if not _need_exact(a, b):
            yield _skip(inst, params)
            continue
        yield _verdict((a.value * b.value == 0) == disconnected, inst, params,
                       a.value * b.value, "0" if disconnected else "> 0")


def _missing_edges(g: Graph) -> int:
    return g.n * (g.n - 1) // 2 - g.m


def check_complete_minus_equality(member, budget, opts):
    g = member.graph
    if not g.is_connected():
        return
    missing = _missing_edges(g)
    for k in opts.ks(g.n):
        top = g.n - _ceil_half(k)
        predicted = missing == 0 if k % 2 == 0 else missing <= (k - 1) // 2
        for label, fn in (("kappa", _kap), ("lambda", _lam)):
            r = fn(g, k, budget)
            params = {"k": k, "missing_edges": missing}
            inst = f"{label}_{k} == {top} iff K_n minus at most {0 if k % 2 == 0 else (k - 1) // 2} edges"
            if not r.exact and r.value < top:
                yield _skip(inst, params)
                continue
            yield _verdict((r.value == top) == predicted, inst, params, r.value,
                           f"== {top}" if predicted else f"< {top}")


def check_strictly_below_top(member, budget, opts):
    g = member.graph
    if not g.is_connected():
        return
    missing = _missing_edges(g)
    for k in opts.ks(g.n):
        if k % 2 == 0 and k >= 4 and missing == 1:
            bound = g.n - k // 2
        elif k % 2 == 1 and missing >= (k + 1) // 2:
            bound = g.n - (k + 1) // 2
        else:
            continue
        yield _at_most(_lam(g, k, budget), bound - 1, f"lambda_{k} < {bound}", {"k": k, "missing_edges": missing})


def check_constructive_packing(member, budget, opts):
    g = member.graph
    missing = _missing_edges(g)
    if g.n < 3 or g.n % 2 == 0 or missing > (g.n - 1) // 2:
        return
    yield _at_least(_stp(g, budget), (g.n - 1) // 2, f"spanning trees >= {(g.n - 1) // 2}",
                    {"missing_edges": missing})


def check_complement_sum_product(member, budget, opts):
    g = member.graph
    gbar = complement(g)
    for k in opts.ks(g.n):
        top = g.n - _ceil_half(k)
        a, b = _kap(g, k, budget), _kap(gbar, k, budget)
        params = {"k": k}
        if not _need_exact(a, b):
            yield _skip(f"complement sum and product k={k}", params)
            continue
        s, p = a.value + b.value, a.value * b.value
        yield _verdict(1 <= s <= top, f"1 <= sum <= {top}", params, s, f"[1, {top}]")
        yield _verdict(0 <= p <= top * top // 4, f"product <= {top * top // 4}", params, p,
                       f"[0, {top * top // 4}]")


def check_below_edge_connectivity(member, budget, opts):
    g = member.graph
    lam = _edge_conn(g)
    for k in opts.ks(g.n):
        yield _at_most(_lam(g, k, budget), lam, f"lambda_{k} <= lambda", {"k": k})


def check_lower_from_edge_connectivity(member, budget, opts):
    g = member.graph
    if g.n < 3 or not g.is_connected():
        return
    lam = _edge_conn(g)
    s, r = divmod(lam, 4)
    need = 3 * s + _ceil_half(r)
    yield _at_least(_lam(g, 3, budget, need), need, f"lambda_3 >= 3s + ceil(r/2) = {need}",
                    {"lambda": lam, "s": s, "r": r})


def check_planar_window(member, budget, opts):
    g = member.graph
    if "planar" not in member.tags or g.n < 3 or not g.is_connected():
        return
    lam = _edge_conn(g)
    r = _lam(g, 3, budget)
    inst = f"{lam - 1} <= lambda_3 <= {lam}"
    if not r.exact:
        yield _skip(inst, {"lambda": lam})
        return
    yield _verdict(lam - 1 <= r.value <= lam, inst, {"lambda": lam}, r.value, f"[{lam - 1}, {lam}]")


def _triple_threshold(t: int) -> int:
    return (8 * t + 3) // 6


def check_edge_connected_triples(member, budget, opts):
    g = member.graph
    if g.n < 3:
        return
    table = _pair_table(g)
    for s in itertools.combinations(range(g.n), 3):
        c = min(table[p].value for p in itertools.combinations(s, 2))
        ts = [t for t in (1, 2, 3) if c >= _triple_threshold(t)]
        if not ts:
            continue
        r = max_tree_packing(g, s, EDGE_DISJOINT, budget, max(ts), table)
        for t in ts:
            yield _at_least(r, t, f"lambda({{{s[0]},{s[1]},{s[2]}}}) >= {t}",
                            {"terminals": list(s), "t": t, "pair_edge_connectivity": c})


def check_line_graph_connectivity(member, budget, opts):
    g = member.graph
    if not g.is_connected() or g.m < 2:
        return
    lg, _ = line_graph(g)
    lam, kap = _edge_conn(g), _vertex_conn(g)
    if lam >= 2:
        got = _vertex_conn(lg)
        yield _verdict(got >= lam, "kappa(L(G)) >= lambda(G)", {"lambda": lam}, got, f">= {lam}")
    got = _edge_conn(lg)
    yield _verdict(got >= 2 * lam - 2, "lambda(L(G)) >= 2 lambda(G) - 2", {"lambda": lam}, got, f">= {2 * lam - 2}")
    if lg.m <= opts.classical_line_limit and lg.m >= 2:
        llg, _ = line_graph(lg)
        got = _vertex_conn(llg)
        yield _verdict(got >= 2 * kap - 2, "kappa(L(L(G))) >= 2 kappa(G) - 2", {"kappa": kap}, got,
                       f">= {2 * kap - 2}")


def _is_complete_bipartite(g: Graph) -> tuple[int, int] | None:
    if g.n < 2 or not g.is_connected():
        return None
    color = {0: 0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y not in color:
                color[y] = 1 - color[x]
                stack.append(y)
            elif color[y] == color[x]:
                return None
    a = sum(1 for v in color.values() if v == 0)
    b = g.n - a
    return (min(a, b), max(a, b)) if g.m == a * b else None


def check_bipartite_spanning_trees(member, budget, opts):
    parts = _is_complete_bipartite(member.graph)
    if parts is None:
        return
    a, b = parts
    r = stp_number(member.graph, Budget(**{**budget.__dict__, "partition_limit": max(budget.partition_limit,
                                                                                          member.graph.n)}))
    expected = (a * b) // (a + b - 1)
    yield _verdict(r.value == expected, f"spanning trees of K_{{{a},{b}}} == {expected}", {"a": a, "b": b},
                   r.value, expected)


def _half_up(value: int) -> int:
    """``ceil(3/2 * value - 2)``."""
    return _ceil(Fraction(3 * value, 2) - 2)


def check_line_graph_trees(member, budget, opts):
    g = member.graph
    if g.n < 3 or not g.is_connected() or g.m < 3 or g.m > opts.line_graph_max_edges:
        return
    lg, _ = line_graph(g)
    lam3 = _lam(g, 3, budget)
    if not lam3.exact:
        yield _skip("lambda_3(G) exact", {})
        return
    yield _at_least(_kap(lg, 3, budget, lam3.value), lam3.value, "lambda_3(G) <= kappa_3(L(G))",
                    {"lambda_3": lam3.value})
    need = _half_up(lam3.value)
    yield _at_least(_lam(lg, 3, budget, max(need, 0)), need, "lambda_3(L(G)) >= 3/2 lambda_3(G) - 2",
                    {"lambda_3": lam3.value})
    if 3 <= lg.m <= opts.steiner_line_limit:
        llg, _ = line_graph(lg)
        kap3 = _kap(g, 3, budget)
        if not kap3.exact:
            yield _skip("kappa_3(G) exact", {})
            return
        need = _half_up(kap3.value)
        yield _at_least(_kap(llg, 3, budget, max(need, 0)), need, "kappa_3(L(L(G))) >= 3/2 kappa_3(G) - 2",
                        {"kappa_3": kap3.value})


def check_iterated_linegraph(member, budget, opts):
    g = member.graph
    if g.n < 3 or not g.is_connected():
        return
    kap3 = _kap(g, 3, budget)
    current = g
    for power in (1, 2):
        if current.m < 3 or current.m > opts.steiner_line_limit:
            return
        current, _ = line_graph(current)
        if not current.is_connected():
            return
        if not kap3.exact:
            yield _skip(f"kappa_3(G) exact for L^{power}", {"power": power})
            return
        lam_need = _ceil(Fraction(3, 2) ** power * (kap3.value - 4) + 4)
        kap_need = _ceil(Fraction(3, 2) ** (power // 2) * (kap3.value - 4) + 4)
        params = {"power": power, "kappa_3": kap3.value}
        yield _at_least(_lam(current, 3, budget, max(lam_need, 0)), lam_need,
                        f"lambda_3(L^{power}(G)) >= (3/2)^{power} (kappa_3 - 4) + 4", params)
        yield _at_least(_kap(current, 3, budget, max(kap_need, 0)), kap_need,
                        f"kappa_3(L^{power}(G)) >= (3/2)^{power // 2} (kappa_3 - 4) + 4", params)


def check_spanning_from_edge_connectivity(member, budget, opts):
    g = member.graph
    if g.n < 2 or not g.is_connected():
        return
    ell = _edge_conn(g) // 2
    if ell < 1:
        return
    yield _at_least(_stp(g, budget), ell, f"spanning trees >= {ell}", {"lambda": 2 * ell})


def scan_triple_trees(member, budget, opts):
    g = member.graph
    if g.n < 3:
        return
    table = _pair_table(g)
    for s in itertools.combinations(range(g.n), 3):
        c = min(table[p].value for p in itertools.combinations(s, 2))
        t = c // 2
        if t < 1:
            continue
        r = max_tree_packing(g, s, EDGE_DISJOINT, budget, t, table)
        yield _at_least(r, t, f"lambda({{{s[0]},{s[1]},{s[2]}}}) >= {t}",
                        {"terminals": list(s), "pair_edge_connectivity": c})


CHECKS: dict[str, Check] = {
    "thm2_kappa_complete": _complete_value(lambda g, k, b: _kap(g, k, b), "kappa"),
    "thm3_lambda_complete": _complete_value(lambda g, k, b: _lam(g, k, b), "lambda"),
    "prop1_prop2_range": check_value_range,
    "obs1_chain": check_parameter_chain,
    "obs2_monotone": check_edge_deletion_monotone,
    "obs3_product": check_complement_product,
    "thm4_thm5_characterization": check_complete_minus_equality,
    "lemma5_lemma6_strict": check_strictly_below_top,
    "lemma7_packing": check_constructive_packing,
    "thm6_nordhaus_gaddum": check_complement_sum_product,
    "prop3_upper": check_below_edge_connectivity,
    "prop4_lower": check_lower_from_edge_connectivity,
    "planar_corollary": check_planar_window,
    "lemma1_kriesell": check_edge_connected_triples,
    "lemma2_linegraph": check_line_graph_connectivity,
    "lemma3_bipartite_stp": check_bipartite_spanning_trees,
    "prop5_linegraph": check_line_graph_trees,
    "iterated_linegraph": check_iterated_linegraph,
    "corollary2_spanning": check_spanning_from_edge_connectivity,
    "conjecture3_scan": scan_triple_trees,
}

REPORT_ONLY = {"conjecture3_scan"}


# ---------------------------------------------------------------------------
# running

def _graph_text(g: Graph) -> str:
    try:
        return serialize_graph(g, "graph6")
    except GraphFormatError:
        # too large for graph6: vertex count then the edges
        return " ".join([f"n={g.n}"] + [f"{u}-{v}" for u, v in g.edges])


def _evaluate(args):
    check_id, index, member, budget, opts = args
    counts = {PASS: 0, FAIL: 0, SKIP: 0}
    fails, skips = [], []
    applicable = False
    for o in CHECKS[check_id](member, budget, opts):
        applicable = True
        counts[o.status] += 1
        if o.status == FAIL:
            fails.append({
                "index": index, "member": member.label, "graph": _graph_text(member.graph),
                "tags": sorted(member.tags), "instance": o.instance, "params": o.params,
                "computed": o.computed, "expected": o.expected,
            })
        elif o.status == SKIP:
            skips.append({
                "index": index, "member": member.label, "graph": _graph_text(member.graph),
                "instance": o.instance, "params": o.params, "reason": o.reason,
            })
    return counts, applicable, fails, skips


def run_check(check_id: str, corpus: CorpusSpec | str | list, budget: Budget = DEFAULT_BUDGET,
              options: CheckOptions = CheckOptions(), jobs: int = 1) -> VerificationReport:
    """Evaluate ``check_id`` over every corpus member; output does not depend on ``jobs``."""
    if check_id not in CHECKS:
        raise KeyError(f"unknown check {check_id!r}; known checks: {sorted(CHECKS)}")
    start = time.perf_counter()
    if isinstance(corpus, list):
        members, name = corpus, "explicit"
    else:
        members, name = load_corpus(corpus), str(corpus)
    report = VerificationReport(check_id, name, len(members), report_only=check_id in REPORT_ONLY)
    tasks = [(check_id, i, m, budget, options) for i, m in enumerate(members)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_evaluate(t) for t in tasks]
    for counts, applicable, fails, skips in results:
        report.passed += counts[PASS]
        report.failed += counts[FAIL]
        report.skipped += counts[SKIP]
        report.not_applicable += 0 if applicable else 1
        report.counterexamples.extend(fails)
        report.skips.extend(skips)
    report.wall_time = time.perf_counter() - start
    return report


def replay_counterexample(check_id: str, entry: dict, budget: Budget = DEFAULT_BUDGET,
                          options: CheckOptions = CheckOptions()) -> bool:
    """True when the recorded instance still fails on the recorded graph."""
    text = entry["graph"]
    if text.startswith("n="):
        head, *pairs = text.split()
        g = Graph(int(head[2:]), [tuple(map(int, p.split("-"))) for p in pairs])
    else:
        g = parse_graph(text)
    member = CorpusMember(g, entry.get("member", "replay"), tags=frozenset(entry.get("tags", ())))
    return any(o.status == FAIL and o.instance == entry["instance"] and o.params == entry["params"]
               for o in CHECKS[check_id](member, budget, options))
