"""JSON certificates for packing results and their independent re-verification.

Document fields: ``value``, ``status``, ``mode``, ``k``, ``witness_terminals``,
``trees`` (each a list of ``[u, v]`` edges), ``upper_certificate`` (``null`` or
an object whose ``kind`` is ``partition``, ``counting`` or ``cut``), ``proof``
and ``graph`` (``n`` and ``edges``) so the document can be checked on its own.
"""

from __future__ import annotations

import json

from .bounds import counting_upper_bound, crossing_edges
from .flow import LocalCut, cut_separates
from .graph import Graph, normalize_edge
from .packing import EXACT, ConnectivityResult
from .trees import INTERNALLY_DISJOINT, MODES, Packing, SteinerTree, verify_packing


class CertificateError(ValueError):
    pass


def certificate_document(g: Graph, result: ConnectivityResult) -> dict:
    upper = result.upper_certificate
    return {
        "value": result.value,
        "status": result.status,
        "mode": result.mode,
        "k": result.k,
        "witness_terminals": list(result.witness_terminals),
        "trees": [[list(e) for e in t.edges] for t in result.certificate.trees],
        "upper_certificate": upper.to_dict() if upper is not None else None,
        "proof": result.proof,
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
    }


def certificate_json(g: Graph, result: ConnectivityResult) -> str:
    return json.dumps(certificate_document(g, result), indent=2, sort_keys=True) + "\n"


def _require(cond, message):
    if not cond:
        raise CertificateError(message)


def _check_upper(g: Graph, doc: dict, terms: tuple[int, ...], errors: list[str]) -> None:
    upper = doc.get("upper_certificate")
    if upper is None:
        return
    kind = upper.get("kind")
    value = doc["value"]
    exact = doc["status"] == EXACT
    if kind == "partition":
        blocks = [tuple(b) for b in upper["blocks"]]
        flat = [v for b in blocks for v in b]
        if len(blocks) < 2 or any(not b for b in blocks) or sorted(flat) != list(range(g.n)):
            errors.append("partition blocks must be at least two nonempty sets covering every vertex once")
            return
        tset = set(terms)
        if any(not tset & set(b) for b in blocks):
            errors.append("every partition block must contain a terminal")
        crossing = crossing_edges(g, blocks)
        if crossing != upper["crossing"]:
            errors.append(f"partition crossing recounted as {crossing}, certificate says {upper['crossing']}")
        bound = crossing // (len(blocks) - 1)
        if bound != upper["bound"]:
            errors.append(f"partition bound recomputed as {bound}, certificate says {upper['bound']}")
    elif kind == "counting":
        if tuple(upper["terminals"]) != terms:
            errors.append("counting bound is for a different terminal set")
            return
        rec = counting_upper_bound(g, terms, doc["mode"] == INTERNALLY_DISJOINT)
        for key in ("e_in", "e_cut", "x_star", "bound"):
            if getattr(rec, key) != upper[key]:
                errors.append(f"counting field {key} recomputed as {getattr(rec, key)}, certificate says {upper[key]}")
        bound = rec.bound
    elif kind == "cut":
        pair = upper.get("pair")
        cut = LocalCut(upper["value"], tuple(tuple(e) for e in upper["edges"]), tuple(upper["vertices"]),
                       tuple(upper["side"]), tuple(pair) if pair else None)
        if pair is None or not set(pair) <= set(terms):
            errors.append("cut must separate two terminals")
            return
        if set(cut.vertices) & set(terms):
            errors.append("cut may not delete terminals")
        if cut.vertices and doc["mode"] != INTERNALLY_DISJOINT:
            errors.append("vertex cuts only bound internally disjoint packings")
        if len(cut.edges) + len(cut.vertices) != cut.value:
            errors.append("cut value differs from its size")
        if any(normalize_edge(*e) not in g.edge_index for e in cut.edges):
            errors.append("cut lists non-edges")
        if not cut_separates(g, cut):
            errors.append(f"deleting the cut leaves {pair[0]} and {pair[1]} connected")
        bound = cut.value
    else:
        errors.append(f"unknown upper certificate kind {kind!r}")
        return
    if bound < value:
        errors.append(f"upper bound {bound} is below the packing size {value}")
    if exact and bound != value:
        errors.append(f"exact result {value} carries a bound of {bound}")


def check_certificate(doc: dict) -> list[str]:
    """Every problem found in a certificate document; empty when it verifies."""
    try:
        for key in ("value", "status", "mode", "witness_terminals", "trees", "graph"):
            _require(key in doc, f"missing field {key!r}")
        _require(doc["mode"] in MODES, f"unknown mode {doc['mode']!r}")
        g = Graph(doc["graph"]["n"], [tuple(e) for e in doc["graph"]["edges"]])
        terms = tuple(sorted(doc["witness_terminals"]))
        trees = tuple(SteinerTree(terms, tuple(tuple(e) for e in t)) for t in doc["trees"])
    except (KeyError, TypeError, ValueError) as exc:
        return [f"malformed certificate: {exc}"]
    errors = []
    if "k" in doc and doc["k"] != len(terms):
        errors.append(f"k = {doc['k']} but {len(terms)} terminals")
    if len(trees) != doc["value"]:
        errors.append(f"value {doc['value']} but {len(trees)} trees")
    check = verify_packing(g, Packing(terms, doc["mode"], trees))
    errors.extend(check.violations)
    try:
        _check_upper(g, doc, terms, errors)
    except (KeyError, TypeError, ValueError) as exc:
        errors.append(f"malformed upper certificate: {exc}")
    return errors
