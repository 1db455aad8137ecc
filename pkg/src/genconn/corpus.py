"""Graph corpora for the verification suite.

A corpus is described by a short spec string:

``atlas:PATH[,max_n=N][,min_n=N][,max_m=M][,connected]``
    graph6 file, one graph per line (``file:`` is an alias).
``random:n=8,p=0.5,trials=100,seed=1``
    seeded Erdős–Rényi samples; trial ``i`` uses the ``i``-th 64-bit draw of
    ``random.Random(seed)`` as its own seed.
``family:complete(n=2..7);h_graph(t=1..3)``
    named families; ``a..b`` ranges expand to a cartesian product in order.
``complete-minus:n=6,max_removed=3[,min_removed=0]``
    ``K_n`` minus every edge set of the given sizes, smaller sets first and
    lexicographic within a size.
``edges:PATH``
    a single graph in edge-list format.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field

from .constructions import construct_family, random_graph
from .graph import Graph, GraphFormatError, complete_graph, delete_edges, parse_graph


class CorpusError(Exception):
    """Unreadable or malformed corpus."""


class CorpusIOError(CorpusError):
    pass


@dataclass(frozen=True)
class CorpusMember:
    graph: Graph
    label: str
    family: str | None = None
    params: tuple = ()
    tags: frozenset = field(default=frozenset())


@dataclass(frozen=True)
class CorpusSpec:
    kind: str
    options: tuple = ()
    text: str = ""

    @classmethod
    def parse(cls, text: str) -> "CorpusSpec":
        kind, sep, rest = text.partition(":")
        if not sep or kind not in _LOADERS:
            raise CorpusError(f"corpus spec must start with one of {sorted(_LOADERS)}: {text!r}")
        return cls(kind, (rest,), text)

    def __str__(self) -> str:
        return self.text


def _options(rest: str, allowed: dict[str, type], required=()) -> dict:
    out: dict = {}
    for part in filter(None, (p.strip() for p in rest.split(","))):
        key, sep, val = part.partition("=")
        if key not in allowed:
            raise CorpusError(f"unknown corpus option {key!r}; expected one of {sorted(allowed)}")
        if not sep:
            if allowed[key] is not bool:
                raise CorpusError(f"corpus option {key!r} needs a value")
            out[key] = True
            continue
        try:
            out[key] = allowed[key](val)
        except ValueError:
            raise CorpusError(f"bad value {val!r} for corpus option {key!r}") from None
    missing = [k for k in required if k not in out]
    if missing:
        raise CorpusError(f"corpus spec is missing {missing}")
    return out


def _load_graph6_file(rest: str) -> list[CorpusMember]:
    path, _, opts = rest.partition(",")
    o = _options(opts, {"max_n": int, "min_n": int, "max_m": int, "connected": bool})
    try:
        with open(path, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CorpusIOError(f"cannot read corpus file {path}: {exc}") from None
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith(">>"):
            continue
        try:
            g = parse_graph(line.strip())
        except GraphFormatError as exc:
            raise CorpusError(f"{path}:{lineno}: {exc}") from None
        if g.n > o.get("max_n", g.n) or g.n < o.get("min_n", 0) or g.m > o.get("max_m", g.m):
            continue
        if o.get("connected") and not g.is_connected():
            continue
        out.append(CorpusMember(g, f"{path}:{lineno}"))
    return out


def _load_edges_file(rest: str) -> list[CorpusMember]:
    try:
        with open(rest, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CorpusIOError(f"cannot read corpus file {rest}: {exc}") from None
    try:
        return [CorpusMember(parse_graph(text, "edge-list"), rest)]
    except GraphFormatError as exc:
        raise CorpusError(f"{rest}: {exc}") from None


def _load_random(rest: str) -> list[CorpusMember]:
    o = _options(rest, {"n": int, "p": float, "trials": int, "seed": int}, ("n", "p", "trials", "seed"))
    rng = random.Random(o["seed"])
    out = []
    for i in range(o["trials"]):
        seed = rng.getrandbits(64)
        try:
            g = random_graph(o["n"], o["p"], seed)
        except ValueError as exc:
            raise CorpusError(str(exc)) from None
        out.append(CorpusMember(g, f"random[{i}]", "random", (("seed", seed),)))
    return out


_FAMILY_RE = re.compile(r"^\s*(\w+)\s*(?:\((.*)\))?\s*$")
_PLANAR_FAMILIES = {"grid", "wheel", "prism", "path", "cycle", "star", "h_graph"}


def _known_planar(name: str, params: dict) -> bool:
    if name in _PLANAR_FAMILIES:
        return True
    if name == "complete":
        return params["n"] <= 4
    if name == "complete_bipartite":
        return min(params["a"], params["b"]) <= 2
    if name == "pendant_complete":
        return params["n"] <= 5
    return False


def _value(text: str) -> list:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    try:
        return [int(text)]
    except ValueError:
        return [text]


def _load_families(rest: str) -> list[CorpusMember]:
    out = []
    for item in filter(None, (p.strip() for p in rest.split(";"))):
        m = _FAMILY_RE.match(item)
        if not m:
            raise CorpusError(f"cannot parse family entry {item!r}")
        name, args = m.group(1), m.group(2) or ""
        keys, choices = [], []
        for part in filter(None, (p.strip() for p in args.split(","))):
            key, sep, val = part.partition("=")
            if not sep:
                raise CorpusError(f"family argument {part!r} must look like name=value")
            keys.append(key.strip())
            choices.append(_value(val.strip()))
        for combo in itertools.product(*choices):
            params = dict(zip(keys, combo))
            try:
                fam = construct_family(name, **params)
            except ValueError as exc:
                raise CorpusError(str(exc)) from None
            tags = frozenset({"planar"}) if _known_planar(name, params) else frozenset()
            label = f"{name}({', '.join(f'{k}={v}' for k, v in params.items())})"
            out.append(CorpusMember(fam.graph, label, name, tuple(params.items()), tags))
    return out


def _load_complete_minus(rest: str) -> list[CorpusMember]:
    o = _options(rest, {"n": int, "max_removed": int, "min_removed": int}, ("n", "max_removed"))
    n = o["n"]
    edges = list(itertools.combinations(range(n), 2))
    base = complete_graph(n)
    out = []
    for size in range(o.get("min_removed", 0), o["max_removed"] + 1):
        for removed in itertools.combinations(edges, size):
            label = f"K_{n} - {list(removed)}"
            out.append(CorpusMember(delete_edges(base, removed), label, "complete_minus",
                                    (("n", n), ("removed", removed))))
    return out


_LOADERS = {
    "atlas": _load_graph6_file,
    "file": _load_graph6_file,
    "edges": _load_edges_file,
    "random": _load_random,
    "family": _load_families,
    "complete-minus": _load_complete_minus,
}


def load_corpus(spec: CorpusSpec | str) -> list[CorpusMember]:
    """Members of the corpus in deterministic order."""
    if isinstance(spec, str):
        spec = CorpusSpec.parse(spec)
    return _LOADERS[spec.kind](spec.options[0])
