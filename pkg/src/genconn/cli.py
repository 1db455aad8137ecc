"""Command-line interface.

Exit codes: 0 success or all checks passed, 1 counterexample found (or a
certificate that does not verify), 2 usage error, 3 budget exceeded (result
is only a lower bound, or checks were skipped), 4 input/output error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import PartitionLimitError, counting_upper_bound, tutte_partition_number
from .certificate import certificate_json, check_certificate
from .constructions import construct_family
from .corpus import CorpusError, CorpusIOError
from .graph import FORMATS, Graph, GraphFormatError, parse_graph, serialize_graph
from .packing import DEFAULT_BUDGET, EXACT, Budget, generalized_connectivity, max_tree_packing
from .suite import CHECKS, CheckOptions, run_check
from .trees import EDGE_DISJOINT, INTERNALLY_DISJOINT

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4

_MODES = {"lambda": EDGE_DISJOINT, "kappa": INTERNALLY_DISJOINT}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="graph file (graph6 or edge list); '-' reads standard input")
    p.add_argument("--graph", help="inline graph6 string instead of a file")
    p.add_argument("--format", choices=FORMATS,
                   help="input format (default: edge-list for .txt/.edges/.el files, graph6 otherwise)")


def _add_budget(p: argparse.ArgumentParser) -> None:
    b = DEFAULT_BUDGET
    p.add_argument("--tree-limit", type=int, default=b.tree_limit, help="minimal Steiner trees enumerated per terminal set")
    p.add_argument("--node-limit", type=int, default=b.node_limit, help="branch-and-bound nodes per terminal set")
    p.add_argument("--partition-nodes", type=int, default=b.partition_nodes, help="partition search nodes per terminal set")
    p.add_argument("--partition-limit", type=int, default=b.partition_limit, help="largest graph for the full partition number")


def _budget(args) -> Budget:
    for name in ("tree_limit", "node_limit", "partition_nodes", "partition_limit"):
        if getattr(args, name) <= 0:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return Budget(args.tree_limit, args.node_limit, args.partition_nodes, args.partition_limit)


def _read_graph(args) -> Graph:
    if (args.input is None) == (args.graph is None):
        raise UsageError("give exactly one input: a file path, '-', or --graph")
    if args.graph is not None:
        return parse_graph(args.graph, args.format or "graph6")
    fmt = args.format
    if fmt is None:
        fmt = "edge-list" if args.input.endswith((".txt", ".edges", ".el")) else "graph6"
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="ascii") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from None
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise InputError(f"{args.input}: expected exactly one graph6 line, found {len(lines)}")
        text = lines[0]
    return parse_graph(text, fmt)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _solve(args):
    g = _read_graph(args)
    budget = _budget(args)
    mode = _MODES[args.param]
    if args.terminals is not None:
        terms = sorted(set(args.terminals))
        if args.k is not None and args.k != len(terms):
            raise UsageError(f"-k {args.k} does not match {len(terms)} terminals")
        if len(terms) < 2 or terms[0] < 0 or terms[-1] >= g.n:
            raise UsageError(f"terminals must be at least two vertices of 0..{g.n - 1}")
        return g, max_tree_packing(g, terms, mode, budget)
    if args.k is None:
        raise UsageError("-k is required unless --terminals is given")
    if not 2 <= args.k <= g.n:
        raise UsageError(f"-k must satisfy 2 <= k <= n = {g.n}")
    return g, generalized_connectivity(g, args.k, mode, budget, jobs=args.jobs)


def cmd_compute(args) -> int:
    g, result = _solve(args)
    sys.stdout.write(f"{result.value}\nstatus: {result.status}\n"
                     f"terminals: {' '.join(map(str, result.witness_terminals))}\n")
    if args.certificate:
        _write(args.certificate, certificate_json(g, result))
    return EXIT_OK if result.status == EXACT else EXIT_BUDGET


def cmd_certify(args) -> int:
    g, result = _solve(args)
    _write(args.output, certificate_json(g, result))
    return EXIT_OK if result.status == EXACT else EXIT_BUDGET


def _family_value(text: str):
    if "-" in text and all(part.count("-") == 1 for part in text.split(":")):
        try:
            return [tuple(int(x) for x in part.split("-")) for part in text.split(":") if part]
        except ValueError:
            pass
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def cmd_construct(args) -> int:
    params = {}
    for part in filter(None, (p.strip() for p in (args.args or "").split(","))):
        key, sep, val = part.partition("=")
        if not sep:
            raise UsageError(f"family argument {part!r} must look like name=value")
        params[key.strip()] = _family_value(val.strip())
    fam = construct_family(args.family, **params)
    if args.declared:
        _write(args.output, json.dumps(fam.declared, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    graph = fam.graph
    if args.companion:
        if fam.companion is None:
            raise UsageError(f"family {args.family!r} has no companion graph")
        graph = fam.companion
    text = serialize_graph(graph, args.output_format)
    _write(args.output, text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_bound(args) -> int:
    g = _read_graph(args)
    if args.kind == "tutte":
        _value, cert = tutte_partition_number(g, args.partition_limit)
        doc = cert.to_dict()
    else:
        if args.terminals is None:
            raise UsageError("--kind counting needs --terminals")
        terms = sorted(set(args.terminals))
        if len(terms) < 2 or terms[0] < 0 or terms[-1] >= g.n:
            raise UsageError(f"terminals must be at least two vertices of 0..{g.n - 1}")
        doc = counting_upper_bound(g, terms, args.param == "kappa").to_dict()
    _write(args.output, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    opts = CheckOptions(k_values=tuple(args.k) if args.k else None, k_max=args.k_max)
    report = run_check(args.check, args.corpus, _budget(args), opts, jobs=args.jobs)
    if args.json:
        _write(args.json, report.to_json(args.timing))
    if args.output_format == "json":
        sys.stdout.write(report.to_json(args.timing))
    else:
        sys.stdout.write(report.table())
    return report.exit_code


def cmd_verify_certificate(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {args.certificate}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        sys.stdout.write(f"invalid: not JSON ({exc})\n")
        return EXIT_COUNTEREXAMPLE
    problems = check_certificate(doc) if isinstance(doc, dict) else ["certificate must be a JSON object"]
    if problems:
        sys.stdout.write("invalid\n" + "".join(f"  {p}\n" for p in problems))
        return EXIT_COUNTEREXAMPLE
    sys.stdout.write(f"valid: {doc['value']} trees ({doc['status']})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="genconn", description=__doc__.splitlines()[0], epilog=__doc__.split("\n\n", 1)[1],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("compute", "print the value and status"), ("certify", "print a JSON certificate")):
        p = sub.add_parser(name, help=helptext, formatter_class=fmt)
        p.add_argument("--param", choices=sorted(_MODES), required=True,
                       help="kappa: internally disjoint trees; lambda: edge-disjoint trees")
        p.add_argument("-k", type=int, help="terminal set size (minimum over all k-sets)")
        p.add_argument("--terminals", type=_int_list, help="comma-separated terminal set; computes this set only")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for the subset loop")
        _add_budget(p)
        _add_input(p)
        if name == "compute":
            p.add_argument("--certificate", help="also write the JSON certificate here")
            p.set_defaults(func=cmd_compute)
        else:
            p.add_argument("--output", "-o", help="output file (default: standard output)")
            p.set_defaults(func=cmd_certify)

    p = sub.add_parser("construct", help="build a named graph family", formatter_class=fmt)
    p.add_argument("--family", required=True, help="family name, e.g. h_graph, figure2_family, join_family")
    p.add_argument("--args", default="", help="comma-separated name=value parameters; edge sets as 0-1:2-3")
    p.add_argument("--output-format", choices=FORMATS, default="graph6")
    p.add_argument("--companion", action="store_true", help="emit the family's second graph (example3_pair)")
    p.add_argument("--declared", action="store_true", help="emit the known parameter values as JSON instead")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="emit an upper-bound certificate", formatter_class=fmt)
    p.add_argument("--kind", choices=("counting", "tutte"), required=True)
    p.add_argument("--terminals", type=_int_list, help="terminal set for the counting bound")
    p.add_argument("--param", choices=sorted(_MODES), default="lambda", help="counting bound variant")
    p.add_argument("--partition-limit", type=int, default=DEFAULT_BUDGET.partition_limit)
    p.add_argument("--output", "-o")
    _add_input(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a named check over a corpus", formatter_class=fmt)
    p.add_argument("--check", required=True, choices=sorted(CHECKS))
    p.add_argument("--corpus", required=True,
                   help="atlas:PATH[,max_n=N,max_m=M] | random:n=..,p=..,trials=..,seed=.. | "
                        "family:NAME(a=1..3);... | complete-minus:n=..,max_removed=.. | edges:PATH")
    p.add_argument("--k", type=_int_list, help="evaluate only these k")
    p.add_argument("--k-max", type=int, default=5, help="largest k when --k is not given")
    p.add_argument("--jobs", type=int, default=1, help="worker processes over corpus members")
    p.add_argument("--json", help="write the JSON report here")
    p.add_argument("--output-format", choices=("table", "json"), default="table")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    _add_budget(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-certificate", help="re-check a JSON certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify_certificate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, CorpusError) as exc:
        if isinstance(exc, CorpusIOError):
            print(f"genconn: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"genconn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, GraphFormatError) as exc:
        print(f"genconn: {exc}", file=sys.stderr)
        return EXIT_IO
    except PartitionLimitError as exc:
        print(f"genconn: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"genconn: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
