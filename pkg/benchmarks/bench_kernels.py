"""Time the compiled and pure-Python search kernels on the same solver workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends must return identical results; the script exits nonzero if
they do not.
"""

import argparse
import sys
import time

from genconn import _pykernels, kernels
from genconn.bounds import tutte_partition_number
from genconn.constructions import figure2_family
from genconn.graph import complete_graph, delete_edges
from genconn.packing import _Instance, max_tree_packing
from genconn.trees import EDGE_DISJOINT, INTERNALLY_DISJOINT, minimal_tree_masks


def exhaustion(g, terms, mode):
    """Prove no packing beats the optimum: the kernel must exhaust its search tree."""
    internal = mode == INTERNALLY_DISJOINT
    best = max_tree_packing(g, terms, mode).value
    inst = _Instance(g, tuple(terms), internal)
    elements = [inst.element_mask(e, v) for e, v in minimal_tree_masks(g, terms, 10**6)]
    args = (elements, inst.groups, inst.inner, inst.region, inst.vert, len(terms), internal, 0, best + 1, 10**8)
    return lambda: kernels.pack_search(*args)[:2]


def workloads():
    return [
        ("no 5th tree, kappa, K_7 minus a matching",
         exhaustion(delete_edges(complete_graph(7), [(0, 1), (2, 3), (4, 5)]), (0, 1, 2, 3), INTERNALLY_DISJOINT)),
        ("no 5th tree, lambda, K_7, 5 terminals",
         exhaustion(complete_graph(7), (0, 1, 2, 3, 4), EDGE_DISJOINT)),
        ("no 6th tree, kappa, K_8 minus 2 edges",
         exhaustion(delete_edges(complete_graph(8), [(0, 1), (2, 3)]), (0, 1, 2, 3), INTERNALLY_DISJOINT)),
        ("partition number of figure2(1, 0)",
         lambda: tutte_partition_number(figure2_family(1, 0), partition_limit=11)[0]),
        ("partition number of figure2(1, 1)",
         lambda: tutte_partition_number(figure2_family(1, 1), partition_limit=13)[0]),
    ]


def use(module):
    kernels.pack_search = module.pack_search
    kernels.partition_search = module.partition_search


def timed(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    compiled = kernels.compiled()
    if compiled is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'workload':<44} {'python':>9} {'cython':>9} {'speedup':>8}")
    status = 0
    for name, fn in workloads():
        use(_pykernels)
        t_py, v_py = timed(fn, args.repeat)
        use(compiled)
        t_c, v_c = timed(fn, args.repeat)
        if v_py != v_c:
            print(f"{name}: backends disagree ({v_py} vs {v_c})")
            status = 1
        print(f"{name:<44} {t_py:8.3f}s {t_c:8.3f}s {t_py / t_c:7.1f}x")
    return status


if __name__ == "__main__":
    sys.exit(main())
