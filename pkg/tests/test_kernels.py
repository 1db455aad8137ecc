import random

import pytest

from genconn import _pykernels, kernels


def _random_pack_case(rnd):
    nelem = rnd.choice([10, 40, 70, 140])
    masks = [sum(1 << rnd.randrange(nelem) for _ in range(rnd.randint(2, 6))) for _ in range(rnd.randint(0, 30))]
    groups = [sum(1 << rnd.randrange(nelem) for _ in range(rnd.randint(1, 8))) for _ in range(rnd.randint(1, 4))]
    inner = sum(1 << rnd.randrange(nelem) for _ in range(5))
    region = inner | sum(1 << rnd.randrange(nelem) for _ in range(10))
    vert = sum(1 << rnd.randrange(nelem) for _ in range(5))
    k = rnd.randint(2, 5)
    return masks, groups, inner, region, vert, k, rnd.random() < 0.5, rnd.randint(0, 2), rnd.randint(1, 8), 10**6


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    if kernels.BACKEND == "cython":
        assert kernels.compiled() is not None


@pytest.mark.skipif(kernels.compiled() is None, reason="compiled kernels not built")
def test_compiled_pack_search_mirrors_python():
    _ckernels = kernels.compiled()
    rnd = random.Random(20)
    for _ in range(500):
        case = _random_pack_case(rnd)
        assert _ckernels.pack_search(*case) == _pykernels.pack_search(*case)


@pytest.mark.skipif(kernels.compiled() is None, reason="compiled kernels not built")
def test_compiled_partition_search_mirrors_python():
    _ckernels = kernels.compiled()
    rnd = random.Random(21)
    for _ in range(300):
        n = rnd.randint(2, 9)
        adj = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if rnd.random() < 0.5:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        nt = rnd.randint(2, n)
        order = list(range(n))
        rnd.shuffle(order)
        args = (adj, order, nt, rnd.randint(1, 20), rnd.choice([50, 10**6]))
        assert _ckernels.partition_search(*args) == _pykernels.partition_search(*args)


def test_pack_search_respects_node_budget():
    masks = [1 << i | 1 << (i + 1) for i in range(20)]
    best, _chosen, nodes, complete = _pykernels.pack_search(masks, [(1 << 21) - 1], 0, (1 << 21) - 1, 0, 2,
                                                            False, 0, 100, 5)
    assert not complete and nodes == 6
