"""Pure-Python search kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors them line for
line so both return identical results (including witnesses and node counts).
Masks are Python ints here and ``uint64`` word arrays in the compiled version.
"""

from __future__ import annotations


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Abort(Exception):
    pass


def pack_search(masks, groups, inner, region, vert, k, internal, incumbent, target, node_budget):
    """Largest family of pairwise disjoint masks, searched exactly by element branching.

    Every mask is a candidate tree over elements (edges, plus non-terminal
    vertices in internally-disjoint mode).  Each tree must use an element of
    every ``groups`` entry (the edges at one terminal), at least ``k - 1``
    elements of ``region`` (exactly ``k - 1`` from ``inner`` when it stays inside
    the terminal set, at least ``k`` otherwise) and, in internal mode, at least
    one ``vert`` element when it leaves the terminal set.

    Only families larger than ``incumbent`` are reported; the search stops as
    soon as ``target`` trees are found.  Returns
    ``(best, chosen indices or None, nodes, complete)``.
    """
    state = {"best": incumbent, "chosen": None, "nodes": 0, "stop": False}
    stack: list[int] = []
    km1 = k - 1

    def rec(live, count):
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise _Abort
        if count > state["best"]:
            state["best"] = count
            state["chosen"] = tuple(stack)
            if count >= target:
                state["stop"] = True
                return
        if not live:
            return
        union = 0
        for t in live:
            union |= masks[t]
        ub = len(live)
        gbest = -1
        gcount = 0
        for gi in range(len(groups)):
            c = _popcount(union & groups[gi])
            if gbest < 0 or c < gcount:
                gbest = gi
                gcount = c
        if gcount < ub:
            ub = gcount
        in_f = _popcount(union & inner)
        reg = _popcount(union & region)
        xs = (in_f if in_f < reg else reg) // km1
        if internal:
            vf = _popcount(union & vert)
            cb = 0
            for x in range(xs + 1):
                rest = (reg - x * km1) // k
                if rest < 0:
                    break
                val = x + (rest if rest < vf else vf)
                if val > cb:
                    cb = val
        else:
            cb = xs + (reg - xs * km1) // k
        if cb < ub:
            ub = cb
        if count + ub <= state["best"]:
            return
        cand = union & groups[gbest]
        elem = -1
        ecount = 0
        while cand:
            low = cand & -cand
            e = low.bit_length() - 1
            cand ^= low
            c = 0
            for t in live:
                if masks[t] >> e & 1:
                    c += 1
            if elem < 0 or c < ecount:
                elem = e
                ecount = c
        bit = 1 << elem
        for t in live:
            mt = masks[t]
            if not mt & bit:
                continue
            stack.append(t)
            rec([s for s in live if not masks[s] & mt], count + 1)
            stack.pop()
            if state["stop"]:
                return
        rec([s for s in live if not masks[s] & bit], count)

    complete = True
    try:
        rec(list(range(len(masks))), 0)
    except _Abort:
        complete = False
    return state["best"], state["chosen"], state["nodes"], complete


def partition_search(adj, order, n_terminals, initial_best, node_budget):
    """Minimise ``crossing // (blocks - 1)`` over partitions whose blocks each hold a terminal.

    ``order`` lists the vertices to assign, terminals first.  Terminals follow a
    restricted-growth string (join an open block or open a new one); the other
    vertices only join open blocks.  Only partitions strictly better than
    ``initial_best`` are reported.  Returns
    ``(best, crossing, block of each vertex or None, nodes, complete)``.
    """
    nv = len(order)
    blk = [-1] * len(adj)
    block_mask = [0] * (n_terminals + 1)
    state = {"best": initial_best, "cross": -1, "assign": None, "nodes": 0}

    def rec(i, p, cross, assigned):
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise _Abort
        if i == nv:
            if p >= 2:
                b = cross // (p - 1)
                if b < state["best"]:
                    state["best"] = b
                    state["cross"] = cross
                    state["assign"] = list(blk)
            return
        v = order[i]
        av = adj[v]
        deg_assigned = _popcount(av & assigned)
        terminal = i < n_terminals
        limit = p + 1 if terminal else p
        for c in range(limit):
            added = deg_assigned - _popcount(av & block_mask[c])
            ncross = cross + added
            np_ = p + 1 if c == p else p
            pmax = np_ + (n_terminals - i - 1) if terminal else np_
            if pmax < 2 or ncross // (pmax - 1) >= state["best"]:
                continue
            blk[v] = c
            block_mask[c] |= 1 << v
            rec(i + 1, np_, ncross, assigned | 1 << v)
            block_mask[c] &= ~(1 << v)
            blk[v] = -1

    complete = True
    try:
        rec(0, 0, 0, 0)
    except _Abort:
        complete = False
    return state["best"], state["cross"], state["assign"], state["nodes"], complete
