# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels; a line-for-line mirror of ``_pykernels``.

Masks arrive as Python ints and are unpacked into ``uint64`` word arrays.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef uint64_t WORD_MASK = 0xFFFFFFFFFFFFFFFF


cdef void _unpack(object value, uint64_t* out, int W):
    cdef int w
    for w in range(W):
        out[w] = <uint64_t>((value >> (64 * w)) & WORD_MASK)


cdef inline int _pop_and(const uint64_t* a, const uint64_t* b, int W) nogil:
    cdef int w, c = 0
    for w in range(W):
        c += __builtin_popcountll(a[w] & b[w])
    return c


cdef inline bint _disjoint(const uint64_t* a, const uint64_t* b, int W) nogil:
    cdef int w
    for w in range(W):
        if a[w] & b[w]:
            return False
    return True


cdef struct PackCtx:
    int ntrees
    int W
    int ngroups
    int k
    int internal
    int target
    uint64_t* masks
    uint64_t* groups
    uint64_t* inner
    uint64_t* region
    uint64_t* vert
    uint64_t* ubuf
    long long nodes
    long long budget
    int best
    int stop
    int abort
    int* stack
    int depth
    int* chosen
    int nchosen


cdef void _pack_rec(PackCtx* c, int* live, int nlive, int count, int level) nogil:
    cdef int W = c.W
    cdef int i, t, s, w, gi, x, e, cnt
    cdef int ub, gbest, gcount, in_f, reg, xs, vf, cb, rest, val, elem, ecount, nnew
    cdef uint64_t* U
    cdef uint64_t* mt
    cdef uint64_t* g
    cdef uint64_t word, low
    cdef int* newlive
    c.nodes += 1
    if c.nodes > c.budget:
        c.abort = 1
        return
    if count > c.best:
        c.best = count
        memcpy(c.chosen, c.stack, count * sizeof(int))
        c.nchosen = count
        if count >= c.target:
            c.stop = 1
            return
    if nlive == 0:
        return
    U = c.ubuf + level * W
    memset(U, 0, W * sizeof(uint64_t))
    for i in range(nlive):
        mt = c.masks + live[i] * W
        for w in range(W):
            U[w] |= mt[w]
    ub = nlive
    gbest = -1
    gcount = 0
    for gi in range(c.ngroups):
        cnt = _pop_and(U, c.groups + gi * W, W)
        if gbest < 0 or cnt < gcount:
            gbest = gi
            gcount = cnt
    if gcount < ub:
        ub = gcount
    in_f = _pop_and(U, c.inner, W)
    reg = _pop_and(U, c.region, W)
    xs = (in_f if in_f < reg else reg) // (c.k - 1)
    if c.internal:
        vf = _pop_and(U, c.vert, W)
        cb = 0
        for x in range(xs + 1):
            rest = reg - x * (c.k - 1)
            if rest < 0:
                break
            rest = rest // c.k
            val = x + (rest if rest < vf else vf)
            if val > cb:
                cb = val
    else:
        cb = xs + (reg - xs * (c.k - 1)) // c.k
    if cb < ub:
        ub = cb
    if count + ub <= c.best:
        return
    g = c.groups + gbest * W
    elem = -1
    ecount = 0
    for w in range(W):
        word = U[w] & g[w]
        while word:
            low = word & (~word + 1)
            e = w * 64 + __builtin_ctzll(word)
            word ^= low
            cnt = 0
            for i in range(nlive):
                if c.masks[live[i] * W + w] & low:
                    cnt += 1
            if elem < 0 or cnt < ecount:
                elem = e
                ecount = cnt
    w = elem >> 6
    low = (<uint64_t>1) << (elem & 63)
    newlive = <int*>malloc(nlive * sizeof(int))
    for i in range(nlive):
        t = live[i]
        mt = c.masks + t * W
        if not (mt[w] & low):
            continue
        nnew = 0
        for s in range(nlive):
            if _disjoint(c.masks + live[s] * W, mt, W):
                newlive[nnew] = live[s]
                nnew += 1
        c.stack[count] = t
        _pack_rec(c, newlive, nnew, count + 1, level + 1)
        if c.stop or c.abort:
            free(newlive)
            return
    nnew = 0
    for s in range(nlive):
        if not (c.masks[live[s] * W + w] & low):
            newlive[nnew] = live[s]
            nnew += 1
    _pack_rec(c, newlive, nnew, count, level + 1)
    free(newlive)


def pack_search(masks, groups, inner, region, vert, int k, bint internal, int incumbent, int target,
                long long node_budget):
    cdef PackCtx c
    cdef int i, nbits = 1
    cdef int* live
    for m in list(masks) + list(groups) + [inner, region, vert]:
        if m.bit_length() > nbits:
            nbits = m.bit_length()
    c.W = (nbits + 63) // 64
    c.ntrees = len(masks)
    c.ngroups = len(groups)
    c.k = k
    c.internal = internal
    c.target = target
    c.nodes = 0
    c.budget = node_budget
    c.best = incumbent
    c.stop = 0
    c.abort = 0
    c.nchosen = -1
    c.masks = <uint64_t*>malloc(max(c.ntrees, 1) * c.W * sizeof(uint64_t))
    c.groups = <uint64_t*>malloc(max(c.ngroups, 1) * c.W * sizeof(uint64_t))
    c.inner = <uint64_t*>malloc(c.W * sizeof(uint64_t))
    c.region = <uint64_t*>malloc(c.W * sizeof(uint64_t))
    c.vert = <uint64_t*>malloc(c.W * sizeof(uint64_t))
    c.ubuf = <uint64_t*>malloc((c.W * 64 + c.ntrees + 2) * c.W * sizeof(uint64_t))
    c.stack = <int*>malloc((c.ntrees + 1) * sizeof(int))
    c.chosen = <int*>malloc((c.ntrees + 1) * sizeof(int))
    live = <int*>malloc((c.ntrees + 1) * sizeof(int))
    try:
        for i in range(c.ntrees):
            _unpack(masks[i], c.masks + i * c.W, c.W)
        for i in range(c.ngroups):
            _unpack(groups[i], c.groups + i * c.W, c.W)
        _unpack(inner, c.inner, c.W)
        _unpack(region, c.region, c.W)
        _unpack(vert, c.vert, c.W)
        for i in range(c.ntrees):
            live[i] = i
        with nogil:
            _pack_rec(&c, live, c.ntrees, 0, 0)
        chosen = None
        if c.nchosen >= 0:
            chosen = tuple(c.chosen[i] for i in range(c.nchosen))
        return c.best, chosen, c.nodes, not c.abort
    finally:
        free(c.masks)
        free(c.groups)
        free(c.inner)
        free(c.region)
        free(c.vert)
        free(c.ubuf)
        free(c.stack)
        free(c.chosen)
        free(live)


cdef struct PartCtx:
    int nv
    int nt
    int* order
    uint64_t* adj
    int* blk
    uint64_t* block_mask
    int best
    int cross
    int* assign
    int has_assign
    int nvert
    long long nodes
    long long budget
    int abort


cdef void _part_rec(PartCtx* c, int i, int p, int cross, uint64_t assigned) nogil:
    cdef int v, deg_assigned, limit, col, added, ncross, np_, pmax, b, j
    cdef bint terminal
    cdef uint64_t av
    c.nodes += 1
    if c.nodes > c.budget:
        c.abort = 1
        return
    if i == c.nv:
        if p >= 2:
            b = cross // (p - 1)
            if b < c.best:
                c.best = b
                c.cross = cross
                for j in range(c.nvert):
                    c.assign[j] = c.blk[j]
                c.has_assign = 1
        return
    v = c.order[i]
    av = c.adj[v]
    deg_assigned = __builtin_popcountll(av & assigned)
    terminal = i < c.nt
    limit = p + 1 if terminal else p
    for col in range(limit):
        added = deg_assigned - __builtin_popcountll(av & c.block_mask[col])
        ncross = cross + added
        np_ = p + 1 if col == p else p
        pmax = np_ + (c.nt - i - 1) if terminal else np_
        if pmax < 2 or ncross // (pmax - 1) >= c.best:
            continue
        c.blk[v] = col
        c.block_mask[col] |= (<uint64_t>1) << v
        _part_rec(c, i + 1, np_, ncross, assigned | ((<uint64_t>1) << v))
        c.block_mask[col] &= ~((<uint64_t>1) << v)
        c.blk[v] = -1
        if c.abort:
            return


def partition_search(adj, order, int n_terminals, int initial_best, long long node_budget):
    cdef PartCtx c
    cdef int i
    if len(adj) > 64:
        raise ValueError("partition search supports at most 64 vertices")
    c.nvert = len(adj)
    c.nv = len(order)
    c.nt = n_terminals
    c.best = initial_best
    c.cross = -1
    c.has_assign = 0
    c.nodes = 0
    c.budget = node_budget
    c.abort = 0
    c.order = <int*>malloc((c.nv + 1) * sizeof(int))
    c.adj = <uint64_t*>malloc((c.nvert + 1) * sizeof(uint64_t))
    c.blk = <int*>malloc((c.nvert + 1) * sizeof(int))
    c.assign = <int*>malloc((c.nvert + 1) * sizeof(int))
    c.block_mask = <uint64_t*>malloc((n_terminals + 2) * sizeof(uint64_t))
    try:
        for i in range(c.nv):
            c.order[i] = order[i]
        for i in range(c.nvert):
            c.adj[i] = <uint64_t>adj[i]
            c.blk[i] = -1
        for i in range(n_terminals + 2):
            c.block_mask[i] = 0
        with nogil:
            _part_rec(&c, 0, 0, 0, 0)
        assign = None
        if c.has_assign:
            assign = [c.assign[i] for i in range(c.nvert)]
        return c.best, c.cross, assign, c.nodes, not c.abort
    finally:
        free(c.order)
        free(c.adj)
        free(c.blk)
        free(c.assign)
        free(c.block_mask)
