"""Compiled inner loops over ``uint64`` edge words.

Edges arrive as a C-contiguous ``(num_edges, words)`` ``uint64`` array.
Every function here is deterministic: ties go to the lowest edge row or the
lowest element index.
"""

import numpy as np
from numba import njit

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)


@njit(cache=True, inline="always")
def popcount(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True)
def antichain_mask(words):
    """``keep[i]`` is False iff some other edge is a proper subset of edge i."""
    num, w = words.shape
    sizes = np.zeros(num, dtype=np.int64)
    for i in range(num):
        for k in range(w):
            sizes[i] += popcount(words[i, k])
    keep = np.ones(num, dtype=np.bool_)
    for i in range(num):
        for j in range(num):
            if sizes[j] >= sizes[i]:
                continue
            inside = True
            for k in range(w):
                if words[j, k] & ~words[i, k] != _U0:
                    inside = False
                    break
            if inside:
                keep[i] = False
                break
    return keep


@njit(cache=True)
def branch_and_bound(words, start, start_size, node_budget):
    """Minimum hitting set of the rows of ``words`` by depth-first search.

    ``start`` is a known hitting set of size ``start_size`` (the incumbent).
    At each node the uncovered edges are scanned once to get their common
    intersection, a greedy disjoint packing (a lower bound) and the
    smallest edge. The search branches on that edge: child ``i`` takes its
    i-th element and excludes the ones before it, so no hitting set is
    reached twice.

    Returns ``(best_words, best_size, nodes, finished)``; ``finished`` is
    False when ``node_budget`` ran out, in which case ``best_words`` is only
    the best hitting set found so far.
    """
    num, w = words.shape
    best = start_size
    best_words = start.copy()
    depth_cap = start_size + 1
    res = np.empty((depth_cap, max(num, 1)), dtype=np.int64)
    rlen = np.zeros(depth_cap, dtype=np.int64)
    chosen = np.zeros((depth_cap, w), dtype=np.uint64)
    excl = np.zeros((depth_cap, w), dtype=np.uint64)
    cand = np.zeros((depth_cap, w), dtype=np.uint64)
    tried = np.zeros((depth_cap, w), dtype=np.uint64)
    inter = np.empty(w, dtype=np.uint64)
    used = np.empty(w, dtype=np.uint64)
    masked = np.empty(w, dtype=np.uint64)
    xc = np.empty(w, dtype=np.uint64)
    vbit = np.empty(w, dtype=np.uint64)

    for i in range(num):
        res[0, i] = i
    rlen[0] = num
    nodes = 0
    d = 0
    entering = True

    while True:
        if entering:
            entering = False
            nodes += 1
            if nodes > node_budget:
                return best_words, best, nodes - 1, False
            expand = False
            if rlen[d] == 0:
                best = d
                for k in range(w):
                    best_words[k] = chosen[d, k]
            else:
                left = best - 1 - d
                if left >= 1:
                    for k in range(w):
                        inter[k] = _ALL
                        used[k] = _U0
                    pack = 0
                    min_size = 1 << 30
                    min_row = -1
                    for t in range(rlen[d]):
                        row = res[d, t]
                        size = 0
                        disjoint = True
                        for k in range(w):
                            m = words[row, k] & ~excl[d, k]
                            masked[k] = m
                            inter[k] &= m
                            size += popcount(m)
                            if m & used[k] != _U0:
                                disjoint = False
                        if disjoint:
                            pack += 1
                            for k in range(w):
                                used[k] |= masked[k]
                        if size < min_size:
                            min_size = size
                            min_row = row
                    if left == 1:
                        # one more element must lie in every uncovered edge
                        for k in range(w):
                            if inter[k] != _U0:
                                low = inter[k] & (~inter[k] + _U1)
                                best = d + 1
                                for q in range(w):
                                    best_words[q] = chosen[d, q]
                                best_words[k] |= low
                                break
                    elif pack <= left and min_size > 0:
                        for k in range(w):
                            cand[d, k] = words[min_row, k] & ~excl[d, k]
                            tried[d, k] = _U0
                        expand = True
            if not expand:
                if d == 0:
                    break
                d -= 1
            continue

        # next child of the node at depth d
        if d + 1 >= best:
            if d == 0:
                break
            d -= 1
            continue
        kw = -1
        for k in range(w):
            if cand[d, k] != _U0:
                kw = k
                break
        if kw < 0:
            if d == 0:
                break
            d -= 1
            continue
        low = cand[d, kw] & (~cand[d, kw] + _U1)
        cand[d, kw] ^= low
        for k in range(w):
            vbit[k] = _U0
            xc[k] = excl[d, k] | tried[d, k]
        vbit[kw] = low
        tried[d, kw] |= low

        if best - d - 2 == 1:
            # the child may add one element only: it must lie in every edge
            # the child leaves uncovered, so test that without building it
            nodes += 1
            if nodes > node_budget:
                return best_words, best, nodes - 1, False
            for k in range(w):
                inter[k] = _ALL
            uncovered = 0
            empty = False
            for t in range(rlen[d]):
                row = res[d, t]
                if words[row, kw] & low != _U0:
                    continue
                uncovered += 1
                nonzero = False
                for k in range(w):
                    inter[k] &= words[row, k] & ~xc[k]
                    if inter[k] != _U0:
                        nonzero = True
                if not nonzero:
                    empty = True
                    break
            if not empty:
                for k in range(w):
                    best_words[k] = chosen[d, k] | vbit[k]
                if uncovered == 0:
                    best = d + 1
                else:
                    best = d + 2
                    for k in range(w):
                        if inter[k] != _U0:
                            best_words[k] |= inter[k] & (~inter[k] + _U1)
                            break
            continue

        c = d + 1
        count = 0
        feasible = True
        for t in range(rlen[d]):
            row = res[d, t]
            if words[row, kw] & low != _U0:
                continue
            alive = False
            for k in range(w):
                if words[row, k] & ~xc[k] != _U0:
                    alive = True
                    break
            if not alive:
                feasible = False
                break
            res[c, count] = row
            count += 1
        if not feasible:
            continue
        rlen[c] = count
        for k in range(w):
            chosen[c, k] = chosen[d, k] | vbit[k]
            excl[c, k] = xc[k]
        d = c
        entering = True

    return best_words, best, nodes, True
