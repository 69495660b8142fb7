"""Numba kernels: field batch ops and the hot dynamic programs.

Everything here works on plain numpy arrays so the jitted code stays
allocation-light.  Field elements are uint64; the carryless multiply must
stay bit-identical to field64.mul (tested).
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

_RED = uint64(0x1B)  # low bits of x^64 + x^4 + x^3 + x + 1


@njit(cache=True)
def _clmul64(a, b):
    a = uint64(a)
    b = uint64(b)
    r = uint64(0)
    while b:
        if b & uint64(1):
            r ^= a
        b >>= uint64(1)
        hi = a >> uint64(63)
        a = a << uint64(1)
        if hi:
            a ^= _RED
    return r


@njit(cache=True)
def mul_batch(a, b, out):
    for i in range(a.size):
        out[i] = _clmul64(a[i], b[i])


@njit(cache=True)
def inv_batch(a, out):
    # a^(2^64 - 2) by square-and-multiply; exponent bits are 1^63 0.
    for i in range(a.size):
        x = a[i]
        acc = uint64(1)
        sq = _clmul64(x, x)
        for _ in range(63):
            acc = _clmul64(acc, sq)
            sq = _clmul64(sq, sq)
        out[i] = acc


@njit(cache=True)
def _popcount64(x):
    x = uint64(x)
    x = x - ((x >> uint64(1)) & uint64(0x5555555555555555))
    x = (x & uint64(0x3333333333333333)) + ((x >> uint64(2)) & uint64(0x3333333333333333))
    x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
    return (x * uint64(0x0101010101010101)) >> uint64(56)


@njit(cache=True)
def walk_cube(indptr, nbrs, eids, rpos, is_v1, xvar, yv, ye,
              src, dst, max_len, nlabels, out):
    """Evaluate the labeled-walk polynomial for every (length, k1, l2) at once.

    State: (vertex, forbidden-slot, k1-used, label-subset).  forbidden-slot
    is 1 + the adjacency position of the vertex we must not step back to,
    set only right after a V2 -> V1 move; 0 means unconstrained.  Labels are
    consumed immediately on every V1-vertex arrival and every V2V2-edge
    traversal, so popcount(subset) == k1used + l2used throughout.

    out[l, k1, l2] receives the field value for the query that uses label
    set {0..k1+l2-1}; a query's value is read at the all-ones prefix subset.
    Returns the number of states holding a nonzero value, summed over
    length layers.
    """
    nloc = indptr.size - 1
    maxdeg = 0
    for v in range(nloc):
        d = indptr[v + 1] - indptr[v]
        if d > maxdeg:
            maxdeg = d
    nsub = 1 << nlabels
    cur = np.zeros((nloc, maxdeg + 1, nlabels + 1, nsub), dtype=np.uint64)
    nxt = np.zeros_like(cur)

    if is_v1[src]:
        for c in range(nlabels):
            cur[src, 0, 1, 1 << c] = yv[src, c]
    else:
        cur[src, 0, 0, 0] = uint64(1)

    touched = 0
    for layer in range(max_len + 1):
        # count live states, then read out this layer
        for v in range(nloc):
            degp = indptr[v + 1] - indptr[v] + 1
            for ps in range(degp):
                for k1u in range(nlabels + 1):
                    for S in range(nsub):
                        if cur[v, ps, k1u, S] != uint64(0):
                            touched += 1
        for k1 in range(nlabels + 1):
            for l2 in range(nlabels + 1 - k1):
                full = (1 << (k1 + l2)) - 1
                acc = uint64(0)
                degp = indptr[dst + 1] - indptr[dst] + 1
                for ps in range(degp):
                    acc ^= cur[dst, ps, k1, full]
                out[layer, k1, l2] = acc
        if layer == max_len:
            break
        nxt[:, :, :, :] = uint64(0)
        for v in range(nloc):
            deg = indptr[v + 1] - indptr[v]
            v_in_v1 = is_v1[v]
            for ps in range(deg + 1):
                for k1u in range(nlabels + 1):
                    for S in range(nsub):
                        val = cur[v, ps, k1u, S]
                        if val == uint64(0):
                            continue
                        for j in range(deg):
                            if ps == j + 1:
                                continue
                            idx = indptr[v] + j
                            w = nbrs[idx]
                            base = _clmul64(val, xvar[eids[idx]])
                            if is_v1[w]:
                                if k1u == nlabels:
                                    continue
                                ps2 = 0 if v_in_v1 else rpos[idx] + 1
                                for c in range(nlabels):
                                    bit = 1 << c
                                    if S & bit:
                                        continue
                                    nxt[w, ps2, k1u + 1, S | bit] ^= _clmul64(base, yv[w, c])
                            elif v_in_v1:
                                nxt[w, 0, k1u, S] ^= base
                            else:
                                e = eids[idx]
                                for c in range(nlabels):
                                    bit = 1 << c
                                    if S & bit:
                                        continue
                                    nxt[w, 0, k1u, S | bit] ^= _clmul64(base, ye[e, c])
        tmp = cur
        cur = nxt
        nxt = tmp
    return touched


@njit(cache=True)
def simple_path_length_mask(indptr, nbrs, src, dst, cap):
    """Exact set of simple-path lengths src->dst up to cap, as a bitmask.

    Subset DP over vertex sets: reach[S] is the bitmask of endpoints v such
    that some simple path from src covers exactly S and ends at v.  Only
    sets with at most cap+1 vertices are expanded.
    """
    nloc = indptr.size - 1
    nsub = 1 << nloc
    reach = np.zeros(nsub, dtype=np.uint32)
    reach[1 << src] = np.uint32(1) << np.uint32(src)
    out = uint64(0)
    if src == dst:
        out |= uint64(1)
    for S in range(nsub):
        ends = reach[S]
        if ends == np.uint32(0):
            continue
        pop = int(_popcount64(uint64(S)))
        if pop > cap:  # extending would exceed cap edges
            continue
        for v in range(nloc):
            if not (ends >> np.uint32(v)) & np.uint32(1):
                continue
            for idx in range(indptr[v], indptr[v + 1]):
                w = nbrs[idx]
                wbit = 1 << w
                if S & wbit:
                    continue
                T = S | wbit
                reach[T] |= np.uint32(1) << np.uint32(w)
                if w == dst:
                    out |= uint64(1) << uint64(pop)
    return out


@njit(cache=True)
def exact_len_path_exists(indptr, nbrs, src, dst, target_len, dist_to_dst):
    """DFS with backtracking over simple paths; prunes on remaining distance.

    True iff a simple path src->dst with exactly target_len edges exists.
    """
    nloc = indptr.size - 1
    if dist_to_dst[src] < 0 or dist_to_dst[src] > target_len:
        return False
    visited = np.zeros(nloc, dtype=np.uint8)
    path_v = np.empty(target_len + 1, dtype=np.int64)
    cursor = np.empty(target_len + 1, dtype=np.int64)
    depth = 0
    path_v[0] = src
    cursor[0] = indptr[src]
    visited[src] = 1
    if target_len == 0:
        return src == dst
    while depth >= 0:
        v = path_v[depth]
        idx = cursor[depth]
        if idx >= indptr[v + 1]:
            visited[v] = 0
            depth -= 1
            continue
        cursor[depth] += 1
        w = nbrs[idx]
        if visited[w]:
            continue
        nd = depth + 1
        if nd == target_len:
            if w == dst:
                return True
            continue
        if w == dst:
            # cannot end at dst anymore once it is on the path interior
            continue
        rem = target_len - nd
        if dist_to_dst[w] < 0 or dist_to_dst[w] > rem:
            continue
        depth = nd
        path_v[depth] = w
        cursor[depth] = indptr[w]
        visited[w] = 1
    return False


@njit(cache=True)
def dfs_length_mask(indptr, nbrs, src, dst, cap, dist_to_dst):
    """All simple-path lengths src->dst up to cap, by exhaustive DFS.

    Same backtracking search as exact_len_path_exists but sweeps every
    path once, OR-ing a length bit whenever dst is reached.
    """
    nloc = indptr.size - 1
    out = uint64(0)
    if dist_to_dst[src] < 0 or dist_to_dst[src] > cap:
        return out
    visited = np.zeros(nloc, dtype=np.uint8)
    path_v = np.empty(cap + 2, dtype=np.int64)
    cursor = np.empty(cap + 2, dtype=np.int64)
    depth = 0
    path_v[0] = src
    cursor[0] = indptr[src]
    visited[src] = 1
    if src == dst:
        out |= uint64(1)
    while depth >= 0:
        v = path_v[depth]
        idx = cursor[depth]
        if idx >= indptr[v + 1]:
            visited[v] = 0
            depth -= 1
            continue
        cursor[depth] += 1
        w = nbrs[idx]
        if visited[w]:
            continue
        nd = depth + 1
        rem = cap - nd
        if dist_to_dst[w] < 0 or dist_to_dst[w] > rem:
            continue
        if w == dst:
            out |= uint64(1) << uint64(nd)
            continue  # no simple extension can reach dst again
        depth = nd
        path_v[depth] = w
        cursor[depth] = indptr[w]
        visited[w] = 1
    return out


@njit(cache=True)
def labeled_walk_sum(eflat, eoff, lflat, loff, xvals, yvals, nlabels):
    """XOR of monomial values over pre-enumerated walks.

    Walk wi traverses edge ids eflat[eoff[wi]:eoff[wi+1]] and carries the
    labeled-element ids lflat[loff[wi]:loff[wi+1]] (exactly nlabels of
    them).  The label factor sums, over all ways to assign the nlabels
    distinct labels to those occurrences, the product of yvals[elem, c];
    equivalent to enumerating every labeled variant of the walk.
    """
    nsub = 1 << nlabels
    g = np.zeros(nsub, dtype=np.uint64)
    h = np.zeros(nsub, dtype=np.uint64)
    total = uint64(0)
    for wi in range(eoff.size - 1):
        xp = uint64(1)
        for i in range(eoff[wi], eoff[wi + 1]):
            xp = _clmul64(xp, xvals[eflat[i]])
        g[:] = uint64(0)
        g[0] = uint64(1)
        for i in range(loff[wi], loff[wi + 1]):
            elem = lflat[i]
            h[:] = uint64(0)
            for S in range(nsub):
                val = g[S]
                if val == uint64(0):
                    continue
                for c in range(nlabels):
                    bit = 1 << c
                    if S & bit:
                        continue
                    h[S | bit] ^= _clmul64(val, yvals[elem, c])
            tmp = g
            g = h
            h = tmp
        total ^= _clmul64(xp, g[nsub - 1])
    return total
