"""Labeled-walk enumeration oracle for the sieve tests.

Independent of the package's dynamic program: admissible walks are listed
by explicit recursion, and each walk's monomial is summed over all ways
to hand out the distinct labels.  Everything is pure Python on top of the
portable field multiply, except for an optional array hand-off to the
package's jitted monomial summer for the larger cancellation sweeps.
"""

from itertools import permutations

import numpy as np

from detourkit import field64
from detourkit._kernels import labeled_walk_sum


def admissible_walks(adj, members, partition, src, dst, length, k1, l2):
    """Vertex sequences of the walk class behind the sieve polynomial.

    Conditions: exact length and endpoints; no immediate return right
    after a V2 -> V1 step; exactly k1 V1-vertex occurrences and l2
    V2V2-edge traversals.  Yields (vertices, labelable-elements) where
    elements are ('v', u) per V1 occurrence and ('e', u, v) per V2V2
    traversal, in walk order.
    """
    if src not in members or dst not in members:
        return
    is_v1 = partition.is_v1

    def rec(seq, c1, c2):
        v = seq[-1]
        if len(seq) - 1 == length:
            if v == dst and c1 == k1 and c2 == l2:
                elems = []
                for u in seq:
                    if is_v1(u):
                        elems.append(("v", u))
                for a, b in zip(seq, seq[1:]):
                    if not is_v1(a) and not is_v1(b):
                        elems.append(("e", min(a, b), max(a, b)))
                yield list(seq), elems
            return
        for w in adj[v]:
            if w not in members:
                continue
            if len(seq) >= 2 and not is_v1(seq[-2]) and is_v1(v) and w == seq[-2]:
                continue  # immediate return after V2 -> V1
            n1 = c1 + (1 if is_v1(w) else 0)
            n2 = c2 + (1 if not is_v1(v) and not is_v1(w) else 0)
            if n1 > k1 or n2 > l2:
                continue
            seq.append(w)
            yield from rec(seq, n1, n2)
            seq.pop()

    start_k1 = 1 if is_v1(src) else 0
    if start_k1 <= k1:
        yield from rec([src], start_k1, 0)


def monomial_sum(walks, edge_vars, label_vars, n_labels, simple_only=False):
    """XOR of f(W) over labeled variants of the given walks (pure Python)."""
    total = 0
    for seq, elems in walks:
        if simple_only and len(set(seq)) != len(seq):
            continue
        xprod = field64.ONE
        for a, b in zip(seq, seq[1:]):
            xprod = field64.mul(xprod, edge_vars[(min(a, b), max(a, b))])
        for perm in permutations(range(n_labels)):
            term = xprod
            for elem, c in zip(elems, perm):
                term = field64.mul(term, label_vars[elem, c])
            total ^= term
    return total


def monomial_sum_fast(walks, edge_vars, label_vars, n_labels, simple_only=False):
    """Same sum via the jitted summer; label handout folded per walk."""
    kept = [(seq, elems) for seq, elems in walks
            if not simple_only or len(set(seq)) == len(seq)]
    edge_ids = {e: i for i, e in enumerate(sorted(edge_vars))}
    elem_ids = {}
    for _, elems in kept:
        for e in elems:
            elem_ids.setdefault(e, len(elem_ids))
    xvals = np.zeros(max(len(edge_ids), 1), dtype=np.uint64)
    for e, i in edge_ids.items():
        xvals[i] = edge_vars[e]
    yvals = np.zeros((max(len(elem_ids), 1), max(n_labels, 1)), dtype=np.uint64)
    for e, i in elem_ids.items():
        for c in range(n_labels):
            yvals[i, c] = label_vars[e, c]
    eflat, eoff, lflat, loff = [], [0], [], [0]
    for seq, elems in kept:
        for a, b in zip(seq, seq[1:]):
            eflat.append(edge_ids[(min(a, b), max(a, b))])
        eoff.append(len(eflat))
        for e in elems:
            lflat.append(elem_ids[e])
        loff.append(len(lflat))
    return int(labeled_walk_sum(
        np.array(eflat, dtype=np.int64), np.array(eoff, dtype=np.int64),
        np.array(lflat, dtype=np.int64), np.array(loff, dtype=np.int64),
        xvals, yvals, n_labels))
