"""Bipartitioned-path decision by evaluating a labeled-walk polynomial.

A query asks for a simple path of a given length inside a subgraph view,
with exactly k1 vertices in part V1 and exactly l2 edges lying inside part
V2.  The decision procedure sums, over a class of labeled walks, a monomial
in per-edge variables and per-(element, label) variables, evaluated at a
uniform random point of GF(2^64).  Walks that are not simple paths cancel
in pairs over characteristic 2, so the sum is nonzero only if a simple path
with the requested signature exists; a nonzero answer is therefore always
correct, and a zero answer is wrong with probability at most
(length + k1 + l2) / 2^64 per evaluation.

Admissible walks: fixed length and endpoints; after stepping from V2 into
V1 the walk may not immediately return to the vertex it left; every V1
vertex occurrence and every V2V2 edge traversal consumes one label, all
labels distinct and exhausted.  Edge variables are keyed by the unordered
edge and label variables by element identity (not walk position); both are
load-bearing for the pairwise cancellation.

The classical statement of this method restricts to length+1 >= k1+2*l2.
The cancellation argument never uses that inequality and this module stays
exact without it, so queries violating it are accepted; the detour engine
relies on that (see the map of deviations in the project notes).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, field64
from .layered_graph import Bipartition, SubgraphView

#: Hard cap on k1 + l2; the label-subset table has 2^(k1+l2) columns.
LABEL_BUDGET_CAP = 30

#: Soft cap on the DP table footprint in bytes (two tables are live).
TABLE_BYTES_CAP = 2 << 30


class SieveError(ValueError):
    pass


@dataclass(frozen=True)
class SieveQuery:
    """One bipartitioned-path instance on a view."""

    view: SubgraphView
    src: int
    dst: int
    length: int
    k1: int
    l2: int
    partition: Bipartition

    def __post_init__(self) -> None:
        if self.length < 0 or self.k1 < 0 or self.l2 < 0:
            raise SieveError("length, k1, l2 must be nonnegative")
        if self.src not in self.view or self.dst not in self.view:
            raise SieveError("endpoints must belong to the view")
        if self.k1 + self.l2 > LABEL_BUDGET_CAP:
            raise SieveError(
                f"k1 + l2 = {self.k1 + self.l2} exceeds the cap {LABEL_BUDGET_CAP}")

    @property
    def n_labels(self) -> int:
        return self.k1 + self.l2


@dataclass(frozen=True)
class VarAssignment:
    """Field values for every edge variable and every (element, label) variable.

    edge_vars is keyed by unordered vertex pairs (u, v) with u < v.
    label_vars is keyed by (element, c) where element is ('v', u) for a V1
    vertex or ('e', u, v) with u < v for a V2V2 edge.
    """

    edge_vars: dict
    label_vars: dict

    @classmethod
    def sample(cls, view: SubgraphView, partition: Bipartition, n_labels: int,
               rng: random.Random) -> "VarAssignment":
        arr = view.arrays
        edge_vars = {}
        for lu, lv in arr.edge_list:
            gu, gv = arr.l2g[lu], arr.l2g[lv]
            key = (gu, gv) if gu < gv else (gv, gu)
            edge_vars[key] = field64.sample_uniform(rng)
        label_vars = {}
        for gv in view.vertices:
            if partition.is_v1(gv):
                for c in range(n_labels):
                    label_vars[("v", gv), c] = field64.sample_uniform(rng)
        for key in sorted(edge_vars):
            gu, gv = key
            if not partition.is_v1(gu) and not partition.is_v1(gv):
                for c in range(n_labels):
                    label_vars[("e", gu, gv), c] = field64.sample_uniform(rng)
        return cls(edge_vars, label_vars)


@dataclass
class SieveStats:
    """Instrumentation accumulated across sieve evaluations."""

    evaluations: int = 0
    queries: int = 0
    dp_states: int = 0

    def merge(self, other: "SieveStats") -> None:
        self.evaluations += other.evaluations
        self.queries += other.queries
        self.dp_states += other.dp_states


def _check_table_size(nloc: int, maxdeg: int, n_labels: int, max_len: int) -> None:
    if n_labels > LABEL_BUDGET_CAP:
        raise SieveError(f"label budget {n_labels} exceeds the cap {LABEL_BUDGET_CAP}")
    cells = nloc * (maxdeg + 1) * (n_labels + 1) * (1 << n_labels)
    if 2 * cells * 8 > TABLE_BYTES_CAP:
        raise SieveError(
            f"DP table would need {2 * cells * 8} bytes "
            f"(nloc={nloc}, labels={n_labels}); shrink the query")


def _run_cube(view: SubgraphView, partition: Bipartition, src: int, dst: int,
              max_len: int, n_labels: int,
              xvar: np.ndarray, yv: np.ndarray, ye: np.ndarray,
              stats: SieveStats | None) -> np.ndarray:
    """One kernel run; returns the uint64 value cube [length, k1, l2]."""
    arr = view.arrays
    maxdeg = int(np.max(arr.indptr[1:] - arr.indptr[:-1])) if arr.nloc else 0
    _check_table_size(arr.nloc, maxdeg, n_labels, max_len)
    is_v1 = np.array([partition.is_v1(g) for g in arr.l2g], dtype=np.uint8)
    out = np.zeros((max_len + 1, n_labels + 1, n_labels + 1), dtype=np.uint64)
    touched = _kernels.walk_cube(
        arr.indptr, arr.nbrs, arr.eids, arr.rpos, is_v1, xvar, yv, ye,
        arr.local(src), arr.local(dst), max_len, n_labels, out)
    if stats is not None:
        stats.evaluations += 1
        stats.dp_states += int(touched)
    return out


def _sample_arrays(view: SubgraphView, partition: Bipartition, n_labels: int,
                   rng: random.Random):
    """Uniform variable values straight into kernel layout."""
    arr = view.arrays
    xvar = np.zeros(arr.n_edges, dtype=np.uint64)
    yv = np.zeros((arr.nloc, max(n_labels, 1)), dtype=np.uint64)
    ye = np.zeros((arr.n_edges, max(n_labels, 1)), dtype=np.uint64)
    for e in range(arr.n_edges):
        xvar[e] = rng.getrandbits(64)
    for lv in range(arr.nloc):
        if partition.is_v1(arr.l2g[lv]):
            for c in range(n_labels):
                yv[lv, c] = rng.getrandbits(64)
    for e, (lu, lv) in enumerate(arr.edge_list):
        if not partition.is_v1(arr.l2g[lu]) and not partition.is_v1(arr.l2g[lv]):
            for c in range(n_labels):
                ye[e, c] = rng.getrandbits(64)
    return xvar, yv, ye


def _assignment_arrays(q: SieveQuery, assign: VarAssignment):
    arr = q.view.arrays
    n_labels = q.n_labels
    xvar = np.zeros(arr.n_edges, dtype=np.uint64)
    yv = np.zeros((arr.nloc, max(n_labels, 1)), dtype=np.uint64)
    ye = np.zeros((arr.n_edges, max(n_labels, 1)), dtype=np.uint64)
    try:
        for e, (lu, lv) in enumerate(arr.edge_list):
            gu, gv = arr.l2g[lu], arr.l2g[lv]
            key = (gu, gv) if gu < gv else (gv, gu)
            xvar[e] = assign.edge_vars[key]
            if not q.partition.is_v1(gu) and not q.partition.is_v1(gv):
                for c in range(n_labels):
                    ye[e, c] = assign.label_vars[("e",) + key, c]
        for lv in range(arr.nloc):
            gv = arr.l2g[lv]
            if q.partition.is_v1(gv):
                for c in range(n_labels):
                    yv[lv, c] = assign.label_vars[("v", gv), c]
    except KeyError as exc:
        raise SieveError(f"assignment does not cover {exc.args[0]!r}") from None
    return xvar, yv, ye


def evaluate_polynomial(q: SieveQuery, assign: VarAssignment,
                        stats: SieveStats | None = None) -> int:
    """Exact evaluation of the walk polynomial at the given assignment."""
    xvar, yv, ye = _assignment_arrays(q, assign)
    cube = _run_cube(q.view, q.partition, q.src, q.dst, q.length, q.n_labels,
                     xvar, yv, ye, stats)
    if stats is not None:
        stats.queries += 1
    return int(cube[q.length, q.k1, q.l2])


def decide(q: SieveQuery, rng: random.Random, reps: int = 1,
           stats: SieveStats | None = None) -> bool:
    """True iff some of `reps` independent evaluations is nonzero.

    A True answer is always correct; a False answer is wrong with
    probability at most ((length + k1 + l2) / 2^64) ** reps.
    """
    if reps < 1:
        raise SieveError("reps must be positive")
    for _ in range(reps):
        assign = VarAssignment.sample(q.view, q.partition, q.n_labels, rng)
        if evaluate_polynomial(q, assign, stats) != 0:
            return True
    return False


def decide_cube(view: SubgraphView, partition: Bipartition, src: int, dst: int,
                max_len: int, budget: int, rng: random.Random,
                stats: SieveStats | None = None) -> np.ndarray:
    """Batched decisions for every (length <= max_len, k1, l2) with k1+l2 <= budget.

    One variable assignment and one DP table serve the whole batch: the
    query with j = k1+l2 labels is read off at the label subset {0..j-1},
    which restricts the shared assignment to a uniform assignment for that
    query.  Returns a bool cube indexed [length, k1, l2]; entries with
    k1 + l2 > budget are False.
    """
    if src not in view or dst not in view:
        raise SieveError("endpoints must belong to the view")
    if budget > LABEL_BUDGET_CAP:
        raise SieveError(f"label budget {budget} exceeds the cap {LABEL_BUDGET_CAP}")
    xvar, yv, ye = _sample_arrays(view, partition, budget, rng)
    cube = _run_cube(view, partition, src, dst, max_len, budget, xvar, yv, ye, stats)
    return cube != 0


def dp_state_count(q: SieveQuery) -> int:
    """Distinct DP states touched by one evaluation of the query.

    Uses a fixed internal seed so the count is reproducible; the state
    space explored does not depend on the sampled values.
    """
    rng = random.Random(0xD7_0510)
    xvar, yv, ye = _sample_arrays(q.view, q.partition, q.n_labels, rng)
    stats = SieveStats()
    _run_cube(q.view, q.partition, q.src, q.dst, q.length, q.n_labels,
              xvar, yv, ye, stats)
    return stats.dp_states
