"""Undirected graphs, BFS layering, edge classes, bipartitions, subgraph views.

The solver's geometry: BFS depths d(u) from a source s split edges into
forward / backward / stable, vertices into odd-depth (V1) and even-depth
(V2) parts, and induce the two view kinds the detour recursion works on:

* interval view at (x, y): x plus every vertex strictly deeper than x and
  at most as deep as y;
* tail view at x: x plus everything strictly deeper than x.

An interval view at (x, y) and the tail view at y intersect exactly in y.
Views and layered graphs are immutable after construction.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

UNREACHABLE = -1


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph on dense vertex ids [0, n)."""

    __slots__ = ("n", "edges", "adj", "_edge_set")

    def __init__(self, n: int, edges) -> None:
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = tuple(sorted(seen))
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._edge_set = frozenset(seen)

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._edge_set

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


class EdgeClass(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    STABLE = "stable"


@dataclass(frozen=True)
class LayeredGraph:
    """Graph plus BFS depths from a source; depth UNREACHABLE where cut off."""

    graph: Graph
    source: int
    dist: tuple[int, ...]

    def reachable(self, v: int) -> bool:
        return self.dist[v] != UNREACHABLE

    def depth(self, v: int) -> int:
        d = self.dist[v]
        if d == UNREACHABLE:
            raise GraphError(f"vertex {v} unreachable from {self.source}")
        return d


def bfs_layers(g: Graph, s: int) -> LayeredGraph:
    """Exact BFS depths from s; unreachable vertices marked."""
    if not 0 <= s < g.n:
        raise GraphError(f"source {s} out of range")
    dist = [UNREACHABLE] * g.n
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for v in g.adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                q.append(v)
    return LayeredGraph(g, s, tuple(dist))


def classify_edge(lg: LayeredGraph, u: int, v: int) -> EdgeClass:
    """Class of the traversal u -> v; requires a real edge with both ends reachable."""
    if not lg.graph.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    du, dv = lg.depth(u), lg.depth(v)
    if dv == du + 1:
        return EdgeClass.FORWARD
    if dv == du - 1:
        return EdgeClass.BACKWARD
    return EdgeClass.STABLE


@dataclass(frozen=True)
class Bipartition:
    """Per-vertex split into V1/V2; stored as a V1-membership tuple."""

    in_v1: tuple[bool, ...]

    def is_v1(self, v: int) -> bool:
        return self.in_v1[v]

    def part(self, v: int) -> int:
        return 1 if self.in_v1[v] else 2

    def v1(self) -> frozenset[int]:
        return frozenset(v for v, f in enumerate(self.in_v1) if f)

    def v2(self) -> frozenset[int]:
        return frozenset(v for v, f in enumerate(self.in_v1) if not f)


def parity_partition(lg: LayeredGraph) -> Bipartition:
    """Odd depths in V1, even depths in V2; unreachable vertices fall in V2.

    Every forward or backward edge then crosses the parts, so only stable
    edges can land inside one part.
    """
    return Bipartition(tuple(d != UNREACHABLE and d % 2 == 1 for d in lg.dist))


def random_partition(g: Graph, rng) -> Bipartition:
    """Each vertex independently and uniformly in V1 or V2."""
    return Bipartition(tuple(rng.getrandbits(1) == 1 for _ in range(g.n)))


@dataclass(frozen=True)
class SubgraphView:
    """Induced view of a layered graph; kind 'interval' (x, y] or 'tail' (x, inf)."""

    base: LayeredGraph
    kind: str
    x: int
    y: int | None = None
    members: frozenset[int] = field(compare=False, default=frozenset())

    def key(self) -> tuple:
        return (self.kind, self.x, self.y)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def adjacency(self, v: int) -> tuple[int, ...]:
        if v not in self.members:
            raise GraphError(f"vertex {v} not in view")
        return tuple(w for w in self.base.graph.adj[v] if w in self.members)

    @cached_property
    def arrays(self) -> "ViewArrays":
        return ViewArrays.build(self)


def tail_view(lg: LayeredGraph, x: int) -> SubgraphView:
    dx = lg.depth(x)
    members = frozenset({x} | {w for w in range(lg.graph.n)
                              if lg.dist[w] != UNREACHABLE and lg.dist[w] > dx})
    return SubgraphView(lg, "tail", x, None, members)


def interval_view(lg: LayeredGraph, x: int, y: int) -> SubgraphView:
    dx, dy = lg.depth(x), lg.depth(y)
    if dx >= dy:
        raise GraphError(f"interval view needs d(x) < d(y); got {dx} >= {dy}")
    members = frozenset({x} | {w for w in range(lg.graph.n)
                              if lg.dist[w] != UNREACHABLE and dx < lg.dist[w] <= dy})
    return SubgraphView(lg, "interval", x, y, members)


def subgraph_view(lg: LayeredGraph, kind: str, x: int, y: int | None = None) -> SubgraphView:
    if kind == "tail":
        return tail_view(lg, x)
    if kind == "interval":
        if y is None:
            raise GraphError("interval view needs y")
        return interval_view(lg, x, y)
    raise GraphError(f"unknown view kind {kind!r}")


class ViewArrays:
    """CSR arrays of a view over local vertex ids, shared by the kernels.

    rpos[i] gives, for the arc (v -> w) stored at CSR slot i, the slot
    offset of the reverse arc inside w's own adjacency block; the sieve
    uses it to address its no-immediate-return constraint.
    """

    __slots__ = ("nloc", "l2g", "g2l", "indptr", "nbrs", "eids", "rpos",
                 "edge_list", "n_edges")

    @classmethod
    def build(cls, view: SubgraphView) -> "ViewArrays":
        self = cls()
        l2g = view.vertices
        g2l = {g: i for i, g in enumerate(l2g)}
        nloc = len(l2g)
        edge_list = []
        eid_of = {}
        adj_local: list[list[tuple[int, int]]] = [[] for _ in range(nloc)]
        for gu in l2g:
            lu = g2l[gu]
            for gv in view.base.graph.adj[gu]:
                if gv not in g2l:
                    continue
                lv = g2l[gv]
                key = (lu, lv) if lu < lv else (lv, lu)
                if key not in eid_of:
                    eid_of[key] = len(edge_list)
                    edge_list.append(key)
                adj_local[lu].append((lv, eid_of[key]))
        indptr = np.zeros(nloc + 1, dtype=np.int64)
        for lu in range(nloc):
            adj_local[lu].sort()
            indptr[lu + 1] = indptr[lu] + len(adj_local[lu])
        nbrs = np.zeros(indptr[-1], dtype=np.int64)
        eids = np.zeros(indptr[-1], dtype=np.int64)
        rpos = np.zeros(indptr[-1], dtype=np.int64)
        for lu in range(nloc):
            for j, (lv, eid) in enumerate(adj_local[lu]):
                nbrs[indptr[lu] + j] = lv
                eids[indptr[lu] + j] = eid
        for lu in range(nloc):
            for j in range(indptr[lu], indptr[lu + 1]):
                lv = nbrs[j]
                back = -1
                for jj in range(indptr[lv], indptr[lv + 1]):
                    if nbrs[jj] == lu:
                        back = jj - indptr[lv]
                        break
                rpos[j] = back
        self.nloc = nloc
        self.l2g = l2g
        self.g2l = g2l
        self.indptr = indptr
        self.nbrs = nbrs
        self.eids = eids
        self.rpos = rpos
        self.edge_list = tuple(edge_list)
        self.n_edges = len(edge_list)
        return self

    def local(self, gv: int) -> int:
        try:
            return self.g2l[gv]
        except KeyError:
            raise GraphError(f"vertex {gv} not in view") from None
