"""Exact-length simple-path decision inside a view.

Two engines:

* brute: a subset dynamic program over vertex sets of the view — exact,
  affordable up to ~20 view vertices;
* sieve: repeated uniform random bipartitions, each reduced to a batch of
  bipartitioned-path queries with label budget ceil(3*(length+1)/4) plus a
  configurable slack.  A hidden path of length L is expected to show about
  (L+1)/2 vertices in V1 and L/4 edges inside V2 under a uniform split, so
  the budgeted signature window captures it with constant probability per
  repetition; a True answer is always correct.

Per-repetition seeds are derived from the master seed and the query
identity, so results do not depend on call order or scheduling.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from . import _kernels, walk_sieve
from .layered_graph import SubgraphView, random_partition
from .walk_sieve import SieveStats

#: Hard limit for the brute engine's 2^n subset table.
BRUTE_VERTEX_CAP = 20

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class SolverError(ValueError):
    pass


def _splitmix64(x: int) -> int:
    x = (x + _SPLITMIX_GAMMA) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Deterministic 64-bit seed from integer parts (order-sensitive)."""
    h = 0
    for p in parts:
        h = _splitmix64(h ^ (p & _MASK64))
    return h


@dataclass(frozen=True)
class PathSolverConfig:
    budget_slack: int = 2
    repetitions: int = 32
    strategy: str = "auto"  # "sieve" | "brute" | "auto"
    master_seed: int = 0
    auto_threshold: int = 14

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise SolverError("repetitions must be >= 1")
        if self.budget_slack < 0:
            raise SolverError("budget_slack must be >= 0")
        if self.strategy not in ("sieve", "brute", "auto"):
            raise SolverError(f"unknown strategy {self.strategy!r}")


def _view_key_parts(view: SubgraphView, src: int, dst: int) -> tuple[int, ...]:
    kind, x, y = view.key()
    return (0 if kind == "tail" else 1, x, -1 if y is None else y, src, dst)


def _pick_engine(view: SubgraphView, cap: int, cfg: PathSolverConfig) -> str:
    if cfg.strategy != "auto":
        return cfg.strategy
    if len(view.vertices) <= cfg.auto_threshold or cap <= 4:
        return "brute"
    return "sieve"


def _brute_length_set(view: SubgraphView, src: int, dst: int, cap: int) -> set[int]:
    arr = view.arrays
    if arr.nloc > BRUTE_VERTEX_CAP:
        raise SolverError(
            f"brute engine limited to {BRUTE_VERTEX_CAP} view vertices; "
            f"got {arr.nloc} (use the sieve strategy)")
    mask = int(_kernels.simple_path_length_mask(
        arr.indptr, arr.nbrs, arr.local(src), arr.local(dst), cap))
    return {l for l in range(cap + 1) if mask >> l & 1}


def _budget(length: int, cfg: PathSolverConfig) -> int:
    return -(-3 * (length + 1) // 4) + cfg.budget_slack


def _view_distance(view: SubgraphView, src: int, dst: int) -> int:
    """BFS distance inside the view; -1 when disconnected there."""
    arr = view.arrays
    dist = {arr.local(src): 0}
    q = deque([arr.local(src)])
    target = arr.local(dst)
    while q:
        u = q.popleft()
        if u == target:
            return dist[u]
        for idx in range(arr.indptr[u], arr.indptr[u + 1]):
            w = int(arr.nbrs[idx])
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist.get(target, -1)


def _sieve_length_set(view: SubgraphView, src: int, dst: int, cap: int,
                      lengths_wanted: set[int], cfg: PathSolverConfig,
                      stats: SieveStats | None) -> set[int]:
    """Lengths from lengths_wanted witnessed by any repetition."""
    graph = view.base.graph
    found: set[int] = set()
    # lengths below the in-view distance are exactly impossible; don't let
    # them keep repetitions alive
    dist = _view_distance(view, src, dst)
    if dist < 0:
        return found
    if src == dst:
        # the only simple path from a vertex to itself is the empty one
        return {0} & lengths_wanted
    pending = {l for l in lengths_wanted if l >= dist}
    key = _view_key_parts(view, src, dst)
    for rep in range(cfg.repetitions):
        if not pending:
            break
        scan_cap = max(pending)
        budget_top = _budget(scan_cap, cfg)
        rng = random.Random(derive_seed(cfg.master_seed, *key, rep))
        partition = random_partition(graph, rng)
        cube = walk_sieve.decide_cube(view, partition, src, dst, scan_cap,
                                      budget_top, rng, stats)
        for length in sorted(pending):
            budget = _budget(length, cfg)
            hit = False
            for k1 in range(budget + 1):
                for l2 in range(budget - k1 + 1):
                    if length + 1 < k1 + 2 * l2:
                        continue
                    if stats is not None:
                        stats.queries += 1
                    if cube[length, k1, l2]:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                found.add(length)
        pending -= found
    return found


def exists_path_of_length(view: SubgraphView, src: int, dst: int, length: int,
                          cfg: PathSolverConfig,
                          stats: SieveStats | None = None) -> bool:
    """Decide a simple src->dst path of exactly `length` edges in the view.

    Brute strategy is exact; the sieve never reports a false positive and
    misses with probability at most (1-p)^repetitions for the constant
    per-repetition hit rate p of the random-bipartition reduction.
    """
    if length < 0:
        raise SolverError("length must be nonnegative")
    if src not in view or dst not in view:
        raise SolverError("endpoints must belong to the view")
    engine = _pick_engine(view, length, cfg)
    if engine == "brute":
        return length in _brute_length_set(view, src, dst, length)
    return bool(_sieve_length_set(view, src, dst, length, {length}, cfg, stats))


def exists_path_upto(view: SubgraphView, src: int, dst: int, cap: int,
                     cfg: PathSolverConfig,
                     stats: SieveStats | None = None) -> set[int]:
    """All lengths <= cap admitting a simple src->dst path in the view.

    Shares bipartitions and one DP table across lengths in the sieve
    strategy; exact under the brute strategy.
    """
    if cap < 0:
        raise SolverError("cap must be nonnegative")
    if src not in view or dst not in view:
        raise SolverError("endpoints must belong to the view")
    engine = _pick_engine(view, cap, cfg)
    if engine == "brute":
        return _brute_length_set(view, src, dst, cap)
    return _sieve_length_set(view, src, dst, cap, set(range(cap + 1)), cfg, stats)
