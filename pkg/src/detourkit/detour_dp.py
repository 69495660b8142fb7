"""Layered dynamic program deciding whether an s-t path of length
dist(s,t) + k exists.

For every vertex x with d(x) <= d(t) the program computes the set L(x) of
lengths in [d(t)-d(x), d(t)-d(x)+k] realized by simple x-t paths inside
the tail view at x, working from the deepest layers toward s; the answer
reads off bit k of L(s).  Deep vertices (within floor((1-alpha)k/2) of
d(t)) are a base case solved by exact-length path queries.  Every other
vertex combines three mechanisms, all sound because each insertion is
witnessed by a real path and tail/interval views at the split vertex are
disjoint apart from that vertex:

* whole-path sieve queries to t with every plausible (k1, l2) signature
  under the parity bipartition (few stable edges, target close);
* sieve queries to an intermediate y joined with the already-computed
  L(y) (few stable edges, target far);
* plain exact-length path queries to y joined with L(y) (many stable
  edges); this branch alone suffices when alpha = 0.

The signature budgets admit k1 + l2 up to (3k + m + 2 + 2*same)/4 for
whole paths and (3k + m + 4 + 2*same)/4 for prefixes, where m ranges over
the guessed stable-edge counts below alpha*k and `same` is 1 when the two
query endpoints lie in the same part.  The endpoint term mirrors the
corrected label bound (see brute_oracle.check_label_bound); without it,
tight prefixes are missed and the table goes incomplete.

All fractional thresholds are evaluated in exact integer arithmetic;
floors on upper bounds preserve every inequality involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from . import path_solver, walk_sieve
from .layered_graph import (Graph, GraphError, bfs_layers, interval_view,
                            parity_partition, tail_view)
from .path_solver import PathSolverConfig
from .walk_sieve import SieveStats


class UnreachableTargetError(ValueError):
    """Target not reachable from the source (distinct from a 'no' answer)."""


@dataclass(frozen=True)
class Alpha:
    """Exact rational threshold parameter in [0, 1)."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        if not 0 <= self.num < self.den:
            raise ValueError("alpha must satisfy 0 <= num/den < 1")

    @classmethod
    def from_string(cls, text: str) -> "Alpha":
        try:
            num_s, den_s = text.split("/")
            return cls(int(num_s), int(den_s))
        except (ValueError, AttributeError) as exc:
            if isinstance(exc, ValueError) and "alpha" in str(exc):
                raise
            raise ValueError(f"alpha must look like 'num/den', got {text!r}") from None

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


DEFAULT_ALPHA = Alpha(55814, 100000)


@dataclass(frozen=True)
class DetourQuery:
    graph: Graph
    s: int
    t: int
    k: int
    alpha: Alpha = DEFAULT_ALPHA
    seed: int = 0
    solver_cfg: PathSolverConfig = field(default_factory=PathSolverConfig)

    def __post_init__(self) -> None:
        if not (0 <= self.s < self.graph.n and 0 <= self.t < self.graph.n):
            raise GraphError("s and t must be vertices of the graph")
        if self.k < 0:
            raise ValueError("k must be nonnegative")


@dataclass(frozen=True)
class OffsetTable:
    """Per-vertex bitsets of achievable length offsets r in [0, k].

    Bit r of offset_bits[x] says a simple x->t path of length
    d(t)-d(x)+r exists in the tail view at x.
    """

    k: int
    dist_target: int
    dist: tuple[int, ...]
    offset_bits: dict[int, int]

    def has_offset(self, x: int, r: int) -> bool:
        return bool(self.offset_bits.get(x, 0) >> r & 1) if 0 <= r <= self.k else False

    def has_length(self, x: int, length: int) -> bool:
        return self.has_offset(x, length - (self.dist_target - self.dist[x]))

    def offsets_of(self, x: int) -> frozenset[int]:
        bits = self.offset_bits.get(x, 0)
        return frozenset(r for r in range(self.k + 1) if bits >> r & 1)

    def lengths_of(self, x: int) -> frozenset[int]:
        base = self.dist_target - self.dist[x]
        return frozenset(base + r for r in self.offsets_of(x))


@dataclass
class DetourResult:
    answer: bool
    dist_st: int
    stats: SieveStats


def _stable_guesses(k: int, alpha: Alpha) -> list[int]:
    """Integers m with m < alpha*k, by exact cross-multiplication."""
    out = []
    m = 0
    while m * alpha.den < k * alpha.num:
        out.append(m)
        m += 1
    return out


def compute_offset_table(q: DetourQuery,
                         stats: SieveStats | None = None) -> OffsetTable:
    g, s, t, k = q.graph, q.s, q.t, q.k
    num, den = q.alpha.num, q.alpha.den
    lg = bfs_layers(g, s)
    if not lg.reachable(t):
        raise UnreachableTargetError(f"t={t} unreachable from s={s}")
    dt = lg.dist[t]
    part = parity_partition(lg)
    cfg = q.solver_cfg
    if cfg.master_seed != q.seed:
        cfg = replace(cfg, master_seed=q.seed)

    t_base = ((den - num) * k) // (2 * den)            # floor((1-alpha)k/2)
    depth_base = dt - t_base                           # base layers start here
    cap_base = ((3 * den - num) * k) // (2 * den)      # floor((3-alpha)k/2)
    winmask = (1 << (k + 1)) - 1
    ms = _stable_guesses(k, q.alpha)
    rng = random.Random(path_solver.derive_seed(q.seed, 0x0FF5E7))

    by_depth: dict[int, list[int]] = {}
    for v in range(g.n):
        d = lg.dist[v]
        if 0 <= d <= dt:
            by_depth.setdefault(d, []).append(v)

    bits: dict[int, int] = {}

    def clamp_lengths(x: int, lens: set[int]) -> int:
        base = dt - lg.dist[x]
        acc = 0
        for l in lens:
            if base <= l <= base + k:
                acc |= 1 << (l - base)
        return acc

    # base case: deepest layers, exact-length path queries up to cap_base
    for d in range(max(0, depth_base), dt + 1):
        for x in by_depth.get(d, ()):
            view = tail_view(lg, x)
            if t not in view:  # x at depth >= d(t), x != t: no x->t path here
                bits[x] = 0
                continue
            lens = path_solver.exists_path_upto(view, x, t, cap_base, cfg, stats)
            if x == t:
                lens = lens | {0}
            else:
                lens = lens - {0}
            bits[x] = clamp_lengths(x, lens)

    same = lambda u, v: part.is_v1(u) == part.is_v1(v)

    for d in range(max(0, depth_base) - 1, -1, -1):
        for x in by_depth.get(d, ()):
            acc = 0
            if ms:
                m_top = ms[-1]
                # whole-path queries x -> t on the tail view
                b1a = (3 * k + m_top + 2 + (2 if same(x, t) else 0)) // 4
                lo = max(1, dt - d)
                maxlen = min(dt - d + k, 2 * b1a)
                if lo <= maxlen:
                    cube = walk_sieve.decide_cube(tail_view(lg, x), part, x, t,
                                                  maxlen, b1a, rng, stats)
                    for k1 in range(b1a + 1):
                        for l2 in range(b1a - k1 + 1):
                            top = min(2 * k1 + l2, maxlen)
                            for l in range(lo, top + 1):
                                if stats is not None:
                                    stats.queries += 1
                                if cube[l, k1, l2]:
                                    acc |= 1 << (l - (dt - d))
                # prefix queries x -> y on interval views, joined with L(y)
                y_top = min(dt, d + (3 * k - ms[0]) // 2 + 1)
                for dy in range(d + 1, y_top + 1):
                    for y in by_depth.get(dy, ()):
                        if y not in bits:
                            continue
                        usable = [m for m in ms if dy <= d + (3 * k - m) // 2 + 1]
                        if not usable or bits[y] == 0:
                            continue
                        b1b = (3 * k + usable[-1] + 4 + (2 if same(x, y) else 0)) // 4
                        amax = min(2 * b1b, dy - d + k)
                        if amax < dy - d:
                            continue
                        cube = walk_sieve.decide_cube(interval_view(lg, x, y),
                                                      part, x, y, amax, b1b,
                                                      rng, stats)
                        ybits = bits[y]
                        for k1 in range(b1b + 1):
                            for l2 in range(b1b - k1 + 1):
                                top = min(2 * k1 + l2, amax)
                                for a in range(dy - d, top + 1):
                                    if stats is not None:
                                        stats.queries += 1
                                    if cube[a, k1, l2]:
                                        acc |= (ybits << (a - (dy - d))) & winmask
            # many-stable-edges branch: exact-length prefixes, joined with L(y)
            y_top2 = min(dt, d + t_base + 1)
            for dy in range(d + 1, y_top2 + 1):
                for y in by_depth.get(dy, ()):
                    if y not in bits or bits[y] == 0:
                        continue
                    lens = path_solver.exists_path_upto(interval_view(lg, x, y),
                                                        x, y, cap_base + 1,
                                                        cfg, stats)
                    ybits = bits[y]
                    for a in lens:
                        if a >= dy - d and a > 0:
                            acc |= (ybits << (a - (dy - d))) & winmask
            bits[x] = acc & winmask

    return OffsetTable(k, dt, lg.dist, bits)


def solve(q: DetourQuery, stats: SieveStats | None = None) -> bool:
    """One-sided-error decision: True answers are always correct."""
    lg = bfs_layers(q.graph, q.s)
    if not lg.reachable(q.t):
        return False
    if q.k == 0:
        return True  # a shortest path is a detour of offset 0
    table = compute_offset_table(q, stats)
    return table.has_offset(q.s, q.k)


def solve_detailed(q: DetourQuery) -> DetourResult:
    stats = SieveStats()
    lg = bfs_layers(q.graph, q.s)
    if not lg.reachable(q.t):
        return DetourResult(False, -1, stats)
    return DetourResult(solve(q, stats), lg.dist[q.t], stats)
