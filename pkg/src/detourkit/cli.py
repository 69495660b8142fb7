"""Command-line front end: graph files, solver subcommands, JSON reports.

Graph file format: first non-comment line "n m", then m lines "u v" with
0 <= u, v < n; lines starting with '#' are comments; self-loops and
duplicate edges are rejected.  Reports are JSON on stdout; exit code 0
means yes, 1 means no, 2 means error.  DETOURKIT_SEED is used when --seed
is omitted.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import random
import sys
import time

from .brute_oracle import (bipartitioned_exists, detour_exists,
                           path_length_set)
from .detour_dp import Alpha, DetourQuery, solve_detailed
from .layered_graph import (Bipartition, Graph, GraphError, bfs_layers,
                            parity_partition, tail_view)
from .path_solver import PathSolverConfig, exists_path_of_length
from .walk_sieve import SieveQuery, SieveStats, decide


class CliError(ValueError):
    pass


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CliError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise CliError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise CliError(f"header must be two integers, got {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise CliError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CliError(f"edge line must be 'u v', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise CliError(f"edge line must be two integers, got {ln!r}") from None
    try:
        return Graph(n, edges)
    except GraphError as exc:
        raise CliError(str(exc)) from None


def serialize_graph(g: Graph) -> str:
    out = [f"{g.n} {len(g.edges)}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def _load(path: str) -> tuple[Graph, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    digest = hashlib.sha256(raw).hexdigest()
    return parse_graph(raw.decode("utf-8")), digest


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("DETOURKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"DETOURKIT_SEED must be an integer, got {env!r}") from None
    return 0


def _check_vertex(g: Graph, v: int, name: str) -> None:
    if not 0 <= v < g.n:
        raise CliError(f"{name}={v} out of range for n={g.n}")


def _report(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _run_report(command: str, digest: str, params: dict, answer: bool,
                dist_st, elapsed_ms: float, stats: SieveStats | None) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "parameters": params,
        "answer": answer,
        "dist_st": dist_st,
        "elapsed_ms": round(elapsed_ms, 3),
        "dp_states_touched": stats.dp_states if stats else 0,
        "sieve_queries_issued": stats.queries if stats else 0,
    }


def _load_partition(spec: str, g: Graph, s: int) -> Bipartition:
    if spec == "parity":
        return parity_partition(bfs_layers(g, s))
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise CliError(f"cannot read partition file {spec}: {exc}") from None
    if len(tokens) != g.n:
        raise CliError(f"partition file must hold {g.n} tokens, found {len(tokens)}")
    flags = []
    for tok in tokens:
        if tok not in ("1", "2"):
            raise CliError(f"partition tokens must be 1 or 2, got {tok!r}")
        flags.append(tok == "1")
    return Bipartition(tuple(flags))


def _cmd_detour(args) -> int:
    g, digest = _load(args.graph)
    _check_vertex(g, args.s, "s")
    _check_vertex(g, args.t, "t")
    seed = _seed(args)
    alpha = Alpha.from_string(args.alpha)
    cfg = PathSolverConfig(budget_slack=args.budget_slack, repetitions=args.reps,
                           strategy=args.strategy, master_seed=seed)
    q = DetourQuery(g, args.s, args.t, args.k, alpha, seed, cfg)
    t0 = time.perf_counter()
    res = solve_detailed(q)
    elapsed = (time.perf_counter() - t0) * 1000
    params = {"k": args.k, "alpha": str(alpha), "seed": seed, "reps": args.reps,
              "budget_slack": args.budget_slack, "strategy": args.strategy,
              "s": args.s, "t": args.t}
    _report(_run_report("detour", digest, params, res.answer,
                        res.dist_st if res.dist_st >= 0 else None,
                        elapsed, res.stats))
    return 0 if res.answer else 1


def _cmd_bipath(args) -> int:
    g, digest = _load(args.graph)
    _check_vertex(g, args.s, "s")
    _check_vertex(g, args.t, "t")
    seed = _seed(args)
    lg = bfs_layers(g, args.s)
    partition = _load_partition(args.partition, g, args.s)
    view = tail_view(lg, args.s)
    stats = SieveStats()
    t0 = time.perf_counter()
    if args.t in view:
        q = SieveQuery(view, args.s, args.t, args.len, args.k1, args.l2, partition)
        answer = decide(q, random.Random(seed), reps=args.reps, stats=stats)
    else:
        answer = False
    elapsed = (time.perf_counter() - t0) * 1000
    params = {"len": args.len, "k1": args.k1, "l2": args.l2,
              "partition": args.partition, "seed": seed, "reps": args.reps,
              "s": args.s, "t": args.t}
    dist_st = lg.dist[args.t] if lg.reachable(args.t) else None
    _report(_run_report("bipath", digest, params, answer, dist_st, elapsed, stats))
    return 0 if answer else 1


def _cmd_path(args) -> int:
    g, digest = _load(args.graph)
    _check_vertex(g, args.s, "s")
    _check_vertex(g, args.t, "t")
    seed = _seed(args)
    lg = bfs_layers(g, args.s)
    view = tail_view(lg, args.s)
    cfg = PathSolverConfig(budget_slack=args.budget_slack, repetitions=args.reps,
                           strategy=args.strategy, master_seed=seed)
    stats = SieveStats()
    t0 = time.perf_counter()
    answer = (args.t in view and
              exists_path_of_length(view, args.s, args.t, args.len, cfg, stats))
    elapsed = (time.perf_counter() - t0) * 1000
    params = {"len": args.len, "seed": seed, "reps": args.reps,
              "budget_slack": args.budget_slack, "strategy": args.strategy,
              "s": args.s, "t": args.t}
    dist_st = lg.dist[args.t] if lg.reachable(args.t) else None
    _report(_run_report("path", digest, params, answer, dist_st, elapsed, stats))
    return 0 if answer else 1


def _cmd_oracle(args) -> int:
    g, digest = _load(args.graph)
    _check_vertex(g, args.s, "s")
    _check_vertex(g, args.t, "t")
    lg = bfs_layers(g, args.s)
    dist_st = lg.dist[args.t] if lg.reachable(args.t) else None
    t0 = time.perf_counter()
    if args.oracle_what == "detour":
        answer = detour_exists(g, args.s, args.t, args.k, force=args.force)
        params = {"k": args.k, "s": args.s, "t": args.t}
    elif args.oracle_what == "path":
        view = tail_view(lg, args.s)
        answer = (args.t in view and
                  args.len in path_length_set(view, args.s, args.t, args.len,
                                              force=args.force))
        params = {"len": args.len, "s": args.s, "t": args.t}
    else:
        partition = _load_partition(args.partition, g, args.s)
        view = tail_view(lg, args.s)
        answer = (args.t in view and
                  bipartitioned_exists(view, args.s, args.t, args.len,
                                       args.k1, args.l2, partition,
                                       force=args.force))
        params = {"len": args.len, "k1": args.k1, "l2": args.l2,
                  "partition": args.partition, "s": args.s, "t": args.t}
    elapsed = (time.perf_counter() - t0) * 1000
    _report(_run_report(f"oracle-{args.oracle_what}", digest, params, answer,
                        dist_st, elapsed, None))
    return 0 if answer else 1


def _gen_graph(family: str, n: int | None, p: float | None, seed: int) -> Graph:
    if family == "petersen":
        if n not in (None, 10):
            raise CliError("petersen family is fixed at n=10")
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, 5 + i) for i in range(5)]
        return Graph(10, outer + inner + spokes)
    if n is None:
        raise CliError(f"--n is required for family {family}")
    if n <= 0:
        raise CliError("--n must be positive")
    if family == "path":
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if family == "cycle":
        if n < 3:
            raise CliError("cycle needs n >= 3")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "grid":
        side = math.isqrt(n)
        if side * side != n:
            raise CliError(f"grid needs a square n, got {n}")
        edges = []
        for r in range(side):
            for c in range(side):
                v = r * side + c
                if c + 1 < side:
                    edges.append((v, v + 1))
                if r + 1 < side:
                    edges.append((v, v + side))
        return Graph(n, edges)
    if family == "gnp":
        if p is None:
            raise CliError("gnp needs --p")
        rng = random.Random(seed)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        return Graph(n, edges)
    raise CliError(f"unknown family {family!r}")


def _cmd_gen(args) -> int:
    g = _gen_graph(args.family, args.n, args.p, _seed(args))
    sys.stdout.write(serialize_graph(g))
    return 0


def _cmd_bench(args) -> int:
    g, _digest = _load(args.graph)
    _check_vertex(g, args.s, "s")
    _check_vertex(g, args.t, "t")
    seed = _seed(args)
    alpha = Alpha.from_string(args.alpha)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["k", "elapsed_ms", "dp_states_touched", "sieve_queries"])
    for k in range(1, args.kmax + 1):
        cfg = PathSolverConfig(master_seed=seed)
        q = DetourQuery(g, args.s, args.t, k, alpha, seed, cfg)
        t0 = time.perf_counter()
        res = solve_detailed(q)
        elapsed = (time.perf_counter() - t0) * 1000
        writer.writerow([k, round(elapsed, 3), res.stats.dp_states,
                         res.stats.queries])
    text = buf.getvalue()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="detourkit",
                                 description="exact-detour toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--graph", required=True)
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--t", type=int, required=True)
        if seed:
            p.add_argument("--seed", type=lambda s: int(s, 0), default=None)

    p = sub.add_parser("detour", help="decide an exact detour of offset k")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", default="55814/100000")
    p.add_argument("--reps", type=int, default=32)
    p.add_argument("--budget-slack", dest="budget_slack", type=int, default=2)
    p.add_argument("--strategy", choices=["sieve", "brute", "auto"], default="auto")
    p.set_defaults(func=_cmd_detour)

    p = sub.add_parser("bipath", help="decide one bipartitioned-path query")
    common(p)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)
    p.add_argument("--partition", default="parity")
    p.add_argument("--reps", type=int, default=1)
    p.set_defaults(func=_cmd_bipath)

    p = sub.add_parser("path", help="decide an exact-length path query")
    common(p)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--reps", type=int, default=32)
    p.add_argument("--budget-slack", dest="budget_slack", type=int, default=2)
    p.add_argument("--strategy", choices=["sieve", "brute", "auto"], default="auto")
    p.set_defaults(func=_cmd_path)

    p = sub.add_parser("oracle", help="exhaustive reference answers")
    osub = p.add_subparsers(dest="oracle_what", required=True)
    for what in ("detour", "path", "bipath"):
        op = osub.add_parser(what)
        common(op, seed=False)
        op.add_argument("--force", action="store_true",
                        help="override the oracle size guard")
        if what == "detour":
            op.add_argument("--k", type=int, required=True)
        else:
            op.add_argument("--len", type=int, required=True)
        if what == "bipath":
            op.add_argument("--k1", type=int, required=True)
            op.add_argument("--l2", type=int, required=True)
            op.add_argument("--partition", default="parity")
        op.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="write a graph file to stdout")
    p.add_argument("--family", required=True,
                   choices=["path", "cycle", "grid", "gnp", "petersen"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="sweep k and emit CSV instrumentation")
    common(p)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--alpha", default="55814/100000")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, GraphError, ValueError) as exc:
        _report({"command": args.command, "error": {"message": str(exc)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
