"""Acceptance suite: one test per criterion, each printing a verdict line.

Run as `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines.
The randomized suites are seeded, so reruns are reproducible; the detour
suite additionally adjudicates any solver/oracle disagreement with a
fresh-seed rerun to separate sampling noise from real defects.
"""

import json
import random
import time
from itertools import islice

import numpy as np

from detourkit import (Alpha, DetourQuery, Graph, bfs_layers, check_label_bound,
                       check_split_claim, compute_offset_table, decide,
                       decide_cube, detour_exists, dp_state_count,
                       enumerate_paths, field64, parity_partition,
                       path_length_set, signature_set, solve, tail_view)
from detourkit._kernels import mul_batch as _mul_batch_kernel
from detourkit.cli import main as cli_main
from detourkit.detour_dp import DEFAULT_ALPHA
from detourkit.layered_graph import Bipartition
from detourkit.walk_sieve import SieveQuery

from conftest import grid_graph, random_connected_graph
from walkenum import admissible_walks, monomial_sum, monomial_sum_fast


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


# --------------------------------------------------------------------------
# criterion 1: field arithmetic


def test_criterion_1_field_suite():
    t0 = time.time()
    rng = np.random.default_rng(0xF1E1D)
    n = 100_000
    a = rng.integers(0, 2**64, size=n, dtype=np.uint64)
    b = rng.integers(0, 2**64, size=n, dtype=np.uint64)
    c = rng.integers(0, 2**64, size=n, dtype=np.uint64)

    ok = True
    notes = []
    # commutativity / associativity / distributivity, 10^5 triples
    ab, ba = field64.mul_batch(a, b), field64.mul_batch(b, a)
    ok &= bool((ab == ba).all())
    ok &= bool((field64.mul_batch(ab, c) == field64.mul_batch(
        a, field64.mul_batch(b, c))).all())
    ok &= bool((field64.mul_batch(a, b ^ c) ==
                (field64.mul_batch(a, b) ^ field64.mul_batch(a, c))).all())
    if not ok:
        notes.append("ring axioms failed")

    # inverses on 10^5 nonzero elements
    nz = np.where(a == 0, np.uint64(1), a)
    prod = field64.mul_batch(nz, field64.inv_batch(nz))
    if not bool((prod == 1).all()):
        ok = False
        notes.append("inverse failed")

    # Frobenius: squaring 64 times is the identity map
    x = a.copy()
    for _ in range(64):
        x = field64.mul_batch(x, x)
    if not bool((x == a).all()):
        ok = False
        notes.append("Frobenius failed")

    # portable vs accelerated multiply, bit-for-bit on 10^6 pairs
    m = 1_000_000
    aa = rng.integers(0, 2**64, size=m, dtype=np.uint64)
    bb = rng.integers(0, 2**64, size=m, dtype=np.uint64)
    fast = np.empty_like(aa)
    _mul_batch_kernel(aa, bb, fast)
    mul = field64.mul
    mismatches = sum(1 for i in range(m)
                     if mul(int(aa[i]), int(bb[i])) != int(fast[i]))
    if mismatches:
        ok = False
        notes.append(f"{mismatches} portable/accelerated mismatches")

    elapsed = time.time() - t0
    if elapsed > 30:
        ok = False
        notes.append(f"took {elapsed:.1f}s > 30s")
    _verdict(1, ok, notes[0] if notes else
             f"10^5 axiom/inverse/Frobenius checks and 10^6 dual-path "
             f"multiplies agree ({elapsed:.1f}s)")


# --------------------------------------------------------------------------
# criterion 2: sieve vs oracle, exhaustive query grid on small graphs


def _feasible_triples(max_len: int):
    for length in range(max_len + 1):
        for k1 in range(length + 2):
            for l2 in range((length + 1 - k1) // 2 + 1):
                if length + 1 >= k1 + 2 * l2:
                    yield length, k1, l2


def _connected_edge_sets(n: int):
    """All connected labeled graphs on n vertices, as edge lists."""
    from itertools import combinations

    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == n:
            yield edges


def test_criterion_2_sieve_vs_oracle_exhaustive():
    # full enumeration of all 27476 connected graphs on <= 6 vertices runs
    # past the criterion's 5-minute bound, so per its fallback clause this
    # covers every graph on <= 5 vertices (772) plus a uniform 4300-graph
    # sample of the 26704 six-vertex ones
    t0 = time.time()
    rnd = random.Random(0xACC2)
    instances = [(n, edges) for n in range(1, 6)
                 for edges in _connected_edge_sets(n)]
    six = list(_connected_edge_sets(6))
    instances += [(6, six[i]) for i in sorted(rnd.sample(range(len(six)), 4_300))]
    graphs = len(instances)
    queries = fp = fn = 0
    spot_checks = 0
    for gi, (n, edges) in enumerate(instances):
        g = Graph(n, edges)
        lg = bfs_layers(g, 0)
        part = parity_partition(lg)
        view = tail_view(lg, 0)
        dst = n - 1
        cube = decide_cube(view, part, 0, dst, 7, 8, random.Random(gi))
        sigs = signature_set(view, 0, dst, 7)
        for length, k1, l2 in _feasible_triples(7):
            got = bool(cube[length, k1, l2])
            want = (length, k1, l2) in sigs
            queries += 1
            fp += got and not want
            fn += want and not got
        if gi % 250 == 0:
            # tie the one-query API to the batched cube
            for length, k1, l2 in islice(_feasible_triples(7), 10, 13):
                q = SieveQuery(view, 0, dst, length, k1, l2, part)
                got = decide(q, random.Random(1000 + gi), reps=1)
                assert got == ((length, k1, l2) in sigs)
                spot_checks += 1
    elapsed = time.time() - t0
    ok = fp == 0 and fn == 0 and elapsed <= 300
    _verdict(2, ok,
             f"{graphs} graphs, {queries} queries: {fp} false positives, "
             f"{fn} false negatives, {spot_checks} direct decide() spot "
             f"checks ({elapsed:.1f}s)")


# --------------------------------------------------------------------------
# criterion 3: cancellation of non-simple walks


def test_criterion_3_cancellation():
    t0 = time.time()
    rnd = random.Random(0xACC3)
    instances = 0
    failures = 0
    while instances < 200:
        n = rnd.randint(3, 7)
        g = random_connected_graph(rnd, n, rnd.choice((0.4, 0.6)))
        lg = bfs_layers(g, 0)
        if rnd.random() < 0.5:
            part = parity_partition(lg)
        else:
            part = Bipartition(tuple(rnd.random() < 0.5 for _ in range(n)))
        view = tail_view(lg, 0)
        dst = rnd.choice(view.vertices)
        length = rnd.randint(2, 6)
        k1 = rnd.randint(0, 3)
        l2 = rnd.randint(0, 3 - k1 if k1 < 3 else 0)
        walks = list(admissible_walks(g.adj, view.members, part, 0, dst,
                                      length, k1, l2))
        if not walks or len(walks) > 60_000:
            continue
        instances += 1
        n_labels = k1 + l2
        for rep in range(5):
            arng = random.Random((instances << 3) | rep)
            edge_vars = {e: arng.getrandbits(64) for e in g.edges}
            label_vars = {}
            for v in range(n):
                if part.is_v1(v):
                    for c in range(n_labels):
                        label_vars[("v", v), c] = arng.getrandbits(64)
            for u, v in g.edges:
                if not part.is_v1(u) and not part.is_v1(v):
                    for c in range(n_labels):
                        label_vars[("e", u, v), c] = arng.getrandbits(64)
            full = monomial_sum_fast(walks, edge_vars, label_vars, n_labels)
            simple = monomial_sum_fast(walks, edge_vars, label_vars, n_labels,
                                       simple_only=True)
            if full != simple:
                failures += 1
            if instances <= 3 and rep == 0:
                # the folded summer equals literal labeled-walk enumeration
                assert full == monomial_sum(walks, edge_vars, label_vars,
                                            n_labels)
    elapsed = time.time() - t0
    ok = failures == 0 and elapsed <= 120
    _verdict(3, ok, f"200 instances x 5 assignments: {failures} unequal sums "
                    f"({elapsed:.1f}s)")


# --------------------------------------------------------------------------
# criteria 4-6 share one seeded suite


def _detour_suite():
    rnd = random.Random(0xACC4)
    suite = []
    for _ in range(300):
        n = rnd.randint(6, 12)
        p = rnd.choice((0.25, 0.4, 0.6))
        g = random_connected_graph(rnd, n, p)
        t = rnd.randrange(1, n)
        suite.append((g, t))
    return suite


def _window_truth(g: Graph, x: int, t: int, k: int):
    lg = bfs_layers(g, 0)
    view = tail_view(lg, x)
    if t not in view:
        return frozenset()
    base = lg.dist[t] - lg.dist[x]
    lens = path_length_set(view, x, t, base + k)
    return frozenset(l for l in lens if base <= l <= base + k)


def test_criterion_4_detour_vs_oracle():
    t0 = time.time()
    suite = _detour_suite()
    fp = 0
    fn_instances = []
    yes = 0
    for idx, (g, t) in enumerate(suite):
        for k in range(1, 6):
            want = detour_exists(g, 0, t, k)
            got = solve(DetourQuery(g, 0, t, k, seed=idx))
            yes += want
            if got and not want:
                fp += 1
            elif want and not got:
                fn_instances.append((idx, g, t, k))
    # fresh-seed reruns must clear every miss (sampling noise, not structure)
    uncleared = sum(1 for idx, g, t, k in fn_instances
                    if not solve(DetourQuery(g, 0, t, k, seed=777 + idx)))
    table_checked = 0
    table_bad = 0
    for idx, (g, t) in enumerate(suite[:50]):
        k = 4
        table = compute_offset_table(DetourQuery(g, 0, t, k, seed=idx))
        lg = bfs_layers(g, 0)
        for x in range(g.n):
            if lg.dist[x] < 0 or lg.dist[x] > lg.dist[t]:
                continue
            table_checked += 1
            if table.lengths_of(x) != _window_truth(g, x, t, k):
                table_bad += 1
    elapsed = time.time() - t0
    ok = (fp == 0 and len(fn_instances) <= 0.01 * max(yes, 1)
          and uncleared == 0 and table_bad == 0 and elapsed <= 600)
    _verdict(4, ok,
             f"1500 instances ({yes} yes): {fp} false positives, "
             f"{len(fn_instances)} misses ({uncleared} survived reruns); "
             f"offset tables exact on {table_checked} vertex checks over 50 "
             f"instances ({table_bad} bad) ({elapsed:.1f}s)")


def test_criterion_5_alpha_invariance():
    t0 = time.time()
    suite = _detour_suite()
    alphas = [Alpha(0, 1), Alpha(1, 4), DEFAULT_ALPHA, Alpha(9, 10)]
    disagreements = 0
    fn_budget_violated = False
    misses = {str(a): 0 for a in alphas}
    yes = 0
    for idx, (g, t) in enumerate(suite):
        for k in range(1, 6):
            answers = {}
            for a in alphas:
                answers[str(a)] = solve(DetourQuery(g, 0, t, k, alpha=a, seed=idx))
            if len(set(answers.values())) > 1:
                disagreements += 1
                want = detour_exists(g, 0, t, k)
                if not want:
                    fn_budget_violated = True  # a yes without a witness
                else:
                    for name, ans in answers.items():
                        if not ans:
                            misses[name] += 1
            yes += detour_exists(g, 0, t, k)
    over_budget = [name for name, cnt in misses.items()
                   if cnt > 0.01 * max(yes, 1)]
    elapsed = time.time() - t0
    ok = not fn_budget_violated and not over_budget
    _verdict(5, ok,
             f"4 alphas x 1500 instances: {disagreements} disagreements, "
             f"per-alpha misses {misses} within the 1% budget "
             f"({elapsed:.1f}s)")


def test_criterion_6_claim_suites():
    t0 = time.time()
    suite = _detour_suite()
    records = 0
    split_bad = label_bad = 0
    target = 100_000
    for idx, (g, t) in enumerate(suite):
        lg = bfs_layers(g, 0)
        view = tail_view(lg, 0)
        cap = lg.dist[t] + 5
        for rec in islice(enumerate_paths(view, 0, t, cap), 2_000):
            records += 1
            if not check_split_claim(rec, lg):
                split_bad += 1
            if not check_label_bound(rec):
                label_bad += 1
        if records >= target:
            break
    elapsed = time.time() - t0
    ok = split_bad == 0 and label_bad == 0 and records >= target
    _verdict(6, ok,
             f"{records} enumerated paths: split-vertex check failed "
             f"{split_bad}, label-bound check failed {label_bad} "
             f"({elapsed:.1f}s)")


# --------------------------------------------------------------------------
# criterion 7: 2^(k1+l2) scaling of the sieve table


def test_criterion_7_scaling():
    t0 = time.time()
    g = grid_graph(4)
    lg = bfs_layers(g, 0)
    part = parity_partition(lg)
    view = tail_view(lg, 0)
    counts = {}
    for K in range(4, 13):
        # walk length 2K consumes exactly K labels on the bipartite grid
        q = SieveQuery(view, 0, 15, 2 * K, K, 0, part)
        counts[K] = dp_state_count(q)
    # the polynomial factor is linear in the table's layer count (2K+1);
    # its unit cost is measured at the K=4 baseline and divided out
    poly_unit = counts[4] / ((2 * 4 + 1) * 2 ** 4)
    normalized = {K: counts[K] / (poly_unit * (2 * K + 1)) for K in counts}
    ratios = [normalized[K + 1] / normalized[K] for K in range(4, 12)]
    elapsed = time.time() - t0
    ok = all(1.6 <= r <= 2.4 for r in ratios) and elapsed <= 180
    _verdict(7, ok,
             f"per-step growth ratios {[round(r, 2) for r in ratios]} all in "
             f"[1.6, 2.4], target 2 ({elapsed:.1f}s)")


# --------------------------------------------------------------------------
# criterion 8: CLI determinism


def test_criterion_8_cli_determinism(tmp_path, capsys):
    from detourkit.cli import serialize_graph

    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    path = tmp_path / "cycle5.txt"
    path.write_text(serialize_graph(g))
    commands = [
        ["detour", "--graph", str(path), "--s", "0", "--t", "1", "--k", "3",
         "--seed", "17"],
        ["bipath", "--graph", str(path), "--s", "0", "--t", "1", "--len", "4",
         "--k1", "2", "--l2", "0", "--seed", "17"],
        ["path", "--graph", str(path), "--s", "0", "--t", "2", "--len", "3",
         "--seed", "17"],
        ["gen", "--family", "gnp", "--n", "10", "--p", "0.4", "--seed", "17"],
    ]
    stable = True
    for argv in commands:
        outputs = set()
        for _ in range(5):
            cli_main(argv)
            out = capsys.readouterr().out
            if argv[0] == "gen":
                outputs.add(out)
            else:
                rep = json.loads(out)
                rep.pop("elapsed_ms")
                outputs.add(json.dumps(rep, sort_keys=True))
        if len(outputs) != 1:
            stable = False
    _verdict(8, stable, "5 repeated runs byte-identical modulo elapsed_ms "
                        "for detour/bipath/path/gen")
