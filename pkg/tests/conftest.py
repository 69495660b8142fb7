import random

import pytest

from detourkit import Graph, GraphError, bfs_layers


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus G(n, p) extras: connected by construction."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < p])


def layered_plateau_graph(rng: random.Random) -> Graph:
    """Layer-by-layer construction with near-clique layers: many stable edges."""
    widths = [1] + [rng.choice([1, 2, 3, 4]) for _ in range(rng.randint(2, 3))]
    ids, n = [], 0
    for w in widths:
        ids.append(list(range(n, n + w)))
        n += w
    edges = set()
    for li in range(1, len(ids)):
        for v in ids[li]:
            u = rng.choice(ids[li - 1])
            edges.add((min(u, v), max(u, v)))
        for u in ids[li - 1]:
            for v in ids[li]:
                if rng.random() < 0.3:
                    edges.add((min(u, v), max(u, v)))
        layer = ids[li]
        for i in range(len(layer)):
            for j in range(i + 1, len(layer)):
                if rng.random() < 0.75:
                    edges.add((layer[i], layer[j]))
    return Graph(n, sorted(edges))


def grid_graph(side: int) -> Graph:
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                edges.append((v, v + 1))
            if r + 1 < side:
                edges.append((v, v + side))
    return Graph(side * side, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


@pytest.fixture
def path3() -> Graph:
    return Graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def cycle5() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


@pytest.fixture
def k4() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
