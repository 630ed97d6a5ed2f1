"""Random graph generators and brute-force oracles shared by the tests."""
from __future__ import annotations

import random
from itertools import combinations

import mpmath
import networkx as nx

from lollipop_spectra.graph import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Erdos-Renyi G(n, p)."""
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, extra: float) -> Graph:
    """A random labelled tree plus each remaining pair with probability ``extra``."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for e in combinations(range(n), 2):
        if e not in edges and rng.random() < extra:
            edges.add(e)
    return Graph(n, sorted(edges))


def random_unicyclic_graph(rng: random.Random, n: int) -> Graph:
    """A random tree on ``n`` vertices plus one extra edge."""
    while True:
        g = random_connected_graph(rng, n, 0.0)
        missing = [e for e in combinations(range(n), 2) if not g.has_edge(*e)]
        if missing:
            return g.add_edge(*rng.choice(missing))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_covering_walks(m: Graph, k: int) -> int:
    """Enumerate every closed walk explicitly and test edge coverage."""
    target = set(m.edges)
    total = 0

    def rec(start: int, u: int, steps: int, used: frozenset) -> None:
        nonlocal total
        if steps == k:
            total += u == start and used == target
            return
        for w in m.neighbors(u):
            rec(start, w, steps + 1, used | {(min(u, w), max(u, w))})

    for s in range(m.n):
        rec(s, s, 0, frozenset())
    return total


def mp_top_eigenvalues(g: Graph, count: int, dps: int = 40) -> list:
    """Largest eigenvalues by a high-precision symmetric eigensolver."""
    with mpmath.workdps(dps):
        a = mpmath.matrix(g.adjacency_matrix())
        ev = sorted(mpmath.eigsy(a, eigvals_only=True), reverse=True)
        return [+x for x in ev[:count]]
