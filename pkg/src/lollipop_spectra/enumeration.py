"""Isomorphism-class enumeration by canonical augmentation.

Graphs on ``n`` vertices are grown one edge at a time from the empty graph.
A child ``H = G + e`` is kept only when ``e`` lies in the same
automorphism orbit of ``H`` as the edge that the canonical labeling of
``H`` ranks last, so every class has exactly one accepted parent.
Duplicate children of one parent (edges in the same orbit of ``G``) are
removed locally.  Memory stays proportional to the search depth.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from .canon import certificate, labeling_with_partition
from .errors import CapExceededError
from .graph import Graph

ENUM_CAP = 10


def _mark(n: int, e: tuple[int, int]) -> list[int]:
    colors = [0] * n
    colors[e[0]] = colors[e[1]] = 1
    return colors


def _accepted_children(g: Graph) -> list[Graph]:
    """Canonical children of ``g`` whose canonical parent is ``g``."""
    n = g.n
    seen = set()
    out = []
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v):
                continue
            h = g.add_edge(u, v)
            perm, cert, root = labeling_with_partition(h)
            last = max(h.edges, key=lambda e: (max(perm[e[0]], perm[e[1]]), min(perm[e[0]], perm[e[1]])))
            if last != (u, v):
                if sorted((root[u], root[v])) != sorted((root[last[0]], root[last[1]])):
                    continue
                if certificate(h, _mark(n, (u, v))) != certificate(h, _mark(n, last)):
                    continue
            if cert in seen:
                continue
            seen.add(cert)
            out.append(h.relabel(perm))
    return out


def _normalize_filter(n: int, edge_count: int | Iterable[int] | None) -> tuple[frozenset[int] | None, int]:
    top = n * (n - 1) // 2
    if edge_count is None:
        return None, top
    allowed = frozenset([edge_count]) if isinstance(edge_count, int) else frozenset(edge_count)
    if not allowed:
        return allowed, -1
    return allowed, min(max(allowed), top)


def _walk(g: Graph, allowed: frozenset[int] | None, m_max: int, connected_only: bool) -> Iterator[Graph]:
    stack = [g]
    while stack:
        cur = stack.pop()
        if (allowed is None or cur.m in allowed) and (not connected_only or cur.is_connected()):
            yield cur
        if cur.m < m_max:
            stack.extend(reversed(_accepted_children(cur)))


def _subtree(args: tuple[Graph, frozenset[int] | None, int, bool]) -> list[Graph]:
    return list(_walk(*args))


def enumerate_graphs(
    n: int,
    edge_count: int | Iterable[int] | None = None,
    connected_only: bool = False,
    jobs: int = 1,
    cap: int = ENUM_CAP,
) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    ``edge_count`` restricts the number of edges (an int or a collection of
    ints).  With ``jobs > 1`` the search tree is split among processes and
    results are returned in a deterministic order.
    """
    if n < 0:
        raise ValueError(f"vertex count must be >= 0, got {n}")
    if n > cap:
        raise CapExceededError(f"enumeration capped at n <= {cap}, got n = {n}")
    allowed, m_max = _normalize_filter(n, edge_count)
    if m_max < 0:
        return
    root = Graph(n)
    if jobs <= 1:
        yield from _walk(root, allowed, m_max, connected_only)
        return
    # expand a shallow frontier sequentially, then farm out the subtrees
    split = min(3, m_max)
    frontier = []
    stack = [root]
    while stack:
        cur = stack.pop()
        if cur.m == split:
            frontier.append(cur)
            continue
        if (allowed is None or cur.m in allowed) and (not connected_only or cur.is_connected()):
            yield cur
        stack.extend(reversed(_accepted_children(cur)))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_subtree, [(f, allowed, m_max, connected_only) for f in frontier]):
            yield from part


def count_classes(n: int, edge_count: int | Iterable[int] | None = None, connected_only: bool = False) -> int:
    return sum(1 for _ in enumerate_graphs(n, edge_count, connected_only))
