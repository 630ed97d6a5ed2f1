"""Simple undirected graphs with a fixed vertex labeling.

Graphs are immutable: every operation returns a new :class:`Graph`.
Vertices are ``0..n-1`` and edges are stored as sorted pairs ``(u, v)``
with ``u < v``.
"""
from __future__ import annotations

import json
import math
from collections import deque
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex indices."""


class Graph:
    __slots__ = ("_n", "_edges", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        norm: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            norm.add((u, v) if u < v else (v, u))
        self._n = n
        self._edges: tuple[Edge, ...] = tuple(sorted(norm))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._hash = None

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def vertices(self) -> range:
        return range(self._n)

    def _check(self, v: int) -> None:
        if not (0 <= v < self._n):
            raise GraphError(f"vertex {v} out of range 0..{self._n - 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self._edges)})"

    # -- elementary queries ---------------------------------------------
    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def degree_sequence(self) -> list[int]:
        """Degrees sorted in nonincreasing order."""
        return sorted(self.degrees(), reverse=True)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def bfs_distances(self, source: int) -> list[float]:
        self._check(source)
        dist: list[float] = [math.inf] * self._n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if dist[w] == math.inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance(self, u: int, v: int) -> float:
        """Shortest-path length, ``math.inf`` when ``u`` and ``v`` are disconnected."""
        self._check(v)
        d = self.bfs_distances(u)[v]
        return d if d == math.inf else int(d)

    def components(self) -> list[list[int]]:
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        # the empty graph counts as connected
        return len(self.components()) <= 1

    def is_bipartite(self) -> bool:
        color = [-1] * self._n
        for s in range(self._n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def is_unicyclic(self) -> bool:
        return self._n > 0 and self.m == self._n and self.is_connected()

    def cyclomatic_number(self) -> int:
        return self.m - self._n + len(self.components())

    # -- derived graphs ---------------------------------------------------
    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabeled in increasing order."""
        vs = sorted(set(vertices))
        for v in vs:
            self._check(v)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(vs), edges)

    def delete_vertices(self, vertices: Iterable[int]) -> Graph:
        drop = set(vertices)
        return self.induced_subgraph(v for v in range(self._n) if v not in drop)

    def add_edge(self, u: int, v: int) -> Graph:
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        return Graph(self._n, self._edges + ((u, v),))

    def remove_edge(self, u: int, v: int) -> Graph:
        e = (u, v) if u < v else (v, u)
        if e not in set(self._edges):
            raise GraphError(f"edge {e} not present")
        return Graph(self._n, [f for f in self._edges if f != e])

    def add_pendant(self, v: int) -> Graph:
        """Attach a new vertex ``n`` to ``v``."""
        self._check(v)
        return Graph(self._n + 1, self._edges + ((v, self._n),))

    def subdivide(self, u: int, v: int) -> Graph:
        """Replace edge ``uv`` by a path ``u - n - v`` through a new vertex ``n``."""
        e = (u, v) if u < v else (v, u)
        if e not in set(self._edges):
            raise GraphError(f"edge {e} not present")
        w = self._n
        edges = [f for f in self._edges if f != e] + [(u, w), (v, w)]
        return Graph(self._n + 1, edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise GraphError("relabeling must be a permutation of the vertices")
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self._edges])

    def adjacency_matrix(self) -> list[list[int]]:
        a = [[0] * self._n for _ in range(self._n)]
        for u, v in self._edges:
            a[u][v] = a[v][u] = 1
        return a

    def adjacency_bitmasks(self) -> list[int]:
        masks = [0] * self._n
        for u, v in self._edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    # -- serialization ----------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({"n": self._n, "edges": [list(e) for e in self._edges]})

    @classmethod
    def from_json(cls, text: str) -> Graph:
        data = json.loads(text)
        try:
            return cls(int(data["n"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed JSON edge list: {exc}") from exc

    def to_graph6(self) -> str:
        return encode_graph6(self)

    @classmethod
    def from_graph6(cls, text: str) -> Graph:
        return decode_graph6(text)


def disjoint_union(*graphs: Graph) -> Graph:
    """Union of vertex-disjoint copies; vertices of later graphs are shifted."""
    offset = 0
    edges: list[Edge] = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def coalesce(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Identify vertex ``v1`` of ``g1`` with vertex ``v2`` of ``g2``.

    Vertices of ``g1`` keep their labels; the remaining vertices of ``g2``
    follow in their original order.
    """
    g1._check(v1)
    g2._check(v2)
    mapping = {}
    nxt = g1.n
    for w in range(g2.n):
        if w == v2:
            mapping[w] = v1
        else:
            mapping[w] = nxt
            nxt += 1
    edges = list(g1.edges) + [(mapping[u], mapping[v]) for u, v in g2.edges]
    return Graph(g1.n + g2.n - 1, edges)


# -- graph6 -------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(g: Graph) -> str:
    """Standard graph6 string (no ``>>graph6<<`` header)."""
    bits = []
    edge_set = set(g.edges)
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in edge_set else 0)
    bits.extend([0] * (-len(bits) % 6))
    chunks = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chunks.append(chr(val + 63))
    return _encode_n(g.n) + "".join(chunks)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d < 64 for d in data):
        raise GraphError(f"invalid graph6 character in {text!r}")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] < 63:
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    else:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    body = data[pos:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {need} for n={n}")

    def bits() -> Iterator[int]:
        for d in body:
            for s in range(5, -1, -1):
                yield (d >> s) & 1

    it = bits()
    edges = []
    for j in range(1, n):
        for i in range(j):
            if next(it):
                edges.append((i, j))
    return Graph(n, edges)
