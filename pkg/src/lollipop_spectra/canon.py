"""Canonical labeling by colour refinement and individualization.

The search tree follows the usual scheme: refine the vertex colouring to an
equitable partition, individualize each vertex of the first non-singleton
cell in turn, refine again, and recurse until the partition is discrete.
Each leaf gives a relabeling, and the canonical form is the relabeled graph
with the largest adjacency certificate.  Two prunings keep symmetric graphs
cheap:

* a leaf equivalent to the first leaf proves the subtree being explored is
  an image of the first one, so the search jumps back to where they split;
* children in the same orbit of the automorphisms found so far (restricted
  to those fixing the current individualized vertices) are skipped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceededError
from .graph import Graph, encode_graph6

DEFAULT_CAP = 16


def _refine(nbrs: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in nbrs[v]))) for v in range(len(colors))]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == k:
            return new
        colors, k = new, len(order)


def _ranks(values: Sequence) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(values)))}
    return [order[s] for s in values]


class _Search:
    def __init__(self, g: Graph, colors: Sequence[int] | None) -> None:
        self.n = g.n
        self.nbrs = [g.neighbors(v) for v in range(g.n)]
        init = _ranks(colors) if colors is not None else [0] * g.n
        self.cell_sizes = tuple(init.count(c) for c in range(max(init, default=-1) + 1))
        self.root = _refine(self.nbrs, init)
        self.first: tuple[tuple, list[int], list[int]] | None = None
        self.best: tuple[tuple, list[int]] | None = None
        self.autos: list[list[int]] = []
        self._visit(self.root, [])

    def _cert(self, perm: list[int]) -> tuple:
        rows = [0] * self.n
        for v in range(self.n):
            pv = perm[v]
            m = 0
            for w in self.nbrs[v]:
                m |= 1 << perm[w]
            rows[pv] = m
        return tuple(rows)

    def _leaf(self, perm: list[int], seq: list[int]) -> int | None:
        cert = self._cert(perm)
        if self.first is None:
            self.first = (cert, perm, seq)
            self.best = (cert, perm)
            return None
        if cert == self.first[0]:
            self._record(self.first[1], perm)
            common = 0
            for a, b in zip(seq, self.first[2]):
                if a != b:
                    break
                common += 1
            return common
        if cert == self.best[0]:
            self._record(self.best[1], perm)
        elif cert > self.best[0]:
            self.best = (cert, perm)
        return None

    def _record(self, p1: list[int], p2: list[int]) -> None:
        inv1 = [0] * self.n
        for v, lab in enumerate(p1):
            inv1[lab] = v
        gamma = [inv1[p2[v]] for v in range(self.n)]
        if any(gamma[v] != v for v in range(self.n)):
            self.autos.append(gamma)

    def _same_orbit(self, v: int, explored: list[int], seq: list[int]) -> bool:
        gens = [a for a in self.autos if all(a[x] == x for x in seq)]
        if not gens:
            return False
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in gens:
            for x in range(self.n):
                rx, ry = find(x), find(a[x])
                if rx != ry:
                    parent[rx] = ry
        rv = find(v)
        return any(find(u) == rv for u in explored)

    def _visit(self, colors: list[int], seq: list[int]) -> int | None:
        if self.n == 0 or len(set(colors)) == self.n:
            return self._leaf(colors, seq)
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(self.n) if colors[v] == target]
        explored: list[int] = []
        depth = len(seq)
        for v in cell:
            if explored and self._same_orbit(v, explored, seq):
                continue
            explored.append(v)
            child = _ranks([(c, 0 if u == v else 1) for u, c in enumerate(colors)])
            r = self._visit(_refine(self.nbrs, child), seq + [v])
            if r is not None and r < depth:
                return r
        return None


@dataclass(frozen=True)
class CanonicalForm:
    graph6: str
    aut_order: int | None = None

    def __str__(self) -> str:
        return self.graph6


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceededError(f"canonical labeling capped at n <= {cap}, got n = {g.n}")


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None, cap: int = DEFAULT_CAP) -> tuple[list[int], tuple]:
    """``(perm, certificate)``: ``perm[v]`` is the canonical label of ``v``.

    With ``colors`` the labeling is invariant only under colour-preserving
    isomorphisms, and the certificate records the colour class sizes.
    """
    _check_cap(g, cap)
    s = _Search(g, colors)
    cert, perm = s.best
    return perm, (s.cell_sizes, cert)


def labeling_with_partition(g: Graph, cap: int = DEFAULT_CAP) -> tuple[list[int], tuple, list[int]]:
    """Like :func:`canonical_labeling`, also returning the refined root colouring."""
    _check_cap(g, cap)
    s = _Search(g, None)
    cert, perm = s.best
    return perm, (s.cell_sizes, cert), s.root


def certificate(g: Graph, colors: Sequence[int] | None = None, cap: int = DEFAULT_CAP) -> tuple:
    """Hashable value equal for two (coloured) graphs iff they are isomorphic."""
    return (g.n,) + canonical_labeling(g, colors, cap)[1]


def canonical_graph(g: Graph, cap: int = DEFAULT_CAP) -> Graph:
    perm, _ = canonical_labeling(g, cap=cap)
    return g.relabel(perm)


def canonical_form(g: Graph, with_aut: bool = False, cap: int = DEFAULT_CAP) -> CanonicalForm:
    canon = canonical_graph(g, cap)
    aut = automorphism_count(g) if with_aut else None
    return CanonicalForm(encode_graph6(canon), aut)


def canonical_graph6(g: Graph, cap: int = DEFAULT_CAP) -> str:
    return encode_graph6(canonical_graph(g, cap))


def are_isomorphic(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> bool:
    if g1.n != g2.n or g1.m != g2.m or g1.degree_sequence() != g2.degree_sequence():
        return False
    return certificate(g1, cap=cap) == certificate(g2, cap=cap)


def equitable_partition(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Coarsest equitable refinement of ``colors`` (an isomorphism-invariant colouring)."""
    nbrs = [g.neighbors(v) for v in range(g.n)]
    init = _ranks(colors) if colors is not None else [0] * g.n
    return _refine(nbrs, init)


def automorphism_count(g: Graph) -> int:
    """Order of the automorphism group, by counting self-monomorphisms."""
    from .walks import count_monomorphisms

    return count_monomorphisms(g, g)
