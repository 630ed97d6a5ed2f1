"""Closed walks, covering walks, motif counts and the trace decomposition.

A closed walk of length ``k`` uses a connected set of edges, so

    tr(A^k) = sum over connected edge sets S of w_k(S)

where ``w_k(S)`` counts the closed walks (rooted at any vertex, directed)
of length ``k`` traversing every edge of ``S`` at least once.  Grouping the
edge sets by isomorphism class gives the motif table.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .canon import canonical_graph6
from .charpoly import power_sums
from .errors import CapExceededError, HypothesisError, NotUnicyclicError
from .graph import Graph, decode_graph6

WALK_CAP = 12
MOTIF_EDGE_CAP = 12


def _check_k(k: int, cap: int) -> None:
    if k < 0:
        raise ValueError(f"walk length must be >= 0, got {k}")
    if k > cap:
        raise CapExceededError(f"walk length {k} exceeds the cap {cap}")


def closed_walks(g: Graph, k: int) -> int:
    """``tr(A^k)``: closed walks of length ``k``."""
    if k < 0:
        raise ValueError(f"walk length must be >= 0, got {k}")
    return power_sums(g, k)[k]


# -- covering walks ------------------------------------------------------------

def _edge_index(g: Graph) -> dict[tuple[int, int], int]:
    idx = {}
    for i, (u, v) in enumerate(g.edges):
        idx[(u, v)] = idx[(v, u)] = i
    return idx


def covering_walk_count(m: Graph, k: int, cap: int = WALK_CAP) -> int:
    """Closed ``k``-walks of ``m`` (any start, directed) using every edge of ``m``.

    Dynamic programming over ``(current vertex, covered-edge bitmask)``.
    """
    _check_k(k, cap)
    if m.m > MOTIF_EDGE_CAP:
        raise CapExceededError(f"motif has {m.m} edges, cap is {MOTIF_EDGE_CAP}")
    if m.m == 0:
        return m.n if k == 0 else 0
    if m.m > k:
        return 0
    idx = _edge_index(m)
    full = (1 << m.m) - 1
    steps = [[(w, 1 << idx[(v, w)]) for w in m.neighbors(v)] for v in range(m.n)]
    total = 0
    for s in range(m.n):
        if not steps[s]:
            continue
        dp = {(s, 0): 1}
        for step in range(k):
            left = k - step - 1
            nxt: dict[tuple[int, int], int] = {}
            for (v, mask), c in dp.items():
                for w, bit in steps[v]:
                    nm = mask | bit
                    # prune states that cannot cover the remaining edges in time
                    if (full & ~nm).bit_count() > left:
                        continue
                    key = (w, nm)
                    nxt[key] = nxt.get(key, 0) + c
            dp = nxt
        total += dp.get((s, full), 0)
    return total


@lru_cache(maxsize=None)
def _covering_by_class(g6: str, k: int) -> int:
    return covering_walk_count(decode_graph6(g6), k, cap=max(k, WALK_CAP))


def covering_walk_count_algebraic(m: Graph, k: int, cap: int = WALK_CAP) -> int:
    """``w_k(m)`` as ``tr(A_m^k)`` minus the walks owned by proper sub-motifs."""
    _check_k(k, cap)
    if m.m > MOTIF_EDGE_CAP:
        raise CapExceededError(f"motif has {m.m} edges, cap is {MOTIF_EDGE_CAP}")
    core = _edge_graph(m, range(m.m))
    return _algebraic_by_class(canonical_graph6(core), k)


@lru_cache(maxsize=None)
def _algebraic_by_class(g6: str, k: int) -> int:
    m = decode_graph6(g6)
    if m.m == 0:
        return 0
    total = closed_walks(m, k)
    if m.m > k:
        # every closed k-walk covers at most k edges, so none covers m
        return 0
    full = (1 << m.m) - 1
    classes: Counter[str] = Counter()
    for mask in connected_edge_subsets(m, k):
        if mask != full:
            classes[canonical_graph6(_edge_graph(m, _bits(mask)))] += 1
    for sub, count in classes.items():
        total -= _algebraic_by_class(sub, k) * count
    return total


# -- subgraph enumeration ------------------------------------------------------

def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _edge_graph(g: Graph, edge_ids) -> Graph:
    """Graph formed by the chosen edges and their endpoints, relabeled compactly."""
    chosen = [g.edges[i] for i in edge_ids]
    verts = sorted({v for e in chosen for v in e})
    index = {v: i for i, v in enumerate(verts)}
    return Graph(len(verts), [(index[u], index[v]) for u, v in chosen])


def _line_adjacency(g: Graph) -> list[int]:
    inc: list[int] = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        inc[u] |= 1 << i
        inc[v] |= 1 << i
    return [(inc[u] | inc[v]) & ~(1 << i) for i, (u, v) in enumerate(g.edges)]


def connected_edge_subsets(g: Graph, max_edges: int) -> Iterator[int]:
    """Bitmasks of all nonempty connected edge sets with at most ``max_edges`` edges.

    ESU enumeration on the line graph: each set is produced exactly once,
    grown from its smallest edge index.
    """
    for mask, _, _, _ in _edge_subsets_with_stats(g, max_edges):
        yield mask


def _edge_subsets_with_stats(
    g: Graph, max_edges: int, max_vertices: int | None = None, walk_budget: int | None = None
) -> Iterator[tuple[int, int, int, int]]:
    """``(edge mask, size, vertex mask, odd-degree vertex mask)`` of each connected edge set.

    Sets spanning more than ``max_vertices`` vertices are skipped along
    with all their extensions, and so are sets with
    ``size + odd/2 > walk_budget``.  The latter bound holds for every
    superset too, since each added edge repairs at most two odd vertices.
    """
    ladj = _line_adjacency(g)
    ends = [(1 << u) | (1 << v) for u, v in g.edges]
    vcap = g.n if max_vertices is None else max_vertices
    budget = 2 * max_edges + g.n if walk_budget is None else walk_budget

    def extend(sub: int, ext: int, nbhd: int, root: int, size: int, verts: int, odd: int):
        yield sub, size, verts, odd
        if size == max_edges:
            return
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            nv = verts | ends[w]
            nodd = odd ^ ends[w]
            if nv.bit_count() > vcap or size + 1 + nodd.bit_count() // 2 > budget:
                continue
            excl = ladj[w] & ~nbhd & ~sub
            excl &= ~((1 << (root + 1)) - 1)
            yield from extend(sub | low, ext | excl, nbhd | ladj[w], root, size + 1, nv, nodd)

    for e in range(g.m):
        if 2 > budget:
            break
        higher = ladj[e] & ~((1 << (e + 1)) - 1)
        yield from extend(1 << e, higher, ladj[e] | (1 << e), e, 1, ends[e], ends[e])


# -- motif counts --------------------------------------------------------------

def count_monomorphisms(pattern: Graph, host: Graph) -> int:
    """Injective maps ``V(pattern) -> V(host)`` sending edges to edges."""
    if pattern.n > host.n or pattern.m > host.m:
        return 0
    isolated = [v for v in range(pattern.n) if pattern.degree(v) == 0]
    if isolated and pattern.m:
        core_vs = [v for v in range(pattern.n) if pattern.degree(v) > 0]
        core = pattern.induced_subgraph(core_vs)
        base = count_monomorphisms(core, host)
        free = host.n - core.n
        for i in range(len(isolated)):
            base *= free - i
        return base
    if not pattern.m:
        out = 1
        for i in range(pattern.n):
            out *= host.n - i
        return out
    # order pattern vertices so each one (after the first of a component) has an earlier neighbour
    order: list[int] = []
    seen = set()
    for s in sorted(range(pattern.n), key=lambda v: -pattern.degree(v)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(pattern.neighbors(u), key=lambda v: -pattern.degree(v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in pattern.neighbors(v) if pos[w] < pos[v]] for v in order]
    pdeg = [pattern.degree(v) for v in order]
    hdeg = host.degrees()
    hmask = host.adjacency_bitmasks()
    all_hosts = (1 << host.n) - 1
    mapping = [0] * pattern.n
    count = 0

    def rec(i: int, used: int) -> None:
        nonlocal count
        if i == len(order):
            count += 1
            return
        cand = all_hosts & ~used
        for w in back[i]:
            cand &= hmask[mapping[pos[w]]]
        while cand:
            low = cand & -cand
            h = low.bit_length() - 1
            cand ^= low
            if hdeg[h] >= pdeg[i]:
                mapping[i] = h
                rec(i + 1, used | low)

    rec(0, 0)
    return count


def count_embeddings(g: Graph, m: Graph, cap: int = MOTIF_EDGE_CAP) -> int:
    """Number of (not necessarily induced) subgraphs of ``g`` isomorphic to ``m``."""
    if m.m > cap:
        raise CapExceededError(f"motif has {m.m} edges, cap is {cap}")
    if not m.is_connected():
        raise ValueError("motif must be connected")
    mono = count_monomorphisms(m, g)
    if mono == 0:
        return 0
    return mono // count_monomorphisms(m, m)


def _paths_from(h_nbrs: dict[int, set[int]], u: int, k: int) -> int:
    """Simple paths on ``k`` vertices starting at ``u``."""
    if k == 1:
        return 1

    def rec(v: int, left: int, visited: set[int]) -> int:
        if left == 0:
            return 1
        total = 0
        for w in h_nbrs[v]:
            if w not in visited:
                visited.add(w)
                total += rec(w, left - 1, visited)
                visited.discard(w)
        return total

    return rec(u, k - 1, {u})


def count_paths_unicyclic(g: Graph, k: int) -> int:
    """``|P_k(g)|`` for a connected unicyclic ``g`` by peeling pendant vertices.

    Each pendant vertex removed contributes the paths on ``k`` vertices that
    start at it; what remains is the cycle ``C_p``, holding ``p`` such paths
    when ``p >= k``.
    """
    if not g.is_unicyclic():
        raise NotUnicyclicError("path peeling needs a connected graph with exactly one cycle")
    if k < 1:
        raise ValueError(f"path size must be >= 1, got {k}")
    h = {v: set(g.neighbors(v)) for v in range(g.n)}
    total = 0
    while True:
        pendant = next((v for v in sorted(h) if len(h[v]) == 1), None)
        if pendant is None:
            break
        total += _paths_from(h, pendant, k)
        for w in h.pop(pendant):
            h[w].discard(pendant)
    p = len(h)
    if p >= k:
        total += p
    return total


# -- motif tables --------------------------------------------------------------

@dataclass
class MotifRow:
    motif_graph6: str
    w_k: int
    count: int

    @property
    def product(self) -> int:
        return self.w_k * self.count


@dataclass
class MotifTable:
    k: int
    rows: list[MotifRow] = field(default_factory=list)
    trace: int = 0

    def total(self) -> int:
        return sum(r.product for r in self.rows)

    def holds(self) -> bool:
        return self.total() == self.trace

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["motif_graph6", "w_k", "count", "product"])
        for r in self.rows:
            w.writerow([r.motif_graph6, r.w_k, r.count, r.product])
        w.writerow(["trace", "", "", self.trace])
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [
            {"motif_graph6": r.motif_graph6, "w_k": r.w_k, "count": r.count, "product": r.product}
            for r in self.rows
        ]


def motif_classes(g: Graph, k: int) -> Counter[str]:
    """Canonical graph6 of every connected edge set that some closed ``k``-walk can cover."""
    labelled: Counter[tuple[int, int]] = Counter()
    # a closed k-walk visits at most k distinct vertices
    for mask, size, verts, odd in _edge_subsets_with_stats(g, k, max_vertices=max(k, 2), walk_budget=k):
        # lower bound on a covering closed walk: a tree is walked twice, otherwise pair up odd vertices
        if size == verts.bit_count() - 1:
            if 2 * size > k:
                continue
        elif size + odd.bit_count() // 2 > k:
            continue
        labelled[(mask, verts)] += 1
    # edge sets that are the same labelled graph after compacting vertex labels share a class
    compact: Counter[tuple] = Counter()
    for (mask, verts), count in labelled.items():
        index = {v: i for i, v in enumerate(_bits(verts))}
        edges = tuple((index[g.edges[e][0]], index[g.edges[e][1]]) for e in _bits(mask))
        compact[(len(index), edges)] += count
    out: Counter[str] = Counter()
    for (n, edges), count in compact.items():
        h = Graph(n, edges)
        if k % 2 and h.is_bipartite():
            continue
        out[canonical_graph6(h)] += count
    return out


def motif_decomposition(g: Graph, k: int, cap: int = WALK_CAP) -> MotifTable:
    """Rows ``(motif, w_k, |motif(g)|)`` with ``w_k > 0``, sorted by motif graph6."""
    _check_k(k, cap)
    table = MotifTable(k=k, trace=closed_walks(g, k))
    if k == 0:
        return table
    for g6, count in sorted(motif_classes(g, k).items()):
        w = _covering_by_class(g6, k)
        if w > 0:
            table.rows.append(MotifRow(g6, w, count))
    return table


# -- power-sum formulas --------------------------------------------------------

def degree_profile(g: Graph) -> dict[int, int]:
    """``{k: n_k}``, the number of vertices of each degree."""
    return dict(sorted(Counter(g.degrees()).items()))


def count_cycles(g: Graph, length: int) -> int:
    from .families import build, cycle

    return count_embeddings(g, build(cycle(length)))


def power_sum_4(g: Graph) -> int:
    """``8 c_4 + sum k n_k + 4 sum_{k>=2} C(k,2) n_k``."""
    prof = degree_profile(g)
    c4 = count_cycles(g, 4) if g.n >= 4 else 0
    return 8 * c4 + sum(k * nk for k, nk in prof.items()) + 4 * sum(k * (k - 1) // 2 * nk for k, nk in prof.items() if k >= 2)


def _motif(text: str) -> Graph:
    from .families import build_from_text

    return build_from_text(text)


# coefficients per clause, keyed by family spec text
_SUM_FORMULAS: dict[int, dict[str, int]] = {
    6: {"C(6)": 12, "P(2)": 2, "P(3)": 12, "P(4)": 6, "S(1,1,1)": 12, "C(4)": 48, "L(4,1)": 12},
    8: {"P(2)": 2, "P(3)": 28, "P(4)": 32, "P(5)": 8, "S(1,1,1)": 72, "S(1,1,2)": 16,
        "C(4)": 264, "L(4,1)": 112, "L(4,2)": 16, "C(8)": 16},
    10: {"P(2)": 2, "P(3)": 60, "P(4)": 120, "P(5)": 60, "P(6)": 10, "S(1,1,1)": 300,
         "S(1,1,2)": 140, "S(1,2,2)": 20, "S(1,1,3)": 20, "C(4)": 1320,
         "L(4,1)": 840, "L(4,2)": 180, "L(4,3)": 20, "C(10)": 20},
}

_FORBIDDEN_CYCLES = {6: (3, 5), 8: (3, 5, 6, 7), 10: (3, 5, 6, 7, 8, 9)}


def power_sum_formula_hypotheses(g: Graph, k: int) -> list[str]:
    """Failed hypotheses of the closed-form clause for ``k`` (empty if all hold)."""
    if k not in _SUM_FORMULAS:
        raise ValueError(f"closed forms exist for k in 6, 8, 10, got {k}")
    failed = []
    for length in _FORBIDDEN_CYCLES[k]:
        if g.n >= length and count_cycles(g, length):
            failed.append(f"contains a {length}-cycle")
    if k >= 8 and g.max_degree() > 3:
        failed.append(f"maximum degree {g.max_degree()} exceeds 3")
    if k == 10:
        for u, v in g.edges:
            if g.degree(u) == 3 and g.degree(v) == 3:
                failed.append(f"adjacent degree-3 vertices {u} and {v}")
                break
    return failed


def power_sum_formula(g: Graph, k: int) -> int:
    """Evaluate the motif-count closed form for ``sum lambda^k``, ``k`` in 6, 8, 10.

    The ``k = 8`` and ``k = 10`` motif lists are exact on ``L(4,k)`` but omit
    motifs that the hypotheses do not exclude, such as a 4-cycle with
    pendants on two of its vertices; :func:`power_sum_formula_gap` measures
    the difference from ``tr A^k``.
    """
    failed = power_sum_formula_hypotheses(g, k)
    if failed:
        raise HypothesisError(f"formula for k={k} does not apply: " + "; ".join(failed))
    total = 0
    for text, coef in _SUM_FORMULAS[k].items():
        m = _motif(text)
        if m.n <= g.n:
            total += coef * count_embeddings(g, m)
    return total


def power_sum_formula_gap(g: Graph, k: int) -> int:
    """``tr A^k`` minus the closed form; zero wherever the motif list is complete."""
    return closed_walks(g, k) - power_sum_formula(g, k)
