"""Exhaustive cospectral-mate search and the structural checks built on it.

The spectral fingerprint of a graph is its exact characteristic polynomial,
so cospectrality is an integer-vector equality.  A universe is the list of
isomorphism classes on ``n`` vertices (optionally with a fixed edge count),
produced by canonical augmentation.  Cospectral graphs share ``n`` and
``m`` (the degree and the ``X^{n-2}`` coefficient), so restricting a
lollipop's universe to ``m = n`` loses nothing.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .canon import canonical_graph6
from .charpoly import charpoly, charpoly_family, charpoly_lollipop
from .enumeration import ENUM_CAP, enumerate_graphs
from .errors import CapExceededError, NotCospectralError
from .families import FamilySpec, build
from .graph import Graph, decode_graph6
from .poly import IntPolynomial
from .walks import count_cycles, degree_profile

FULL_UNIVERSE_CAP = 8
SCAN_CAP = 60


# -- fingerprint cache -----------------------------------------------------------

class FingerprintCache:
    """Charpoly lookup keyed by canonical graph6, optionally backed by a file.

    The file is append-only text with lines ``graph6<TAB>c0,c1,...``
    (coefficients constant term first).
    """

    def __init__(self, path: str | os.PathLike | None = None) -> None:
        self.path = Path(path) if path is not None else None
        self._table: dict[str, tuple[int, ...]] = {}
        self._pending: list[str] = []
        if self.path is not None and self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    g6, _, coeffs = line.partition("\t")
                    self._table[g6] = tuple(int(c) for c in coeffs.split(","))

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, g6: str) -> bool:
        return g6 in self._table

    def fingerprint(self, g6: str, g: Graph | None = None) -> tuple[int, ...]:
        hit = self._table.get(g6)
        if hit is not None:
            return hit
        poly = charpoly(g if g is not None else decode_graph6(g6))
        fp = tuple(poly.coeffs)
        self.add(g6, fp)
        return fp

    def add(self, g6: str, fp: tuple[int, ...]) -> None:
        """Record a fingerprint computed elsewhere."""
        if g6 in self._table:
            return
        self._table[g6] = fp
        if self.path is not None:
            self._pending.append(f"{g6}\t{','.join(str(c) for c in fp)}\n")

    def flush(self) -> None:
        if self.path is None or not self._pending:
            return
        with self.path.open("a", encoding="utf-8") as fh:
            fh.writelines(self._pending)
        self._pending.clear()


# -- universes -------------------------------------------------------------------

@dataclass(frozen=True)
class Universe:
    n: int
    m_filter: int | None
    connected_only: bool = False

    def to_dict(self) -> dict:
        return {"n": self.n, "m_filter": self.m_filter, "connected_only": self.connected_only}


_UNIVERSES: dict[Universe, list[tuple[str, tuple[int, ...]]]] = {}


def universe_fingerprints(u: Universe, cache: FingerprintCache | None = None, jobs: int = 1) -> list[tuple[str, tuple[int, ...]]]:
    """``(canonical graph6, charpoly coefficients)`` for every class in ``u``.

    Results are memoized per process so several targets on the same
    universe share one enumeration.
    """
    hit = _UNIVERSES.get(u)
    if hit is not None:
        if cache is not None:
            for g6, fp in hit:
                cache.add(g6, fp)
            cache.flush()
        return hit
    cache = cache if cache is not None else FingerprintCache()
    out = []
    for g in enumerate_graphs(u.n, u.m_filter, u.connected_only, jobs=jobs):
        g6 = g.to_graph6()
        out.append((g6, cache.fingerprint(g6, g)))
    cache.flush()
    out.sort()
    _UNIVERSES[u] = out
    return out


# -- DS reports -----------------------------------------------------------------

@dataclass
class DsReport:
    target: str
    universe: Universe
    class_count: int
    mates: list[str]
    target_class: str
    wall_time_ms: int = 0

    @property
    def verdict(self) -> str:
        return "determined" if self.mates == [self.target_class] else "not-determined"

    @property
    def foreign_mates(self) -> list[str]:
        return [g6 for g6 in self.mates if g6 != self.target_class]

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "universe": self.universe.to_dict(),
            "class_count": self.class_count,
            "mates": list(self.mates),
            "verdict": self.verdict,
            "wall_time_ms": self.wall_time_ms,
        }


def _target_graph(target: FamilySpec | Graph) -> tuple[str, Graph]:
    if isinstance(target, FamilySpec):
        return target.render(), build(target)
    return target.to_graph6(), target


def cospectral_mates(
    target: FamilySpec | Graph,
    full_universe: bool = False,
    m_filter: int | None = None,
    connected_only: bool = False,
    cache: FingerprintCache | None = None,
    jobs: int = 1,
) -> DsReport:
    """All classes on ``target.n`` vertices whose charpoly equals the target's.

    By default the universe is restricted to graphs with the target's edge
    count; ``full_universe`` drops the restriction (allowed for ``n <= 8``).
    """
    start = time.perf_counter()
    label, g = _target_graph(target)
    if g.n > ENUM_CAP:
        raise CapExceededError(f"cospectral search capped at n <= {ENUM_CAP}, got n = {g.n}")
    if full_universe:
        if g.n > FULL_UNIVERSE_CAP:
            raise CapExceededError(f"unrestricted universe capped at n <= {FULL_UNIVERSE_CAP}, got n = {g.n}")
        m = None
    else:
        m = g.m if m_filter is None else m_filter
    u = Universe(g.n, m, connected_only)
    classes = universe_fingerprints(u, cache, jobs)
    fp = tuple(charpoly(g).coeffs)
    mates = sorted(g6 for g6, f in classes if f == fp)
    elapsed = int((time.perf_counter() - start) * 1000)
    return DsReport(label, u, len(classes), mates, canonical_graph6(g), elapsed)


def lollipops_with_n(n: int) -> list[FamilySpec]:
    return [FamilySpec("lollipop", (p, n - p)) for p in range(3, n + 1)]


def ds_lollipop_sweep(n_min: int = 5, n_max: int = 9, full_universe_n: Iterable[int] = (), jobs: int = 1) -> list[DsReport]:
    """DS reports for every lollipop with ``n_min <= n <= n_max`` over ``m = n``,
    plus unrestricted-universe reports for each ``n`` in ``full_universe_n``."""
    reports = []
    for n in range(n_min, n_max + 1):
        for spec in lollipops_with_n(n):
            reports.append(cospectral_mates(spec, jobs=jobs))
    for n in full_universe_n:
        for spec in lollipops_with_n(n):
            reports.append(cospectral_mates(spec, full_universe=True, jobs=jobs))
    return reports


# -- pairwise lollipop scan -----------------------------------------------------

@dataclass
class ScanReport:
    n_max: int
    lollipops: int
    pairs_compared: int
    collisions: list[tuple[str, str]] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "verified" if not self.collisions else "violated"

    def to_dict(self) -> dict:
        return {
            "claim": "no two non-isomorphic lollipops are cospectral",
            "parameters": {"n_max": self.n_max},
            "verdict": self.verdict,
            "lollipops": self.lollipops,
            "pairs_compared": self.pairs_compared,
            **({"witness": [list(c) for c in self.collisions]} if self.collisions else {}),
        }


def lollipop_pairwise_scan(n_max: int) -> ScanReport:
    """Compare the charpolys of all ``L(p, n-p)``, ``p >= 3``, for each ``n <= n_max``."""
    if n_max > SCAN_CAP:
        raise CapExceededError(f"lollipop scan capped at n <= {SCAN_CAP}, got {n_max}")
    total = pairs = 0
    collisions: list[tuple[str, str]] = []
    for n in range(3, n_max + 1):
        seen: dict[IntPolynomial, str] = {}
        for spec in lollipops_with_n(n):
            total += 1
            pairs += len(seen)
            poly = charpoly_lollipop(*spec.params)
            if poly in seen:
                collisions.append((seen[poly], spec.render()))
            else:
                seen[poly] = spec.render()
    return ScanReport(n_max, total, pairs, collisions)


# -- structural consequences of cospectrality ----------------------------------

def _structure(g: Graph) -> dict:
    prof = degree_profile(g)
    return {
        "n": g.n,
        "m": g.m,
        "triangles": count_cycles(g, 3) if g.n >= 3 else 0,
        "four_cycles": count_cycles(g, 4) if g.n >= 4 else 0,
        "paths_p3": sum(d * (d - 1) // 2 * c for d, c in prof.items()),
        "connected": g.is_connected(),
        "unicyclic": g.is_unicyclic(),
        "bipartite": g.is_bipartite(),
        "degree_profile": prof,
    }


def structural_consequence_check(g: Graph, target: FamilySpec | Graph) -> dict:
    """Compare the structure of ``g`` with the deductions cospectrality allows.

    Invariants fixed by the spectrum (``m``, triangles, bipartiteness and the
    ``8 c_4 + 4 |P_3|`` combination from ``tr A^4``) must agree.  For
    lollipop targets the conclusions drawn in the DS argument are checked
    too: connected, unicyclic, a 4-cycle iff ``p = 4``, and the degree
    relation ``n_1 = n_3 + 2 n_4 + ...`` of a unicyclic graph.
    """
    label, h = _target_graph(target)
    if g.n != h.n or charpoly(g) != charpoly(h):
        raise NotCospectralError(f"graph is not cospectral with {label}")
    a, b = _structure(g), _structure(h)
    checks = []

    def add(name: str, expected, actual) -> None:
        checks.append({"check": name, "expected": expected, "actual": actual, "holds": expected == actual})

    add("edges", b["m"], a["m"])
    add("triangles", b["triangles"], a["triangles"])
    add("bipartite", b["bipartite"], a["bipartite"])
    add("8*c4 + 4*|P3|", 8 * b["four_cycles"] + 4 * b["paths_p3"], 8 * a["four_cycles"] + 4 * a["paths_p3"])
    if isinstance(target, FamilySpec) and target.kind == "lollipop":
        p, k = target.params
        add("connected", True, a["connected"])
        add("unicyclic", True, a["unicyclic"])
        add("has 4-cycle", p == 4, a["four_cycles"] > 0)
        prof = a["degree_profile"]
        add("n1 = sum_{d>=3} (d-2) n_d", prof.get(1, 0), sum((d - 2) * c for d, c in prof.items() if d >= 3))
        if p % 2 == 1 and k >= 1:
            add("degree profile", b["degree_profile"], prof)
    return {
        "target": label,
        "graph": g.to_graph6(),
        "isomorphic_to_target": canonical_graph6(g) == canonical_graph6(h),
        "checks": checks,
        "verdict": "verified" if all(c["holds"] for c in checks) else "violated",
    }


# -- the classical smallest cospectral pair -------------------------------------

def saltire_pair() -> tuple[Graph, Graph]:
    """``C_4 + K_1`` and the star ``K_{1,4}``, both with spectrum ``{2, 0^3, -2}``."""
    c4k1 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
    return c4k1, build(FamilySpec("star", (4,)))


def saltire_check() -> DsReport:
    c4k1, _ = saltire_pair()
    return cospectral_mates(c4k1)


# -- case families of the L(4,k) argument ---------------------------------------

def _grow_unicyclic(n_max: int, p_min: int, excess_cap: int) -> dict[int, list[Graph]]:
    """Unicyclic graphs up to ``n_max`` vertices with cycle length ``>= p_min``
    and ``sum_{d>=3} (d-2) n_d <= excess_cap``, one per class, by size."""
    levels: dict[int, dict[str, Graph]] = {}
    for p in range(p_min, n_max + 1):
        c = build(FamilySpec("cycle", (p,)))
        levels.setdefault(p, {})[canonical_graph6(c, cap=n_max)] = c
    for n in range(p_min, n_max):
        for g in list(levels.get(n, {}).values()):
            degs = g.degrees()
            excess = sum(d - 2 for d in degs if d >= 3)
            for v in range(g.n):
                new_excess = excess + (1 if degs[v] >= 2 else 0)
                if new_excess > excess_cap:
                    continue
                h = g.add_pendant(v)
                levels.setdefault(n + 1, {}).setdefault(canonical_graph6(h, cap=n_max), h)
    return {n: list(d.values()) for n, d in sorted(levels.items())}


def classify_case_family(g: Graph) -> str | None:
    """Which case family of the ``L(4,k)`` argument ``g`` belongs to, if any.

    ``G1``: one cycle vertex of degree 3 carrying a tree with two more
    degree-3 vertices.  ``G2``: two degree-3 vertices on the cycle and one
    off it.  ``G3``: three degree-3 vertices, all on the cycle.  ``Gamma``:
    a single degree-4 vertex, on the cycle, and no degree-3 vertex.  The
    cycle has length at least 6 (more than 4 for ``Gamma``).
    """
    if not g.is_unicyclic():
        return None
    on_cycle = _cycle_vertices(g)
    degs = g.degrees()
    if max(degs) > 4:
        return None
    d3 = [v for v in range(g.n) if degs[v] == 3]
    d4 = [v for v in range(g.n) if degs[v] == 4]
    p = len(on_cycle)
    if not d4 and len(d3) == 3 and p >= 6:
        k = sum(1 for v in d3 if v in on_cycle)
        return {1: "G1", 2: "G2", 3: "G3"}.get(k)
    if not d3 and len(d4) == 1 and d4[0] in on_cycle and p > 4:
        return "Gamma"
    return None


def _cycle_vertices(g: Graph) -> set[int]:
    # strip leaves until only the cycle remains
    deg = g.degrees()
    alive = set(range(g.n))
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return alive


def case_family_check(n_max: int = 12) -> dict:
    """Every case-family graph with ``n <= n_max`` differs in charpoly from ``L(4, n-4)``."""
    by_n = _grow_unicyclic(n_max, 5, 3)
    counts: dict[str, int] = {}
    witnesses = []
    for n, graphs in by_n.items():
        if n < 5:
            continue
        target = charpoly_family(FamilySpec("lollipop", (4, n - 4)))
        for g in graphs:
            fam = classify_case_family(g)
            if fam is None:
                continue
            counts[fam] = counts.get(fam, 0) + 1
            if charpoly(g) == target:
                witnesses.append({"family": fam, "graph": g.to_graph6()})
    return {
        "claim": "no case-family graph is cospectral with L(4,n-4)",
        "parameters": {"n_max": n_max, "graphs_per_family": dict(sorted(counts.items()))},
        "verdict": "verified" if not witnesses else "violated",
        **({"witness": witnesses} if witnesses else {}),
    }
