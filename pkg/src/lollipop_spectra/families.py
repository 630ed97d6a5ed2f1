"""Named graph families and the text grammar used to refer to them.

Labeling conventions (fixed so results are reproducible):

* ``P(n)``: path ``0 - 1 - ... - n-1``.
* ``C(p)``: cycle ``0 - 1 - ... - p-1 - 0``.
* ``L(p,k)``: cycle on ``0..p-1``, tail ``p, ..., p+k-1`` hanging from ``0``.
* ``S(a,b,c)``: center ``0``, then the three arms listed outward, ``a`` first.
* ``S(n)``: the star with center ``0`` and ``n`` leaves ``1..n``.
* ``T(n)``: path ``0..n-3`` with extra leaves ``n-2`` on ``1`` and ``n-1`` on ``n-4``.
* ``B(p,q)``: ``C(p)`` plus a second cycle through ``0`` on new vertices.
* ``H(p,q)``: ``C(p)`` on ``0..p-1``, ``C(q)`` on ``p..p+q-1``, bridge ``0 - p``.
* ``P(p1,p2,p3)``: branch vertices ``0`` and ``1`` joined by three internally
  disjoint paths with ``p1``, ``p2``, ``p3`` inner vertices, listed in order.
* ``Gamma(p,k1,k2)``: ``L(p,k1)`` plus a second tail of ``k2`` vertices on ``0``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph, GraphError


class FamilyError(ValueError):
    """Bad family name, arity, or parameter bound."""


# kind -> (symbol, arity, lower bounds, human-readable name)
_KINDS: dict[str, tuple[str, int, tuple[int, ...], str]] = {
    "path": ("P", 1, (1,), "path P_n"),
    "cycle": ("C", 1, (3,), "cycle C_p"),
    "lollipop": ("L", 2, (3, 0), "lollipop L(p,k)"),
    "tshape": ("S", 3, (0, 1, 1), "T-shape tree S_{a,b,c}"),
    "star": ("S", 1, (1,), "star S_n"),
    "ttree": ("T", 1, (5,), "tree T_n"),
    "bouquet": ("B", 2, (3, 3), "bouquet B(p,q)"),
    "dumbbell": ("H", 2, (3, 3), "dumbbell H(p,q)"),
    "theta": ("P", 3, (0, 1, 1), "theta graph P(p1,p2,p3)"),
    "gamma": ("Gamma", 3, (3, 1, 1), "gamma_{p,k1,k2}"),
}

_PARAM_NAMES = {
    "path": ("n",), "cycle": ("p",), "lollipop": ("p", "k"), "tshape": ("a", "b", "c"),
    "star": ("n",), "ttree": ("n",), "bouquet": ("p", "q"), "dumbbell": ("p", "q"),
    "theta": ("p1", "p2", "p3"), "gamma": ("p", "k1", "k2"),
}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise FamilyError(f"unknown family kind {self.kind!r}")
        _, arity, bounds, label = _KINDS[self.kind]
        if len(self.params) != arity:
            raise FamilyError(f"{label} takes {arity} parameter(s), got {len(self.params)}")
        for name, value, low in zip(_PARAM_NAMES[self.kind], self.params, bounds):
            if not isinstance(value, int) or value < low:
                raise FamilyError(f"{label}: parameter {name} must be an integer >= {low}, got {value!r}")

    def render(self) -> str:
        symbol = _KINDS[self.kind][0]
        return f"{symbol}({','.join(str(p) for p in self.params)})"

    def __str__(self) -> str:
        return self.render()

    def build(self) -> Graph:
        return build(self)


def path(n: int) -> FamilySpec:
    return FamilySpec("path", (n,))


def cycle(p: int) -> FamilySpec:
    return FamilySpec("cycle", (p,))


def lollipop(p: int, k: int) -> FamilySpec:
    return FamilySpec("lollipop", (p, k))


def tshape(a: int, b: int, c: int) -> FamilySpec:
    return FamilySpec("tshape", (a, b, c))


def star(n: int) -> FamilySpec:
    return FamilySpec("star", (n,))


def ttree(n: int) -> FamilySpec:
    return FamilySpec("ttree", (n,))


def bouquet(p: int, q: int) -> FamilySpec:
    return FamilySpec("bouquet", (p, q))


def dumbbell(p: int, q: int) -> FamilySpec:
    return FamilySpec("dumbbell", (p, q))


def theta(p1: int, p2: int, p3: int) -> FamilySpec:
    return FamilySpec("theta", (p1, p2, p3))


def gamma(p: int, k1: int, k2: int) -> FamilySpec:
    return FamilySpec("gamma", (p, k1, k2))


def _chain(start: int, first_new: int, length: int) -> list[tuple[int, int]]:
    """Edges of a path hanging from ``start`` through ``length`` new vertices."""
    edges = []
    prev = start
    for v in range(first_new, first_new + length):
        edges.append((prev, v))
        prev = v
    return edges


def _cycle_edges(p: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % p) for i in range(p)]


def build(spec: FamilySpec) -> Graph:
    k, a = spec.kind, spec.params
    if k == "path":
        (n,) = a
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if k == "cycle":
        (p,) = a
        return Graph(p, _cycle_edges(p))
    if k == "lollipop":
        p, t = a
        return Graph(p + t, _cycle_edges(p) + _chain(0, p, t))
    if k == "tshape":
        x, y, z = a
        edges = _chain(0, 1, x) + _chain(0, 1 + x, y) + _chain(0, 1 + x + y, z)
        return Graph(1 + x + y + z, edges)
    if k == "star":
        (n,) = a
        return Graph(n + 1, [(0, i) for i in range(1, n + 1)])
    if k == "ttree":
        (n,) = a
        edges = [(i, i + 1) for i in range(n - 3)] + [(1, n - 2), (n - 4, n - 1)]
        return Graph(n, edges)
    if k == "bouquet":
        p, q = a
        second = [0] + list(range(p, p + q - 1))
        edges = _cycle_edges(p) + [(second[i], second[(i + 1) % q]) for i in range(q)]
        return Graph(p + q - 1, edges)
    if k == "dumbbell":
        p, q = a
        edges = _cycle_edges(p) + [(p + i, p + (i + 1) % q) for i in range(q)] + [(0, p)]
        return Graph(p + q, edges)
    if k == "theta":
        edges = []
        nxt = 2
        for inner in a:
            arm = [0] + list(range(nxt, nxt + inner)) + [1]
            edges.extend(zip(arm, arm[1:]))
            nxt += inner
        return Graph(nxt, edges)
    if k == "gamma":
        p, k1, k2 = a
        edges = _cycle_edges(p) + _chain(0, p, k1) + _chain(0, p + k1, k2)
        return Graph(p + k1 + k2, edges)
    raise FamilyError(f"no builder for {k!r}")  # pragma: no cover


def theta_arm(p1: int, p2: int, p3: int, arm: int) -> list[int]:
    """Vertices of one arm of ``P(p1,p2,p3)`` from branch vertex 0 to branch vertex 1."""
    sizes = (p1, p2, p3)
    if arm not in (0, 1, 2):
        raise ValueError(f"arm must be 0, 1 or 2, got {arm}")
    start = 2 + sum(sizes[:arm])
    return [0] + list(range(start, start + sizes[arm])) + [1]


def theta_with_pendant(p1: int, p2: int, p3: int, arm: int, position: int) -> Graph:
    """``P(p1,p2,p3)`` plus a pendant vertex on the ``position``-th vertex of an arm.

    ``position`` counts from branch vertex 0 (position 0 is vertex 0 itself).
    """
    g = build(theta(p1, p2, p3))
    verts = theta_arm(p1, p2, p3, arm)
    if not 0 <= position < len(verts):
        raise FamilyError(f"arm {arm} has no position {position}")
    return g.add_pendant(verts[position])


_SPEC_RE = re.compile(r"\s*([A-Za-z]+)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


def parse_family(text: str) -> FamilySpec:
    """Parse ``NAME(int, ...)`` with NAME in P, C, L, S, T, B, H, Theta, Gamma."""
    m = _SPEC_RE.match(text)
    if not m:
        raise FamilyError(f"cannot parse family spec {text!r}: expected NAME(int,...)")
    name = m.group(1)
    params = tuple(int(x) for x in m.group(2).split(","))
    arity = len(params)
    table = {
        ("P", 1): "path", ("P", 3): "theta", ("Theta", 3): "theta",
        ("C", 1): "cycle", ("L", 2): "lollipop", ("S", 3): "tshape", ("S", 1): "star",
        ("T", 1): "ttree", ("B", 2): "bouquet", ("H", 2): "dumbbell", ("Gamma", 3): "gamma",
    }
    kind = table.get((name, arity))
    if kind is None:
        known = sorted({n for n, _ in table})
        if name not in known:
            raise FamilyError(f"unknown family name {name!r} at position {m.start(1)}; known: {', '.join(known)}")
        arities = sorted(a for n, a in table if n == name)
        raise FamilyError(f"{name} takes {' or '.join(map(str, arities))} parameter(s), got {arity}")
    return FamilySpec(kind, params)


def build_from_text(text: str) -> Graph:
    try:
        return build(parse_family(text))
    except GraphError as exc:  # pragma: no cover - builders produce valid graphs
        raise FamilyError(str(exc)) from exc
