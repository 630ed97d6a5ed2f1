"""Certified eigenvalues, exact eigenvalue counts and the bound checks built on them.

Everything here is driven by the exact characteristic polynomial: an
eigenvalue count at a threshold is a Sturm sign-variation difference, and
eigenvalue approximations come from bisection on dyadic rationals using
those counts, so every reported error bound is rigorous.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .charpoly import charpoly, charpoly_family, charpoly_path, charpoly_cycle
from .families import FamilySpec, bouquet, build, dumbbell, lollipop, theta, theta_with_pendant
from .graph import Graph
from .poly import (
    ALPHA,
    FOUR_OVER_SQRT3,
    SQRT5,
    IntPolynomial,
    QuadraticValue,
    Threshold,
    UndecidedSignError,
    as_exact,
    poly_gcd,
    bracket,
)
from .sturm import RootCounter, SturmChain

DEFAULT_EPS = 1e-8
MAX_BITS = 256


# -- eigenvalue counts -----------------------------------------------------------

@dataclass(frozen=True)
class EigenCountCertificate:
    threshold: str
    count_strictly_above: int
    count_equal: int
    method: str = "sturm"

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "count_strictly_above": self.count_strictly_above,
            "count_equal": self.count_equal,
            "method": self.method,
        }


@dataclass
class ClaimRecord:
    claim: str
    parameters: dict
    verdict: str
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"claim": self.claim, "parameters": self.parameters, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def _poly_of(g: Graph | IntPolynomial) -> IntPolynomial:
    return g if isinstance(g, IntPolynomial) else charpoly(g)


def count_eigenvalues_above(g: Graph | IntPolynomial, t: Threshold, method: str = "sturm") -> EigenCountCertificate:
    """Exact number of eigenvalues ``> t`` and ``== t``.

    ``method='sturm'`` evaluates the Sturm chains exactly at ``t``;
    ``method='interval'`` brackets an irrational ``t`` between dyadic
    rationals, refining until the counts at both ends agree.
    """
    t = as_exact(t)
    rc = RootCounter(_poly_of(g))
    equal = rc.count_equal(t)
    if method == "sturm":
        above = rc.count_above(t)
    elif method == "interval":
        above = _count_above_bracketed(rc, t, equal)
    else:
        raise ValueError(f"unknown counting method {method!r}")
    return EigenCountCertificate(str(t), above, equal, method)


def _count_above_bracketed(rc: RootCounter, t: Threshold, equal: int) -> int:
    bits = 32
    while True:
        lo, hi = bracket(t, bits)
        if lo == hi:
            return rc.count_above(lo)
        a_lo, a_hi = rc.count_above(lo), rc.count_above(hi)
        # a_lo = above + equal + roots in (lo, t); a_hi = above - roots in (t, hi]
        if a_lo - a_hi == equal:
            return a_hi
        if bits >= MAX_BITS:
            raise UndecidedSignError(f"eigenvalue count at {t} undecided at 2^-{MAX_BITS}")
        bits *= 2


# -- spectra ---------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumApprox:
    values: tuple[float, ...]
    eps: float
    intervals: tuple[tuple[Fraction, Fraction, int], ...] = field(default=(), repr=False)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


def _root_bound(p: IntPolynomial) -> Fraction:
    """Power of two strictly above every root's absolute value (Cauchy bound)."""
    lc = abs(p.leading)
    bound = 1 + max((Fraction(abs(c), lc) for c in p.coeffs[:-1]), default=Fraction(0))
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


def isolate(rc: RootCounter, lo: Fraction, hi: Fraction, width: Fraction, limit: int | None = None) -> list[tuple[Fraction, Fraction, int]]:
    """Split ``(lo, hi]`` into dyadic pieces of width ``<= width`` holding roots.

    Returns ``(a, b, count)`` from the top down.  With ``limit`` only the
    pieces covering the ``limit`` largest roots are refined.
    """
    out: list[tuple[Fraction, Fraction, int]] = []
    found = 0
    # stack holds intervals still to split, processed highest first
    stack = [(lo, hi, rc.count_in(lo, hi))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if limit is not None and found >= limit:
            break
        if b - a <= width:
            out.append((a, b, c))
            found += c
            continue
        mid = (a + b) / 2
        upper = rc.count_in(mid, b)
        stack.append((a, mid, c - upper))
        stack.append((mid, b, upper))
    return out


def _representative(p: IntPolynomial, a: Fraction, b: Fraction) -> float:
    # the right endpoint is exact when it is itself a root (for example 0)
    return float(b) if p.sign_at(b) == 0 else float((a + b) / 2)


def _eps_width(eps: float) -> Fraction:
    bits = max(1, math.ceil(-math.log2(eps)))
    return Fraction(2, 1 << bits) if eps < 1 else Fraction(2)


def spectrum(g: Graph | IntPolynomial, eps: float = DEFAULT_EPS) -> SpectrumApprox:
    """All eigenvalues, nonincreasing, each within ``eps`` of the true value."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    p = _poly_of(g)
    if p.degree <= 0:
        return SpectrumApprox((), eps)
    rc = RootCounter(p)
    b = _root_bound(p)
    pieces = isolate(rc, -b, b, _eps_width(eps))
    values: list[float] = []
    for a, c_hi, c in pieces:
        values.extend([_representative(p, a, c_hi)] * c)
    return SpectrumApprox(tuple(values), eps, tuple(pieces))


def top_eigenvalues(g: Graph | IntPolynomial, k: int, eps: float = DEFAULT_EPS) -> SpectrumApprox:
    """The ``k`` largest eigenvalues within ``eps``."""
    p = _poly_of(g)
    rc = RootCounter(p)
    b = _root_bound(p)
    pieces = isolate(rc, -b, b, _eps_width(eps), limit=k)
    values: list[float] = []
    for a, c_hi, c in pieces:
        values.extend([_representative(p, a, c_hi)] * c)
    return SpectrumApprox(tuple(values[:k]), eps, tuple(pieces))


def lambda1_interval(g: Graph | IntPolynomial, width: Fraction) -> tuple[Fraction, Fraction]:
    """Dyadic ``(a, b]`` of width ``<= width`` containing the largest eigenvalue."""
    p = _poly_of(g)
    rc = RootCounter(p)
    b = _root_bound(p)
    a, hi, _ = isolate(rc, -b, b, width, limit=1)[0]
    return a, hi


def _same_top_root(p1: IntPolynomial, p2: IntPolynomial) -> bool:
    """Whether the largest real roots of ``p1`` and ``p2`` coincide, exactly."""
    d = poly_gcd(p1, p2)
    if d.degree < 1:
        return False
    rd = RootCounter(d)
    if rd.real_root_count() == 0:
        return False
    b = _root_bound(d)
    a, b, _ = isolate(rd, -b, b, Fraction(1, 1 << 8), limit=1)[0]
    chains = [SturmChain(p.exact_div(poly_gcd(p, p.derivative()))) for p in (p1, p2)]
    # shrink around the top root of d until it is the only root of either polynomial there
    while any(c.roots_in(a, b) > 1 for c in chains):
        mid = (a + b) / 2
        if rd.count_in(mid, b) > 0:
            a = mid
        else:
            b = mid
    return all(c.roots_above(b) == 0 for c in chains)


def compare_spectral_radius(g1: Graph | IntPolynomial, g2: Graph | IntPolynomial, max_bits: int = 256) -> int:
    """Certified sign of ``lambda1(g1) - lambda1(g2)``.

    Refines enclosures until they are disjoint; when they still overlap at
    64 bits, equality is tested exactly through the gcd of the polynomials.
    """
    p1, p2 = _poly_of(g1), _poly_of(g2)
    bits = 16
    while True:
        w = Fraction(1, 1 << bits)
        a1, b1 = lambda1_interval(p1, w)
        a2, b2 = lambda1_interval(p2, w)
        if a1 >= b2:
            return 1
        if a2 >= b1:
            return -1
        if bits >= 64 and _same_top_root(p1, p2):
            return 0
        if bits >= max_bits:
            raise UndecidedSignError("spectral radii not separated at the precision cap")
        bits *= 2


# -- single-claim checks -----------------------------------------------------------

def spectral_radius_lower_bound_check(g: Graph) -> bool:
    """Whether ``lambda1 >= sqrt(max degree)``, decided by exact counting."""
    cert = count_eigenvalues_above(g, QuadraticValue.sqrt(g.max_degree()))
    return cert.count_strictly_above + cert.count_equal >= 1


def interlacing_check(g: Graph, vertex_subset: Iterable[int], eps: float = 1e-9) -> bool:
    """``lambda_{n-m+i} <= mu_i <= lambda_i`` for the induced subgraph; eps-ties pass."""
    subset = sorted(set(vertex_subset))
    if not subset:
        raise ValueError("vertex subset must be nonempty")
    lam = spectrum(g, eps).values
    mu = spectrum(g.induced_subgraph(subset), eps).values
    n, m = len(lam), len(mu)
    tol = 2 * eps
    for i in range(m):
        if mu[i] > lam[i] + tol or mu[i] < lam[n - m + i] - tol:
            return False
    return True


def interlacing_check_exact(g: Graph, vertex_subset: Iterable[int]) -> bool:
    """Interlacing decided by exact counts at every eigenvalue enclosure endpoint."""
    subset = sorted(set(vertex_subset))
    h = g.induced_subgraph(subset)
    n, m = g.n, h.n
    rg, rh = RootCounter(charpoly(g)), RootCounter(charpoly(h))
    pts = set()
    for rc, p in ((rg, charpoly(g)), (rh, charpoly(h))):
        b = _root_bound(p)
        for a, c, _ in isolate(rc, -b, b, Fraction(1, 1 << 20)):
            pts.add(a)
            pts.add(c)
    # mu_i <= lambda_i  <=>  N_H(>t) <= N_G(>t);  lambda_{n-m+i} <= mu_i  <=>  N_G(>t) <= N_H(>t) + n - m
    for t in pts:
        ng, nh = rg.count_above(t), rh.count_above(t)
        if nh > ng or ng > nh + (n - m):
            return False
    return True


# -- structural helpers for the subdivision property --------------------------------

def internal_path_edges(g: Graph) -> set[tuple[int, int]]:
    """Edges lying on a path whose ends have degree > 2 and interior has degree 2."""
    out: set[tuple[int, int]] = set()
    deg = g.degrees()
    for u, v in g.edges:
        ends = []
        for start, nxt in ((u, v), (v, u)):
            prev, cur = start, nxt
            # walk away from the edge through degree-2 vertices
            steps = 0
            while deg[cur] == 2 and steps <= g.n:
                a, b = g.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
                steps += 1
            ends.append(cur)
        if all(deg[e] > 2 for e in ends) and deg[u] != 1 and deg[v] != 1:
            out.add((u, v))
    return out


def is_ttree(g: Graph) -> bool:
    """Whether ``g`` is isomorphic to some ``T(n)``."""
    from .canon import are_isomorphic

    if g.n < 5 or g.m != g.n - 1:
        return False
    return are_isomorphic(g, build(FamilySpec("ttree", (g.n,))))


def subdivision_check(g: Graph, u: int, v: int) -> ClaimRecord:
    """Certified effect on ``lambda1`` of subdividing edge ``uv``.

    Off internal paths the radius must strictly increase; on an internal
    path it must strictly decrease unless ``g`` is ``T(n)``.  Cycles are
    excluded since every subdivision keeps the radius at 2.
    """
    if not g.is_connected():
        raise ValueError("subdivision property needs a connected graph")
    if g.max_degree() <= 2 and g.m == g.n:
        raise ValueError("a cycle keeps spectral radius 2 under subdivision")
    if not g.has_edge(u, v):
        raise ValueError(f"{(u, v)} is not an edge")
    internal = (min(u, v), max(u, v)) in internal_path_edges(g)
    if internal and is_ttree(g):
        raise ValueError("T(n) is the exception for internal paths")
    s = compare_spectral_radius(g.subdivide(u, v), g)
    expected = -1 if internal else 1
    claim = "subdividing an internal-path edge decreases lambda1" if internal else "subdividing an edge off internal paths increases lambda1"
    params = {"graph": g.to_graph6(), "edge": [u, v]}
    return ClaimRecord(claim, params, "verified" if s == expected else "violated", None if s == expected else {"comparison": s})


# -- suites ------------------------------------------------------------------------

def _lollipop_poly(p: int, k: int) -> IntPolynomial:
    return charpoly_family(lollipop(p, k))


def _run(tasks: Sequence[tuple[Callable, tuple]], jobs: int) -> list:
    if jobs <= 1:
        return [f(*a) for f, a in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(f, *a) for f, a in tasks]
        return [f.result() for f in futs]


def _check_above(claim: str, params: dict, poly: IntPolynomial, t: Threshold, at_least: int = 1) -> ClaimRecord:
    cert = count_eigenvalues_above(poly, t)
    ok = cert.count_strictly_above >= at_least
    return ClaimRecord(claim, params, "verified" if ok else "violated", None if ok else cert.to_dict())


def _check_below(claim: str, params: dict, poly: IntPolynomial, t: Threshold) -> ClaimRecord:
    cert = count_eigenvalues_above(poly, t)
    ok = cert.count_strictly_above == 0 and cert.count_equal == 0
    return ClaimRecord(claim, params, "verified" if ok else "violated", None if ok else cert.to_dict())


def _check_vp2(p: int, k: int) -> ClaimRecord:
    cert = count_eigenvalues_above(_lollipop_poly(p, k), 2)
    ok = cert.count_strictly_above == 1 and cert.count_equal == 0
    return ClaimRecord("exactly one eigenvalue of L(p,k) exceeds 2, none equals 2", {"p": p, "k": k},
                       "verified" if ok else "violated", None if ok else cert.to_dict())


def _check_radius_order(claim: str, params: dict, bigger: IntPolynomial, smaller: IntPolynomial) -> ClaimRecord:
    s = compare_spectral_radius(bigger, smaller)
    return ClaimRecord(claim, params, "verified" if s > 0 else "violated", None if s > 0 else {"comparison": s})


def _vp_max(p: int, k: int) -> ClaimRecord:
    return _check_below("lambda1(L(p,k)) < sqrt(5)", {"p": p, "k": k}, _lollipop_poly(p, k), SQRT5)


def _l4_alpha(k: int) -> ClaimRecord:
    return _check_below("lambda1(L(4,k)) < sqrt(2+2*sqrt(2))", {"k": k}, _lollipop_poly(4, k), ALPHA)


def _l_217(p: int, k: int) -> ClaimRecord:
    return _check_below("lambda1(L(p,k)) < 2.17 for p >= 6", {"p": p, "k": k}, _lollipop_poly(p, k), Fraction(217, 100))


def _vph(p: int, q: int) -> ClaimRecord:
    return _check_above("lambda1(H(p,q)) > sqrt(5)", {"p": p, "q": q}, charpoly_family(dumbbell(p, q)), SQRT5)


def _vpb(p: int, q: int) -> ClaimRecord:
    return _check_above("lambda1(B(p,q)) > 4/sqrt(3)", {"p": p, "q": q}, charpoly(build(bouquet(p, q))), FOUR_OVER_SQRT3)


def _aug_circ(p: int, k: int) -> ClaimRecord:
    return _check_radius_order("lambda1(L(p,k)) > lambda1(L(p+1,k))", {"p": p, "k": k},
                               _lollipop_poly(p, k), _lollipop_poly(p + 1, k))


def _aug_paths(p: int, k: int) -> ClaimRecord:
    return _check_radius_order("lambda1(L(p,k)) < lambda1(L(p,k+1))", {"p": p, "k": k},
                               _lollipop_poly(p, k + 1), _lollipop_poly(p, k))


@dataclass(frozen=True)
class BoundRanges:
    lollipop_p: tuple[int, int] = (3, 20)
    lollipop_k: tuple[int, int] = (1, 20)
    monotone_p: tuple[int, int] = (3, 12)
    monotone_k: tuple[int, int] = (1, 12)
    l4_k_max: int = 40
    l217_p: tuple[int, int] = (6, 20)
    l217_k: tuple[int, int] = (1, 40)
    pair_range: tuple[int, int] = (3, 15)


def _rng(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


def bound_suite(ranges: BoundRanges = BoundRanges(), jobs: int = 1) -> list[ClaimRecord]:
    """Check the spectral-radius inequalities over parameter grids."""
    tasks: list[tuple[Callable, tuple]] = []
    for p in _rng(ranges.lollipop_p):
        for k in _rng(ranges.lollipop_k):
            tasks.append((_check_vp2, (p, k)))
            tasks.append((_vp_max, (p, k)))
    for p in _rng(ranges.monotone_p):
        for k in _rng(ranges.monotone_k):
            tasks.append((_aug_circ, (p, k)))
            tasks.append((_aug_paths, (p, k)))
    for k in range(0, ranges.l4_k_max + 1):
        tasks.append((_l4_alpha, (k,)))
    for p in _rng(ranges.l217_p):
        for k in _rng(ranges.l217_k):
            tasks.append((_l_217, (p, k)))
    for p in _rng(ranges.pair_range):
        for q in _rng(ranges.pair_range):
            tasks.append((_vph, (p, q)))
            tasks.append((_vpb, (p, q)))
    return _run(tasks, jobs)


# -- sign suite for the theta-graph constructions ---------------------------------

def p_tilde(p2: int, p3: int) -> Graph:
    """``P(2,p2,p3)`` plus a pendant at distance 2 from branch vertex 0 on the ``p3`` arm."""
    return theta_with_pendant(2, p2, p3, 2, 2)


def p_hat(p2: int, p3: int) -> Graph:
    """``P(2,p2,p3)`` plus a pendant at distance 1 from branch vertex 0 on the ``p3`` arm."""
    return theta_with_pendant(2, p2, p3, 2, 1)


def dumbbell_sign_at_sqrt5(p: int) -> int:
    """Exact sign of ``Q_{H(p,p)}(sqrt 5)`` via ``Q_{C_p}^2 - Q_{P_{p-1}}^2``."""
    q = charpoly_cycle(p) * charpoly_cycle(p) - charpoly_path(p - 1) * charpoly_path(p - 1)
    return q.sign_at(SQRT5)


def _sign_record(claim: str, params: dict, poly: IntPolynomial, t: Threshold, expected: int) -> ClaimRecord:
    s = poly.sign_at(t)
    return ClaimRecord(claim, params, "verified" if s == expected else "violated", None if s == expected else {"sign": s})


def _h_sqrt5(p: int) -> ClaimRecord:
    s = dumbbell_sign_at_sqrt5(p)
    return ClaimRecord("Q_{H(p,p)}(sqrt(5)) < 0", {"p": p}, "verified" if s < 0 else "violated",
                       None if s < 0 else {"sign": s})


def _theta_alpha(p1: int, p2: int, p3: int) -> ClaimRecord:
    return _check_above("lambda1(P(p1,p2,p3)) > sqrt(2+2*sqrt(2))", {"p1": p1, "p2": p2, "p3": p3},
                        charpoly(build(theta(p1, p2, p3))), ALPHA)


def _theta_22(p1: int, p2: int, p3: int) -> ClaimRecord:
    return _check_above("lambda1(P(p1,p2,p3)) > 2.2", {"p1": p1, "p2": p2, "p3": p3},
                        charpoly(build(theta(p1, p2, p3))), Fraction(11, 5))


def _p33_sign(p: int) -> ClaimRecord:
    return _sign_record("Q_{P(3,3,p)}(sqrt(2+2*sqrt(2))) < 0", {"p": p}, charpoly(build(theta(3, 3, p))), ALPHA, -1)


def _ptilde(p: int) -> ClaimRecord:
    return _check_above("lambda1(P~(2,p,p)) > sqrt(2+2*sqrt(2))", {"p": p}, charpoly(p_tilde(p, p)), ALPHA)


def _phat(p: int) -> ClaimRecord:
    return _check_above("lambda1(P^(2,p,p)) > sqrt(2+2*sqrt(2))", {"p": p}, charpoly(p_hat(p, p)), ALPHA)


def appendix_sign_suite(cap: int = 30, h_cap: int = 50, jobs: int = 1) -> list[ClaimRecord]:
    """Sign and eigenvalue-count claims for the theta-graph constructions."""
    tasks: list[tuple[Callable, tuple]] = []
    for p in range(3, h_cap + 1):
        tasks.append((_h_sqrt5, (p,)))
    for p in range(1, cap + 1):
        tasks.append((_theta_alpha, (3, 3, p)))
        tasks.append((_p33_sign, (p,)))
        tasks.append((_theta_alpha, (1, p, p)))
    for p in range(3, cap + 1):
        tasks.append((_ptilde, (p,)))
        tasks.append((_phat, (p,)))
    for p1 in range(0, 4):
        for p2 in range(1, 4):
            for p in range(1, cap + 1):
                tasks.append((_theta_alpha, (p1, p2, p)))
    for p1 in range(0, 3):
        for p2 in range(1, 5):
            for p in range(1, cap + 1):
                tasks.append((_theta_22, (p1, p2, p)))
    return _run(tasks, jobs)
