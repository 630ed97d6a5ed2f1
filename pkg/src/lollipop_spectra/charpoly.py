"""Exact characteristic polynomials of adjacency matrices.

Two independent exact algorithms are provided:

* ``"newton"``: power sums ``tr(A^k)`` in 64-bit integers followed by
  Newton's identities with exact integer division.  Used only while every
  entry of ``A^k`` provably fits in 63 bits.
* ``"modular"``: Hessenberg reduction modulo several 31-bit primes and
  Chinese remaindering, with enough primes to cover a Hadamard-type bound
  on the coefficients.  Works for any size.

``charpoly(g)`` picks whichever applies.  The recurrences for paths, cycles,
bridges and vertex deletion live here too.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .families import FamilySpec
from .graph import Graph
from .poly import IntPolynomial, Threshold, eval_sign

X = IntPolynomial.x()
ONE = IntPolynomial.const(1)

# primes just below 2**31; products of two residues stay below 2**62
_PRIMES: list[int] = []


def _primes(count: int) -> list[int]:
    cand = _PRIMES[-1] - 2 if _PRIMES else (1 << 31) - 1
    while len(_PRIMES) < count:
        if _is_prime(cand):
            _PRIMES.append(cand)
        cand -= 2
    return _PRIMES[:count]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def coefficient_bound_bits(g: Graph) -> int:
    """Bits of a bound ``B`` with ``|a_i| <= B`` for every coefficient.

    ``a_i`` is a signed sum of ``C(n,i)`` principal minors and Hadamard's
    inequality bounds each minor by ``prod sqrt(deg v)``, so
    ``B**2 <= 4**n * prod max(1, deg v)``.
    """
    log2_b2 = 2 * g.n + sum(math.log2(max(1, d)) for d in g.degrees())
    return int(math.ceil(log2_b2 / 2)) + 1


def _charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Charpoly coefficients (constant first) of ``a`` modulo prime ``p``."""
    n = a.shape[0]
    h = a.astype(np.int64) % p
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i, j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[[piv, j + 1], :] = h[[j + 1, piv], :]
            h[:, [piv, j + 1]] = h[:, [j + 1, piv]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for k in range(j + 2, n):
            if h[k, j]:
                u = int(h[k, j]) * inv % p
                h[k, :] = (h[k, :] - u * h[j + 1, :]) % p
                h[:, j + 1] = (h[:, j + 1] + u * h[:, k]) % p
    # charpoly of an upper Hessenberg matrix by the standard recurrence
    polys = [np.zeros(n + 1, dtype=np.int64)]
    polys[0][0] = 1
    for m in range(n):
        cur = np.zeros(n + 1, dtype=np.int64)
        prev = polys[m]
        cur[1:] = prev[:-1]
        cur = (cur - int(h[m, m]) * prev) % p
        t = 1
        for i in range(m - 1, -1, -1):
            t = t * int(h[i + 1, i]) % p
            if t == 0:
                break
            coef = t * int(h[i, m]) % p
            if coef:
                cur = (cur - coef * polys[i]) % p
        polys.append(cur)
    return [int(c) for c in polys[n]]


def _charpoly_modular(g: Graph) -> IntPolynomial:
    n = g.n
    a = np.array(g.adjacency_matrix(), dtype=np.int64).reshape(n, n)
    need = coefficient_bound_bits(g) + 2
    primes = _primes(max(1, -(-need // 30)))
    modulus = 1
    result = [0] * (n + 1)
    for p in primes:
        res = _charpoly_mod(a, p)
        # CRT: combine result (mod modulus) with res (mod p)
        inv = pow(modulus % p, p - 2, p)
        for i in range(n + 1):
            delta = (res[i] - result[i]) % p
            result[i] += modulus * (delta * inv % p)
        modulus *= p
    half = modulus // 2
    return IntPolynomial(c - modulus if c > half else c for c in result)


def _newton_safe(g: Graph) -> bool:
    d = max(g.max_degree(), 1)
    return g.n * math.log2(d) + math.log2(max(g.n, 1)) < 62


def power_sums(g: Graph, kmax: int) -> list[int]:
    """``[tr(A^0), ..., tr(A^kmax)]`` exactly."""
    n = g.n
    d = max(g.max_degree(), 1)
    if n == 0:
        return [0] * (kmax + 1)
    exact64 = kmax * math.log2(d) + math.log2(n) < 62
    a = np.array(g.adjacency_matrix(), dtype=np.int64 if exact64 else object).reshape(n, n)
    out = [n]
    cur = np.eye(n, dtype=a.dtype)
    for _ in range(kmax):
        cur = cur @ a
        out.append(int(np.trace(cur)))
    return out


def _charpoly_newton(g: Graph) -> IntPolynomial:
    n = g.n
    s = power_sums(g, n)
    # coefficients c[k] of X^(n-k); k c_k = -sum_{i=1..k} c_{k-i} s_i
    c = [1] + [0] * n
    for k in range(1, n + 1):
        acc = sum(c[k - i] * s[i] for i in range(1, k + 1))
        q, r = divmod(-acc, k)
        if r:
            raise ArithmeticError("Newton identity produced a non-integer")
        c[k] = q
    return IntPolynomial(reversed(c))


def charpoly(g: Graph, method: str = "auto") -> IntPolynomial:
    """``det(X I - A)`` as an exact monic integer polynomial."""
    if g.n == 0:
        return ONE
    if method == "auto":
        method = "newton" if g.n <= 24 and _newton_safe(g) else "modular"
    if method == "newton":
        if not _newton_safe(g):
            raise ValueError("power sums may overflow 64 bits; use the modular method")
        return _charpoly_newton(g)
    if method == "modular":
        return _charpoly_modular(g)
    raise ValueError(f"unknown charpoly method {method!r}")


# -- recurrences ---------------------------------------------------------------

@lru_cache(maxsize=None)
def charpoly_path(n: int) -> IntPolynomial:
    """``Q_{P_n}`` from ``Q_{P_n} = X Q_{P_{n-1}} - Q_{P_{n-2}}``."""
    if n < 0:
        raise ValueError(f"path length must be >= 0, got {n}")
    if n == 0:
        return ONE
    if n == 1:
        return X
    a, b = ONE, X
    for _ in range(n - 1):
        a, b = b, X * b - a
    return b


@lru_cache(maxsize=None)
def charpoly_cycle(p: int) -> IntPolynomial:
    """``Q_{C_p} = X Q_{P_{p-1}} - 2 Q_{P_{p-2}} - 2``."""
    if p < 3:
        raise ValueError(f"cycle length must be >= 3, got {p}")
    return X * charpoly_path(p - 1) - 2 * charpoly_path(p - 2) - 2


def charpoly_bridge(g1: Graph, x: int, g2: Graph, y: int) -> IntPolynomial:
    """Charpoly of ``g1`` and ``g2`` joined by a new edge ``x - y``."""
    g1._check(x)
    g2._check(y)
    return charpoly(g1) * charpoly(g2) - charpoly(g1.delete_vertices([x])) * charpoly(g2.delete_vertices([y]))


def cycles_through(g: Graph, x: int) -> list[list[int]]:
    """Vertex lists of all simple cycles through ``x`` (each cycle once)."""
    g._check(x)
    found: set[frozenset] = set()
    out = []
    path = [x]
    on_path = {x}

    def dfs(u: int) -> None:
        for w in g.neighbors(u):
            if w == x and len(path) >= 3:
                # each cycle is met once per direction; key on its edge set
                edges = frozenset(frozenset(e) for e in zip(path, path[1:] + [x]))
                if edges not in found:
                    found.add(edges)
                    out.append(list(path))
            elif w not in on_path:
                path.append(w)
                on_path.add(w)
                dfs(w)
                path.pop()
                on_path.discard(w)

    dfs(x)
    return out


def charpoly_delete_vertex(g: Graph, x: int) -> IntPolynomial:
    """Right-hand side of the vertex-deletion expansion at ``x``.

    ``X Q(G-x) - sum_{y~x} Q(G-x-y) - 2 sum_{cycles C through x} Q(G-C)``;
    equals ``charpoly(g)``.
    """
    g._check(x)
    out = X * charpoly(g.delete_vertices([x]))
    for y in g.neighbors(x):
        out = out - charpoly(g.delete_vertices([x, y]))
    for cyc in cycles_through(g, x):
        out = out - 2 * charpoly(g.delete_vertices(cyc))
    return out


@lru_cache(maxsize=4096)
def charpoly_lollipop(p: int, k: int) -> IntPolynomial:
    """``Q_{L(p,k)} = Q_{C_p} Q_{P_k} - Q_{P_{p-1}} Q_{P_{k-1}}`` (``k >= 1``)."""
    if k == 0:
        return charpoly_cycle(p)
    return charpoly_cycle(p) * charpoly_path(k) - charpoly_path(p - 1) * charpoly_path(k - 1)


def charpoly_family(spec: FamilySpec) -> IntPolynomial:
    """Charpoly using closed-form recurrences where available."""
    a = spec.params
    if spec.kind == "path":
        return charpoly_path(a[0])
    if spec.kind == "cycle":
        return charpoly_cycle(a[0])
    if spec.kind == "lollipop":
        return charpoly_lollipop(*a)
    if spec.kind == "dumbbell":
        p, q = a
        return charpoly_cycle(p) * charpoly_cycle(q) - charpoly_path(p - 1) * charpoly_path(q - 1)
    return charpoly(spec.build())


# -- evaluation ----------------------------------------------------------------

def eval_rational(p: IntPolynomial, q) -> Fraction:
    return p.eval_rational(Fraction(q))


def eval_sign_quadratic(p: IntPolynomial, v: Threshold, method: str = "exact") -> int:
    """Exact sign of ``p(v)``; ``method='interval'`` uses certified dyadic enclosures."""
    return eval_sign(p, v, method)


def root_multiplicity_at_zero(p: IntPolynomial) -> tuple[int, int]:
    """``(t, R(0))`` where ``X**t`` exactly divides ``p`` and ``R = p / X**t``."""
    if p.is_zero():
        raise ValueError("zero polynomial has unbounded multiplicity at 0")
    t = p.trailing_zeros()
    return t, p[t]
