"""Exact real-root counting for integer polynomials.

Roots are counted with multiplicity by splitting the polynomial into
square-free factors (``p ~ f_1 * f_2**2 * f_3**3 ...``) and running a Sturm
chain on each factor.  For a square-free ``f`` the number of distinct roots
in ``(a, b]`` is ``V(a) - V(b)``, which stays valid when ``a`` or ``b`` is
itself a root, so equality with a threshold is counted separately.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .poly import (
    IntPolynomial,
    Threshold,
    as_exact,
    sign_variations,
    squarefree_decomposition,
)


class SturmChain:
    """Sturm sequence of a square-free integer polynomial (primitive PRS)."""

    __slots__ = ("polys",)

    def __init__(self, f: IntPolynomial) -> None:
        chain = [f, f.derivative()]
        while chain[-1].degree > 0:
            a, b = chain[-2], chain[-1]
            r = a.pseudo_rem(b)
            if r.is_zero():
                break
            delta = a.degree - b.degree + 1
            # pseudo_rem multiplied by lc(b)**delta; undo its sign, then negate
            flip = -1 if (b.leading < 0 and delta % 2) else 1
            r = r.primitive() * (-flip if r.leading > 0 else flip)
            chain.append(r)
        self.polys = tuple(chain)

    def variations_at(self, q: Fraction) -> int:
        num, den = q.numerator, q.denominator
        return sign_variations([p.eval_homogeneous(num, den) for p in self.polys])

    def variations_at_infinity(self, sign: int = 1) -> int:
        vals = []
        for p in self.polys:
            lc = p.leading
            vals.append(lc if (sign > 0 or p.degree % 2 == 0) else -lc)
        return sign_variations(vals)

    def variations_at_value(self, t: Threshold) -> int:
        t = as_exact(t)
        if isinstance(t, Fraction):
            return self.variations_at(t)
        return sign_variations([p.sign_at(t) for p in self.polys])

    def roots_above(self, t: Threshold) -> int:
        """Distinct roots in ``(t, +inf)``."""
        return self.variations_at_value(t) - self.variations_at_infinity(1)

    def roots_in(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in ``(a, b]``."""
        return self.variations_at(a) - self.variations_at(b)


class RootCounter:
    """Counts real roots of an integer polynomial with multiplicity."""

    def __init__(self, p: IntPolynomial) -> None:
        if p.is_zero():
            raise ValueError("cannot count roots of the zero polynomial")
        self.poly = p

    @cached_property
    def _factors(self) -> list[tuple[int, SturmChain, IntPolynomial]]:
        out = []
        for i, f in enumerate(squarefree_decomposition(self.poly), start=1):
            if f.degree > 0:
                out.append((i, SturmChain(f), f))
        return out

    def count_above(self, t: Threshold) -> int:
        """Roots strictly greater than ``t``, counted with multiplicity."""
        return sum(i * chain.roots_above(t) for i, chain, _ in self._factors)

    def count_equal(self, t: Threshold) -> int:
        """Multiplicity of ``t`` as a root."""
        t = as_exact(t)
        return sum(i for i, _, f in self._factors if f.sign_at(t) == 0)

    def count_in(self, a: Fraction, b: Fraction) -> int:
        """Roots in the half-open interval ``(a, b]`` with multiplicity."""
        return sum(i * chain.roots_in(Fraction(a), Fraction(b)) for i, chain, _ in self._factors)

    def real_root_count(self) -> int:
        return sum(
            i * (chain.variations_at_infinity(-1) - chain.variations_at_infinity(1))
            for i, chain, _ in self._factors
        )


def count_above_descartes(p: IntPolynomial, q: Fraction) -> tuple[int, int]:
    """``(roots > q, roots == q)`` for a polynomial whose roots are all real.

    Uses Descartes' rule on the shifted polynomial, which is exact when every
    root is real (true for characteristic polynomials of symmetric matrices).
    """
    q = Fraction(q)
    shifted = p.taylor_shift(q.numerator, q.denominator)
    zeros = shifted.trailing_zeros()
    return sign_variations(shifted.coeffs[zeros:]), zeros
