from __future__ import annotations

import json
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy

from helpers import random_graph
from lollipop_spectra.charpoly import charpoly
from lollipop_spectra.poly import (
    ALPHA,
    FOUR_OVER_SQRT3,
    SQRT5,
    IntPolynomial,
    NestedRadical,
    QuadraticValue,
    as_exact,
    interval_sign,
    parse_threshold,
    poly_gcd,
    squarefree_decomposition,
)
from lollipop_spectra.sturm import RootCounter, SturmChain, count_above_descartes

X = IntPolynomial.x()
SX = sympy.Symbol("x")


def to_sympy(p: IntPolynomial):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], SX)


def random_poly(rng, degree: int) -> IntPolynomial:
    return IntPolynomial([rng.randint(-9, 9) for _ in range(degree)] + [rng.choice([-3, -1, 1, 2])])


class TestIntPolynomial:
    def test_ring_operations_against_sympy(self, rng):
        for _ in range(50):
            a, b = random_poly(rng, rng.randint(0, 6)), random_poly(rng, rng.randint(0, 6))
            assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)
            assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
            assert to_sympy(a - b) == to_sympy(a) - to_sympy(b)

    def test_pseudo_remainder_against_sympy(self, rng):
        for _ in range(40):
            a, b = random_poly(rng, rng.randint(2, 8)), random_poly(rng, rng.randint(1, 4))
            assert to_sympy(a.pseudo_rem(b)) == sympy.prem(to_sympy(a), to_sympy(b))

    def test_gcd_against_sympy(self, rng):
        for _ in range(30):
            c = random_poly(rng, rng.randint(0, 3))
            a = c * random_poly(rng, rng.randint(0, 3))
            b = c * random_poly(rng, rng.randint(0, 3))
            g = poly_gcd(a, b)
            expected = sympy.gcd(to_sympy(a), to_sympy(b))
            assert sympy.div(to_sympy(g), expected)[1] == 0 and sympy.degree(to_sympy(g), SX) == sympy.degree(expected, SX)

    def test_squarefree_decomposition(self):
        p = (X - 1) * (X - 2) * (X - 2) * (X + 3) * (X + 3) * (X + 3)
        parts = squarefree_decomposition(p)
        product = IntPolynomial.const(1)
        for i, f in enumerate(parts, start=1):
            for _ in range(i):
                product = product * f
        assert product == p or product == -p
        assert [f.degree for f in parts] == [1, 1, 1]

    def test_taylor_shift(self):
        p = (X - 3) * (2 * X - 1)
        shifted = p.taylor_shift(3)
        assert shifted.eval_rational(Fraction(0)) == 0
        assert p.taylor_shift(1, 2).eval_rational(Fraction(0)) == 0

    def test_str(self):
        assert str(X ** 3 - 2 * X + 1) == "X^3 - 2*X + 1"
        assert str((X - 1) * (X + 1)) == "X^2 - 1"
        assert str(-X) == "-X"

    def test_json_decimal_strings_constant_first(self):
        p = X * X * X - 3 * X - 2
        data = json.loads(p.to_json())
        assert data == ["-2", "-3", "0", "1"]
        assert IntPolynomial.from_json(p.to_json()) == p


class TestQuadraticValue:
    def test_normalises_square_factors(self):
        v = QuadraticValue(0, 1, 20)
        assert (v.b, v.d) == (2, 5)
        assert QuadraticValue(1, 3, 4) == QuadraticValue(7)

    def test_field_operations_against_sympy(self, rng):
        def sym(v: QuadraticValue):
            return sympy.Rational(v.a.numerator, v.a.denominator) + sympy.Rational(v.b.numerator, v.b.denominator) * sympy.sqrt(v.d)

        for _ in range(40):
            x, y = (
                QuadraticValue(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4)), 7)
                for _ in range(2)
            )
            for ours, theirs in [(x * y, sym(x) * sym(y)), (x + y, sym(x) + sym(y)), (x - y, sym(x) - sym(y))]:
                assert sympy.expand(sym(ours) - theirs) == 0
                assert ours.sign() == int(sympy.sign(theirs))

    def test_division(self):
        v = (QuadraticValue(1, 1, 2) / QuadraticValue(1, -1, 2))
        assert v == QuadraticValue(-3, -2, 2)

    def test_four_over_sqrt3(self):
        assert FOUR_OVER_SQRT3 * FOUR_OVER_SQRT3 == QuadraticValue(Fraction(16, 3))
        assert FOUR_OVER_SQRT3.sign() == 1

    def test_bracket_contains_value(self):
        for v in [SQRT5, FOUR_OVER_SQRT3, QuadraticValue(Fraction(1, 3), Fraction(-7, 2), 11)]:
            for bits in (8, 32, 100):
                lo, hi = v.bracket(bits)
                exact = sympy.Rational(v.a.numerator, v.a.denominator) + sympy.Rational(v.b.numerator, v.b.denominator) * sympy.sqrt(v.d)
                assert sympy.Rational(lo.numerator, lo.denominator) <= exact <= sympy.Rational(hi.numerator, hi.denominator)
                assert hi - lo <= Fraction(1, 2 ** (bits - 4))

    def test_minimal_polynomial(self):
        assert SQRT5.minimal_polynomial() == X * X - 5
        assert QuadraticValue(2, 2, 2).minimal_polynomial() == X * X - 4 * X - 4


class TestNestedRadical:
    def test_alpha_bracket(self):
        with mpmath.workdps(90):
            alpha = mpmath.sqrt(2 + 2 * mpmath.sqrt(2))
            for bits in (16, 64, 256):
                lo, hi = ALPHA.bracket(bits)
                assert mpmath.mpf(lo.numerator) / lo.denominator <= alpha <= mpmath.mpf(hi.numerator) / hi.denominator
                assert hi - lo <= Fraction(1, 2 ** (bits - 2))

    def test_alpha_minimal_polynomial(self):
        assert ALPHA.minimal_polynomial() == X ** 4 - 4 * X ** 2 - 4

    def test_alpha_signs(self):
        m = ALPHA.minimal_polynomial()
        assert ALPHA.sign_of(m) == 0
        assert ALPHA.sign_of(X - 2) == 1
        assert ALPHA.sign_of(5 * X - 11) == -1  # alpha ~ 2.197 < 2.2

    def test_interval_sign_agrees_with_exact(self, rng):
        for _ in range(30):
            p = random_poly(rng, rng.randint(1, 6))
            exact = ALPHA.sign_of(p)
            if exact:
                assert interval_sign(p, ALPHA) == exact


class TestParseThreshold:
    @pytest.mark.parametrize(
        "text, value",
        [
            ("2", Fraction(2)),
            ("2.17", Fraction(217, 100)),
            ("-3/4", Fraction(-3, 4)),
            ("sqrt5", SQRT5),
            ("sqrt(5)", SQRT5),
            ("alpha", ALPHA),
            ("4/sqrt3", FOUR_OVER_SQRT3),
            ("sqrt(9)", Fraction(3)),
        ],
    )
    def test_parse(self, text, value):
        assert parse_threshold(text) == value

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_threshold("two")

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_exact(2.17)


class TestRootCounting:
    def test_sturm_against_numpy_roots(self, rng):
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.2, 0.7))
            p = charpoly(g)
            eig = np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float))
            rc = RootCounter(p)
            for t in (Fraction(-3, 2), Fraction(0), Fraction(1, 3), Fraction(2), Fraction(5, 2)):
                if np.min(np.abs(eig - float(t))) < 1e-6:
                    continue
                assert rc.count_above(t) == int(np.sum(eig > float(t)))

    def test_sturm_against_descartes(self, rng):
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.2, 0.7))
            p = charpoly(g)
            rc = RootCounter(p)
            for t in (Fraction(-2), Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(7, 5)):
                assert (rc.count_above(t), rc.count_equal(t)) == count_above_descartes(p, t)

    def test_multiplicities(self):
        p = (X - 2) * (X - 2) * (X - 2) * (X + 1) * X
        rc = RootCounter(p)
        assert rc.count_above(Fraction(1)) == 3
        assert rc.count_equal(Fraction(2)) == 3
        assert rc.count_above(Fraction(2)) == 0
        assert rc.count_in(Fraction(-1), Fraction(2)) == 4
        assert rc.real_root_count() == 5

    def test_non_real_roots_not_counted(self):
        rc = RootCounter(X * X + 1)
        assert rc.real_root_count() == 0
        assert rc.count_above(Fraction(-10)) == 0

    def test_quadratic_threshold(self):
        rc = RootCounter(X * X - 5)
        assert rc.count_above(SQRT5) == 0 and rc.count_equal(SQRT5) == 1
        assert rc.count_above(QuadraticValue(0, -1, 5)) == 1

    def test_sturm_chain_on_squarefree(self):
        chain = SturmChain((X - 1) * (X - 2) * (X - 3))
        assert chain.roots_in(Fraction(0), Fraction(3)) == 3
        assert chain.roots_in(Fraction(1), Fraction(3)) == 2

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            RootCounter(IntPolynomial())

    def test_nested_threshold(self):
        m = ALPHA.minimal_polynomial()
        rc = RootCounter(m)
        assert rc.count_equal(ALPHA) == 1
        assert rc.count_above(ALPHA) == 0
        assert rc.count_above(Fraction(0)) == 1
        assert isinstance(ALPHA, NestedRadical)
