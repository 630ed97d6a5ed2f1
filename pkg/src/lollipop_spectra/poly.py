"""Integer polynomials and exact values used as evaluation points.

:class:`IntPolynomial` stores coefficients constant-term first.  Evaluation
points are rationals (``Fraction``), :class:`QuadraticValue` numbers
``a + b*sqrt(d)`` and :class:`NestedRadical` numbers ``sqrt(r)`` with ``r`` a
positive :class:`QuadraticValue` (this covers ``sqrt(2 + 2*sqrt(2))``).
Every sign returned here is exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class UndecidedSignError(ArithmeticError):
    """Interval evaluation could not separate a value from zero."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class IntPolynomial:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def const(cls, value: int) -> IntPolynomial:
        return cls((value,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == IntPolynomial((other,))._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._c)})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    # -- ring operations --------------------------------------------------
    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self._c)

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        o = _as_poly(other)
        n = max(len(self._c), len(o._c))
        return IntPolynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: int) -> IntPolynomial:
        return _as_poly(other) - self

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self._c)
        a, b = self._c, other._c
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPolynomial:
        out = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, t: int) -> IntPolynomial:
        """Multiply by ``X**t``."""
        return IntPolynomial((0,) * t + self._c) if self._c else self

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self._c) if i)

    def content(self) -> int:
        g = 0
        for c in self._c:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Primitive part with positive leading coefficient."""
        if not self._c:
            return self
        g = self.content()
        if self._c[-1] < 0:
            g = -g
        return IntPolynomial(c // g for c in self._c)

    def exact_div(self, other: IntPolynomial) -> IntPolynomial:
        """Quotient ``self / other``; raises if the division is not exact over Z."""
        q, r = self.divmod_exact(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divmod_exact(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division over Z; every step must divide by the leading coefficient exactly."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        d, lc = other.degree, other.leading
        if len(rem) - 1 < d:
            return IntPolynomial(), self
        quo = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q, r = divmod(c, lc)
            if r:
                raise ArithmeticError("inexact leading-coefficient division")
            quo[i - d] = q
            for j, oc in enumerate(other._c):
                rem[i - d + j] -= q * oc
        return IntPolynomial(quo), IntPolynomial(rem)

    def pseudo_rem(self, other: IntPolynomial) -> IntPolynomial:
        """``lc(other)**(deg self - deg other + 1) * self mod other``."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero")
        rem = list(self._c)
        d, lc = other.degree, other.leading
        oc = other._c
        delta = len(rem) - 1 - d
        if delta < 0:
            return self
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            for j in range(i + 1):
                rem[j] *= lc
            if c:
                for j in range(d + 1):
                    rem[i - d + j] -= c * oc[j]
            rem.pop()
        return IntPolynomial(rem)

    def trailing_zeros(self) -> int:
        """Largest ``t`` with ``X**t`` dividing self (0 for the zero polynomial)."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return 0

    # -- evaluation ------------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def eval_rational(self, q: Rational) -> Fraction:
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        return Fraction(self.eval_homogeneous(num, den), den ** max(self.degree, 0))

    def eval_homogeneous(self, num: int, den: int) -> int:
        """``den**deg * p(num/den)`` as an integer (``den > 0``)."""
        acc = 0
        scale = 1
        for c in reversed(self._c):
            acc = acc * num + c * scale
            scale *= den
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of ``p(x)`` for a rational or an exact algebraic value."""
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return _sign(self.eval_homogeneous(x.numerator, x.denominator))
        return x.sign_of(self)

    def taylor_shift(self, num: int, den: int = 1) -> IntPolynomial:
        """Integer polynomial whose positive roots are ``den*r - num`` for roots ``r``.

        This is ``sum c_i (Z + num)^i den^(deg - i)``.
        """
        n = self.degree
        if n < 0:
            return self
        c = [self._c[i] * den ** (n - i) for i in range(n + 1)]
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                c[j] += num * c[j + 1]
        return IntPolynomial(c)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> str:
        return json.dumps([str(c) for c in self._c])

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        return cls(int(s) for s in json.loads(text))


def _as_poly(x: IntPolynomial | int) -> IntPolynomial:
    return x if isinstance(x, IntPolynomial) else IntPolynomial((x,))


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z[X] (positive leading coefficient)."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b)
        a, b = b, r.primitive()
    if a.degree == 0:
        return IntPolynomial((1,))
    return a


def squarefree_decomposition(p: IntPolynomial) -> list[IntPolynomial]:
    """Yun's algorithm: primitive ``f_1, f_2, ...`` with ``p ~ prod f_i**i``."""
    if p.degree <= 0:
        return []
    f = p.primitive()
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    out = []
    d = c - b.derivative()
    while b.degree > 0:
        g = poly_gcd(b, d) if not d.is_zero() else b
        out.append(g)
        b = b.exact_div(g)
        c = d.exact_div(g) if not d.is_zero() else d
        d = c - b.derivative()
    return out


# -- exact algebraic values --------------------------------------------------

def squarefree_split(n: int) -> tuple[int, int]:
    """``n = s**2 * d`` with ``d`` square-free; returns ``(s, d)``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    s, d = 1, n
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


def _sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits``."""
    if q < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << bits
    # floor(sqrt(q) * scale) = isqrt(floor(q * scale^2)) up to one unit
    t = (q.numerator * scale * scale) // q.denominator
    r = math.isqrt(t)
    return Fraction(r, scale), Fraction(r + 1, scale)


@dataclass(frozen=True)
class QuadraticValue:
    """The real number ``a + b*sqrt(d)`` with ``d`` square-free."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self) -> None:
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        s, d = squarefree_split(d)
        b *= s
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def sqrt(cls, n: int) -> QuadraticValue:
        return cls(0, 1, n)

    @classmethod
    def of(cls, x) -> QuadraticValue:
        return x if isinstance(x, QuadraticValue) else cls(Fraction(x))

    def _join(self, other) -> tuple[QuadraticValue, QuadraticValue, int]:
        o = QuadraticValue.of(other)
        if self.b and o.b and self.d != o.d:
            raise ValueError(f"cannot combine sqrt({self.d}) and sqrt({o.d})")
        return self, o, self.d if self.b else o.d

    def __add__(self, other) -> QuadraticValue:
        s, o, d = self._join(other)
        return QuadraticValue(s.a + o.a, s.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> QuadraticValue:
        return QuadraticValue(-self.a, -self.b, self.d)

    def __sub__(self, other) -> QuadraticValue:
        return self + (-QuadraticValue.of(other))

    def __rsub__(self, other) -> QuadraticValue:
        return QuadraticValue.of(other) - self

    def __mul__(self, other) -> QuadraticValue:
        s, o, d = self._join(other)
        return QuadraticValue(s.a * o.a + s.b * o.b * d, s.a * o.b + s.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticValue:
        return QuadraticValue(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other) -> QuadraticValue:
        o = QuadraticValue.of(other)
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero quadratic value")
        num = self * o.conjugate()
        return QuadraticValue(num.a / nrm, num.b / nrm, num.d)

    def __rtruediv__(self, other) -> QuadraticValue:
        return QuadraticValue.of(other) / self

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        return sa * _sign(self.a * self.a - self.b * self.b * self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def bracket(self, bits: int) -> tuple[Fraction, Fraction]:
        if self.b == 0:
            return self.a, self.a
        lo, hi = _sqrt_bounds(Fraction(self.d), bits + max(0, abs(self.b).numerator.bit_length()))
        lo, hi = self.b * lo, self.b * hi
        if lo > hi:
            lo, hi = hi, lo
        return self.a + lo, self.a + hi

    def eval_poly(self, p: IntPolynomial) -> QuadraticValue:
        acc = QuadraticValue(0)
        for c in reversed(p.coeffs):
            acc = acc * self + c
        return acc

    def sign_of(self, p: IntPolynomial) -> int:
        return self.eval_poly(p).sign()

    def minimal_polynomial(self) -> IntPolynomial:
        """Primitive integer minimal polynomial."""
        if self.b == 0:
            return IntPolynomial((-self.a.numerator, self.a.denominator))
        # (x - a)^2 - b^2 d, scaled to integers
        c0 = self.a * self.a - self.b * self.b * self.d
        c1 = -2 * self.a
        den = math.lcm(c0.denominator, c1.denominator)
        return IntPolynomial((int(c0 * den), int(c1 * den), den)).primitive()

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        rad = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        if self.a == 0:
            return rad if self.b > 0 else f"-{rad}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {rad}"


@dataclass(frozen=True)
class NestedRadical:
    """The positive number ``sqrt(r)`` for a positive :class:`QuadraticValue` ``r``."""

    radicand: QuadraticValue

    def __post_init__(self) -> None:
        if self.radicand.sign() <= 0:
            raise ValueError("radicand must be positive")

    def sign_of(self, p: IntPolynomial) -> int:
        # p(x) = E(x^2) + x*O(x^2)
        r = self.radicand
        even = IntPolynomial(p.coeffs[0::2])
        odd = IntPolynomial(p.coeffs[1::2])
        e, o = r.eval_poly(even), r.eval_poly(odd)
        se, so = e.sign(), o.sign()
        if so == 0:
            return se
        if se == 0 or se == so:
            return so
        return se * (e * e - r * o * o).sign()

    def is_rational(self) -> bool:
        return False

    def __float__(self) -> float:
        return math.sqrt(float(self.radicand))

    def bracket(self, bits: int) -> tuple[Fraction, Fraction]:
        lo_r, hi_r = self.radicand.bracket(bits + 4)
        lo = _sqrt_bounds(max(lo_r, Fraction(0)), bits + 2)[0]
        hi = _sqrt_bounds(hi_r, bits + 2)[1]
        return lo, hi

    def minimal_polynomial(self) -> IntPolynomial:
        m = self.radicand.minimal_polynomial()
        # substitute x -> x^2
        c = [0] * (2 * len(m.coeffs) - 1)
        for i, v in enumerate(m.coeffs):
            c[2 * i] = v
        return IntPolynomial(c)

    def __str__(self) -> str:
        return f"sqrt({self.radicand})"


ALPHA = NestedRadical(QuadraticValue(2, 2, 2))
SQRT5 = QuadraticValue.sqrt(5)
FOUR_OVER_SQRT3 = QuadraticValue(0, Fraction(4, 3), 3)

Threshold = Union[int, Fraction, QuadraticValue, NestedRadical]


def as_exact(value) -> Threshold:
    """Normalize ints and Fractions; reject floats (they are not exact)."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError("thresholds must be exact (int, Fraction, QuadraticValue, NestedRadical)")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, QuadraticValue) and value.is_rational():
        return value.a
    return value


def bracket(value: Threshold, bits: int) -> tuple[Fraction, Fraction]:
    if isinstance(value, (int, Fraction)):
        v = Fraction(value)
        return v, v
    return value.bracket(bits)


def parse_threshold(text: str) -> Threshold:
    """``'2'``, ``'-3/4'``, ``'2.17'``, ``'sqrt5'``, ``'sqrt(5)'``, ``'alpha'``, ``'4/sqrt3'``."""
    t = text.strip().lower().replace(" ", "")
    if t == "alpha":
        return ALPHA
    if t in ("4/sqrt3", "4/sqrt(3)"):
        return FOUR_OVER_SQRT3
    for prefix in ("sqrt(", "sqrt"):
        if t.startswith(prefix):
            body = t[len(prefix):].rstrip(")")
            n = int(body)
            return as_exact(QuadraticValue.sqrt(n))
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse evaluation point {text!r}") from exc


# -- interval evaluation ------------------------------------------------------

def _imul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


def interval_eval(p: IntPolynomial, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p([lo, hi])`` by interval Horner."""
    acc = (Fraction(0), Fraction(0))
    x = (lo, hi)
    for c in reversed(p.coeffs):
        m = _imul(acc, x)
        acc = (m[0] + c, m[1] + c)
    return acc


def interval_sign(p: IntPolynomial, value: Threshold, start_bits: int = 32, max_bits: int = 256) -> int:
    """Sign of ``p(value)`` from dyadic enclosures with precision doubling.

    Raises :class:`UndecidedSignError` if the enclosure still contains zero
    at ``2**-max_bits`` (as happens when ``value`` is a root of ``p``).
    """
    bits = start_bits
    while True:
        lo, hi = bracket(value, bits)
        if lo == hi:
            return p.sign_at(lo)
        vlo, vhi = interval_eval(p, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        if bits >= max_bits:
            raise UndecidedSignError(f"sign of polynomial at {value} undecided at 2^-{max_bits}")
        bits = min(2 * bits, max_bits)


def eval_sign(p: IntPolynomial, value: Threshold, method: str = "exact") -> int:
    """Sign of ``p(value)``; ``method`` is ``'exact'`` or ``'interval'``."""
    value = as_exact(value)
    if method == "exact":
        return p.sign_at(value)
    if method == "interval":
        return interval_sign(p, value)
    raise ValueError(f"unknown sign method {method!r}")


def sign_variations(values: Sequence[int]) -> int:
    prev = 0
    count = 0
    for v in values:
        if v == 0:
            continue
        if prev and (v > 0) != (prev > 0):
            count += 1
        prev = v
    return count
