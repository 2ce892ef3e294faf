"""Exact scalars: rationals, univariate polynomials over Q, rational functions.

Rationals are plain :class:`fractions.Fraction` values.  Polynomials are
dense and immutable; the variable is always called ``t`` (the loop
parameter of the walled Brauer category).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


def as_rational(x) -> Fraction:
    """Parse an int, Fraction or string like ``"3/4"`` into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Poly:
    """Dense polynomial in ``t`` with rational coefficients (ascending degree)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # constructors
    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Poly":
        return cls([0] * degree + [c])

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    # arithmetic
    @staticmethod
    def _lift(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return Poly._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        dg = other.degree
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if c:
                c = c / lead
                q[k - dg] = c
                for j, y in enumerate(other.coeffs):
                    rem[k - dg + j] -= c * y
        return Poly(q), Poly(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __floordiv__(self, other):
        return self.divmod(Poly._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(Poly._lift(other))[1]

    def __call__(self, alpha: Number) -> Fraction:
        return poly_eval(self, alpha)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: Poly, descending: bool = True) -> str:
    """Render like ``t^4 - t^2``; ``descending=False`` gives ascending order."""
    if p.is_zero():
        return "0"
    terms = [(k, c) for k, c in enumerate(p.coeffs) if c]
    if descending:
        terms.reverse()
    out = []
    for idx, (k, c) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = format_rational(mag)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def poly_eval(p: Poly, alpha: Number) -> Fraction:
    """Horner evaluation at an exact rational."""
    alpha = Fraction(alpha)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * alpha + c
    return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Element of Q(t), kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._lift(num)
        den = Poly.const(1) if den is None else Poly._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading()
        self.num, self.den = num * (1 / lead), den * (1 / lead)

    @staticmethod
    def _lift(x) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc(x)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = RatFunc._lift(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RatFunc._lift(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc._lift(other))

    def __rsub__(self, other):
        return RatFunc._lift(other) - self

    def __mul__(self, other):
        other = RatFunc._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc._lift(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc._lift(other) / self

    def __repr__(self):
        if self.den == 1:
            return f"RatFunc({format_poly(self.num)!r})"
        return f"RatFunc(({format_poly(self.num)})/({format_poly(self.den)}))"


def cofactor_det(m: Sequence[Sequence]):
    """Laplace expansion along the first row; the slow reference determinant."""
    n = len(m)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in (list(r) for r in m[1:])]
        term = m[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _check_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    return n


def poly_matrix_det(m: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Bareiss fraction-free elimination over Q[t].

    Every division performed is exact in Q[t], so no rational functions appear.
    """
    n = _check_square(m)
    if n == 0:
        return Poly.const(1)
    a = [[Poly._lift(x) for x in row] for row in m]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]).exact_div(prev)
            row_i[k] = Poly()
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def integer_det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix (exact, no fractions)."""
    n = _check_square(m)
    a = [list(map(int, row)) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def interpolate(points: Sequence[tuple[Number, Number]]) -> Poly:
    """Newton interpolation through exact points with distinct abscissae."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = Poly.const(coef[-1]) if n else Poly()
    for i in range(n - 2, -1, -1):
        result = result * Poly((-xs[i], 1)) + coef[i]
    return result


def monomial_matrix_det(exponents: Sequence[Sequence[int]]) -> Poly:
    """Determinant of the matrix ``[t^e_ij]`` by integer Bareiss at sample points.

    The degree is bounded by the sum of row maxima, so that many plus one
    evaluations pin the polynomial down exactly.  Used for large Gram matrices
    whose entries are monomials, where elimination over Q[t] is too slow.
    """
    n = _check_square(exponents)
    bound = sum(max(row) if row else 0 for row in exponents)
    samples = []
    for x in range(bound + 1):
        # Center the abscissae to keep the integers small.
        v = x - bound // 2
        samples.append((v, integer_det([[v ** e for e in row] for row in exponents])))
    return interpolate(samples) if n else Poly.const(1)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def integer_roots(p: Poly) -> tuple[frozenset[int], bool]:
    """Integer roots of ``p`` and whether *every* root of ``p`` is an integer.

    Roots are searched among divisors of the lowest nonzero coefficient after
    clearing denominators.  The second flag is decided by dividing out each
    root with multiplicity and testing whether the residual is constant.
    """
    if p.is_zero():
        raise ValueError("integer_roots of the zero polynomial")
    scale = reduce(math.lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * scale) for c in p.coeffs]
    low = next(k for k, c in enumerate(ints) if c)
    candidates = {0} if low > 0 else set()
    for d in _divisors(ints[low]):
        candidates.update((d, -d))
    roots = frozenset(r for r in candidates if poly_eval(p, r) == 0)
    residual = p
    for r in sorted(roots):
        linear = Poly((-r, 1))
        while True:
            q, rem = residual.divmod(linear)
            if rem:
                break
            residual = q
    return roots, residual.degree <= 0
