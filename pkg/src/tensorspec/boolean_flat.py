"""Finite products of fields, their Boolean algebras of idempotents, and the
ideal/idempotent correspondences that hold for absolutely flat rings.

Factor indices are 0-based throughout; the CLI prints them 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise ValueError(f"F_{self.p} is not a field")

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ValueError(f"{x} is not defined in F_{self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def contains(self, x) -> bool:
        if self.p:
            return isinstance(x, int) and 0 <= x < self.p
        return isinstance(x, (int, Fraction))

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p) if self.p else 1 / Fraction(x)

    def elements(self):
        """All elements of a finite field; raises for Q."""
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)

    def __str__(self):
        return f"F{self.p}" if self.p else "Q"


Q = Field(0)


@dataclass(frozen=True)
class ProductRing:
    factors: tuple[Field, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product ring needs at least one factor")

    @classmethod
    def power(cls, field: Field, k: int) -> "ProductRing":
        return cls((field,) * k)

    @classmethod
    def parse(cls, text: str) -> "ProductRing":
        """Parse descriptors like ``"Q^3"``, ``"F2xF3xF5"`` or ``"F2^2xQ"``."""
        factors = []
        for part in text.strip().lower().split("x"):
            m = re.fullmatch(r"\s*(q|f(\d+))\s*(?:\^\s*(\d+))?\s*", part)
            if not m:
                raise ValueError(f"bad ring descriptor {text!r}")
            field = Q if m.group(1) == "q" else Field(int(m.group(2)))
            factors.extend([field] * int(m.group(3) or 1))
        return cls(tuple(factors))

    @property
    def k(self) -> int:
        return len(self.factors)

    def __str__(self):
        return "x".join(map(str, self.factors))

    def element(self, coords: Sequence) -> tuple:
        if len(coords) != self.k:
            raise ValueError("wrong number of coordinates")
        return tuple(f(c) for f, c in zip(self.factors, coords))

    def zero(self) -> tuple:
        return self.element([0] * self.k)

    def one(self) -> tuple:
        return self.element([1] * self.k)

    def add(self, a, b) -> tuple:
        return tuple(f(x + y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a) -> tuple:
        return tuple(f(-x) for f, x in zip(self.factors, a))

    def mul(self, a, b) -> tuple:
        return tuple(f(x * y) for f, x, y in zip(self.factors, a, b))

    def idempotent(self, e: "BoolElem") -> tuple:
        return self.element([1 if i in e else 0 for i in range(self.k)])

    def finite_elements(self) -> Iterable[tuple]:
        """Every element; only for products of finite fields."""
        from itertools import product
        return product(*(f.elements() for f in self.factors))


@dataclass(frozen=True)
class BoolElem:
    """Idempotent of a k-fold product, stored as a bitmask of its support."""

    mask: int
    k: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.k:
            raise ValueError("support outside the factor range")

    @classmethod
    def of(cls, support: Iterable[int], k: int) -> "BoolElem":
        mask = 0
        for i in support:
            mask |= 1 << i
        return cls(mask, k)

    @classmethod
    def zero(cls, k: int) -> "BoolElem":
        return cls(0, k)

    @classmethod
    def one(cls, k: int) -> "BoolElem":
        return cls((1 << k) - 1, k)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i in range(self.k) if self.mask >> i & 1)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __bool__(self):
        return bool(self.mask)

    # Boolean ring: + is symmetric difference, * is intersection.
    def __add__(self, other: "BoolElem") -> "BoolElem":
        return BoolElem(self.mask ^ other.mask, self.k)

    __xor__ = __add__

    def __mul__(self, other: "BoolElem") -> "BoolElem":
        return BoolElem(self.mask & other.mask, self.k)

    __and__ = __mul__

    def __or__(self, other: "BoolElem") -> "BoolElem":
        return BoolElem(self.mask | other.mask, self.k)

    def complement(self) -> "BoolElem":
        return BoolElem.one(self.k) + self

    def __le__(self, other: "BoolElem") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return "{" + ",".join(str(i) for i in sorted(self.support)) + "}"


def all_bool_elems(k: int) -> list[BoolElem]:
    return [BoolElem(m, k) for m in range(1 << k)]


def orthogonalize(gens: Sequence[BoolElem]) -> tuple[list[BoolElem], BoolElem]:
    """Orthogonal generators of the Boolean ideal generated by ``gens``.

    Follows the inductive construction: with e_1..e_{n-1} already orthogonal,
    replace them by f_i = e_i e_n, g_i = e_i (1 + e_n) and add
    h = (1 + sum_j e_j) e_n.  Zero elements are dropped.  Returns the family
    and its sum, which generates the same ideal.
    """
    if not gens:
        raise ValueError("orthogonalize needs at least one generator")
    k = gens[0].k
    one = BoolElem.one(k)
    family = [gens[0]]
    for en in gens[1:]:
        f = [e * en for e in family]
        g = [e * (one + en) for e in family]
        total = BoolElem.zero(k)
        for e in family:
            total = total + e
        h = (one + total) * en
        family = f + g + [h]
    family = [e for e in family if e]
    principal = BoolElem.zero(k)
    for e in family:
        principal = principal + e
    return family, principal


def boolean_ideal_generated(gens: Iterable[BoolElem], k: int) -> frozenset[BoolElem]:
    """Brute-force closure: all a with a <= some finite join of generators."""
    gens = list(gens)
    joins = {BoolElem.zero(k)}
    for g in gens:
        joins |= {j | g for j in joins}
    return frozenset(a for a in all_bool_elems(k) if any(a <= j for j in joins))


def is_boolean_ideal(J: Iterable[BoolElem], k: int) -> bool:
    J = set(J)
    if not J:
        return False
    universe = all_bool_elems(k)
    for a in J:
        if any(a * b not in J for b in universe):
            return False
    for a, b in combinations(J, 2):
        if not a * b and a + b not in J:
            return False
    return True


@dataclass(frozen=True)
class RingIdeal:
    ring: ProductRing
    generators: tuple[tuple, ...] = ()

    @property
    def subset(self) -> frozenset[int]:
        """Canonical form: factors on which some generator is nonzero."""
        return frozenset(i for i in range(self.ring.k) if any(g[i] for g in self.generators))

    @classmethod
    def supported_on(cls, ring: ProductRing, subset: Iterable[int]) -> "RingIdeal":
        return cls(ring, (ring.idempotent(BoolElem.of(subset, ring.k)),))

    def __contains__(self, a) -> bool:
        s = self.subset
        return all(not a[i] for i in range(self.ring.k) if i not in s)

    def is_prime(self) -> bool:
        return len(self.subset) == self.ring.k - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingIdeal):
            return NotImplemented
        return self.ring == other.ring and self.subset == other.subset

    def __hash__(self):
        return hash((self.ring, self.subset))

    def __repr__(self):
        return f"RingIdeal({self.ring}, support={sorted(self.subset)})"


def ring_ideals(ring: ProductRing) -> list[RingIdeal]:
    return [RingIdeal.supported_on(ring, e.support) for e in all_bool_elems(ring.k)]


def prime_ideals(ring: ProductRing) -> list[RingIdeal]:
    """Maximal (= prime) ideals M_i = kernel of projection to factor i."""
    return [RingIdeal.supported_on(ring, set(range(ring.k)) - {i}) for i in range(ring.k)]


def idempotents_of_ideal(I: RingIdeal) -> frozenset[BoolElem]:
    """B(I): idempotents lying in I."""
    return frozenset(e for e in all_bool_elems(I.ring.k) if I.ring.idempotent(e) in I)


def ideal_of_idempotents(ring: ProductRing, J: Iterable[BoolElem]) -> RingIdeal:
    """The ring ideal generated by a Boolean ideal J."""
    J = frozenset(J)
    if not is_boolean_ideal(J, ring.k):
        raise ValueError("not an ideal of the Boolean algebra")
    return RingIdeal(ring, tuple(ring.idempotent(e) for e in sorted(J, key=lambda e: e.mask)))


@dataclass(frozen=True)
class ContIso:
    """a -> (M_i -> a mod M_i) from F^k onto functions on its k-point spectrum."""

    ring: ProductRing

    def __post_init__(self):
        if len(set(self.ring.factors)) != 1:
            raise ValueError("all factors must be the same field")

    @property
    def field(self) -> Field:
        return self.ring.factors[0]

    def __call__(self, a) -> tuple:
        return tuple(self.field(x) for x in a)

    def inverse(self, func: Sequence) -> tuple:
        """Sum over values v of v * e_v, e_v the idempotent of the fibre over v."""
        k = self.ring.k
        result = self.ring.zero()
        for v in sorted(set(func), key=str):
            fibre = BoolElem.of((i for i in range(k) if func[i] == v), k)
            scalar = self.ring.element([v] * k)
            result = self.ring.add(result, self.ring.mul(scalar, self.ring.idempotent(fibre)))
        return result


def cont_iso(ring: ProductRing) -> ContIso:
    return ContIso(ring)
