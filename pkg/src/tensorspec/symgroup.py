"""Partitions, permutations, the group algebra Q[S_r] and Young symmetrizers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("partition parts must be weakly decreasing")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def r(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self):
        return ",".join(map(str, self.parts))


def partitions(r: int) -> list[Partition]:
    """All partitions of r, in reverse lexicographic order."""
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(Partition(tuple(acc)))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(r, r, [])
    return out


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..r-1}; ``images[i]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls(tuple(range(r)))

    @classmethod
    def from_cycles(cls, r: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Cycles given with 1-based entries, as in (1 2 3)."""
        img = list(range(r))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def r(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self * other = self o other (apply other first)."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.r
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.r):
            if i not in seen:
                cyc, j = [], i
                while j not in seen:
                    seen.add(j)
                    cyc.append(j)
                    j = self.images[j]
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.r))


def symmetric_group(r: int) -> list[Permutation]:
    return [Permutation(p) for p in permutations(range(r))]


def cycle_type(sigma: Permutation) -> Partition:
    return Partition(tuple(sorted((len(c) for c in sigma.cycles()), reverse=True)))


class GroupAlgElem:
    """Sparse element of Q[S_r]."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r: int, coeffs: Mapping[Permutation, Fraction] | None = None):
        self.r = r
        self.coeffs: dict[Permutation, Fraction] = {}
        for p, c in (coeffs or {}).items():
            if p.r != r:
                raise ValueError("permutation of the wrong degree")
            c = Fraction(c)
            if c:
                self.coeffs[p] = c

    @classmethod
    def of(cls, sigma: Permutation, c=1) -> "GroupAlgElem":
        return cls(sigma.r, {sigma: c})

    def __add__(self, other: "GroupAlgElem") -> "GroupAlgElem":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return GroupAlgElem(self.r, out)

    def __sub__(self, other: "GroupAlgElem") -> "GroupAlgElem":
        return self + other.scale(-1)

    def scale(self, c) -> "GroupAlgElem":
        return GroupAlgElem(self.r, {p: v * c for p, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Permutation, Fraction] = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                pq = p * q
                out[pq] = out.get(pq, 0) + a * b
        return GroupAlgElem(self.r, out)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgElem) and self.r == other.r and self.coeffs == other.coeffs

    def coefficient(self, sigma: Permutation) -> Fraction:
        return self.coeffs.get(sigma, Fraction(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].images)

    def conjugate_by(self, g: Permutation) -> "GroupAlgElem":
        ginv = g.inverse()
        return GroupAlgElem(self.r, {g * p * ginv: c for p, c in self.coeffs.items()})

    def __repr__(self):
        terms = " + ".join(f"{c}*{p.images}" for p, c in self.items())
        return f"GroupAlgElem({terms or '0'})"


def canonical_tableau(lam: Partition) -> list[list[int]]:
    """Rows filled with 0..r-1 left to right, top to bottom."""
    rows, k = [], 0
    for p in lam.parts:
        rows.append(list(range(k, k + p)))
        k += p
    return rows


def _subgroup_of_blocks(r: int, blocks: Sequence[Sequence[int]]) -> list[Permutation]:
    """Permutations preserving each block setwise (a product of symmetric groups)."""
    factors = [list(permutations(b)) for b in blocks]
    out = []
    for choice in product(*factors):
        img = list(range(r))
        for block, perm in zip(blocks, choice):
            for a, b in zip(block, perm):
                img[a] = b
        out.append(Permutation(tuple(img)))
    return out


def row_group(lam: Partition, tableau=None) -> list[Permutation]:
    tableau = tableau or canonical_tableau(lam)
    return _subgroup_of_blocks(lam.r, tableau)


def column_group(lam: Partition, tableau=None) -> list[Permutation]:
    tableau = tableau or canonical_tableau(lam)
    cols = [[row[j] for row in tableau if len(row) > j] for j in range(len(tableau[0]))] \
        if tableau else []
    return _subgroup_of_blocks(lam.r, cols)


def young_symmetrizer(lam: Partition, tableau=None) -> GroupAlgElem:
    """c = a * b, a the row sum and b the signed column sum."""
    r = lam.r
    a = GroupAlgElem(r, {p: 1 for p in row_group(lam, tableau)})
    b = GroupAlgElem(r, {q: q.sign() for q in column_group(lam, tableau)})
    return a * b


def hook_dimension(lam: Partition) -> int:
    """Number of standard Young tableaux, r! / product of hook lengths."""
    conj = lam.conjugate().parts
    hooks = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.r) // hooks
