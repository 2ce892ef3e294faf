"""Exact linear algebra over a field (Fraction or RatFunc entries).

Vectors are tuples of field elements.  A :class:`Subspace` keeps a reduced
row echelon basis so membership and equality are exact and canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row_r = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int, zero=Fraction(0), one=Fraction(1)):
    """Basis of {x : matrix @ x = 0}, one vector per free column, in column order."""
    red, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [zero] * ncols
        v[fcol] = one
        for row, pc in zip(red, pivots):
            if row[fcol]:
                v[pc] = -row[fcol]
        basis.append(tuple(v))
    return basis


def transpose(m: Sequence[Sequence]) -> list[tuple]:
    return [tuple(col) for col in zip(*m)] if m else []


@dataclass
class Subspace:
    """Subspace of K^n with an incrementally maintained RREF basis."""

    n: int
    rows: list[tuple] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)

    @classmethod
    def spanned_by(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        s = cls(n)
        for v in vectors:
            s.add(v)
        return s

    @classmethod
    def full(cls, n: int) -> "Subspace":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, [tuple(one if j == i else zero for j in range(n)) for i in range(n)],
                   list(range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.n:
            raise ValueError("vector length does not match ambient dimension")
        return not any(self.reduce(v))

    __contains__ = contains

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; returns True iff the subspace grew."""
        w = self.reduce(v)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        inv = 1 / w[pc]
        w = tuple(x * inv for x in w)
        # keep the basis fully reduced
        new_rows = []
        for row in self.rows:
            c = row[pc]
            new_rows.append(tuple(x - c * y for x, y in zip(row, w)) if c else row)
        new_rows.append(w)
        new_pivots = self.pivots + [pc]
        order = sorted(range(len(new_rows)), key=lambda i: new_pivots[i])
        self.rows = [new_rows[i] for i in order]
        self.pivots = [new_pivots[i] for i in order]
        return True

    def copy(self) -> "Subspace":
        return Subspace(self.n, list(self.rows), list(self.pivots))

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __add__(self, other: "Subspace") -> "Subspace":
        s = self.copy()
        for r in other.rows:
            s.add(r)
        return s

    def complement_witness(self, other: "Subspace"):
        """A basis vector of ``self`` not in ``other`` (None if self <= other)."""
        return next((r for r in self.rows if not other.contains(r)), None)
