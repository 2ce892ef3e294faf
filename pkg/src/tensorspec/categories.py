"""Finite presentations of Q-linear rigid tensor categories for the ideal calculus.

A backend exposes objects, a basis of every Hom space, coordinates, and the
operations compose / tensor / identity / trace.  Two backends exist: walled
Brauer diagrams at a fixed rational loop value, and free modules over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Sequence

from . import wbcat
from .wbcat import WBMorphism, loop_value


@dataclass(frozen=True)
class ProbeWindow:
    """Finitely many objects; ideal computations see the Hom spaces among them."""

    objects: tuple[Hashable, ...]

    def __contains__(self, obj) -> bool:
        return obj in self.objects

    def pairs(self) -> list[tuple]:
        return [(a, b) for a in self.objects for b in self.objects]

    def describe(self) -> list:
        return list(self.objects)


class WBCat:
    """Walled Brauer category with loop value t = alpha (a rational)."""

    name = "walled-brauer"

    def __init__(self, t):
        t = loop_value(t)
        if wbcat.is_generic(t):
            raise ValueError("ideal spans need a specialized loop value")
        self.t = t
        self.unit = ""

    def window(self, max_len: int) -> ProbeWindow:
        return ProbeWindow(tuple(wbcat.words_up_to(max_len)))

    def check_window(self, window: ProbeWindow):
        if self.unit not in window:
            raise ValueError("window must contain the unit object")
        for w in window.objects:
            if wbcat.dual(w) not in window:
                raise ValueError(f"window not closed under duals: {w!r}")

    def dual(self, x: str) -> str:
        return wbcat.dual(x)

    def tensor_obj(self, x: str, y: str) -> str:
        return x + y

    def dim(self, x: str, y: str) -> int:
        return wbcat.hom_dimension(x, y)

    def basis(self, x: str, y: str) -> list[WBMorphism]:
        return _wb_basis(x, y, self.t)

    def vec(self, f: WBMorphism) -> tuple:
        return f.to_vector()

    def mor(self, x: str, y: str, v: Sequence) -> WBMorphism:
        return WBMorphism.from_vector(x, y, v, self.t)

    def compose(self, g, f):
        return wbcat.compose(g, f)

    def tensor(self, f, g):
        return wbcat.tensor(f, g)

    def identity(self, x):
        return WBMorphism.identity(x, self.t)

    def trace(self, f) -> Fraction:
        return wbcat.trace(f)

    def scalar(self, f) -> Fraction:
        return f.scalar()

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def describe(self) -> str:
        return f"walled-brauer(t={self.t})"


@lru_cache(maxsize=None)
def _wb_basis(x: str, y: str, t: Fraction) -> list[WBMorphism]:
    return [WBMorphism(x, y, {m: 1}, t) for m in wbcat.enumerate_mates(x, y)]


@dataclass(frozen=True)
class Matrix:
    """A Q-linear map Q^source -> Q^target (rows = target)."""

    source: int
    target: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.target or any(len(r) != self.source for r in self.rows):
            raise ValueError("matrix shape does not match the declared ranks")

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)


class FreeModCat:
    """Finitely generated free Q-modules; objects are ranks, the unit is 1."""

    name = "free-modules"

    def __init__(self):
        self.unit = 1

    def window(self, max_rank: int) -> ProbeWindow:
        return ProbeWindow(tuple(range(1, max_rank + 1)))

    def check_window(self, window: ProbeWindow):
        if self.unit not in window:
            raise ValueError("window must contain the unit object")

    def dual(self, x: int) -> int:
        return x

    def tensor_obj(self, x: int, y: int) -> int:
        return x * y

    def dim(self, x: int, y: int) -> int:
        return x * y

    def basis(self, x: int, y: int) -> list[Matrix]:
        out = []
        for i in range(y):
            for j in range(x):
                out.append(Matrix(x, y, tuple(tuple(Fraction(int(a == i and b == j))
                                                    for b in range(x)) for a in range(y))))
        return out

    def vec(self, f: Matrix) -> tuple:
        return tuple(v for row in f.rows for v in row)

    def mor(self, x: int, y: int, v: Sequence) -> Matrix:
        v = [Fraction(a) for a in v]
        return Matrix(x, y, tuple(tuple(v[i * x:(i + 1) * x]) for i in range(y)))

    def compose(self, g: Matrix, f: Matrix) -> Matrix:
        if g.source != f.target:
            raise ValueError("rank mismatch in composition")
        rows = tuple(tuple(sum((g.rows[i][k] * f.rows[k][j] for k in range(f.target)),
                               Fraction(0)) for j in range(f.source)) for i in range(g.target))
        return Matrix(f.source, g.target, rows)

    def tensor(self, f: Matrix, g: Matrix) -> Matrix:
        rows = tuple(tuple(f.rows[i][j] * g.rows[k][l] for j in range(f.source)
                           for l in range(g.source))
                     for i in range(f.target) for k in range(g.target))
        return Matrix(f.source * g.source, f.target * g.target, rows)

    def identity(self, x: int) -> Matrix:
        return self.mor(x, x, [int(i == j) for i in range(x) for j in range(x)])

    def trace(self, f: Matrix) -> Fraction:
        return sum((f.rows[i][i] for i in range(f.source)), Fraction(0))

    def scalar(self, f: Matrix) -> Fraction:
        if f.source != 1 or f.target != 1:
            raise ValueError("not an endomorphism of the unit object")
        return f.rows[0][0]

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def describe(self) -> str:
        return "free-modules(Q)"
