"""Evaluation functors F(p|q): walled Brauer diagrams -> super vector spaces.

L goes to V = Q^{p|q}; basis vectors 0..p-1 are even and p..p+q-1 odd.  The
dual basis of V* has the same parities.  Each diagram is evaluated as a
composite of elementary layers:

1. a braiding of the source factors putting through strands first (in
   target order) and every cap as an adjacent pair (V*, V);
2. evaluation V* (x) V -> Q, e^i (x) e_j -> delta_ij, on each such pair;
3. coevaluation Q -> V (x) V*, 1 -> sum_i e_i (x) e^i, once per cup;
4. a braiding into the target order.

Braidings carry the Koszul sign (-1) for each pair of odd factors whose
order is exchanged.  Evaluation with the factors the other way round picks
up (-1)^{|i|} through step 1, which is what makes a closed loop worth p - q.
All images are even maps, so the tensor product of two images is the plain
Kronecker product.  Functoriality is checked in the tests, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .linalg import Subspace
from .wbcat import (UP, WBMorphism, compose, enumerate_mates, is_generic, trace)

MAX_ENTRIES = 20000


class BudgetExceeded(RuntimeError):
    """A requested computation is larger than the configured desk-scale budget."""


def check_budget(p: int, q: int, *words: str, limit: int = MAX_ENTRIES):
    size = (p + q) ** sum(len(w) for w in words)
    if size > limit:
        raise BudgetExceeded(
            f"(p+q)^length = {p + q}^{sum(len(w) for w in words)} = {size} exceeds {limit}")


@dataclass
class SuperTensor:
    """Sparse matrix of a map V^{(x) source} -> V^{(x) target}.

    Keys are (target labels, source labels); slot variance is read off the
    words (u = V, d = V*).
    """

    p: int
    q: int
    source: str
    target: str
    entries: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.p + self.q

    def parity(self, labels: Sequence[int]) -> int:
        return sum(1 for x in labels if x >= self.p) % 2

    def basis(self, word: str) -> list[tuple[int, ...]]:
        return list(product(range(self.dim), repeat=len(word)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperTensor):
            return NotImplemented
        return (self.p, self.q, self.source, self.target) == \
            (other.p, other.q, other.source, other.target) and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "SuperTensor") -> "SuperTensor":
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SuperTensor(self.p, self.q, self.source, self.target, out)

    def scale(self, c) -> "SuperTensor":
        c = Fraction(c)
        if not c:
            return SuperTensor(self.p, self.q, self.source, self.target, {})
        return SuperTensor(self.p, self.q, self.source, self.target,
                           {k: v * c for k, v in self.entries.items()})

    def matmul(self, other: "SuperTensor") -> "SuperTensor":
        """self o other."""
        if other.target != self.source:
            raise ValueError("shape mismatch in composition")
        by_row: dict = {}
        for (b, a), v in other.entries.items():
            by_row.setdefault(b, []).append((a, v))
        out: dict = {}
        for (c, b), u in self.entries.items():
            for a, v in by_row.get(b, ()):
                key = (c, a)
                out[key] = out.get(key, 0) + u * v
        return SuperTensor(self.p, self.q, other.source, self.target,
                           {k: v for k, v in out.items() if v})

    def kron(self, other: "SuperTensor") -> "SuperTensor":
        out = {}
        for (b, a), u in self.entries.items():
            for (d, c), v in other.entries.items():
                out[(b + d, a + c)] = u * v
        return SuperTensor(self.p, self.q, self.source + other.source,
                           self.target + other.target, out)

    def supertrace(self) -> Fraction:
        if self.source != self.target:
            raise ValueError("supertrace of a non-endomorphism")
        total = Fraction(0)
        for (b, a), v in self.entries.items():
            if a == b:
                total += -v if self.parity(a) else v
        return total

    def vector(self) -> dict:
        return self.entries


def _koszul(labels: Sequence[int], order: Sequence[int], p: int) -> int:
    """Sign of reordering factors: new position k holds old factor order[k]."""
    sign = 1
    odd = [labels[i] >= p for i in order]
    for x in range(len(order)):
        if not odd[x]:
            continue
        for y in range(x + 1, len(order)):
            if odd[y] and order[x] > order[y]:
                sign = -sign
    return sign


def _layers(source: str, target: str, mate: Sequence[int]):
    """Split a diagram into (source order, cap count, cup list, target order)."""
    n = len(source)
    through = sorted(((i, mate[i] - n) for i in range(n) if mate[i] >= n), key=lambda e: e[1])
    caps = sorted((i, mate[i]) for i in range(n) if i < mate[i] < n)
    cups = sorted((j - n, mate[j] - n) for j in range(n, len(mate)) if n <= j < mate[j])
    order1 = [i for i, _ in through]
    for i, j in caps:
        down, up = (i, j) if source[i] != UP else (j, i)
        order1 += [down, up]
    # middle word after step 3: through strands then (up, down) per cup
    placement = [j for _, j in through]
    for j, k in cups:
        up, down = (j, k) if target[j] == UP else (k, j)
        placement += [up, down]
    return order1, len(caps), len(through), placement


def eval_diagram(source: str, target: str, mate: Sequence[int], p: int, q: int) -> dict:
    """Entries {(target labels, source labels): value} of one diagram's image."""
    order1, ncaps, nthrough, placement = _layers(source, target, mate)
    ncups = (len(placement) - nthrough) // 2
    dim = p + q
    out = {}
    for a in product(range(dim), repeat=len(source)):
        s1 = _koszul(a, order1, p)
        moved = [a[i] for i in order1]
        if any(moved[nthrough + 2 * k] != moved[nthrough + 2 * k + 1] for k in range(ncaps)):
            continue
        kept = moved[:nthrough]
        for cup_labels in product(range(dim), repeat=ncups):
            middle = list(kept)
            for lab in cup_labels:
                middle += [lab, lab]
            # factor k of the middle word lands at target position placement[k]
            b = [0] * len(target)
            for k, pos in enumerate(placement):
                b[pos] = middle[k]
            order4 = sorted(range(len(placement)), key=lambda k: placement[k])
            s4 = _koszul(middle, order4, p)
            key = (tuple(b), a)
            out[key] = out.get(key, 0) + s1 * s4
    return {k: Fraction(v) for k, v in out.items() if v}


def _specialized_coeffs(f: WBMorphism, p: int, q: int):
    alpha = Fraction(p - q)
    if is_generic(f.t):
        return {m: c(alpha) for m, c in f.terms.items()}
    if f.t != alpha:
        raise ValueError(f"morphism is specialized at t = {f.t}, but p - q = {alpha}")
    return f.terms


def eval_morphism(f: WBMorphism, p: int, q: int) -> SuperTensor:
    check_budget(p, q, f.source, f.target)
    coeffs = _specialized_coeffs(f, p, q)
    out = SuperTensor(p, q, f.source, f.target, {})
    for m, c in sorted(coeffs.items()):
        out = out + SuperTensor(p, q, f.source, f.target,
                                eval_diagram(f.source, f.target, m, p, q)).scale(c)
    return out


def kernel_basis(w: str, w2: str, p: int, q: int) -> list[tuple[Fraction, ...]]:
    """Exact basis (coordinates in the diagram basis) of the kernel of F(p|q)."""
    check_budget(p, q, w, w2)
    mates = enumerate_mates(w, w2)
    ncols = len(mates)
    if not ncols:
        return []
    columns = [eval_diagram(w, w2, m, p, q) for m in mates]
    rowspace = Subspace(ncols)
    keys = sorted(set().union(*columns))
    zero = Fraction(0)
    for key in keys:
        rowspace.add(tuple(col.get(key, zero) for col in columns))
        if rowspace.dim == ncols:
            return []
    pivots = set(rowspace.pivots)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(rowspace.rows, rowspace.pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def kernel_subspace(w: str, w2: str, p: int, q: int) -> Subspace:
    return Subspace.spanned_by(len(enumerate_mates(w, w2)), kernel_basis(w, w2, p, q))


def super_dimension(w: str, e: WBMorphism, p: int, q: int) -> tuple[int, int]:
    """(even|odd) dimensions of the image of the idempotent F(p|q)(e)."""
    if e.source != w or e.target != w:
        raise ValueError("e must be an endomorphism of w")
    alpha = Fraction(p - q)
    e_spec = e.specialize(alpha) if is_generic(e.t) else e
    if compose(e_spec, e_spec) != e_spec:
        raise ValueError("not an idempotent at t = p - q")
    img = eval_morphism(e_spec, p, q)
    cols = {0: [], 1: []}
    for a in img.basis(w):
        col = tuple(img.entries.get((b, a), 0) for b in img.basis(w))
        cols[img.parity(a)].append(col)
    even = Subspace.spanned_by(len(img.basis(w)), cols[0]).dim if cols[0] else 0
    odd = Subspace.spanned_by(len(img.basis(w)), cols[1]).dim if cols[1] else 0
    if even - odd != trace(e_spec):
        raise AssertionError("super-dimension disagrees with the categorical trace")
    return even, odd


def dimension(p: int, q: int, word: str) -> int:
    return (p + q) ** len(word)
