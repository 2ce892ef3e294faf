"""Walled Brauer diagrams: the free rigid symmetric tensor category on one object.

Objects are words over ``"u"`` (the generator L) and ``"d"`` (its dual).  A
diagram from ``w`` to ``w2`` is a perfect matching of the ``len(w) + len(w2)``
endpoints, numbered source positions first and then target positions, left
to right.  Allowed edges:

* source ``x`` -- target ``x`` (a through strand, same letter);
* source ``u`` -- source ``d`` (a cap);
* target ``u`` -- target ``d`` (a cup).

A diagram is stored as the involution ``mate`` on endpoint numbers.
Composing diagrams deletes closed loops, each costing a factor of the loop
parameter ``t``: the polynomial variable in the generic case, or a fixed
rational after specialization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .scalars import Poly, format_poly, format_rational
from .symgroup import GroupAlgElem, Permutation

UP, DOWN = "u", "d"
Coeff = Union[Fraction, Poly]
LoopValue = Union[Fraction, Poly]

GENERIC = Poly.t()


def parse_word(text: str) -> str:
    text = text.strip().lower()
    if text in ("", "1", "e", "empty", '""'):
        return ""
    if set(text) - {UP, DOWN}:
        raise ValueError(f"words are strings over u/d, got {text!r}")
    return text


def flip(letter: str) -> str:
    return DOWN if letter == UP else UP


def dual(w: str) -> str:
    """Dual object: reverse the word and swap u and d."""
    return "".join(flip(x) for x in reversed(w))


def balance(w: str) -> int:
    return w.count(UP) - w.count(DOWN)


def words_up_to(length: int) -> list[str]:
    """All words of length <= ``length`` (shortlex order)."""
    out = [""]
    layer = [""]
    for _ in range(length):
        layer = [w + x for w in layer for x in (UP, DOWN)]
        out.extend(layer)
    return out


def _edge_ok(letters: str, n_src: int, i: int, j: int) -> bool:
    same_side = (i < n_src) == (j < n_src)
    return (letters[i] != letters[j]) if same_side else (letters[i] == letters[j])


@lru_cache(maxsize=None)
def enumerate_mates(w: str, w2: str) -> tuple[tuple[int, ...], ...]:
    """All diagram matchings w -> w2 in canonical (lexicographic) order."""
    if balance(w) != balance(w2):
        return ()
    letters = w + w2
    n, total = len(w), len(w) + len(w2)
    mate = [-1] * total
    out = []

    def rec():
        i = next((k for k in range(total) if mate[k] < 0), None)
        if i is None:
            out.append(tuple(mate))
            return
        for j in range(i + 1, total):
            if mate[j] < 0 and _edge_ok(letters, n, i, j):
                mate[i], mate[j] = j, i
                rec()
                mate[i] = mate[j] = -1

    rec()
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def basis_index(w: str, w2: str) -> Mapping[tuple[int, ...], int]:
    return {m: k for k, m in enumerate(enumerate_mates(w, w2))}


@dataclass(frozen=True)
class WBDiagram:
    source: str
    target: str
    mate: tuple[int, ...]

    def __post_init__(self):
        letters = self.source + self.target
        n = len(self.source)
        if len(self.mate) != len(letters):
            raise ValueError("matching has the wrong number of endpoints")
        for i, j in enumerate(self.mate):
            if not (0 <= j < len(letters)) or j == i or self.mate[j] != i:
                raise ValueError("not a perfect matching")
            if not _edge_ok(letters, n, i, j):
                raise ValueError(f"edge {i}-{j} violates the orientation rules")

    def edges(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, j in enumerate(self.mate) if i < j)


def enumerate_diagrams(w: str, w2: str) -> list[WBDiagram]:
    return [WBDiagram(w, w2, m) for m in enumerate_mates(w, w2)]


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@lru_cache(maxsize=1 << 20)
def compose_mates(gm: tuple[int, ...], fm: tuple[int, ...], a: int, b: int, c: int):
    """Stack f: A -> B under g: B -> C.  Returns (matching of A -> C, loops).

    Vertex numbering: A = 0..a-1, C = a..a+c-1, the shared word B after that.
    """
    mid = a + c
    uf = _UnionFind(a + c + b)

    def fvert(x):  # f endpoint -> vertex
        return x if x < a else mid + (x - a)

    def gvert(y):  # g endpoint -> vertex
        return mid + y if y < b else a + (y - b)

    for x, y in enumerate(fm):
        if x < y:
            uf.union(fvert(x), fvert(y))
    for x, y in enumerate(gm):
        if x < y:
            uf.union(gvert(x), gvert(y))
    ends: dict[int, list[int]] = {}
    for v in range(mid):
        ends.setdefault(uf.find(v), []).append(v)
    mate = [0] * mid
    for pair in ends.values():
        p, q = pair
        mate[p], mate[q] = q, p
    loops = len({uf.find(v) for v in range(mid, mid + b)} - set(ends))
    return tuple(mate), loops


def closure_loops(mate: tuple[int, ...], n: int) -> int:
    """Cycles formed by joining source i to target i in an endomorphism diagram."""
    uf = _UnionFind(2 * n)
    for x, y in enumerate(mate):
        if x < y:
            uf.union(x, y)
    for i in range(n):
        uf.union(i, n + i)
    return len({uf.find(v) for v in range(2 * n)})


def _same_variant(p: LoopValue, q: LoopValue) -> bool:
    if isinstance(p, Poly) != isinstance(q, Poly):
        return False
    return p == q


def loop_value(t) -> LoopValue:
    """``"generic"``/None -> the variable t, otherwise the rational alpha."""
    if t is None or (isinstance(t, str) and t.strip().lower() == "generic"):
        return GENERIC
    if isinstance(t, Poly):
        return t
    return Fraction(t)


def is_generic(t: LoopValue) -> bool:
    return isinstance(t, Poly)


class WBMorphism:
    """Formal linear combination of diagrams ``source -> target``.

    ``t`` is the loop value: :data:`GENERIC` (coefficients in Q[t]) or a
    rational alpha (coefficients in Q).  Morphisms with different loop values
    never mix.
    """

    __slots__ = ("source", "target", "terms", "t")

    def __init__(self, source: str, target: str, terms: Mapping[tuple[int, ...], Coeff] = None,
                 t=GENERIC):
        self.source = source
        self.target = target
        self.t = loop_value(t)
        zero = self.zero_scalar()
        self.terms: dict[tuple[int, ...], Coeff] = {}
        for m, c in (terms or {}).items():
            c = zero + c
            if c:
                self.terms[m] = c

    def zero_scalar(self) -> Coeff:
        return Poly() if is_generic(self.t) else Fraction(0)

    # constructors
    @classmethod
    def from_diagram(cls, d: WBDiagram, t=GENERIC, coeff=1) -> "WBMorphism":
        return cls(d.source, d.target, {d.mate: coeff}, t)

    @classmethod
    def zero(cls, w: str, w2: str, t=GENERIC) -> "WBMorphism":
        return cls(w, w2, {}, t)

    @classmethod
    def identity(cls, w: str, t=GENERIC) -> "WBMorphism":
        n = len(w)
        mate = tuple(list(range(n, 2 * n)) + list(range(n)))
        return cls(w, w, {mate: 1}, t)

    @classmethod
    def from_vector(cls, w: str, w2: str, vec: Sequence, t=GENERIC) -> "WBMorphism":
        mates = enumerate_mates(w, w2)
        if len(vec) != len(mates):
            raise ValueError("vector length does not match the hom-space dimension")
        return cls(w, w2, dict(zip(mates, vec)), t)

    # linear structure
    def _check(self, other: "WBMorphism"):
        if not _same_variant(self.t, other.t):
            raise ValueError("cannot mix morphisms with different loop values")

    def __add__(self, other: "WBMorphism") -> "WBMorphism":
        self._check(other)
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("adding morphisms between different objects")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return WBMorphism(self.source, self.target, out, self.t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WBMorphism":
        return WBMorphism(self.source, self.target,
                          {m: v * c for m, v in self.terms.items()}, self.t)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, WBMorphism):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) \
            and _same_variant(self.t, other.t) and self.terms == other.terms

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.terms))))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, d) -> Coeff:
        mate = d.mate if isinstance(d, WBDiagram) else tuple(d)
        return self.terms.get(mate, self.zero_scalar())

    def diagrams(self) -> list[WBDiagram]:
        return [WBDiagram(self.source, self.target, m) for m in sorted(self.terms)]

    def to_vector(self) -> tuple:
        zero = self.zero_scalar()
        return tuple(self.terms.get(m, zero) for m in enumerate_mates(self.source, self.target))

    def specialize(self, alpha) -> "WBMorphism":
        """Substitute t = alpha in a generic morphism."""
        if not is_generic(self.t):
            raise ValueError("morphism is already specialized")
        alpha = Fraction(alpha)
        return WBMorphism(self.source, self.target,
                          {m: c(alpha) for m, c in self.terms.items()}, alpha)

    def scalar(self) -> Coeff:
        """The coefficient of the empty diagram, for endomorphisms of the unit."""
        if self.source or self.target:
            raise ValueError("not an endomorphism of the unit object")
        return self.terms.get((), self.zero_scalar())

    def __repr__(self):
        body = " + ".join(f"({_fmt(c)})*{d.edges()}" for d, c in
                          ((WBDiagram(self.source, self.target, m), c)
                           for m, c in sorted(self.terms.items())))
        return f"WBMorphism({self.source!r} -> {self.target!r}: {body or '0'})"

    def to_json(self) -> list:
        """Canonical form: [[edge list, coefficient], ...] sorted by edge list."""
        rows = [[WBDiagram(self.source, self.target, m).edges(), _fmt(c)]
                for m, c in self.terms.items()]
        return sorted(rows)


def _fmt(c: Coeff) -> str:
    return format_poly(c) if isinstance(c, Poly) else format_rational(c)


def morphism_to_json(f: WBMorphism) -> str:
    return json.dumps({"source": f.source, "target": f.target,
                       "t": _fmt(f.t), "terms": f.to_json()}, sort_keys=True)


# categorical operations

def compose(g: WBMorphism, f: WBMorphism) -> WBMorphism:
    """g o f for f: A -> B and g: B -> C."""
    g._check(f)
    if g.source != f.target:
        raise ValueError(f"cannot compose: {f.target!r} != {g.source!r}")
    a, b, c = len(f.source), len(f.target), len(g.target)
    out: dict[tuple[int, ...], Coeff] = {}
    t = f.t
    powers = {0: 1}
    for gm, gc in g.terms.items():
        for fm, fc in f.terms.items():
            mate, loops = compose_mates(gm, fm, a, b, c)
            if loops not in powers:
                powers[loops] = t ** loops
            v = gc * fc * powers[loops]
            out[mate] = out[mate] + v if mate in out else v
    return WBMorphism(f.source, g.target, out, t)


def _tensor_mates(fm, gm, a, b, a2, b2) -> tuple[int, ...]:
    def fpos(x):
        return x if x < a else a + a2 + (x - a)

    def gpos(y):
        return a + y if y < a2 else a + a2 + b + (y - a2)

    mate = [0] * (a + a2 + b + b2)
    for x, y in enumerate(fm):
        mate[fpos(x)] = fpos(y)
    for x, y in enumerate(gm):
        mate[gpos(x)] = gpos(y)
    return tuple(mate)


def tensor(f: WBMorphism, g: WBMorphism) -> WBMorphism:
    """Juxtaposition: f on the left, g on the right."""
    f._check(g)
    a, b, a2, b2 = len(f.source), len(f.target), len(g.source), len(g.target)
    out: dict[tuple[int, ...], Coeff] = {}
    for fm, fc in f.terms.items():
        for gm, gc in g.terms.items():
            out[_tensor_mates(fm, gm, a, b, a2, b2)] = fc * gc
    return WBMorphism(f.source + g.source, f.target + g.target, out, f.t)


def tensor_power(f: WBMorphism, n: int) -> WBMorphism:
    out = WBMorphism.identity("", f.t)
    for _ in range(n):
        out = tensor(out, f)
    return out


def cup(w: str, t=GENERIC) -> WBMorphism:
    """Coevaluation 1 -> w + dual(w), nested: position i joins 2n-1-i."""
    n = len(w)
    mate = tuple(2 * n - 1 - i for i in range(2 * n))
    return WBMorphism("", w + dual(w), {mate: 1}, t)


def cap(w: str, t=GENERIC) -> WBMorphism:
    """Evaluation w + dual(w) -> 1, nested."""
    n = len(w)
    mate = tuple(2 * n - 1 - i for i in range(2 * n))
    return WBMorphism(w + dual(w), "", {mate: 1}, t)


def _bend_positions(n: int) -> list[int]:
    # old source position i -> new target position n-1-i (in dual(w))
    return [n - 1 - i for i in range(n)]


def adjoint_name(f: WBMorphism) -> WBMorphism:
    """Bend the source strands up on the left: w -> w2 becomes 1 -> dual(w) w2."""
    n = len(f.source)
    pos = _bend_positions(n)

    def new(x):
        return pos[x] if x < n else x

    out = {}
    for m, c in f.terms.items():
        mate = [0] * len(m)
        for x, y in enumerate(m):
            mate[new(x)] = new(y)
        out[tuple(mate)] = c
    return WBMorphism("", dual(f.source) + f.target, out, f.t)


def unbend(g: WBMorphism, w: str) -> WBMorphism:
    """Inverse of :func:`adjoint_name`: 1 -> dual(w) w2 back to w -> w2."""
    n = len(w)
    if g.source or not g.target.startswith(dual(w)):
        raise ValueError("morphism is not the name of a map out of w")
    inv = {p: i for i, p in enumerate(_bend_positions(n))}

    def old(x):
        return inv[x] if x < n else x

    out = {}
    for m, c in g.terms.items():
        mate = [0] * len(m)
        for x, y in enumerate(m):
            mate[old(x)] = old(y)
        out[tuple(mate)] = c
    return WBMorphism(w, g.target[n:], out, g.t)


def trace(f: WBMorphism) -> Coeff:
    """Close each source i to target i and count the cycles of every diagram."""
    if f.source != f.target:
        raise ValueError("trace of a non-endomorphism")
    n = len(f.source)
    total = f.zero_scalar()
    for m, c in f.terms.items():
        total = total + c * f.t ** closure_loops(m, n)
    return total


def categorical_trace(f: WBMorphism) -> Coeff:
    """cap o (f (x) id_dual) o cup, computed by composition only."""
    if f.source != f.target:
        raise ValueError("trace of a non-endomorphism")
    w = f.source
    closed = compose(cap(w, f.t), compose(tensor(f, WBMorphism.identity(dual(w), f.t)),
                                          cup(w, f.t)))
    return closed.scalar()


def permutation_morphism(w: str, sigma: Permutation, t=GENERIC) -> WBMorphism:
    """Through-strand diagram sending source i to target sigma(i) (a braiding)."""
    n = len(w)
    if sigma.r != n:
        raise ValueError("permutation size does not match the word")
    w2 = [""] * n
    for i in range(n):
        w2[sigma(i)] = w[i]
    mate = [0] * (2 * n)
    for i in range(n):
        mate[i] = n + sigma(i)
        mate[n + sigma(i)] = i
    return WBMorphism(w, "".join(w2), {tuple(mate): 1}, t)


def embed_perm(sigma: Permutation, r: int | None = None, t=GENERIC) -> WBMorphism:
    r = sigma.r if r is None else r
    if sigma.r != r:
        raise ValueError("permutation is not in S_r")
    return permutation_morphism(UP * r, sigma, t)


def embed_group_alg(x: GroupAlgElem, t=GENERIC) -> WBMorphism:
    out = WBMorphism.zero(UP * x.r, UP * x.r, t)
    for sigma, c in x.items():
        out = out + embed_perm(sigma, x.r, t).scale(c)
    return out


def swap(t=GENERIC) -> WBMorphism:
    return embed_perm(Permutation((1, 0)), 2, t)


def twisted_power_trace(power_traces: Sequence, x: GroupAlgElem):
    """Sum over sigma of x_sigma * prod over cycles c of sigma of tr(f^len(c)).

    ``power_traces[k-1]`` is tr(f^k).  This is tr(sigma^-1 o f^{(x) r}) extended
    linearly in sigma.
    """
    if len(power_traces) < x.r:
        raise ValueError(f"need power traces up to {x.r}, got {len(power_traces)}")
    total = 0
    for sigma, c in x.items():
        term = c
        for cyc in sigma.cycles():
            term = term * power_traces[len(cyc) - 1]
        total = total + term
    return total


def hom_dimension(w: str, w2: str) -> int:
    return len(enumerate_mates(w, w2))
