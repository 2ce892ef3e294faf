"""Presentations of small spectral spaces and spectral maps between them.

Two kinds of space are supported: finite posets (x <= y meaning y lies in
the closure of x) and the chain N u {oo} whose Zariski closed sets are the
whole space and the intervals [0, r].  Each carries either the Zariski
topology or its constructible (patch) refinement.  Everything is decided
from finite descriptions; nothing infinite is enumerated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import chain, combinations
from typing import Hashable, Iterable, Mapping, Union

ZARISKI = "zariski"
CONSTRUCTIBLE = "constructible"
INF = "inf"  # the point at infinity of the omega chain


@dataclass(frozen=True)
class FinitePoset:
    points: tuple[Hashable, ...]
    leq: frozenset[tuple[Hashable, Hashable]]
    topology: str = ZARISKI

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise ValueError("duplicate points")
        for a, b in self.leq:
            if a not in pts or b not in pts:
                raise ValueError(f"relation mentions unknown point {a!r} or {b!r}")
        for a in pts:
            if (a, a) not in self.leq:
                raise ValueError("relation is not reflexive")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise ValueError("relation is not antisymmetric")
            for c, d in self.leq:
                if b == c and (a, d) not in self.leq:
                    raise ValueError("relation is not transitive")
        if self.topology not in (ZARISKI, CONSTRUCTIBLE):
            raise ValueError(f"unknown topology {self.topology!r}")

    @classmethod
    def from_relations(cls, points: Iterable, relations: Iterable[tuple] = (),
                       topology: str = ZARISKI) -> "FinitePoset":
        """Build from generating relations a < b by reflexive-transitive closure."""
        points = tuple(points)
        leq = {(p, p) for p in points} | set(relations)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in list(product_pairs(leq)):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
        return cls(points, frozenset(leq), topology)

    @classmethod
    def discrete(cls, points: Iterable, topology: str = ZARISKI) -> "FinitePoset":
        return cls.from_relations(points, (), topology)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def up(self, a) -> frozenset:
        return frozenset(b for b in self.points if self.le(a, b))

    def closure(self, s: Iterable) -> frozenset:
        s = frozenset(s)
        if self.topology == CONSTRUCTIBLE:
            return s
        return frozenset(chain.from_iterable(self.up(a) for a in s))

    def closed_sets(self) -> list[frozenset]:
        subsets = (frozenset(c) for r in range(len(self.points) + 1)
                   for c in combinations(self.points, r))
        return [s for s in subsets if self.closure(s) == s]

    def is_hausdorff(self) -> bool:
        # finite T0 space: Hausdorff iff discrete
        return all(self.closure({p}) == {p} for p in self.points)

    def __str__(self):
        rels = sorted(f"{a}<{b}" for a, b in self.leq if a != b)
        return "poset:" + ",".join(rels or map(str, self.points))


def product_pairs(s):
    s = list(s)
    for x in s:
        for y in s:
            yield x, y


@dataclass(frozen=True)
class OmegaSubset:
    """Finite or cofinite subset of N, optionally together with the point oo.

    ``cofinite=False``: the N-part is ``members``.
    ``cofinite=True``: the N-part is N minus ``members``.
    """

    members: frozenset[int] = frozenset()
    cofinite: bool = False
    has_inf: bool = False

    @classmethod
    def interval(cls, r: int) -> "OmegaSubset":
        """[0, r]; r = -1 gives the empty set."""
        return cls(frozenset(range(r + 1)))

    @classmethod
    def whole(cls) -> "OmegaSubset":
        return cls(frozenset(), True, True)

    @classmethod
    def finite(cls, points: Iterable[Union[int, str]]) -> "OmegaSubset":
        points = set(points)
        has_inf = INF in points
        points.discard(INF)
        return cls(frozenset(points), False, has_inf)

    @classmethod
    def tail(cls, r: int, has_inf: bool = True) -> "OmegaSubset":
        """(r, oo): all n > r, plus oo if requested."""
        return cls(frozenset(range(r + 1)), True, has_inf)

    def __contains__(self, x) -> bool:
        if x == INF:
            return self.has_inf
        return (x in self.members) != self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.members and not self.has_inf

    def complement(self) -> "OmegaSubset":
        return OmegaSubset(self.members, not self.cofinite, not self.has_inf)

    def as_interval(self):
        """r if this is exactly [0, r] (r >= -1), else None."""
        if self.cofinite or self.has_inf:
            return None
        r = max(self.members, default=-1)
        return r if self.members == frozenset(range(r + 1)) else None


@dataclass(frozen=True)
class OmegaChain:
    topology: str = ZARISKI

    def __post_init__(self):
        if self.topology not in (ZARISKI, CONSTRUCTIBLE):
            raise ValueError(f"unknown topology {self.topology!r}")

    def __str__(self):
        return "omega-chain"


SpectralSpaceDesc = Union[FinitePoset, OmegaChain]


def parse_space(text: str) -> SpectralSpaceDesc:
    """``"omega-chain"`` or ``"poset:a<b,a<c"`` (isolated points as bare names)."""
    text = text.strip()
    if text.lower() in ("omega-chain", "omega", "omega+1"):
        return OmegaChain()
    if not text.lower().startswith("poset:"):
        raise ValueError(f"bad space descriptor {text!r}")
    body = text[len("poset:"):]
    points, rels = [], []
    for item in filter(None, (x.strip() for x in body.split(","))):
        names = [x.strip() for x in item.split("<")]
        if not all(re.fullmatch(r"[\w.]+", n) for n in names):
            raise ValueError(f"bad poset item {item!r}")
        for n in names:
            if n not in points:
                points.append(n)
        rels.extend(zip(names, names[1:]))
    return FinitePoset.from_relations(points, rels)


def is_closed(space: SpectralSpaceDesc, s) -> bool:
    """Whether ``s`` is closed in the space's selected topology."""
    if isinstance(space, FinitePoset):
        s = frozenset(s)
        if not s <= set(space.points):
            raise ValueError("subset mentions points outside the space")
        return space.closure(s) == s
    if not isinstance(s, OmegaSubset):
        raise ValueError("omega-chain subsets must be OmegaSubset descriptors")
    if space.topology == ZARISKI:
        whole = s.cofinite and not s.members and s.has_inf
        return whole or s.as_interval() is not None
    # one-point compactification of discrete N
    return s.has_inf or not s.cofinite


def is_open(space: SpectralSpaceDesc, s) -> bool:
    if isinstance(space, FinitePoset):
        return is_closed(space, set(space.points) - set(s))
    return is_closed(space, s.complement())


def is_quasi_compact_open(space: SpectralSpaceDesc, s) -> bool:
    if not is_open(space, s):
        return False
    if isinstance(space, FinitePoset) or space.topology == ZARISKI:
        # finite spaces trivially; on the chain every open is (r, oo] or empty,
        # and any cover of (r, oo] contains a member holding oo, hence all of it
        return True
    # compact opens of the compactification: finite sets, or open sets holding oo
    return s.has_inf or not s.cofinite


def patch(space: SpectralSpaceDesc) -> SpectralSpaceDesc:
    """Constructible topology on the same points."""
    out = replace(space, topology=CONSTRUCTIBLE)
    if isinstance(out, FinitePoset) and not out.is_hausdorff():
        raise AssertionError("patch of a finite poset must be discrete")
    if isinstance(out, OmegaChain) and not omega_constructible_is_compactification(out):
        raise AssertionError("patch of the chain must be the one-point compactification")
    return out


def omega_constructible_is_compactification(space: OmegaChain) -> bool:
    """Check the closed-set grammar of the one-point compactification of N.

    Every point of N is isolated, every finite subset of N is closed, a subset
    of N is closed iff it is finite, and every set holding oo is closed.  The
    checks run over a finite family of representative descriptors.
    """
    reps = [OmegaSubset.finite(range(r)) for r in range(4)]
    reps += [OmegaSubset(frozenset(m), c, i) for m in ((), (0,), (1, 3))
             for c in (False, True) for i in (False, True)]
    for s in reps:
        expected = s.has_inf or not s.cofinite
        if is_closed(space, s) != expected:
            return False
    singletons_clopen = all(is_closed(space, OmegaSubset.finite([n]))
                            and is_open(space, OmegaSubset.finite([n])) for n in range(5))
    inf_not_open = not is_open(space, OmegaSubset.finite([INF]))
    return singletons_clopen and inf_not_open


@dataclass(frozen=True)
class SpectralMap:
    """A map between presented spaces.

    For finite domains ``rule`` is a mapping on all points.  For omega-chain
    domains ``rule`` lists finitely many exceptions and the map takes the
    value ``tail`` at every other natural number and ``at_infinity`` at oo.
    """

    domain: SpectralSpaceDesc
    codomain: SpectralSpaceDesc
    rule: Mapping = field(default_factory=dict)
    tail: Hashable = None
    at_infinity: Hashable = None
    identity: bool = False

    def __call__(self, x):
        if self.identity:
            return x
        if isinstance(self.domain, FinitePoset):
            return self.rule[x]
        if x == INF:
            return self.at_infinity
        return self.rule.get(x, self.tail)

    def _threshold(self) -> int:
        return max(self.rule, default=-1) + 1

    def image(self) -> set:
        if isinstance(self.domain, FinitePoset):
            return {self.rule[p] for p in self.domain.points}
        return set(self.rule.values()) | {self.tail, self.at_infinity}

    def preimage(self, s):
        """Preimage of a codomain subset (a set of points or an OmegaSubset)."""
        if self.identity:
            return s
        if isinstance(self.domain, FinitePoset):
            return frozenset(p for p in self.domain.points if self.rule[p] in s)
        n0 = self._threshold()
        if self.tail in s:
            excluded = frozenset(n for n in range(n0) if self(n) not in s)
            return OmegaSubset(excluded, True, self.at_infinity in s)
        return OmegaSubset(frozenset(n for n in range(n0) if self(n) in s),
                           False, self.at_infinity in s)


def _validate_total(m: SpectralMap):
    if m.identity:
        if type(m.domain) is not type(m.codomain) or (
                isinstance(m.domain, FinitePoset) and m.domain.points != m.codomain.points):
            raise ValueError("identity map between different point sets")
        return
    valid = _point_checker(m.codomain)
    if isinstance(m.domain, FinitePoset):
        missing = set(m.domain.points) - set(m.rule)
        if missing:
            raise ValueError(f"rule is not total; missing {sorted(map(str, missing))}")
        values = [m.rule[p] for p in m.domain.points]
    else:
        if m.tail is None or m.at_infinity is None:
            raise ValueError("rule is not total; omega-chain maps need tail and at_infinity")
        if any(not isinstance(n, int) or n < 0 for n in m.rule):
            raise ValueError("exceptions must be natural numbers")
        values = list(m.rule.values()) + [m.tail, m.at_infinity]
    bad = [v for v in values if not valid(v)]
    if bad:
        raise ValueError(f"values outside the codomain: {bad!r}")


def _point_checker(space):
    if isinstance(space, FinitePoset):
        pts = set(space.points)
        return lambda v: v in pts
    return lambda v: v == INF or (isinstance(v, int) and v >= 0)


def _codomain_test_sets(m: SpectralMap, closed: bool):
    """Finitely many codomain sets whose preimages decide continuity."""
    cod = m.codomain
    if isinstance(cod, FinitePoset):
        for c in cod.closed_sets():
            yield c if closed else frozenset(cod.points) - c
        return
    values = sorted(v for v in m.image() if v != INF)
    if cod.topology == ZARISKI:
        # closed sets: empty, whole and [0, r]; only r at image values matter
        cands = [OmegaSubset.interval(-1), OmegaSubset.whole()]
        cands += [OmegaSubset.interval(r) for r in values]
    else:
        # preimages only see the trace on the (finite) image; all traces occur
        img = sorted(m.image(), key=str)
        cands = [OmegaSubset.finite(c) for r in range(len(img) + 1)
                 for c in combinations(img, r) if INF not in c]
        cands += [OmegaSubset(frozenset(n for n in values if n not in c), True, True)
                  for r in range(len(img) + 1) for c in combinations(img, r) if INF in c]
    for c in cands:
        yield c if closed else c.complement()


def check_spectral_map(m: SpectralMap) -> bool:
    """Continuous, and preimages of quasi-compact opens are quasi-compact."""
    _validate_total(m)
    if m.identity and isinstance(m.domain, OmegaChain):
        # the constructible topology refines the Zariski one, and every
        # Zariski open (r, oo] is compact in the refinement
        return not (m.domain.topology == ZARISKI and m.codomain.topology == CONSTRUCTIBLE)
    for c in _codomain_test_sets(m, closed=True):
        if not is_closed(m.domain, m.preimage(c)):
            return False
    for u in _codomain_test_sets(m, closed=False):
        if is_quasi_compact_open(m.codomain, u) and not is_quasi_compact_open(
                m.domain, m.preimage(u)):
            return False
    return True


def compose_maps(g: SpectralMap, f: SpectralMap) -> SpectralMap:
    """g o f for finite domains, or omega domains with any codomain."""
    if f.identity:
        return replace(g, domain=f.domain)
    if g.identity:
        return replace(f, codomain=g.codomain)
    if isinstance(f.domain, FinitePoset):
        return SpectralMap(f.domain, g.codomain, {p: g(f(p)) for p in f.domain.points})
    return SpectralMap(f.domain, g.codomain, {n: g(v) for n, v in f.rule.items()},
                       g(f.tail), g(f.at_infinity))


def identity_map(space: SpectralSpaceDesc, codomain: SpectralSpaceDesc | None = None) -> SpectralMap:
    """Identity on the points, optionally into a different topology on them."""
    return SpectralMap(space, space if codomain is None else codomain, identity=True)


def is_identity(m: SpectralMap) -> bool:
    if m.identity:
        return True
    if isinstance(m.domain, FinitePoset):
        return all(m(p) == p for p in m.domain.points)
    return False


def single_point(name="*") -> FinitePoset:
    return FinitePoset.discrete([name])
