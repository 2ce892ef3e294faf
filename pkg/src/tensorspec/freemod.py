"""Free modules over small commutative rings and their tensor spectra.

For a commutative ring R, every tensor ideal of the category of free
R-modules is I . Hom for an ideal I of R.  This module builds those ideals
on a window of ranks, checks the correspondence, and decides primality by
exhaustive search on small ranks plus seeded sampling on larger ones.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import product

from .boolean_flat import ProductRing, RingIdeal, is_prime, prime_ideals
from .spectral import FinitePoset, SpectralMap, compose_maps, is_identity


def prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


@dataclass(frozen=True)
class ZMod:
    m: int

    def __post_init__(self):
        if not 1 < self.m <= 1000:
            raise ValueError("Z/m is supported for 2 <= m <= 1000")

    def elements(self) -> range:
        return range(self.m)

    def add(self, a, b):
        return (a + b) % self.m

    def mul(self, a, b):
        return a * b % self.m

    def zero(self):
        return 0

    def is_zero(self, a) -> bool:
        return a % self.m == 0

    def primes(self) -> list["ZModIdeal"]:
        return [ZModIdeal(self, p) for p in prime_factors(self.m)]

    def __str__(self):
        return f"Z/{self.m}"


@dataclass(frozen=True)
class ZModIdeal:
    """The ideal (d) of Z/m, d a divisor of m."""

    ring: ZMod
    d: int

    def __contains__(self, a) -> bool:
        return a % self.d == 0

    def elements(self) -> frozenset[int]:
        return frozenset(a for a in self.ring.elements() if a in self)

    def is_prime(self) -> bool:
        return is_prime(self.d)

    def __str__(self):
        return f"({self.d})"


@dataclass(frozen=True)
class FieldProduct:
    """A finite product of prime fields, as a ring for free modules."""

    ring: ProductRing

    def __post_init__(self):
        if any(f.p == 0 for f in self.ring.factors):
            raise ValueError("only products of prime fields are finite")

    def elements(self):
        return list(self.ring.finite_elements())

    def add(self, a, b):
        return self.ring.add(a, b)

    def mul(self, a, b):
        return self.ring.mul(a, b)

    def zero(self):
        return self.ring.zero()

    def is_zero(self, a) -> bool:
        return not any(a)

    def primes(self) -> list[RingIdeal]:
        return prime_ideals(self.ring)

    def __str__(self):
        return str(self.ring)


def parse_small_ring(text: str):
    text = text.strip()
    m = re.fullmatch(r"(?i)z\s*/\s*(\d+)", text)
    if m:
        return ZMod(int(m.group(1)))
    ring = ProductRing.parse(text)
    return FieldProduct(ring)


def _ideal_elements(R, I) -> frozenset:
    return frozenset(a for a in R.elements() if a in I)


@dataclass(frozen=True)
class FreeModMatrix:
    source: int
    target: int
    entries: tuple  # row-major, target rows


def all_matrices(R, source: int, target: int):
    for entries in product(R.elements(), repeat=source * target):
        yield FreeModMatrix(source, target, tuple(entries))


def random_matrix(R, source: int, target: int, rng: random.Random) -> FreeModMatrix:
    elems = list(R.elements())
    return FreeModMatrix(source, target, tuple(rng.choice(elems)
                                               for _ in range(source * target)))


def kron(R, f: FreeModMatrix, g: FreeModMatrix) -> FreeModMatrix:
    out = []
    for i in range(f.target):
        for k in range(g.target):
            for j in range(f.source):
                for l in range(g.source):
                    out.append(R.mul(f.entries[i * f.source + j], g.entries[k * g.source + l]))
    return FreeModMatrix(f.source * g.source, f.target * g.target, tuple(out))


@dataclass(frozen=True)
class ExtendedIdeal:
    """I . Hom(C, D): matrices with every entry in the ring ideal I."""

    ring: object
    ideal: object

    def member(self, f: FreeModMatrix) -> bool:
        return all(a in self.ideal for a in f.entries)

    def restrict_to_unit(self) -> frozenset:
        """pi: the elements of End(1) = R lying in the ideal."""
        return frozenset(f.entries[0] for f in all_matrices(self.ring, 1, 1) if self.member(f))


def integrality_violation(R, I: ExtendedIdeal, exhaustive_rank: int = 1, max_rank: int = 3,
                          samples: int = 300, seed: int = 0):
    """f, g outside I with f (x) g inside; exhaustive on small ranks, sampled above."""
    size = len(list(R.elements()))
    small = [(s, t) for s in range(1, exhaustive_rank + 1) for t in range(1, exhaustive_rank + 1)
             if size ** (2 * s * t) <= EXHAUSTIVE_LIMIT * 20]
    outside = {st: [f for f in all_matrices(R, *st) if not I.member(f)] for st in small}
    for st1 in small:
        for st2 in small:
            for f in outside[st1]:
                for g in outside[st2]:
                    if I.member(kron(R, f, g)):
                        return f, g
    rng = random.Random(seed)
    for _ in range(samples):
        f = random_matrix(R, rng.randint(1, max_rank), rng.randint(1, max_rank), rng)
        g = random_matrix(R, rng.randint(1, max_rank), rng.randint(1, max_rank), rng)
        if I.member(f) or I.member(g):
            continue
        if I.member(kron(R, f, g)):
            return f, g
    return None


EXHAUSTIVE_LIMIT = 50000


def tr_star_extended(R, P, max_rank: int = 2, samples: int = 500, seed: int = 0) -> bool:
    """Check tr*(P) = P . Hom on all Hom spaces of rank <= max_rank (exhaustive in f).

    tr(g f) is R-linear in g and P is an ideal, so testing g over the
    elementary matrices is the same as testing every g.
    """
    one = _one(R)
    rng = random.Random(seed)
    size = len(list(R.elements()))
    for s in range(1, max_rank + 1):
        for t in range(1, max_rank + 1):
            duals = [FreeModMatrix(t, s, tuple(one if k == idx else R.zero()
                                               for k in range(s * t)))
                     for idx in range(s * t)]
            if size ** (s * t) <= EXHAUSTIVE_LIMIT:
                family = all_matrices(R, s, t)
            else:
                family = (random_matrix(R, s, t, rng) for _ in range(samples))
            for f in family:
                in_trstar = all(_trace_of_product(R, g, f) in P for g in duals)
                if in_trstar != ExtendedIdeal(R, P).member(f):
                    return False
    return True


def _one(R):
    return 1 if isinstance(R, ZMod) else R.ring.one()


def _trace_of_product(R, g: FreeModMatrix, f: FreeModMatrix):
    # g: t -> s, f: s -> t; tr(g f) = sum_{i,k} g[i][k] f[k][i]
    total = R.zero()
    for i in range(f.source):
        for k in range(f.target):
            total = R.add(total, R.mul(g.entries[i * g.source + k], f.entries[k * f.source + i]))
    return total


@dataclass
class FreeModuleSpectrum:
    ring: object
    points: list
    poset: FinitePoset
    pi: SpectralMap
    sigma_tr: SpectralMap
    checks: dict


def spec_free_modules(R, seed: int = 0, max_rank: int = 3) -> FreeModuleSpectrum:
    """Enumerate Spec R and verify it is the tensor spectrum of free R-modules."""
    if isinstance(R, str):
        R = parse_small_ring(R)
    primes = R.primes()
    names = [str(P) if isinstance(R, ZMod) else f"M{sorted(set(range(R.ring.k)) - P.subset)[0] + 1}"
             for P in primes]
    checks = {}
    for name, P in zip(names, primes):
        I = ExtendedIdeal(R, P)
        restricted = I.restrict_to_unit() == _ideal_elements(R, P)
        violation = integrality_violation(R, I, max_rank=max_rank, seed=seed)
        sections = tr_star_extended(R, P, max_rank=min(max_rank, 2), seed=seed)
        if not (restricted and violation is None and sections):
            raise AssertionError(f"free-module spectrum check failed at {name}")
        checks[name] = {"pi(I(P)) = P": restricted, "prime on window": True,
                        "tr*(P) = P.Hom": sections}
    # specialization order: P <= P' iff P is contained in P'
    rels = [(names[i], names[j]) for i, P in enumerate(primes) for j, Q in enumerate(primes)
            if i != j and _ideal_elements(R, P) <= _ideal_elements(R, Q)]
    poset = FinitePoset.from_relations(names, rels)
    spec_r = FinitePoset.from_relations([f"spec:{n}" for n in names],
                                        [(f"spec:{a}", f"spec:{b}") for a, b in rels])
    pi = SpectralMap(poset, spec_r, {n: f"spec:{n}" for n in names})
    sigma_tr = SpectralMap(spec_r, poset, {f"spec:{n}": n for n in names})
    if not is_identity(compose_maps(pi, sigma_tr)):
        raise AssertionError("pi o sigma_tr is not the identity")
    return FreeModuleSpectrum(R, primes, poset, pi, sigma_tr, checks)


def zero_ideal_witness(R):
    """f, g nonzero with f (x) g = 0, showing the zero tensor ideal is not prime."""
    zero = ExtendedIdeal(R, ZModIdeal(R, R.m) if isinstance(R, ZMod)
                         else RingIdeal(R.ring, ()))
    return integrality_violation(R, zero, exhaustive_rank=1, samples=0)
