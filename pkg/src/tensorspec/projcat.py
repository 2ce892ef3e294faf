"""Projective modules over a finite product of fields, as a rigid tensor category.

Objects are dimension vectors (one entry per factor), morphisms are tuples
of matrices, one block per factor over that factor's field.  Composition and
tensor product act blockwise; the tensor of two blocks is their Kronecker
product.  Supports, Serre tensor ideals, quotients and the sections of the
tensor spectrum are all read off from which blocks vanish.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .boolean_flat import BoolElem, Field, ProductRing, RingIdeal, prime_ideals
from .spectral import FinitePoset, SpectralMap, check_spectral_map, compose_maps, is_identity

MAX_FACTORS = 20

Block = tuple  # tuple of row tuples, shape target x source


# -- matrices over a single field ---------------------------------------------

def mat_mul(F: Field, a: Block, b: Block, inner: int, cols: int) -> Block:
    return tuple(tuple(F(sum(a[i][k] * b[k][j] for k in range(inner))) for j in range(cols))
                 for i in range(len(a)))


def mat_kron(F: Field, a: Block, b: Block) -> Block:
    # entries are already reduced, so a product only needs the modulus
    if F.p:
        return tuple(tuple(x * y % F.p for x in ra for y in rb) for ra in a for rb in b)
    return tuple(tuple(x * y for x in ra for y in rb) for ra in a for rb in b)


def mat_rank(F: Field, m: Block, ncols: int) -> int:
    rows = [list(r) for r in m]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][c])
        rows[rank] = [F(x * inv) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F(x - f * y) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def mat_inverse(F: Field, m: Block) -> Block:
    n = len(m)
    aug = [list(m[i]) + [F(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ValueError("singular block")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = F.inv(aug[c][c])
        aug[c] = [F(x * inv) for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [F(x - f * y) for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def zero_block(F: Field, rows: int, cols: int) -> Block:
    return tuple(tuple(F(0) for _ in range(cols)) for _ in range(rows))


def identity_block(F: Field, n: int) -> Block:
    return tuple(tuple(F(int(i == j)) for j in range(n)) for i in range(n))


# -- the category --------------------------------------------------------------

@dataclass(frozen=True)
class DimVector:
    dims: tuple[int, ...]

    def __post_init__(self):
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        return cls(tuple(int(x) for x in text.split(",")))

    def __len__(self):
        return len(self.dims)

    def __str__(self):
        return "(" + ",".join(map(str, self.dims)) + ")"


@dataclass(frozen=True)
class BlockMorphism:
    ring: ProductRing
    source: DimVector
    target: DimVector
    blocks: tuple[Block, ...]

    def __post_init__(self):
        k = self.ring.k
        if len(self.source) != k or len(self.target) != k or len(self.blocks) != k:
            raise ValueError("factor count mismatch")
        for i, (F, b) in enumerate(zip(self.ring.factors, self.blocks)):
            if len(b) != self.target.dims[i] or any(len(r) != self.source.dims[i] for r in b):
                raise ValueError(f"block {i} has the wrong shape")
            if any(not F.contains(x) for r in b for x in r):
                raise ValueError(f"block {i} has entries outside {F}")

    @classmethod
    def make(cls, ring: ProductRing, source, target, blocks) -> "BlockMorphism":
        source = source if isinstance(source, DimVector) else DimVector(tuple(source))
        target = target if isinstance(target, DimVector) else DimVector(tuple(target))
        blocks = tuple(tuple(tuple(F(x) for x in row) for row in b)
                       for F, b in zip(ring.factors, blocks))
        return cls(ring, source, target, blocks)

    @classmethod
    def _trusted(cls, ring, source, target, blocks) -> "BlockMorphism":
        # results of compose/tensor on valid inputs need no re-validation
        f = object.__new__(cls)
        for name, value in (("ring", ring), ("source", source), ("target", target),
                            ("blocks", blocks)):
            object.__setattr__(f, name, value)
        return f

    @classmethod
    def identity(cls, ring: ProductRing, A: DimVector) -> "BlockMorphism":
        return cls(ring, A, A, tuple(identity_block(F, d) for F, d in zip(ring.factors, A.dims)))

    @classmethod
    def zero(cls, ring: ProductRing, A: DimVector, B: DimVector) -> "BlockMorphism":
        return cls(ring, A, B, tuple(zero_block(F, b, a)
                                     for F, a, b in zip(ring.factors, A.dims, B.dims)))

    def block_is_zero(self, i: int) -> bool:
        return not any(any(r) for r in self.blocks[i])

    def is_zero(self) -> bool:
        return all(self.block_is_zero(i) for i in range(self.ring.k))

    def __add__(self, other: "BlockMorphism") -> "BlockMorphism":
        blocks = tuple(tuple(tuple(F(x + y) for x, y in zip(r1, r2)) for r1, r2 in zip(b1, b2))
                       for F, b1, b2 in zip(self.ring.factors, self.blocks, other.blocks))
        return BlockMorphism(self.ring, self.source, self.target, blocks)


def compose(g: BlockMorphism, f: BlockMorphism) -> BlockMorphism:
    if g.source != f.target:
        raise ValueError("objects do not match in composition")
    blocks = tuple(mat_mul(F, gb, fb, d, s) for F, gb, fb, d, s in
                   zip(g.ring.factors, g.blocks, f.blocks, f.target.dims, f.source.dims))
    return BlockMorphism._trusted(g.ring, f.source, g.target, blocks)


def tensor_obj(A: DimVector, B: DimVector) -> DimVector:
    return DimVector(tuple(a * b for a, b in zip(A.dims, B.dims)))


def tensor(f: BlockMorphism, g: BlockMorphism) -> BlockMorphism:
    blocks = tuple(mat_kron(F, fb, gb) for F, fb, gb in zip(f.ring.factors, f.blocks, g.blocks))
    return BlockMorphism._trusted(f.ring, tensor_obj(f.source, g.source),
                                  tensor_obj(f.target, g.target), blocks)


def trace(f: BlockMorphism) -> tuple:
    """Trace as an element of the centre R, one coordinate per factor."""
    if f.source != f.target:
        raise ValueError("trace of a non-endomorphism")
    return tuple(F(sum(b[i][i] for i in range(d)))
                 for F, b, d in zip(f.ring.factors, f.blocks, f.source.dims))


def unit(ring: ProductRing) -> DimVector:
    return DimVector((1,) * ring.k)


def all_morphisms(ring: ProductRing, A: DimVector, B: DimVector):
    """Every morphism A -> B over a product of finite fields."""
    per_block = []
    for F, a, b in zip(ring.factors, A.dims, B.dims):
        entries = product(F.elements(), repeat=a * b)
        per_block.append([tuple(tuple(e[i * a:(i + 1) * a]) for i in range(b)) for e in entries])
    for blocks in product(*per_block):
        yield BlockMorphism(ring, A, B, tuple(blocks))


def random_morphism(ring: ProductRing, A: DimVector, B: DimVector, rng: random.Random,
                    span: int = 3, density: float = 0.7) -> BlockMorphism:
    blocks = []
    for F, a, b in zip(ring.factors, A.dims, B.dims):
        live = rng.random() < density

        def entry():
            if not live:
                return F(0)
            return F(rng.randrange(F.p)) if F.p else F(rng.randint(-span, span))
        blocks.append(tuple(tuple(entry() for _ in range(a)) for _ in range(b)))
    return BlockMorphism(ring, A, B, tuple(blocks))


def hom_count(A: DimVector, B: DimVector) -> int:
    """Dimension vector of Hom(A, B), summed over factors."""
    return sum(a * b for a, b in zip(A.dims, B.dims))


# -- supports ------------------------------------------------------------------

def support(f) -> frozenset[int]:
    """Factor indices where f is nonzero; for an object, where it is nonzero."""
    if isinstance(f, DimVector):
        return frozenset(i for i, d in enumerate(f.dims) if d)
    return frozenset(i for i in range(f.ring.k) if not f.block_is_zero(i))


def idempotent_of(f, k: int | None = None) -> BoolElem:
    k = len(f) if isinstance(f, DimVector) else f.ring.k
    return BoolElem.of(support(f), k)


def unit_subobject(ring: ProductRing, S: Iterable[int]) -> BlockMorphism:
    """The idempotent e(S) acting on the unit: identity on the factors in S."""
    S = set(S)
    return BlockMorphism.make(ring, unit(ring), unit(ring),
                              [[[int(i in S)]] for i in range(ring.k)])


# -- Serre tensor ideals ---------------------------------------------------------

@dataclass(frozen=True)
class SerreIdeal:
    """Objects whose support lies inside ``subset``."""

    ring: ProductRing
    subset: frozenset[int]

    def contains(self, A: DimVector) -> bool:
        return support(A) <= self.subset

    def ring_ideal(self) -> RingIdeal:
        """The ideal of the centre generated by e(A) for A in the Serre ideal."""
        return RingIdeal.supported_on(self.ring, self.subset)

    @classmethod
    def from_ring_ideal(cls, I: RingIdeal) -> "SerreIdeal":
        """The objects A with e(A) in I."""
        return cls(I.ring, I.subset)


def enumerate_serre_ideals(ring: ProductRing) -> list[tuple[SerreIdeal, RingIdeal]]:
    if ring.k > MAX_FACTORS:
        raise ValueError(f"enumeration is 2^k; at most {MAX_FACTORS} factors")
    out = []
    for mask in range(1 << ring.k):
        S = frozenset(i for i in range(ring.k) if mask >> i & 1)
        serre = SerreIdeal(ring, S)
        out.append((serre, serre.ring_ideal()))
    return out


def serre_membership_by_idempotent(S: SerreIdeal, A: DimVector) -> bool:
    """Membership decided through e(A) in the paired ring ideal."""
    return ring_element_of(S.ring, idempotent_of(A)) in S.ring_ideal()


def ring_element_of(ring: ProductRing, e: BoolElem) -> tuple:
    return ring.idempotent(e)


# -- quotients -------------------------------------------------------------------

def quotient_ring(ring: ProductRing, I: RingIdeal) -> tuple[ProductRing | None, list[int]]:
    keep = [i for i in range(ring.k) if i not in I.subset]
    if not keep:
        return None, keep
    return ProductRing(tuple(ring.factors[i] for i in keep)), keep


def quotient_map(f: BlockMorphism, I: RingIdeal) -> BlockMorphism | None:
    """Image of f in A(R/I): drop the blocks indexed by I.  None if R/I = 0."""
    qring, keep = quotient_ring(f.ring, I)
    if qring is None:
        return None
    return BlockMorphism(qring, DimVector(tuple(f.source.dims[i] for i in keep)),
                         DimVector(tuple(f.target.dims[i] for i in keep)),
                         tuple(f.blocks[i] for i in keep))


def quotient_fullness(ring: ProductRing, A: DimVector, B: DimVector, I: RingIdeal) -> dict:
    """Exhaustively check the quotient functor on Hom(A, B) (finite fields only)."""
    qring, keep = quotient_ring(ring, I)
    images = set()
    kernel = 0
    for f in all_morphisms(ring, A, B):
        q = quotient_map(f, I)
        if q is None or q.is_zero():
            kernel += 1
            if not support(f) <= I.subset:
                return {"ok": False, "reason": "kernel element not supported in I"}
        images.add(None if q is None else q.blocks)
    if qring is None:
        target_size = 1
    else:
        qA = DimVector(tuple(A.dims[i] for i in keep))
        qB = DimVector(tuple(B.dims[i] for i in keep))
        target_size = sum(1 for _ in all_morphisms(qring, qA, qB))
    kernel_expected = 1
    for i in I.subset:
        kernel_expected *= ring.factors[i].p ** (A.dims[i] * B.dims[i])
    ok = len(images) == target_size and kernel == kernel_expected
    return {"ok": ok, "image": len(images), "target": target_size, "kernel": kernel}


def decomposition_check(ring: ProductRing, A: DimVector, B: DimVector) -> bool:
    """A(R) -> prod_M A(R)//M is bijective on Hom(A, B) (finite fields only)."""
    primes = prime_ideals(ring)
    seen = set()
    total = 0
    for f in all_morphisms(ring, A, B):
        total += 1
        seen.add(tuple(quotient_map(f, P).blocks for P in primes))
    expected = 1
    for P in primes:
        qring, keep = quotient_ring(ring, P)
        expected *= qring.factors[0].p ** (A.dims[keep[0]] * B.dims[keep[0]])
    return len(seen) == total == expected


def jointly_faithful(f: BlockMorphism) -> bool:
    """f is zero iff every quotient by a maximal ideal kills it."""
    killed = all(quotient_map(f, P).is_zero() for P in prime_ideals(f.ring))
    return killed == f.is_zero()


# -- primes and sections of the spectrum ----------------------------------------------

def _omitted(P: RingIdeal) -> int:
    rest = [i for i in range(P.ring.k) if i not in P.subset]
    if len(rest) != 1:
        raise ValueError("not a prime ideal of the product ring")
    return rest[0]


def sigma_membership(f: BlockMorphism, P: RingIdeal) -> bool:
    """f lies in the tensor ideal {f | e(f) in P}."""
    j = _omitted(P)
    return f.block_is_zero(j)


def tr_star_membership(f: BlockMorphism, P: RingIdeal) -> bool:
    """tr(g f) in P for every g : B -> A; elementary matrices suffice by linearity."""
    j = _omitted(P)
    F = f.ring.factors[j]
    a, b = f.source.dims[j], f.target.dims[j]
    for r in range(a):
        for c in range(b):
            # g = E_{rc} in block j, tr(g f) = f[c][r]
            if F(f.blocks[j][c][r]):
                return False
    return True


def centre_restriction(pred, ring: ProductRing) -> RingIdeal:
    """pi: the ideal of R = End(1) cut out by a tensor-ideal predicate."""
    one = unit(ring)
    members = []
    for i in range(ring.k):
        e = unit_subobject(ring, [i])
        if pred(e):
            members.append(i)
    # an ideal of a product of fields is determined by which idempotents it holds
    ideal = RingIdeal.supported_on(ring, members)
    assert pred(BlockMorphism.zero(ring, one, one))
    return ideal


def integrality_violation(ring: ProductRing, P: RingIdeal, max_dim: int = 2):
    """f, g outside P_sigma with f (x) g inside, exhaustive at the given dims."""
    objs = [DimVector(d) for d in product(range(max_dim + 1), repeat=ring.k)]
    outside = []
    for A in objs:
        for B in objs:
            outside += [f for f in all_morphisms(ring, A, B) if not sigma_membership(f, P)]
            if len(outside) > 3000:
                break
    for f in outside[:300]:
        for g in outside[:300]:
            if sigma_membership(tensor(f, g), P):
                return f, g
    return None


@dataclass
class ModelSpectrum:
    ring: ProductRing
    points: list[str]
    space: FinitePoset
    spec_r: FinitePoset
    pi: SpectralMap
    sigma: SpectralMap
    sigma_tr: SpectralMap


def spectrum(ring: ProductRing, check_dims: int = 1) -> ModelSpectrum:
    """Spec of A(R), with pi, sigma and sigma_tr, all verified on small Hom spaces."""
    primes = prime_ideals(ring)
    names = [f"P{_omitted(P) + 1}" for P in primes]
    space = FinitePoset.discrete(names)
    spec_r = FinitePoset.discrete([f"spec:{n}" for n in names])
    objs = [DimVector(d) for d in product(range(check_dims + 1), repeat=ring.k)]
    finite = all(F.p for F in ring.factors)
    for name, P in zip(names, primes):
        restricted = centre_restriction(lambda f: sigma_membership(f, P), ring)
        if restricted != P:
            raise AssertionError(f"pi(sigma({name})) != {name}")
        if centre_restriction(lambda f: tr_star_membership(f, P), ring) != P:
            raise AssertionError(f"pi(sigma_tr({name})) != {name}")
        if finite:
            for A in objs:
                for B in objs:
                    for f in all_morphisms(ring, A, B):
                        if sigma_membership(f, P) != tr_star_membership(f, P):
                            raise AssertionError("sigma and sigma_tr differ")
    pi = SpectralMap(space, spec_r, {n: f"spec:{n}" for n in names})
    sigma = SpectralMap(spec_r, space, {f"spec:{n}": n for n in names})
    sigma_tr = SpectralMap(spec_r, space, {f"spec:{n}": n for n in names})
    for m in (pi, sigma, sigma_tr):
        if not check_spectral_map(m):
            raise AssertionError("a section map is not spectral")
    if not (is_identity(compose_maps(pi, sigma)) and is_identity(compose_maps(pi, sigma_tr))):
        raise AssertionError("pi is not left inverse to the sections")
    return ModelSpectrum(ring, names, space, spec_r, pi, sigma, sigma_tr)


# -- splitting and short exact sequences ------------------------------------------------

def is_injective(f: BlockMorphism) -> bool:
    return all(mat_rank(F, b, a) == a for F, b, a in
               zip(f.ring.factors, f.blocks, f.source.dims))


def is_surjective(f: BlockMorphism) -> bool:
    return all(mat_rank(F, b, a) == t for F, b, a, t in
               zip(f.ring.factors, f.blocks, f.source.dims, f.target.dims))


def cokernel_dims(inclusion: BlockMorphism) -> DimVector:
    return DimVector(tuple(t - s for s, t in zip(inclusion.source.dims, inclusion.target.dims)))


@dataclass(frozen=True)
class SplitResult:
    retraction: BlockMorphism | None
    witness: frozenset[int] | None


def split_check(A_sub: DimVector, A: DimVector, inclusion: BlockMorphism) -> SplitResult:
    """Build a retraction when sub and cokernel have disjoint supports."""
    if inclusion.source != A_sub or inclusion.target != A:
        raise ValueError("inclusion does not go A_sub -> A")
    if not is_injective(inclusion):
        raise ValueError("inclusion is not injective")
    overlap = support(A_sub) & support(cokernel_dims(inclusion))
    if overlap:
        return SplitResult(None, frozenset(overlap))
    ring = inclusion.ring
    blocks = []
    for i, F in enumerate(ring.factors):
        if A_sub.dims[i]:
            # no cokernel here, so the block is square and invertible
            blocks.append(mat_inverse(F, inclusion.blocks[i]))
        else:
            blocks.append(zero_block(F, 0, A.dims[i]))
    r = BlockMorphism(ring, A, A_sub, tuple(blocks))
    assert compose(r, inclusion) == BlockMorphism.identity(ring, A_sub)
    return SplitResult(r, None)


@dataclass(frozen=True)
class ShortExact:
    inclusion: BlockMorphism
    projection: BlockMorphism

    def is_exact(self) -> bool:
        i, p = self.inclusion, self.projection
        if i.target != p.source:
            return False
        if not (is_injective(i) and is_surjective(p) and compose(p, i).is_zero()):
            return False
        return all(a + c == b for a, b, c in zip(i.source.dims, i.target.dims, p.target.dims))

    def supports(self):
        return (support(self.inclusion.source), support(self.inclusion.target),
                support(self.projection.target))


def random_short_exact(ring: ProductRing, sub: DimVector, quo: DimVector,
                       rng: random.Random) -> ShortExact:
    """0 -> sub -> sub+quo -> quo -> 0 conjugated by a random invertible change of basis."""
    mid = DimVector(tuple(a + c for a, c in zip(sub.dims, quo.dims)))
    inc, proj = [], []
    for F, a, c in zip(ring.factors, sub.dims, quo.dims):
        n = a + c
        while True:
            g = tuple(tuple(F(rng.randrange(F.p)) if F.p else F(rng.randint(-2, 2))
                            for _ in range(n)) for _ in range(n))
            if mat_rank(F, g, n) == n:
                break
        ginv = mat_inverse(F, g)
        std_inc = tuple(tuple(F(int(r == s)) for s in range(a)) for r in range(n))
        std_proj = tuple(tuple(F(int(s == a + r)) for s in range(n)) for r in range(c))
        inc.append(mat_mul(F, g, std_inc, n, a))
        proj.append(mat_mul(F, std_proj, ginv, n, n))
    return ShortExact(BlockMorphism(ring, sub, mid, tuple(inc)),
                      BlockMorphism(ring, mid, quo, tuple(proj)))
