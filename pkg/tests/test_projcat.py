import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tensorspec.boolean_flat import Field, ProductRing, RingIdeal, prime_ideals, ring_ideals
from tensorspec.projcat import (BlockMorphism, DimVector, SerreIdeal, all_morphisms, compose,
                                decomposition_check, enumerate_serre_ideals, integrality_violation,
                                jointly_faithful, quotient_fullness, quotient_map,
                                random_morphism, random_short_exact, serre_membership_by_idempotent,
                                sigma_membership, spectrum, split_check, support, tensor, trace,
                                tr_star_membership, unit, unit_subobject)

Q2 = ProductRing.parse("Q^2")
F2 = Field(2)


def dims(ring, maxd):
    return [DimVector(d) for d in product(range(maxd + 1), repeat=ring.k)]


def test_support_examples():
    f = BlockMorphism.make(Q2, (1, 1), (1, 1), [[[1]], [[0]]])
    assert support(f) == {0}
    assert support(BlockMorphism.zero(Q2, DimVector((2, 1)), DimVector((1, 3)))) == frozenset()
    assert support(DimVector((0, 3))) == {1}


def test_block_shapes_are_checked():
    with pytest.raises(ValueError):
        BlockMorphism.make(Q2, (1, 1), (2, 1), [[[1]], [[1]]])
    with pytest.raises(ValueError):
        BlockMorphism(ProductRing((F2,)), DimVector((1,)), DimVector((1,)), (((3,),),))


@given(st.integers(0, 2**32))
def test_tensor_support_is_intersection(seed):
    rng = random.Random(seed)
    ring = ProductRing.parse("QxF3xQ")
    A, B, C, D = (DimVector(tuple(rng.randint(0, 2) for _ in range(3))) for _ in range(4))
    f, g = random_morphism(ring, A, B, rng), random_morphism(ring, C, D, rng)
    assert support(tensor(f, g)) == support(f) & support(g)


def test_unit_subobjects_meet_by_intersection():
    for k in range(1, 5):
        ring = ProductRing.power(Field(0), k)
        subsets = [frozenset(i for i in range(k) if m >> i & 1) for m in range(1 << k)]
        for U in subsets:
            for V in subsets:
                assert support(tensor(unit_subobject(ring, U), unit_subobject(ring, V))) == U & V


@pytest.mark.parametrize("k", [1, 2, 3])
def test_tensor_vanishes_iff_supports_disjoint_over_f2(k):
    ring = ProductRing.power(F2, k)
    objs = dims(ring, 2 if k < 3 else 1)
    morphs = [f for A in objs for B in objs for f in all_morphisms(ring, A, B)]
    rng = random.Random(k)
    sample = morphs if len(morphs) <= 250 else rng.sample(morphs, 250)
    for f in sample:
        for g in sample:
            assert tensor(f, g).is_zero() == (not support(f) & support(g))


def test_tensor_vanishing_spot_check_over_q():
    rng = random.Random(5)
    ring = ProductRing.parse("Q^3")
    for _ in range(200):
        A, B = (DimVector(tuple(rng.randint(0, 2) for _ in range(3))) for _ in range(2))
        f, g = random_morphism(ring, A, B, rng), random_morphism(ring, B, A, rng)
        assert tensor(f, g).is_zero() == (not support(f) & support(g))


def test_blockwise_category_laws():
    rng = random.Random(1)
    ring = ProductRing.parse("QxF5")
    A, B, C = DimVector((2, 1)), DimVector((1, 2)), DimVector((2, 2))
    f, g = random_morphism(ring, A, B, rng), random_morphism(ring, B, C, rng)
    assert compose(BlockMorphism.identity(ring, C), compose(g, f)) == compose(g, f)
    h = random_morphism(ring, C, A, rng)
    assert trace(compose(h, compose(g, f))) == trace(compose(compose(g, f), h))
    one = BlockMorphism.identity(ring, unit(ring))
    assert tensor(f, one) == f


@given(st.integers(0, 2**32))
def test_short_exact_middle_support_is_union(seed):
    rng = random.Random(seed)
    ring = ProductRing.parse("QxF2xF3")
    sub, quo = (DimVector(tuple(rng.randint(0, 2) for _ in range(3))) for _ in range(2))
    ses = random_short_exact(ring, sub, quo, rng)
    assert ses.is_exact()
    s, m, q = ses.supports()
    assert m == s | q


def test_serre_enumeration_examples():
    assert len(enumerate_serre_ideals(ProductRing.parse("Q"))) == 2
    assert len(enumerate_serre_ideals(ProductRing.parse("Q^3"))) == 8
    ring = ProductRing.parse("Q^3")
    assert SerreIdeal(ring, frozenset({1})).contains(DimVector((0, 3, 0)))
    assert not SerreIdeal(ring, frozenset({1})).contains(DimVector((1, 3, 0)))
    with pytest.raises(ValueError):
        enumerate_serre_ideals(ProductRing.power(F2, 21))


@pytest.mark.parametrize("k", range(1, 6))
def test_serre_round_trip(k):
    ring = ProductRing.power(Field(0), k)
    pairs = enumerate_serre_ideals(ring)
    assert len({I for _, I in pairs}) == 2**k == len(ring_ideals(ring))
    for serre, I in pairs:
        assert serre.ring_ideal() == I
        assert SerreIdeal.from_ring_ideal(I) == serre
        for A in dims(ring, 1):
            assert serre.contains(A) == serre_membership_by_idempotent(serre, A)


def test_quotient_examples():
    m1 = [[1, 2], [3, 4]]
    f = BlockMorphism.make(Q2, (2, 1), (2, 1), [m1, [[7]]])
    I = RingIdeal.supported_on(Q2, {1})
    q = quotient_map(f, I)
    assert q.ring.k == 1 and q.blocks[0] == tuple(tuple(Fraction(x) for x in r) for r in m1)
    assert quotient_map(f, RingIdeal(Q2)) == f
    assert quotient_map(f, RingIdeal.supported_on(Q2, {0, 1})) is None


@pytest.mark.parametrize("A,B", [((1, 1), (1, 2)), ((2, 1), (1, 1)), ((0, 2), (1, 1))])
def test_quotient_full_with_expected_kernel(A, B):
    ring = ProductRing.parse("F2xF3")
    A, B = DimVector(A), DimVector(B)
    for I in ring_ideals(ring):
        res = quotient_fullness(ring, A, B, I)
        assert res["ok"], res
    res = quotient_fullness(ring, A, B, RingIdeal.supported_on(ring, {1}))
    assert res["kernel"] == 3 ** (A.dims[1] * B.dims[1])


def test_decomposition_and_joint_faithfulness():
    ring = ProductRing.parse("F2xF2xF3")
    objs = dims(ring, 1)
    for A in objs:
        for B in objs:
            assert decomposition_check(ring, A, B)
    ring2 = ProductRing.power(F2, 2)
    for A in dims(ring2, 2):
        for B in dims(ring2, 1):
            assert all(jointly_faithful(f) for f in all_morphisms(ring2, A, B))


def test_sigma_examples():
    P = RingIdeal.supported_on(Q2, {1})
    f = BlockMorphism.make(Q2, (1, 1), (1, 1), [[[0]], [[5]]])
    assert sigma_membership(f, P)
    ident = BlockMorphism.identity(Q2, DimVector((1, 1)))
    assert not any(sigma_membership(ident, M) for M in prime_ideals(Q2))
    with pytest.raises(ValueError):
        sigma_membership(f, RingIdeal(Q2))


def test_sigma_is_prime_at_small_dims():
    ring = ProductRing.power(F2, 2)
    for P in prime_ideals(ring):
        assert integrality_violation(ring, P, max_dim=2) is None


def test_sigma_matches_trace_section():
    ring = ProductRing.parse("F2xF3")
    for P in prime_ideals(ring):
        for A in dims(ring, 1):
            for B in dims(ring, 2):
                for f in all_morphisms(ring, A, B):
                    assert sigma_membership(f, P) == tr_star_membership(f, P)


def test_model_spectrum():
    sp = spectrum(ProductRing.parse("F2xF3xQ"))
    assert sp.points == ["P1", "P2", "P3"]
    assert sp.pi("P2") == "spec:P2"


def test_split_examples():
    inc = BlockMorphism.make(Q2, (1, 0), (1, 2), [[[3]], [[], []]])
    res = split_check(DimVector((1, 0)), DimVector((1, 2)), inc)
    assert res.witness is None
    assert compose(res.retraction, inc) == BlockMorphism.identity(Q2, DimVector((1, 0)))
    zero_inc = BlockMorphism.zero(Q2, DimVector((0, 0)), DimVector((2, 1)))
    assert split_check(DimVector((0, 0)), DimVector((2, 1)), zero_inc).retraction.is_zero()
    inc2 = BlockMorphism.make(Q2, (1, 0), (2, 0), [[[1], [0]], []])
    assert split_check(DimVector((1, 0)), DimVector((2, 0)), inc2).witness == {0}
    with pytest.raises(ValueError):
        split_check(DimVector((1, 0)), DimVector((1, 0)),
                    BlockMorphism.make(Q2, (1, 0), (1, 0), [[[0]], []]))
