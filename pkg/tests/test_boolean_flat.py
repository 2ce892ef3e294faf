from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tensorspec.boolean_flat import (BoolElem, Field, ProductRing, RingIdeal, all_bool_elems,
                                     boolean_ideal_generated, cont_iso, ideal_of_idempotents,
                                     idempotents_of_ideal, is_boolean_ideal, orthogonalize,
                                     prime_ideals, ring_ideals)


def B(*support, k=3):
    return BoolElem.of([i - 1 for i in support], k)


def test_orthogonalize_worked_example():
    family, principal = orthogonalize([B(1, 2), B(2, 3)])
    assert family == [B(2), B(1), B(3)]
    assert principal == B(1, 2, 3)


def test_orthogonalize_single_and_repeated():
    e = B(1, 3)
    assert orthogonalize([e]) == ([e], e)
    assert orthogonalize([e, e])[1] == e
    assert boolean_ideal_generated(orthogonalize([e, e])[0], 3) == boolean_ideal_generated([e], 3)


def test_orthogonalize_needs_input():
    with pytest.raises(ValueError):
        orthogonalize([])


families = st.integers(1, 6).flatmap(
    lambda k: st.lists(st.integers(0, (1 << k) - 1).map(lambda m: BoolElem(m, k)),
                       min_size=1, max_size=5))


@given(families)
def test_orthogonalize_properties(gens):
    k = gens[0].k
    family, principal = orthogonalize(gens)
    for i, a in enumerate(family):
        for b in family[i + 1:]:
            assert not (a * b)
    assert boolean_ideal_generated(family, k) == boolean_ideal_generated(gens, k)
    assert all(g * principal == g for g in gens)
    assert len(family) <= 2 ** len(gens) - 1


def test_idempotents_of_ideal_examples():
    QQ = ProductRing.parse("Q^2")
    I = RingIdeal(QQ, [QQ.element([0, 1])])
    assert idempotents_of_ideal(I) == {BoolElem.zero(2), BoolElem.of([1], 2)}
    assert len(idempotents_of_ideal(RingIdeal(QQ, [QQ.one()]))) == 4
    R = ProductRing.parse("F2xF3xF5")
    I = RingIdeal(R, [R.element([1, 1, 0])])
    assert idempotents_of_ideal(I) == {e for e in all_bool_elems(3) if e.support <= {0, 1}}


def test_ideal_of_idempotents_examples():
    R = ProductRing.parse("Q^3")
    assert ideal_of_idempotents(R, [BoolElem.zero(3)]).subset == frozenset()
    J = boolean_ideal_generated([B(1), B(2)], 3)
    assert ideal_of_idempotents(R, J).subset == {0, 1}
    with pytest.raises(ValueError):
        ideal_of_idempotents(R, [B(1), B(2)])  # not closed under joins


def test_all_boolean_ideals_of_q3_round_trip():
    R = ProductRing.parse("Q^3")
    ideals = {boolean_ideal_generated([e], 3) for e in all_bool_elems(3)}
    assert len(ideals) == 8
    for J in ideals:
        assert idempotents_of_ideal(ideal_of_idempotents(R, J)) == J


@pytest.mark.parametrize("text", ["Q", "F2xF3", "Q^3", "F2^2xQ", "F2xF3xF5xF7", "Q^5"])
def test_ideal_idempotent_bijection(text):
    R = ProductRing.parse(text)
    for I in ring_ideals(R):
        J = idempotents_of_ideal(I)
        assert is_boolean_ideal(J, R.k)
        assert ideal_of_idempotents(R, J) == I
    for e in all_bool_elems(R.k):
        J = boolean_ideal_generated([e], R.k)
        assert idempotents_of_ideal(ideal_of_idempotents(R, J)) == J


def test_ring_parse_and_validation():
    assert str(ProductRing.parse("f2xF3xf5")) == "F2xF3xF5"
    assert ProductRing.parse("Q^3").k == 3
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        ProductRing.parse("Z")


def test_primes_omit_one_factor():
    R = ProductRing.parse("Q^4")
    assert [len(P.subset) for P in prime_ideals(R)] == [3] * 4


def test_cont_iso_examples():
    R = ProductRing.parse("Q^3")
    theta = cont_iso(R)
    assert theta(R.element([1, 2, 2])) == (1, 2, 2)
    assert theta(R.one()) == (1, 1, 1)
    assert theta.inverse([0, 1, 0]) == R.element([0, 1, 0])
    with pytest.raises(ValueError):
        cont_iso(ProductRing.parse("F2xF3"))


@pytest.mark.parametrize("field,k", [(f, k) for f in ("Q", "F2", "F3") for k in range(1, 6)])
def test_cont_iso_is_ring_isomorphism(field, k):
    R = ProductRing.parse(f"{field}^{k}")
    theta = cont_iso(R)
    F = R.factors[0]
    values = list(F.elements()) if F.p else [Fraction(x) for x in (-1, 0, Fraction(1, 2), 2)]
    funcs = list(product(values, repeat=k))
    if len(funcs) > 300:
        funcs = funcs[::len(funcs) // 300 + 1]
    for f in funcs:
        a = theta.inverse(f)
        assert theta(a) == tuple(F(x) for x in f)
    for f, g in zip(funcs, reversed(funcs)):
        a, b = theta.inverse(f), theta.inverse(g)
        assert theta(R.add(a, b)) == tuple(F(x + y) for x, y in zip(theta(a), theta(b)))
        assert theta(R.mul(a, b)) == tuple(F(x * y) for x, y in zip(theta(a), theta(b)))
    images = {theta(theta.inverse(f)) for f in funcs}
    assert len(images) == len(set(tuple(F(x) for x in f) for f in funcs))
