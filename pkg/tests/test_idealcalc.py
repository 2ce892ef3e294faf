from fractions import Fraction

import pytest

from tensorspec.categories import FreeModCat, WBCat
from tensorspec.idealcalc import (TensorPrimeTag, chain_spectrum, closure_violation,
                                  exact_ideal, full_ideal, functor_kernel_ideal, generate_ideal,
                                  gram_determinant, gram_exponents, gram_matrix, ideal_member,
                                  ideal_power_stable, is_closed_ideal, nilpotent_member,
                                  quasi_invertible, sampled_prime_violation, schur_element,
                                  schur_vanishes, tr_star, tr_star_generic, zero_ideal)
from tensorspec.scalars import Poly
from tensorspec.supereval import BudgetExceeded
from tensorspec.symgroup import Partition, partitions, symmetric_group, young_symmetrizer
from tensorspec.wbcat import WBMorphism, cap, compose, cup, embed_group_alg, swap, tensor


def ident(w, t):
    return WBMorphism.identity(w, t)


def antisym(t):
    return ident("uu", t) - swap(t)


@pytest.fixture(scope="module")
def cat1():
    return WBCat(1)


@pytest.fixture(scope="module")
def win3(cat1):
    return cat1.window(3)


@pytest.fixture(scope="module")
def radical1(cat1, win3):
    return tr_star(cat1, win3)


def test_generate_from_unit_is_everything(cat1):
    w = cat1.window(2)
    I = generate_ideal(cat1, [ident("", 1)], w)
    assert I.same_as(full_ideal(cat1, w))


def test_generate_from_nothing(cat1):
    assert generate_ideal(cat1, [], cat1.window(2)).is_zero()


def test_generate_from_strand_at_zero():
    cat = WBCat(0)
    I = generate_ideal(cat, [ident("u", 0)], cat.window(2))
    assert not ideal_member(ident("", 0), I)
    assert ideal_member(compose(cup("u", 0), cap("u", 0)), I)
    assert I.span("ud", "ud").dim == 2
    assert is_closed_ideal(I)


def test_generate_rejects_outside_window(cat1):
    with pytest.raises(ValueError, match="outside the window"):
        generate_ideal(cat1, [ident("uuu", 1)], cat1.window(2))


def test_membership_basics(cat1):
    w = cat1.window(2)
    I = generate_ideal(cat1, [antisym(1)], w)
    assert ideal_member(antisym(1), I)
    assert ideal_member(WBMorphism.zero("ud", "du", 1), I)


def test_gram_routes_agree():
    # loop exponents versus traces of composites in the specialized category
    for w in ["uu", "ud", "uud", "udd"]:
        exps = gram_exponents(w, w)
        for alpha in (2, Fraction(-1, 3)):
            cat = WBCat(alpha)
            g = gram_matrix(cat, w, w)
            assert g == [[Fraction(alpha) ** e for e in row] for row in exps]


def test_tr_star_examples(radical1):
    (row,) = radical1.span("uu", "uu").rows
    assert WBMorphism.from_vector("uu", "uu", row, 1) == antisym(1).scale(row[0])
    cat0 = WBCat(0)
    N0 = tr_star(cat0, cat0.window(1))
    assert ideal_member(ident("u", 0), N0)
    assert tr_star_generic("uu", "uu") == []
    assert gram_determinant("uu") == Poly.t() ** 4 - Poly.t() ** 2


def test_tr_star_is_closed(radical1):
    assert closure_violation(radical1) is None


def test_tr_star_centre_restriction(cat1, win3, radical1):
    # I(0) = 0 sits inside tr*(0), and tr*(0) meets End(1) in 0; tr*(Q) is everything
    assert zero_ideal(cat1, win3).issubset(radical1)
    assert radical1.span("", "").dim == 0
    full = tr_star(cat1, win3, center="unit")
    assert full.span("", "").dim == 1 and full.same_as(full_ideal(cat1, win3))


@pytest.mark.parametrize("p,q", [(1, 0), (2, 1), (0, 1), (1, 2)])
def test_primes_inside_trace_radical(p, q):
    cat = WBCat(p - q)
    w = cat.window(2)
    assert functor_kernel_ideal(p, q, w).issubset(tr_star(cat, w))


def test_nilpotence_verdicts(cat1):
    w = cat1.window(4)
    zero = zero_ideal(cat1, w)
    N = tr_star(cat1, cat1.window(2))
    f = antisym(1)
    assert ideal_member(f, N)
    v = nilpotent_member(cat1, f, zero, max_power=2)
    assert v.verdict == "unknown"
    assert not tensor(f, f).is_zero()
    assert nilpotent_member(cat1, WBMorphism.zero("u", "u", 1), zero, 3).power == 1
    assert nilpotent_member(cat1, f, N, 3).verdict == "yes"
    with pytest.raises(BudgetExceeded):
        nilpotent_member(cat1, f, zero_ideal(cat1, cat1.window(2)), max_power=2)


def test_quasi_invertibility():
    cat = WBCat(2)
    w = cat.window(2)
    v = quasi_invertible(cat, ident("", 2).scale(2), w)
    assert v.verdict == "yes"
    c, g, h = v.certificate
    assert c == "" and g.scalar() == Fraction(1, 2)
    assert quasi_invertible(cat, WBMorphism.zero("u", "u", 2), w).verdict == "no"
    v = quasi_invertible(cat, cap("u", 2), w)
    assert v.verdict == "yes"
    c, g, h = v.certificate
    out = compose(g, compose(tensor(cap("u", 2), ident(c, 2)), h))
    assert out == ident("", 2)


def test_functor_kernel_examples(cat1):
    I = functor_kernel_ideal(1, 0, cat1.window(2))
    (row,) = I.span("uu", "uu").rows
    assert WBMorphism.from_vector("uu", "uu", row, 1) == antisym(1).scale(row[0])
    assert functor_kernel_ideal(2, 1, cat1.window(0)).is_zero()


def test_kernel_chain_is_strict(cat1, win3):
    big = functor_kernel_ideal(1, 0, win3)
    small = functor_kernel_ideal(2, 1, win3)
    assert small.issubset(big)
    assert ideal_member(antisym(1), big) and not ideal_member(antisym(1), small)


def test_functor_kernels_look_prime(cat1):
    w = cat1.window(2)
    assert sampled_prime_violation(functor_kernel_ideal(1, 0, w), samples=100) is None


def test_zero_ideal_sampled_prime_at_one(cat1):
    w = cat1.window(2)
    zero = zero_ideal(cat1, w)
    assert sampled_prime_violation(zero, samples=50) is None


def test_schur_examples():
    lam = Partition((1, 1))
    assert schur_vanishes(lam, TensorPrimeTag.functor_kernel(1, 0), 1)
    assert not schur_vanishes(lam, TensorPrimeTag.functor_kernel(2, 1), 1)
    assert schur_element(lam, 1, on_unit=True).is_zero()
    assert schur_vanishes(lam, TensorPrimeTag.functor_kernel(2, 1), 1, on_unit=True)


def test_schur_against_windowed_span(cat1, win3):
    N = tr_star(cat1, win3)
    assert schur_vanishes(Partition((1, 1)), N, 1)
    assert not schur_vanishes(Partition((2,)), N, 1)
    with pytest.raises(BudgetExceeded):
        schur_vanishes(Partition((1, 1, 1, 1)), N, 1)


@pytest.mark.parametrize("r", range(1, 5))
def test_schur_answers_ignore_tableau(r):
    tags = [TensorPrimeTag.functor_kernel(1, 0), TensorPrimeTag.trace_radical(1)]
    for lam in partitions(r):
        for g in symmetric_group(r)[:6]:
            conj = embed_group_alg(young_symmetrizer(lam).conjugate_by(g), t=Fraction(1))
            base = schur_element(lam, 1)
            for tag in tags:
                assert tag.member(conj) == tag.member(base)


def test_window_monotonicity(cat1):
    small = generate_ideal(cat1, [antisym(1)], cat1.window(2))
    big = generate_ideal(cat1, [antisym(1)], cat1.window(3))
    assert small.issubset(big, pairs=small.pairs())


def test_fixpoint_is_a_lower_bound(cat1, win3, radical1):
    fix = generate_ideal(cat1, [antisym(1)], win3)
    exact = exact_ideal([antisym(1)], win3, cat1)
    assert fix.issubset(exact)
    assert exact.same_as(radical1)


def test_free_module_backend():
    cat = FreeModCat()
    w = cat.window(2)
    assert tr_star(cat, w).is_zero()
    I = generate_ideal(cat, [cat.identity(1)], w)
    assert I.same_as(full_ideal(cat, w))


def test_chain_examples():
    ch = chain_spectrum(1, 1, WBCat(1).window(3))
    assert ch.levels[0]["strict"] != "unwitnessed"
    assert ideal_member(antisym(1), ch.ideals[0]) and not ideal_member(antisym(1), ch.ideals[1])
    ch0 = chain_spectrum(0, 1, WBCat(0).window(2))
    assert ideal_member(ident("u", 0), ch0.ideals[0])
    assert not ideal_member(ident("u", 0), ch0.ideals[1])
    assert ch0.pi(7) == "Q" and ch0.sigma_tr("Q") == 0


def test_chain_negative_n():
    ch = chain_spectrum(-1, 1, WBCat(-1).window(2))
    assert [(lv["p"], lv["q"]) for lv in ch.levels] == [(0, 1), (1, 2)]


def test_chain_budget():
    with pytest.raises(BudgetExceeded):
        chain_spectrum(1, 4, WBCat(1).window(4))


def test_power_stability(radical1):
    assert ideal_power_stable(radical1)
    assert ideal_power_stable(tr_star(WBCat(2), WBCat(2).window(3))) is None


def test_chain_on_length_four_window():
    ch = chain_spectrum(1, 1, WBCat(1).window(4))
    assert ch.levels[0]["strict"] != "unwitnessed"
    assert ideal_member(antisym(1), ch.ideals[0]) and not ideal_member(antisym(1), ch.ideals[1])
    assert ch.ideals[1].issubset(ch.ideals[0])
