"""Windowed tensor-ideal calculus.

Every ideal here is a *windowed* object: a subspace of Hom(X, Y) for each
pair of objects in a finite :class:`ProbeWindow`.  Statements about the
infinite category are only ever verified on the window, and reports say so.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import supereval, wbcat
from .categories import ProbeWindow, WBCat
from .linalg import Subspace, nullspace, transpose
from .spectral import (ZARISKI, FinitePoset, OmegaChain, OmegaSubset, SpectralMap,
                       check_spectral_map, compose_maps, is_closed, is_identity, single_point)
from .scalars import Poly, RatFunc, format_rational, monomial_matrix_det, poly_matrix_det
from .supereval import BudgetExceeded
from .symgroup import Partition, young_symmetrizer
from .wbcat import WBMorphism, embed_group_alg, enumerate_mates


def _pmap(fn: Callable, items: Sequence, workers: int) -> list:
    """Order-preserving map, optionally on a thread pool."""
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass
class IdealSpan:
    cat: object
    window: ProbeWindow
    spans: dict = field(default_factory=dict)

    def span(self, x, y) -> Subspace:
        if x not in self.window or y not in self.window:
            raise KeyError(f"pair ({x!r}, {y!r}) is outside the window")
        if (x, y) not in self.spans:
            self.spans[(x, y)] = Subspace(self.cat.dim(x, y))
        return self.spans[(x, y)]

    def pairs(self) -> list[tuple]:
        return [(x, y) for x, y in self.window.pairs() if self.cat.dim(x, y)]

    def member(self, f) -> bool:
        return self.span(self.cat.source(f), self.cat.target(f)).contains(self.cat.vec(f))

    def is_zero(self) -> bool:
        return all(self.span(x, y).dim == 0 for x, y in self.pairs())

    def total_dim(self) -> int:
        return sum(self.span(x, y).dim for x, y in self.pairs())

    def issubset(self, other: "IdealSpan", pairs=None) -> bool:
        return self.witness_outside(other, pairs) is None

    def witness_outside(self, other: "IdealSpan", pairs=None):
        """(pair, vector) in self but not in other, or None."""
        for x, y in pairs or self.pairs():
            v = self.span(x, y).complement_witness(other.span(x, y))
            if v is not None:
                return (x, y), v
        return None

    def same_as(self, other: "IdealSpan", pairs=None) -> bool:
        return all(self.span(x, y) == other.span(x, y) for x, y in pairs or self.pairs())

    def to_json(self) -> dict:
        out = {}
        for x, y in self.pairs():
            s = self.span(x, y)
            out[f"{x}->{y}"] = [[format_rational(c) for c in row] for row in s.rows]
        return out


def zero_ideal(cat, window: ProbeWindow) -> IdealSpan:
    return IdealSpan(cat, window)


def full_ideal(cat, window: ProbeWindow) -> IdealSpan:
    I = IdealSpan(cat, window)
    for x, y in I.pairs():
        I.spans[(x, y)] = Subspace.full(cat.dim(x, y))
    return I


def _composition_candidates(cat, window, item):
    (x, y), v = item
    f = cat.mor(x, y, v)
    out = []
    for z in window.objects:
        for h in cat.basis(y, z):
            out.append(((x, z), cat.vec(cat.compose(h, f))))
    for w in window.objects:
        for g in cat.basis(w, x):
            out.append(((w, y), cat.vec(cat.compose(f, g))))
    return out


def _tensor_candidates(cat, window, item):
    (x, y), v = item
    f = cat.mor(x, y, v)
    out = []
    for c in window.objects:
        xc, yc = cat.tensor_obj(x, c), cat.tensor_obj(y, c)
        if xc in window and yc in window:
            out.append(((xc, yc), cat.vec(cat.tensor(f, cat.identity(c)))))
        cx, cy = cat.tensor_obj(c, x), cat.tensor_obj(c, y)
        if cx in window and cy in window:
            out.append(((cx, cy), cat.vec(cat.tensor(cat.identity(c), f))))
    return out


def _absorb(I: IdealSpan, batches) -> list:
    added = []
    for batch in batches:
        for pair, v in batch:
            if any(v) and I.span(*pair).add(v):
                added.append((pair, v))
    return added


def close_ideal(I: IdealSpan, seeds=None, workers: int = 1) -> IdealSpan:
    """Saturate in place: composition to a fixpoint, then tensor, repeat."""
    cat, window = I.cat, I.window
    if seeds is None:
        seeds = [((x, y), row) for x, y in I.pairs() for row in I.span(x, y).rows]
    pending = list(seeds)
    tensor_pending = list(seeds)
    while pending or tensor_pending:
        while pending:
            batches = _pmap(lambda it: _composition_candidates(cat, window, it), pending, workers)
            pending = _absorb(I, batches)
            tensor_pending.extend(pending)
        batches = _pmap(lambda it: _tensor_candidates(cat, window, it), tensor_pending, workers)
        tensor_pending = []
        pending = _absorb(I, batches)
        tensor_pending.extend(pending)
    return I


def generate_ideal(cat, gens: Iterable, window: ProbeWindow, workers: int = 1) -> IdealSpan:
    """Least windowed span containing ``gens`` closed under h o (f (x) 1_C) o g."""
    cat.check_window(window)
    I = IdealSpan(cat, window)
    seeds = []
    for g in gens:
        x, y = cat.source(g), cat.target(g)
        if x not in window or y not in window:
            raise ValueError(f"generator {x!r} -> {y!r} lies outside the window")
        v = cat.vec(g)
        if any(v) and I.span(x, y).add(v):
            seeds.append(((x, y), v))
    return close_ideal(I, seeds, workers)


def closure_violation(I: IdealSpan, workers: int = 1):
    """First (pair, vector) produced by one closure step but missing from I."""
    cat, window = I.cat, I.window
    items = [((x, y), row) for x, y in I.pairs() for row in I.span(x, y).rows]
    for fn in (_composition_candidates, _tensor_candidates):
        for batch in _pmap(lambda it: fn(cat, window, it), items, workers):
            for pair, v in batch:
                if not I.span(*pair).contains(v):
                    return pair, v
    return None


def is_closed_ideal(I: IdealSpan, workers: int = 1) -> bool:
    return closure_violation(I, workers) is None


def ideal_member(f, I: IdealSpan) -> bool:
    return I.member(f)


# trace forms

def gram_matrix(cat, x, y) -> list[list]:
    """G[d][e] = tr(e o d), d running over Hom(x, y), e over Hom(y, x)."""
    return [[cat.trace(cat.compose(e, d)) for e in cat.basis(y, x)] for d in cat.basis(x, y)]


def gram_exponents(w: str, w2: str) -> list[list[int]]:
    """Loop counts tr(e o d) = t^c for walled Brauer basis diagrams."""
    a, b = len(w), len(w2)
    out = []
    for dm in enumerate_mates(w, w2):
        row = []
        for em in enumerate_mates(w2, w):
            mate, loops = wbcat.compose_mates(em, dm, a, b, a)
            row.append(loops + wbcat.closure_loops(mate, a))
        out.append(row)
    return out


def generic_gram_matrix(w: str, w2: str) -> list[list[Poly]]:
    return [[Poly.monomial(c) for c in row] for row in gram_exponents(w, w2)]


def gram_determinant(w: str, w2: str | None = None, method: str = "auto") -> Poly:
    """Determinant over Q[t] of the generic Gram matrix of Hom(w, w2)."""
    w2 = w if w2 is None else w2
    exps = gram_exponents(w, w2)
    if method == "bareiss" or (method == "auto" and len(exps) <= 8):
        return poly_matrix_det([[Poly.monomial(c) for c in row] for row in exps])
    return monomial_matrix_det(exps)


def _center_is_unit(center) -> bool:
    if center in ("zero", 0, None):
        return False
    if center in ("unit", 1):
        return True
    return bool(Fraction(center))


def tr_star(cat, window: ProbeWindow, center="zero", workers: int = 1) -> IdealSpan:
    """tr*(I)(C, D) = {f : tr(g f) in I for all g: D -> C}, over a field centre.

    ``center`` is the ideal of End(1) = Q: ``"zero"`` or ``"unit"``.
    """
    cat.check_window(window)
    I = IdealSpan(cat, window)
    if _center_is_unit(center):
        return full_ideal(cat, window)

    def one(pair):
        x, y = pair
        g = gram_matrix(cat, x, y)
        return pair, nullspace(transpose(g), cat.dim(x, y))

    for (x, y), basis in _pmap(one, I.pairs(), workers):
        for v in basis:
            I.span(x, y).add(v)
    return I


def tr_star_generic(w: str, w2: str) -> list[tuple]:
    """Kernel of the generic Gram pairing on Hom(w, w2), over Q(t)."""
    n = wbcat.hom_dimension(w, w2)
    if not n:
        return []
    if gram_determinant(w, w2):
        return []
    g = [[RatFunc(x) for x in row] for row in generic_gram_matrix(w, w2)]
    return nullspace(transpose(g), n, zero=RatFunc(0), one=RatFunc(1))


# nilpotence, quasi-invertibility

@dataclass(frozen=True)
class Verdict:
    verdict: str  # "yes", "no" or "unknown"
    power: int | None = None
    certificate: tuple | None = None
    note: str = ""


def nilpotent_member(cat, f, I: IdealSpan, max_power: int) -> Verdict:
    """Least n <= max_power with f^{(x) n} in I; never claims non-membership."""
    fn = f
    for n in range(1, max_power + 1):
        if n > 1:
            fn = cat.tensor(fn, f)
        src, tgt = cat.source(fn), cat.target(fn)
        if src not in I.window or tgt not in I.window:
            raise BudgetExceeded(f"f^(x){n}: {src!r} -> {tgt!r} is outside the window")
        if I.member(fn):
            return Verdict("yes", power=n)
    return Verdict("unknown", note=f"no tensor power up to {max_power} lies in the ideal; "
                                   "radical membership is windowed (power-nilpotence)")


def quasi_invertible(cat, f, window: ProbeWindow) -> Verdict:
    """Search C in the window with 1 -> A(x)C -> B(x)C -> 1 equal to 1_1."""
    a, b = cat.source(f), cat.target(f)
    if not any(cat.vec(f)):
        return Verdict("no", note="f = 0, so every composite through f (x) 1_C vanishes")
    unit = cat.unit
    for c in window.objects:
        ac, bc = cat.tensor_obj(a, c), cat.tensor_obj(b, c)
        if ac not in window or bc not in window:
            continue
        fc = cat.tensor(f, cat.identity(c))
        hs = cat.basis(unit, ac)
        if not hs:
            continue
        for g in cat.basis(bc, unit):
            gf = cat.compose(g, fc)
            for h in hs:
                s = cat.scalar(cat.compose(gf, h))
                if s:
                    g_scaled = cat.mor(bc, unit, [x / s for x in cat.vec(g)])
                    check = cat.compose(g_scaled, cat.compose(fc, h))
                    if cat.vec(check) != cat.vec(cat.identity(unit)):
                        raise AssertionError("quasi-invertibility certificate failed")
                    return Verdict("yes", certificate=(c, g_scaled, h))
    return Verdict("unknown", note="no witness object in the window")


# functor kernels and primes

def functor_kernel_ideal(p: int, q: int, window: ProbeWindow, workers: int = 1,
                         verify: bool = True) -> IdealSpan:
    """Windowed kernel of F(p|q) on the walled Brauer category at t = p - q."""
    cat = WBCat(p - q)
    cat.check_window(window)
    I = IdealSpan(cat, window)
    pairs = I.pairs()
    for x, y in pairs:
        supereval.check_budget(p, q, x, y)

    def one(pair):
        return pair, supereval.kernel_basis(pair[0], pair[1], p, q)

    for (x, y), basis in _pmap(one, pairs, workers):
        for v in basis:
            I.span(x, y).add(v)
    if verify:
        bad = closure_violation(I, workers)
        if bad is not None:
            raise AssertionError(f"kernel of F({p}|{q}) is not closed: {bad}")
    return I


def _vector_outside(span: Subspace, rng: random.Random):
    """A vector of the ambient space not in ``span`` (None if span is full)."""
    if span.dim == span.n:
        return None
    pivots = set(span.pivots)
    free = [c for c in range(span.n) if c not in pivots]
    v = [Fraction(0)] * span.n
    v[rng.choice(free)] = Fraction(1)
    for row in span.rows:
        c = Fraction(rng.randint(-2, 2))
        v = [a + c * b for a, b in zip(v, row)]
    return tuple(v)


def sampled_prime_violation(I: IdealSpan, samples: int = 200, seed: int = 0):
    """Look for f, g outside I with f (x) g inside (the integrality criterion).

    Sampling only; returns a witness or None.
    """
    cat, window = I.cat, I.window
    rng = random.Random(seed)
    pairs = [pr for pr in I.pairs() if I.span(*pr).dim < cat.dim(*pr)]
    combos = []
    for (a, b) in pairs:
        for (c, d) in pairs:
            if cat.tensor_obj(a, c) in window and cat.tensor_obj(b, d) in window:
                combos.append(((a, b), (c, d)))
    if not combos:
        return None
    for _ in range(samples):
        (a, b), (c, d) = rng.choice(combos)
        f = cat.mor(a, b, _vector_outside(I.span(a, b), rng))
        g = cat.mor(c, d, _vector_outside(I.span(c, d), rng))
        if I.member(cat.tensor(f, g)):
            return f, g
    return None


@dataclass(frozen=True)
class TensorPrimeTag:
    """Descriptor of a prime tensor ideal with decidable membership."""

    kind: str  # "trace-radical", "functor-kernel" or "ring-prime"
    alpha: Fraction | None = None
    pq: tuple[int, int] | None = None
    prime: object = None

    @classmethod
    def trace_radical(cls, alpha) -> "TensorPrimeTag":
        return cls("trace-radical", alpha=Fraction(alpha))

    @classmethod
    def functor_kernel(cls, p: int, q: int) -> "TensorPrimeTag":
        return cls("functor-kernel", alpha=Fraction(p - q), pq=(p, q))

    def member(self, f: WBMorphism) -> bool:
        x, y = f.source, f.target
        if self.kind == "functor-kernel":
            p, q = self.pq
            return supereval.eval_morphism(f, p, q).is_zero()
        if self.kind == "trace-radical":
            cat = WBCat(self.alpha)
            return all(not cat.trace(cat.compose(e, f)) for e in cat.basis(y, x))
        if self.kind == "ring-prime":
            return self.prime.member(f)
        raise ValueError(f"unknown tag kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "functor-kernel":
            return f"P({self.pq[0]}|{self.pq[1]})"
        if self.kind == "trace-radical":
            return f"N(t={format_rational(self.alpha)})"
        return f"ring-prime({self.prime})"


def schur_element(lam: Partition, alpha, on_unit: bool = False) -> WBMorphism:
    """The Young symmetrizer acting on L^{(x) r}, or on 1^{(x) r} = 1."""
    c = young_symmetrizer(lam)
    if on_unit:
        # every permutation of 1 (x) ... (x) 1 is the identity of 1
        total = sum(c.coeffs.values(), Fraction(0))
        return WBMorphism.identity("", alpha).scale(total)
    return embed_group_alg(c, t=Fraction(alpha))


def schur_vanishes(lam: Partition, I, alpha, on_unit: bool = False) -> bool:
    """S_lambda(L) = 0 modulo I, tested as membership of c_lambda in I."""
    alpha = Fraction(alpha)
    f = schur_element(lam, alpha, on_unit)
    if f.is_zero():
        return True
    if isinstance(I, TensorPrimeTag):
        if I.alpha is not None and I.alpha != alpha:
            raise ValueError("ideal and specialization disagree on t")
        if I.kind == "functor-kernel":
            supereval.check_budget(*I.pq, f.source, f.target)
        return I.member(f)
    if I.cat.t != alpha:
        raise ValueError("ideal and specialization disagree on t")
    if f.source not in I.window:
        raise BudgetExceeded(f"L^(x){lam.r} is outside the window")
    return I.member(f)


# exact ideals through names (rigidity)

def exact_generated_span(gens: Sequence[WBMorphism], x: str, y: str,
                         target: Subspace | None = None) -> Subspace:
    """The ideal generated by ``gens`` in Hom(x, y), exactly.

    In a rigid category the ideal generated by G: 1 -> P meets Hom(1, W) in
    Hom(P, W) o G.  Hom(x, y) is identified with Hom(1, dual(x) y) by bending.
    If ``target`` is given and the span reaches its dimension, enumeration
    stops early (the span is always contained in any ideal holding gens).
    """
    w = wbcat.dual(x) + y
    n = wbcat.hom_dimension(x, y)
    out = Subspace(n)
    for g in gens:
        name = wbcat.adjoint_name(g)
        p = name.target
        a, b, c = 0, len(p), len(w)
        for hm in enumerate_mates(p, w):
            acc = {}
            for gm, gc in name.terms.items():
                mate, loops = wbcat.compose_mates(hm, gm, a, b, c)
                acc[mate] = acc.get(mate, 0) + gc * name.t ** loops
            h_g = WBMorphism("", w, acc, name.t)
            out.add(wbcat.unbend(h_g, x).to_vector())
            if out.dim == n or (target is not None and out.dim >= target.dim):
                return out
    return out


def exact_ideal(gens: Sequence[WBMorphism], window: ProbeWindow, cat: WBCat,
                targets: IdealSpan | None = None) -> IdealSpan:
    I = IdealSpan(cat, window)
    for x, y in I.pairs():
        tgt = targets.span(x, y) if targets is not None else None
        I.spans[(x, y)] = exact_generated_span(gens, x, y, tgt)
    return I


# reports

@dataclass
class Report:
    statement: str
    window: list
    verdict: str
    witnesses: list = field(default_factory=list)
    budget: dict = field(default_factory=dict)
    scope: str = "verified on window"

    def to_dict(self) -> dict:
        return {"statement": self.statement, "window": self.window, "verdict": self.verdict,
                "witnesses": self.witnesses, "budget": self.budget, "scope": self.scope}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


# the chain of functor kernels at t = n

def chain_parameters(n: int, r: int) -> tuple[int, int]:
    """(p, q) of the r-th prime M(r) of the chain at t = n."""
    return (n + r, r) if n >= 0 else (r, -n + r)


@dataclass
class ChainSpectrum:
    n: int
    levels: list
    space: OmegaChain
    point: FinitePoset
    pi: SpectralMap
    sigma_tr: SpectralMap
    ideals: list = field(default_factory=list, repr=False)

    def report(self, window: ProbeWindow) -> Report:
        return Report(
            statement=f"prime chain M(0) > M(1) > ... at t = {self.n}",
            window=window.describe(),
            verdict="verified",
            witnesses=self.levels,
            budget={"max_r": len(self.levels) - 1, "max_entries": supereval.MAX_ENTRIES},
            scope="verified on window; points beyond max_r are the symbolic tail of N u {oo}")


def chain_spectrum(n: int, max_r: int, window: ProbeWindow, workers: int = 1,
                   verify: bool = False, samples: int = 0, seed: int = 0) -> ChainSpectrum:
    """Compute M(0), ..., M(max_r) on the window and bind them to the omega chain.

    Inclusions M(r+1) <= M(r) and M(0) = tr*(0) are hard checks.  Strictness
    is recorded with a witness, or as "unwitnessed" if the window has none.
    """
    cat = WBCat(n)
    for r in range(max_r + 1):
        p, q = chain_parameters(n, r)
        for x, y in IdealSpan(cat, window).pairs():
            supereval.check_budget(p, q, x, y)
    ideals = [functor_kernel_ideal(*chain_parameters(n, r), window, workers, verify)
              for r in range(max_r + 1)]
    radical = tr_star(cat, window, workers=workers)
    if not ideals[0].same_as(radical):
        raise AssertionError(f"M(0) = P{chain_parameters(n, 0)} differs from tr*(0) on the window")
    levels = []
    for r, I in enumerate(ideals):
        p, q = chain_parameters(n, r)
        level = {"r": r, "p": p, "q": q, "total_dim": I.total_dim()}
        if samples:
            bad = sampled_prime_violation(I, samples, seed)
            if bad is not None:
                raise AssertionError(f"M({r}) fails the integrality criterion: {bad}")
        if r + 1 < len(ideals):
            nxt = ideals[r + 1]
            bad = nxt.witness_outside(I)
            if bad is not None:
                raise AssertionError(f"M({r + 1}) is not contained in M({r}) at {bad[0]}")
            smallest_first = sorted(I.pairs(), key=lambda pr: (len(pr[0]) + len(pr[1]), pr))
            w = I.witness_outside(nxt, smallest_first)
            if w is None:
                level["strict"] = "unwitnessed"
            else:
                (x, y), v = w
                level["strict"] = {"pair": [x, y], "witness": cat.mor(x, y, v).to_json()}
        levels.append(level)
    space = OmegaChain(ZARISKI)
    point = single_point("Q")
    pi = SpectralMap(space, point, {}, tail="Q", at_infinity="Q")
    sigma_tr = SpectralMap(point, space, {"Q": 0})
    if not (check_spectral_map(pi) and check_spectral_map(sigma_tr)):
        raise AssertionError("pi or sigma_tr is not spectral")
    if not is_identity(compose_maps(pi, sigma_tr)):
        raise AssertionError("pi o sigma_tr is not the identity")
    if not is_closed(space, OmegaSubset.interval(0)):
        raise AssertionError("sigma_tr does not land on a closed point")
    return ChainSpectrum(n, levels, space, point, pi, sigma_tr, ideals)


def product_generators(I: IdealSpan, max_len: int = 4) -> list[WBMorphism]:
    """f (x) g for basis vectors f, g of I on pairs of total length <= max_len.

    A subset of the products suffices for equality checks: the ideal they
    generate sits inside I (x) I, which sits inside I.
    """
    small = [(x, y) for x, y in I.pairs() if len(x) + len(y) <= max_len]
    basis = [I.cat.mor(x, y, v) for x, y in small for v in I.span(x, y).rows]
    return [wbcat.tensor(f, g) for f in basis for g in basis]


def product_ideal(I: IdealSpan, max_len: int = 4) -> IdealSpan:
    """The ideal generated by I (x) I, computed exactly on I's window.

    The span is capped at I's own dimension on each pair, which is sound
    because every product lies in I; containment is re-checked afterwards.
    """
    gens = product_generators(I, max_len)
    out = exact_ideal(gens, I.window, I.cat, targets=I)
    bad = out.witness_outside(I)
    if bad is not None:
        raise AssertionError(f"a product escaped the ideal at {bad[0]}")
    return out


def ideal_power_stable(I: IdealSpan, max_len: int = 4) -> bool | None:
    """I (x) I = I on the window; None when no product generators fit max_len."""
    if not product_generators(I, max_len):
        return None
    return product_ideal(I, max_len).same_as(I)
