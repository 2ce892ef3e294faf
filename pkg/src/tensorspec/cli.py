"""Command-line front end: ``tsc <command> [options]``.

Exit codes: 0 when the result is computed or verified, 2 when a windowed
search ends in an honest "unknown", 1 on errors and invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import boolean_flat, freemod, idealcalc, projcat, spectral, supereval, wbcat
from .boolean_flat import BoolElem, ProductRing
from .cache import Cache, CacheMismatch, canonical
from .categories import WBCat
from .scalars import format_poly, format_rational, integer_roots
from .symgroup import Partition

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _parse_t(text):
    if text is None or text == "generic":
        return "generic"
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--t must be a rational or 'generic', got {text!r}")


def _parse_pq(text) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--kernel expects p,q, got {text!r}")
    if p < 0 or q < 0:
        raise UsageError("--kernel needs nonnegative p, q")
    return p, q


def _specialized(args) -> Fraction:
    t = _parse_t(args.t)
    if t == "generic":
        raise UsageError("this command needs a rational --t")
    return t


def _window(t, max_len: int):
    return WBCat(t).window(max_len)


def _pairs_json(I) -> dict:
    return {f"{x or '1'}->{y or '1'}": I.span(x, y).dim for x, y in I.pairs()}


def _bool_str(e: BoolElem) -> str:
    """1-based support, as printed to users."""
    return "{" + ",".join(str(i + 1) for i in sorted(e.support)) + "}"


# commands --------------------------------------------------------------------

def cmd_hom(args) -> dict:
    w, w2 = wbcat.parse_word(args.word), wbcat.parse_word(args.coword or args.word)
    mates = wbcat.enumerate_mates(w, w2)
    out = {"source": w, "target": w2, "dim": len(mates)}
    if len(mates) <= args.list_limit:
        out["diagrams"] = [wbcat.WBDiagram(w, w2, m).edges() for m in mates]
    return out


def cmd_gram(args) -> dict:
    w, w2 = wbcat.parse_word(args.word), wbcat.parse_word(args.coword or args.word)
    t = _parse_t(args.t)
    out = {"source": w, "target": w2, "t": str(t) if t == "generic" else format_rational(t),
           "dim": wbcat.hom_dimension(w, w2)}
    if t == "generic":
        det = idealcalc.gram_determinant(w, w2)
        out["determinant"] = format_poly(det)
        if det.is_zero():
            out["integer_roots"] = None
            out["all_integer"] = False
        else:
            roots, all_int = integer_roots(det)
            out["integer_roots"] = sorted(roots)
            out["all_integer"] = all_int
        return out
    cat = WBCat(t)
    g = idealcalc.gram_matrix(cat, w, w2)
    kernel = idealcalc.nullspace(idealcalc.transpose(g), cat.dim(w, w2)) if g else []
    out["rank"] = out["dim"] - len(kernel)
    out["kernel"] = [[format_rational(c) for c in v] for v in kernel]
    return out


def cmd_radical(args) -> dict:
    t = _specialized(args)
    cat = WBCat(t)
    window = cat.window(args.max_word_len)
    N = idealcalc.tr_star(cat, window, workers=args.threads)
    zero = idealcalc.zero_ideal(cat, window)
    pairs = sorted(N.pairs(), key=lambda pr: (len(pr[0]) + len(pr[1]), pr))
    probes = []
    verdict = "verified" if N.is_zero() else "unknown"
    for x, y in pairs:
        if N.span(x, y).dim and len(x) <= args.max_word_len // 2 and len(y) <= args.max_word_len // 2:
            f = cat.mor(x, y, N.span(x, y).rows[0])
            v = idealcalc.nilpotent_member(cat, f, zero, max_power=2)
            probes.append({"pair": [x, y], "morphism": f.to_json(), "nilpotent": v.verdict,
                           "power": v.power})
            if v.verdict == "yes":
                verdict = "verified"
            break
    if not probes and not N.is_zero():
        probes.append({"nilpotent": "unknown", "reason": "no square of a radical element fits "
                                                          "the window"})
    return {"t": format_rational(t), "window": window.describe(), "dims": _pairs_json(N),
            "total_dim": N.total_dim(), "nilpotence_probe": probes, "verdict": verdict,
            "note": "radical membership is windowed tensor-power nilpotence; "
                    "equality of tr*(0) with the nilpotents is not asserted"}


def cmd_kernel(args) -> dict:
    p, q = _parse_pq(args.kernel)
    if args.t is not None and _parse_t(args.t) != Fraction(p - q):
        raise UsageError("--t must equal p - q for a functor kernel")
    window = _window(p - q, args.max_word_len)
    I = idealcalc.functor_kernel_ideal(p, q, window, workers=args.threads, verify=args.verify)
    out = {"p": p, "q": q, "t": p - q, "window": window.describe(), "dims": _pairs_json(I),
           "total_dim": I.total_dim()}
    if args.word is not None:
        w, w2 = wbcat.parse_word(args.word), wbcat.parse_word(args.coword or args.word)
        out["basis"] = [[format_rational(c) for c in v]
                        for v in supereval.kernel_basis(w, w2, p, q)]
    return out


def cmd_chain(args) -> dict:
    window = _window(args.n, args.max_word_len)
    ch = idealcalc.chain_spectrum(args.n, args.max_r, window, workers=args.threads,
                                  verify=args.verify, samples=args.samples, seed=args.seed)
    out = ch.report(window).to_dict()
    if args.power_check:
        stable = idealcalc.ideal_power_stable(ch.ideals[0])
        out["power_stable"] = stable
        if stable is None:
            out["verdict"] = "unknown"
    return out


def cmd_schur(args) -> dict:
    lam = Partition.parse(args.lam)
    if args.kernel:
        p, q = _parse_pq(args.kernel)
        alpha = Fraction(p - q) if args.t is None else _specialized(args)
        ideal = idealcalc.TensorPrimeTag.functor_kernel(p, q)
    else:
        alpha = _specialized(args)
        ideal = idealcalc.TensorPrimeTag.trace_radical(alpha)
    vanishes = idealcalc.schur_vanishes(lam, ideal, alpha, on_unit=args.on_unit)
    return {"lambda": str(lam), "ideal": ideal.describe(), "t": format_rational(alpha),
            "object": "1" if args.on_unit else "L", "vanishes": vanishes}


def cmd_boolean(args) -> dict:
    if args.action == "orth":
        if args.atoms is None or not args.gens:
            raise UsageError("boolean orth needs --atoms and --gens")
        k = args.atoms
        gens = []
        for item in args.gens.split(";"):
            idx = [int(x) - 1 for x in item.split(",") if x.strip()]
            if any(not 0 <= i < k for i in idx):
                raise UsageError(f"generator {item!r} mentions atoms outside 1..{k}")
            gens.append(BoolElem.of(idx, k))
        family, principal = boolean_flat.orthogonalize(gens)
        return {"orthogonal": " ".join(_bool_str(e) for e in family),
                "principal": _bool_str(principal)}
    ring = ProductRing.parse(args.ring or "Q")
    rows = []
    for I in boolean_flat.ring_ideals(ring):
        idem = boolean_flat.idempotents_of_ideal(I)
        back = boolean_flat.ideal_of_idempotents(ring, idem)
        rows.append({"support": _bool_str(BoolElem.of(I.subset, ring.k)),
                     "idempotents": len(idem), "prime": I.is_prime(), "round_trip": back == I})
    return {"ring": str(ring), "ideals": rows}


def cmd_projcat(args) -> dict:
    ring = ProductRing.parse(args.ring or "Q")
    if args.action == "serre":
        rows = [{"support": _bool_str(BoolElem.of(S.subset, ring.k)),
                 "ring_ideal": _bool_str(BoolElem.of(I.subset, ring.k))}
                for S, I in projcat.enumerate_serre_ideals(ring)]
        return {"ring": str(ring), "count": len(rows), "serre_ideals": rows}
    sp = projcat.spectrum(ring)
    return {"ring": str(ring), "points": sp.points, "space": str(sp.space),
            "pi_sigma_identity": True, "pi_sigma_tr_identity": True}


def cmd_spec(args) -> dict:
    if not args.ring:
        raise UsageError("spec needs --ring")
    sp = freemod.spec_free_modules(args.ring, seed=args.seed)
    return {"ring": str(sp.ring), "points": [str(p) for p in sp.poset.points],
            "space": str(sp.poset), "checks": sp.checks, "pi_sigma_tr_identity": True}


def cmd_patch(args) -> dict:
    space = spectral.parse_space(args.space)
    patched = spectral.patch(space)
    out = {"space": str(space), "patch": str(patched), "hausdorff": True,
           "idempotent": spectral.patch(patched) == patched}
    if isinstance(space, spectral.FinitePoset):
        out["zariski_closed_sets"] = [sorted(map(str, c)) for c in space.closed_sets()]
        out["patch_closed_sets"] = len(patched.closed_sets())
    else:
        out["closed_sets"] = {"zariski": "whole space and [0, r]",
                              "constructible": "finite subsets of N and sets containing inf"}
    return out


COMMANDS = {
    "hom": cmd_hom, "gram": cmd_gram, "radical": cmd_radical, "kernel": cmd_kernel,
    "chain": cmd_chain, "schur": cmd_schur, "boolean": cmd_boolean, "projcat": cmd_projcat,
    "spec": cmd_spec, "patch": cmd_patch,
}

# options that change how a request runs but not what it computes
_NON_SEMANTIC = {"format", "cache_dir", "no_cache", "verify", "threads", "command", "log_level"}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tsc", description="Exact tensor-ideal computations at desk scale.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--cache-dir", default=os.environ.get("TSC_CACHE_DIR"))
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--verify", action="store_true",
                        help="recompute and compare against the cache; re-check closures")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("hom", "dimension and diagram basis of Hom(word, coword)")
    p.add_argument("--word", required=True)
    p.add_argument("--coword")
    p.add_argument("--list-limit", type=int, default=120)

    p = add("gram", "Gram determinant (generic t) or Gram kernel (rational t)")
    p.add_argument("--word", required=True)
    p.add_argument("--coword")
    p.add_argument("--t", default="generic")

    p = add("radical", "trace-form radical tr*(0) on a window, with a nilpotence probe")
    p.add_argument("--t", required=True)
    p.add_argument("--max-word-len", type=int, default=2)

    p = add("kernel", "kernel of the evaluation functor F(p|q) on a window")
    p.add_argument("--kernel", required=True, metavar="P,Q")
    p.add_argument("--t")
    p.add_argument("--max-word-len", type=int, default=2)
    p.add_argument("--word")
    p.add_argument("--coword")

    p = add("chain", "the descending chain of primes M(r) at t = n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-r", type=int, default=1)
    p.add_argument("--max-word-len", type=int, default=2)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--power-check", action="store_true")

    p = add("schur", "whether the Schur functor S_lambda kills L modulo a prime")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--kernel", metavar="P,Q")
    p.add_argument("--t")
    p.add_argument("--on-unit", action="store_true")

    p = add("boolean", "idempotents of finite products of fields")
    p.add_argument("action", choices=("orth", "ideals"))
    p.add_argument("--atoms", type=int)
    p.add_argument("--gens")
    p.add_argument("--ring")

    p = add("projcat", "Serre ideals and spectrum of projective modules over a product of fields")
    p.add_argument("action", choices=("serre", "spectrum"))
    p.add_argument("--ring")

    p = add("spec", "tensor spectrum of free modules over a small ring")
    p.add_argument("--ring")

    p = add("patch", "constructible topology of a spectral space")
    p.add_argument("--space", required=True)
    return parser


def request_of(args) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _NON_SEMANTIC}
    return {"command": args.command, "params": params}


def render_table(payload: dict) -> str:
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if v is None:
            return "null"
        if isinstance(v, str):
            return v
        return canonical(v)
    keys = list(payload)
    width = max((len(k) for k in keys), default=0)
    return "\n".join(f"{k + ':':<{width + 1}} {cell(payload[k])}" for k in keys)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    return render_table(payload)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING))
    cache = Cache(None if args.no_cache else args.cache_dir)
    try:
        payload = cache.get_or_compute(request_of(args), lambda: COMMANDS[args.command](args),
                                       verify=args.verify)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"tsc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (supereval.BudgetExceeded, CacheMismatch, AssertionError) as exc:
        print(f"tsc {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(render(payload, args.format), file=stdout)
    return EXIT_UNKNOWN if payload.get("verdict") == "unknown" else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
