"""Compare the windowed fixpoint ideal with the exact generated ideal, pair by pair.

The fixpoint only composes through objects inside the window, so it can miss
morphisms that factor through longer words.  The exact route bends every
Hom space to End and generates there.
"""

import argparse
from fractions import Fraction

from tensorspec.categories import WBCat
from tensorspec.idealcalc import exact_ideal, generate_ideal, tr_star
from tensorspec.wbcat import WBMorphism, swap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=Fraction, default=Fraction(1))
    ap.add_argument("--max-len", type=int, default=3)
    args = ap.parse_args()
    cat = WBCat(args.t)
    window = cat.window(args.max_len)
    gen = WBMorphism.identity("uu", args.t) - swap(args.t)
    fix = generate_ideal(cat, [gen], window)
    exact = exact_ideal([gen], window, cat)
    radical = tr_star(cat, window)
    print(f"{'pair':<16}{'hom':>5}{'fixpoint':>10}{'exact':>7}{'tr*(0)':>8}")
    for x, y in exact.pairs():
        dims = [fix.span(x, y).dim, exact.span(x, y).dim, radical.span(x, y).dim]
        if any(dims):
            print(f"{(x or '1') + '->' + (y or '1'):<16}{cat.dim(x, y):>5}"
                  f"{dims[0]:>10}{dims[1]:>7}{dims[2]:>8}")
    print(f"{'total':<21}{fix.total_dim():>10}{exact.total_dim():>7}{radical.total_dim():>8}")
    print("fixpoint inside exact:", fix.issubset(exact))


if __name__ == "__main__":
    main()
