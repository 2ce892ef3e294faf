"""Print generic Gram determinants of End(w) and their integer roots."""

import argparse
import time

from tensorspec.idealcalc import gram_determinant
from tensorspec.scalars import format_poly, integer_roots
from tensorspec.wbcat import hom_dimension, words_up_to


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--full", action="store_true", help="print whole polynomials")
    args = ap.parse_args()
    print(f"{'word':<8}{'dim':>5}{'deg':>6}  {'roots':<26}{'all int':<9}sec")
    for w in words_up_to(args.max_len):
        start = time.perf_counter()
        det = gram_determinant(w)
        roots, all_int = integer_roots(det)
        elapsed = time.perf_counter() - start
        print(f"{w or '1':<8}{hom_dimension(w, w):>5}{det.degree:>6}  "
              f"{str(sorted(roots)):<26}{str(all_int):<9}{elapsed:.2f}")
        if args.full:
            print("   ", format_poly(det))


if __name__ == "__main__":
    main()
