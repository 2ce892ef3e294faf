"""Compute the descending chain M(0) > M(1) > ... at t = n and dump the report as JSON."""

import argparse
import json

from tensorspec.categories import WBCat
from tensorspec.idealcalc import chain_spectrum, ideal_power_stable


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--max-r", type=int, default=1)
    ap.add_argument("--max-len", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--power-check", action="store_true")
    args = ap.parse_args()
    window = WBCat(args.n).window(args.max_len)
    ch = chain_spectrum(args.n, args.max_r, window, workers=args.workers)
    report = ch.report(window).to_dict()
    if args.power_check:
        report["power_stable"] = ideal_power_stable(ch.ideals[0])
    print(json.dumps(report, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
