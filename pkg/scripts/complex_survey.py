"""How often d^2 d^1 = 0 and d^3 d^2 = 0 hold, per convention and cochain space, over the small catalog.

With --samples N a seeded random subset of (table, module) pairs is used instead of all of them.
"""
import argparse
import collections
import math
import random

from fquandle import cohomology as co
from fquandle.classify import classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=3)
    ap.add_argument("--moduli", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--samples", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    tables = [t for n in range(1, args.max_order + 1) for t in classify(n).tables]
    mods = [co.ScalarModule(m, T, S) for m in args.moduli for T in range(1, m)
            if math.gcd(T, m) == 1 for S in range(m)]
    jobs = [(t, mod) for t in tables for mod in mods]
    if args.samples:
        jobs = random.Random(args.seed).sample(jobs, min(args.samples, len(jobs)))
    tally = collections.Counter()
    for t, mod in jobs:
        s_zero = mod.S % mod.m == 0
        for conv in ("theorem", "extension"):
            for cochains in co.COCHAINS:
                ok = co.verify_complex(t, mod, conv, cochains)
                tally[(conv, cochains, "S=0" if s_zero else "S!=0", ok)] += 1
    print(f"{len(jobs)} (table, module) pairs")
    for conv in ("theorem", "extension"):
        for cochains in co.COCHAINS:
            for s in ("S=0", "S!=0"):
                good, bad = tally[(conv, cochains, s, True)], tally[(conv, cochains, s, False)]
                print(f"  {conv:9s} {cochains:10s} {s:5s}: {good} complex, {bad} not")


if __name__ == "__main__":
    main()
