#!/usr/bin/env python3
"""Reference generator trace, computed by direct iteration only.

Prints the first N outputs for each seed, one value per line, in decimal.
Used once to produce tests/data/rng_golden.txt; kept so the trace can be
regenerated and audited independently of the C++ implementation.
"""

import argparse

MASK = (1 << 64) - 1
MULT = 6364136223846793005
INC = 1442695040888963407
MIX_MULT = 0xFF51AFD7ED558CCD


def mix(s: int) -> int:
    s ^= s >> 33
    s = (s * MIX_MULT) & MASK
    s ^= s >> 33
    return s


def trace(seed: int, count: int):
    state = (seed + INC) & MASK
    state = (MULT * state + INC) & MASK
    out = []
    for _ in range(count):
        out.append(mix(state))
        state = (MULT * state + INC) & MASK
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", default="0,1,42,4294967296",
                    help="comma-separated seed list")
    ap.add_argument("--count", type=int, default=64,
                    help="outputs per seed")
    args = ap.parse_args()
    for seed in (int(s) for s in args.seeds.split(",")):
        for value in trace(seed, args.count):
            print(value)


if __name__ == "__main__":
    main()
