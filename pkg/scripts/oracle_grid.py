#!/usr/bin/env python3
"""Cross-check the conic solubility search against the Hilbert symbol on a
grid of coefficient pairs.  Any disagreement is printed; a clean run ends
with a one-line tally.

Usage: python3 scripts/oracle_grid.py [--bound B] [--primes 2,3,5,7]
"""

import argparse

from obstruction_lab.localsymbols import Place, hilbert_symbol, solubility_oracle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=25)
    ap.add_argument("--primes", default="2,3,5,7,11,13")
    args = ap.parse_args()

    places = [Place.finite(int(p)) for p in args.primes.split(",")]
    places.append(Place.real())
    checked = disagreements = 0
    B = args.bound
    for a in range(-B, B + 1):
        if a == 0:
            continue
        for b in range(-B, B + 1):
            if b == 0:
                continue
            for place in places:
                checked += 1
                expected = hilbert_symbol(a, b, place) == 1
                got = solubility_oracle(a, b, place)
                if got is not expected:
                    disagreements += 1
                    print("mismatch a=%d b=%d place=%s symbol=%s search=%s"
                          % (a, b, place, expected, got))
    print("%d checks, %d disagreements" % (checked, disagreements))


if __name__ == "__main__":
    main()
