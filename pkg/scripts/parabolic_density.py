#!/usr/bin/env python3
"""Empirical density of parabolic primes k^2 + 1 per decade of k.

Whether infinitely many such primes exist is open.  This prints the observed
count and density per decade of k, together with the running partial sum of
1/k^2 over the parabolic k (which stays under pi^2/6 no matter how the open
question resolves).  The numbers are reported as instrumentation only; they
argue neither direction.

Usage: python3 scripts/parabolic_density.py [--decades D] [--convention C]
"""

import argparse
from fractions import Fraction

from landau.figurate import zeta_partial
from landau.primes import PrimeConvention, is_prime


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--decades", type=int, default=5, metavar="D",
                        help="survey k up to 10^D (default 5)")
    parser.add_argument("--convention", choices=["include1", "exclude1"],
                        default="include1", help="whether 1 counts as prime")
    args = parser.parse_args()
    conv = PrimeConvention(args.convention)

    print(f"parabolic primes k^2 + 1, k up to 10^{args.decades}, "
          f"convention {conv.value}\n")
    print("decade            count    density    partial sum of 1/k^2")
    running = Fraction(0)
    cumulative = 0
    lo = 1
    for d in range(1, args.decades + 1):
        hi = 10**d
        count = 0
        for k in range(lo, hi + 1):
            if is_prime(k * k + 1, conv):
                count += 1
                running += Fraction(1, k * k)
        cumulative += count
        width = hi - lo + 1
        print(f"k in [{lo:>7d}, {hi:>7d}]  {count:6d}  {count / width:9.5f}"
              f"    {float(running):.9f}")
        lo = hi + 1

    partial, ceiling = zeta_partial(10 ** args.decades)
    assert partial == running
    print(f"\ncumulative parabolic k: {cumulative}")
    exact = (
        f" = {partial.numerator}/{partial.denominator}"
        if partial.denominator < 10**12
        else ""
    )
    print(f"partial sum {float(partial):.9f}{exact} stays under pi^2/6 = {ceiling:.9f}")
    print("(density per decade and the bounded partial sum are compatible with "
          "both a finite and an infinite family; no side is taken)")


if __name__ == "__main__":
    main()
