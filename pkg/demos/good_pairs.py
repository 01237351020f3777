"""
How many blocks do random parents have?
=======================================

A pair of parents is called good when its block count stays below
1.1 ln k.  Fewer blocks mean a cheaper recombination.  The fraction of
good pairs is estimated for several k by sampling.
"""

import math

from orprec import exact_good_pair_fraction, good_pair_fraction

print("k    exact")
for k in range(2, 7):
    print(k, "  ", exact_good_pair_fraction(k))

print("\nk      threshold  fraction")
for k in (10, 100, 1000):
    frac = good_pair_fraction(k, 2000, seed=k)
    print(f"{k:<6} {1.1 * math.log(k):9.2f}  {frac:.3f}")
