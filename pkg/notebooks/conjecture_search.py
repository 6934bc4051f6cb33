"""
Searching for a counterexample to the n-term extension
======================================================

The two-term multiplicative refinement suggests an n-term version with
h = max/min of the points and r the smallest weight.  We sample the
simplex and a box of points, then polish the best candidates with a
pattern search.  A negative gap would be a counterexample.
"""

from specht_young import SearchConfig, certify
from specht_young.conjecture import gap

print(gap([1.0, 2.0, 9.0], (0.1, 0.3, 0.6)))

# the search is fully determined by the seed
config = SearchConfig(n=3, box_lo=0.1, box_hi=10.0, samples=200_000, restarts=20, seed=42)
print()
print(certify(config))

# the smallest gaps sit at the all-equal points, where the inequality is tight
