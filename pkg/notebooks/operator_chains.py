"""
Operator versions of the inequalities
=====================================

Replace a, b by positive definite matrices and the means by their
operator counterparts.  The multiplicative chain then needs the spectra
of A and B to be separated, which fixes the ratio h fed to Specht's ratio.
"""

import numpy as np

from specht_young import random_spd_with_spectrum, verify_add_chain, verify_mult_chain
from specht_young.operator import compare_refinements

rng = np.random.default_rng(7)
a = random_spd_with_spectrum(4, 1.0, 2.0, rng)
b = random_spd_with_spectrum(4, 3.0, 6.0, rng)

rep = verify_mult_chain(a, b, 0.3)
print(f"bounds: {rep.bounds}")
print(f"Specht factor S(h^r) = {rep.specht_factor:.12f}")
for link in rep.links:
    print(f"  {link.name:<24} min eig gap = {link.min_eig_gap:.3e}")

# the additive chain holds for any pair, separated or not
c = random_spd_with_spectrum(4, 0.1, 10.0, rng)
print(f"\nadditive chain on an unseparated pair: passed = {verify_add_chain(a, c, 0.6).passed}")

# the difference of the two refinements is typically indefinite
lo, hi = compare_refinements(a, b, 0.3)
print(f"min eig of (mult - add) = {lo:.3e}, min eig of (add - mult) = {hi:.3e}")
