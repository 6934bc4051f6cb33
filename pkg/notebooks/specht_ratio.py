"""
Specht's ratio
==============

S(h) measures how far the geometric mean can fall below the arithmetic
mean once the spread of the data is bounded by h.  It equals 1 at h = 1,
grows without bound at both ends and satisfies S(h) = S(1/h).
"""

import numpy as np

from specht_young import specht_ratio

# a few landmark values
for h in (1.0, 1.0 + 1e-6, np.sqrt(2.0), 2.0, 4.0, 1e6):
    print(f"S({h:<12.8g}) = {specht_ratio(h):.15g}")

# the formula has a removable point at h = 1; the Taylor branch takes over
# inside |h - 1| <= 1e-5 and joins the closed form without a visible seam
h = 1.0 + np.linspace(-3e-5, 3e-5, 7)
print("\nnear h = 1")
for x, s in zip(h - 1.0, specht_ratio(h)):
    print(f"  h - 1 = {x:+.1e}   S - 1 = {s - 1.0:.6e}")

# symmetry under inversion over twenty decades
h = np.geomspace(1e-10, 1e10, 2001)
err = np.max(np.abs(specht_ratio(h) / specht_ratio(1.0 / h) - 1.0))
print(f"\nmax |S(h)/S(1/h) - 1| on [1e-10, 1e10]: {err:.2e}")
