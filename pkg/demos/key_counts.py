"""Certified fixed-point counts for the key model.

The closed-form activities from the extrema of phi1 are printed next to
the counts actually found there; multiplicity only shows up for k >= 7
at small activity.
"""

import numpy as np

from hcgibbs import phase
from hcgibbs import reductions as red

for k in range(4, 8):
    l1, l2 = red.key_lambda_cr(k)
    mid = 0.5 * (l1 + l2)
    counts = [phase.classify_key(k, lam).ti_count for lam in (0.5 * l1, l1, mid, l2, 2 * l2)]
    print(f"k={k}  lambda1={l1:.6g}  lambda2={l2:.6g}  counts at (l1/2, l1, mid, l2, 2 l2): {counts}")

print("\nsmall activities, k = 7 and 8")
for k in (7, 8):
    grid = np.linspace(0.02, 0.06, 41)
    row = "".join(str(r.ti_count) for r in phase.sweep("key", k, grid))
    print(f"k={k}  {row}")
