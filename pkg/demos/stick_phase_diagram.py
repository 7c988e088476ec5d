"""Regimes of the stick model over (k, lambda).

Prints the two critical activities for k = 5..12 and a coarse text map
of the number of translation-invariant laws.
"""

import numpy as np

from hcgibbs import phase

print(" k   lambda1        lambda2")
for k in range(5, 13):
    l1, l2 = phase.critical_stick(k)
    print(f"{k:2d}   {l1:.10f}   {l2:.10f}")

grid = np.geomspace(0.05, 3.0, 60)
print("\nnumber of TI laws (lambda from 0.05 to 3, log scale)")
for k in range(2, 11):
    row = "".join(str(r.ti_count) for r in phase.sweep("stick", k, grid))
    print(f"k={k:2d} {row}")
