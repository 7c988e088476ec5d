"""Weakly periodic laws of the two-state model at k = 2 appear at lambda = 4."""

import numpy as np

from hcgibbs import oracle, phase

x0, lam_cr = phase.critical_wp()
print(f"critical point x0 = {x0}, lambda_cr = {lam_cr}")

for lam in (3.0, 3.99, 4.0, 4.01, 5.0, 8.0):
    r = phase.classify_wp(lam)
    xs = ", ".join(f"{x:.6f}" for x in r.roots)
    print(f"lambda={lam:5.2f}  {r.regime.value:8s}  total={r.total}  x = {xs}")

# each weakly periodic law passes the finite-volume compatibility check
lam = 5.0
for z8 in phase.classify_wp(lam).laws[1:]:
    v = oracle.wp_consistency_check(2, 1, lam, z8)
    print(f"wp law {np.round(z8, 4)}  violation {v:.1e}")
