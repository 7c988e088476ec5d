"""Exact finite-volume check of boundary laws, with perturbed controls."""

import numpy as np

from hcgibbs import KEY, STICK, TWO_STATE, oracle, systems

rng = np.random.default_rng(0)

z = systems.solve_fixed_point(lambda t: systems.two_state_ti_map(2, 4.0, t), 0.5).z
cases = [(TWO_STATE, 2, 4.0, z)]
for g in (STICK, KEY):
    z = systems.solve_fixed_point(lambda t: systems.ti_map_generic(g, 2, 1.0, t), np.ones(3)).z
    cases.append((g, 1, 1.0, z))

for g, n, lam, law in cases:
    good = oracle.check_consistency(g, 2, n, lam, law)
    bad = oracle.check_consistency(g, 2, n, lam, law * (1 + 0.05 * rng.standard_normal(law.shape)))
    print(f"{g.name:9s} n={n}  fixed point {good:.1e}   perturbed {bad:.1e}")
