"""Gibbs boundary laws for hard-core models on Cayley trees.

Submodules:

* :mod:`hcgibbs.core` -- constraint graphs and tree parameters
* :mod:`hcgibbs.systems` -- boundary-law fixed-point maps and a damped solver
* :mod:`hcgibbs.reductions` -- scalar reductions, polynomials, closed forms
* :mod:`hcgibbs.roots` -- certified real-root isolation and counting
* :mod:`hcgibbs.phase` -- critical activities and regime classification
* :mod:`hcgibbs.oracle` -- brute-force finite-volume measures
* :mod:`hcgibbs.cli` -- the ``hcgibbs`` command
"""

from .core import KEY, STICK, TWO_STATE, ConstraintGraph, GraphName, TreeParams, builtin_graph
from .phase import (
    Model,
    PhaseReport,
    Regime,
    classify,
    classify_key,
    classify_stick,
    classify_wp,
    critical_stick,
    critical_wp,
    sweep,
)
from .reductions import key_extrema, key_lambda_cr
from .roots import Certificate, Polynomial, RootBracket, count_fixed_points, isolate_roots
from .systems import solve_fixed_point

__version__ = "0.1.0"

__all__ = [
    "KEY", "STICK", "TWO_STATE", "ConstraintGraph", "GraphName", "TreeParams", "builtin_graph",
    "Model", "PhaseReport", "Regime", "classify", "classify_key", "classify_stick",
    "classify_wp", "critical_stick", "critical_wp", "sweep",
    "key_extrema", "key_lambda_cr",
    "Certificate", "Polynomial", "RootBracket", "count_fixed_points", "isolate_roots",
    "solve_fixed_point",
]
