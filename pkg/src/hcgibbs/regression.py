"""Reference-value regression checks behind ``hcgibbs verify``.

Functions are looked up through their modules at call time so that a
patched (deliberately broken) implementation is caught.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import core, oracle, phase, roots, systems
from . import reductions as red

STICK_DECIMALS = {
    5: (0.8800478543, 1.078094055),
    6: (0.6655887267, 1.207665883),
    7: (0.4661975987, 1.34764746),
}
DECIMAL_TOL = 1e-6


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _stick_decimals(k):
    def check():
        got = phase.critical_stick(k)
        ref = STICK_DECIMALS[k]
        err = max(abs(a - b) for a, b in zip(got, ref))
        return err < DECIMAL_TOL, f"({got[0]:.10g}, {got[1]:.10g}) err {err:.1e}"
    return check


def _phi_wp_at_2():
    v = red.phi_wp(2.0)
    return abs(v - 4) < 1e-12, f"phi(2) = {v:.12g}"


def _psi_at_2():
    v = red.psi12(Fraction(2))
    return v == 0, f"psi(2) = {v}"


def _h6_at_2_4():
    v = red.h6(Fraction(2), Fraction(4))
    return v == 0, f"h(2, 4) = {v}"


def _h6_at_1():
    lams = [Fraction(p, q) for p, q in ((1, 3), (5, 2), (7, 1))]
    ok = all(red.h6(Fraction(1), lam) == lam for lam in lams)
    return ok, "h(1, lam) = lam at lam in {1/3, 5/2, 7}"


def _d1_signs():
    vals = {k: red.key_d1(k) for k in (2, 3, 4)}
    ok = vals == {2: -11, 3: -7, 4: 61}
    return ok, f"D1 = {vals}"


def _key_closed_form():
    l1, l2 = red.key_lambda_cr(4)
    z1, z2 = red.key_extrema(4)
    e = max(abs(l1 / red.key_phi1(z1, 4) - 1), abs(l2 / red.key_phi1(z2, 4) - 1))
    return e < 1e-9, f"k=4: ({l1:.10g}, {l2:.10g}) rel err {e:.1e}"


def _key_z0_equals_z1():
    worst = 0.0
    for k in (2, 3, 4):
        for lam in (0.5, 1.0, 5.0):
            r = systems.solve_fixed_point(
                lambda z: systems.ti_map_generic(core.KEY, k, lam, z), np.ones(3))
            worst = max(worst, abs(r.z[0] - r.z[1]))
    return worst < 1e-10, f"max |z0 - z1| = {worst:.1e}"


def _two_state_unique():
    counts = set()
    for k in (1, 2, 3, 5):
        for lam in np.geomspace(1e-2, 1e2, 9):
            res = roots.count_fixed_points(lambda z: systems.two_state_ti_map(k, lam, z),
                                           1e-300, 1.0)
            counts.add(res.count)
    return counts == {1}, f"counts seen: {sorted(counts)}"


def _stick_multiple():
    r = phase.classify_stick(5, 1.0)
    return (r.regime is phase.Regime.MULTIPLE and r.ti_count == 3), f"k=5, lam=1: {r.regime.value}, {r.ti_count}"


def _stick_small_k():
    r = phase.classify_stick(2, 7.3)
    return r.regime is phase.Regime.UNIQUE, f"k=2, lam=7.3: {r.regime.value}"


def _key_unique():
    lam = 2 * red.key_lambda_cr(4)[1]
    a = phase.classify_key(3, 2.0)
    b = phase.classify_key(4, lam)
    ok = a.regime is b.regime is phase.Regime.UNIQUE
    return ok, f"k=3, lam=2: {a.regime.value}; k=4, lam=2*lambda2: {b.regime.value}"


def _wp_regimes():
    regs = [phase.classify_wp(lam) for lam in (3.0, 4.0, 5.0)]
    totals = [r.total for r in regs]
    names = [r.regime.value for r in regs]
    ok = names == ["Unique", "Critical", "Multiple"] and totals == [1, 2, 3]
    return ok, f"regimes {names}, totals {totals}"


def _wp_oracle():
    r = phase.classify_wp(5.0)
    v = max(oracle.wp_consistency_check(2, 1, 5.0, law) for law in r.laws)
    return v < 1e-9, f"max violation {v:.1e}"


def _consistency(g, k, n, lam):
    def check():
        if g.num_states == 2:
            start = 0.5
            fmap = lambda z: systems.two_state_ti_map(k, lam, z)  # noqa: E731
        else:
            start = np.ones(3)
            fmap = lambda z: systems.ti_map_generic(g, k, lam, z)  # noqa: E731
        law = systems.solve_fixed_point(fmap, start).z
        v = oracle.check_consistency(g, k, n, lam, law)
        return v < 1e-10, f"{g.name} k={k} n={n}: violation {v:.1e}"
    return check


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("stick critical values k=5", _stick_decimals(5)),
    ("stick critical values k=6", _stick_decimals(6)),
    ("stick critical values k=7", _stick_decimals(7)),
    ("phi(2) = 4", _phi_wp_at_2),
    ("psi(2) = 0", _psi_at_2),
    ("h(2,4) = 0", _h6_at_2_4),
    ("h(1,lam) = lam", _h6_at_1),
    ("key D1 values", _d1_signs),
    ("key closed-form critical values", _key_closed_form),
    ("key fixed points have z0 = z1", _key_z0_equals_z1),
    ("two-state TI uniqueness", _two_state_unique),
    ("stick k=5 multiplicity", _stick_multiple),
    ("stick k=2 uniqueness", _stick_small_k),
    ("key uniqueness outside band", _key_unique),
    ("weakly periodic regimes", _wp_regimes),
    ("weakly periodic oracle check", _wp_oracle),
    ("consistency two-state", _consistency(core.TWO_STATE, 2, 2, 4.0)),
    ("consistency stick", _consistency(core.STICK, 2, 1, 1.0)),
    ("consistency key", _consistency(core.KEY, 2, 1, 1.0)),
]


def run_checks() -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out


def all_passed(results) -> bool:
    return all(r.passed for r in results)
