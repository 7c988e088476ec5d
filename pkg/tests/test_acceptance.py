"""Acceptance criteria, one marker per criterion; tolerances are pinned here."""

import time
from fractions import Fraction

import numpy as np
import pytest

from hcgibbs import oracle as orc
from hcgibbs import phase as ph
from hcgibbs import reductions as red
from hcgibbs import systems as sy
from hcgibbs.core import KEY, STICK, TWO_STATE
from hcgibbs.roots import (
    count_fixed_points,
    descartes_positive_bound,
    isolate_polynomial_roots,
)

rng = np.random.default_rng(2024)


def criterion(n, summary):
    return pytest.mark.criterion(n, summary)


# --- 1 ----------------------------------------------------------------------

C1 = criterion(1, "wp totals {1,2,3} at lam {3, 4+-1e-10, 5}; x0=2, lam_cr=4 to 1e-9; < 1 s")


@C1
def test_c1_wp_criticality():
    ph.critical_wp.cache_clear()
    t0 = time.perf_counter()
    x0, lam_cr = ph.critical_wp()
    totals = [ph.classify_wp(lam).total for lam in (3.0, 4.0 - 1e-10, 4.0, 4.0 + 1e-10, 5.0)]
    elapsed = time.perf_counter() - t0
    assert totals == [1, 2, 2, 2, 3]
    assert abs(x0 - 2) < 1e-9 and abs(lam_cr - 4) < 1e-9
    assert abs(red.phi_wp(x0) - lam_cr) < 1e-9
    assert elapsed < 1.0


# --- 2 ----------------------------------------------------------------------

C2 = criterion(2, "critical_stick(5,6,7) decimals to 1e-6 absolute; < 1 s total")
STICK_DECIMALS = {5: (0.8800478543, 1.078094055), 6: (0.6655887267, 1.207665883),
                  7: (0.4661975987, 1.34764746)}


@C2
def test_c2_stick_decimals():
    ph.stick_critical_data.cache_clear()
    t0 = time.perf_counter()
    got = {k: ph.critical_stick(k) for k in STICK_DECIMALS}
    elapsed = time.perf_counter() - t0
    for k, want in STICK_DECIMALS.items():
        assert abs(got[k][0] - want[0]) < 1e-6 and abs(got[k][1] - want[1]) < 1e-6
    assert elapsed < 1.0


# --- 3 ----------------------------------------------------------------------

C3 = criterion(3, "stick k in {2,3,4}: one fixed point at 50 log-spaced lam in [1e-3, 1e3]")


@C3
@pytest.mark.parametrize("k", [2, 3, 4])
def test_c3_stick_unique_small_k(k):
    for lam in np.geomspace(1e-3, 1e3, 50):
        res = count_fixed_points(lambda z: red.stick_f(z, k, lam), 0.99 * lam,
                                 1.01 * lam * 2**k, lambda z: red.stick_f_prime(z, k, lam))
        assert res.count == 1 and not res.tangencies


# --- 4 ----------------------------------------------------------------------

C4 = criterion(4, "key D1 = -11, -7, 61; closed form vs phi1 rel 1e-9 for k=4..10; "
                  "count 1 at 0.5 lam1 and 2 lam2, >= 2 at band midpoint")


def _key_count(k, lam):
    res = count_fixed_points(lambda z: red.key_f(z, k, lam), 0.99 * lam,
                             ph.key_upper_bound(k, lam), lambda z: red.key_f_prime(z, k, lam))
    return res.count


@C4
def test_c4_discriminant():
    assert (red.key_d1(2), red.key_d1(3), red.key_d1(4)) == (-11, -7, 61)
    assert all(isinstance(red.key_d1(k), int) for k in (2, 3, 4))


@C4
@pytest.mark.parametrize("k", range(4, 11))
def test_c4_closed_form(k):
    l1, l2 = red.key_lambda_cr(k)
    z1, z2 = red.key_extrema(k)
    assert abs(l1 / red.key_phi1(z1, k) - 1) < 1e-9
    assert abs(l2 / red.key_phi1(z2, k) - 1) < 1e-9


@C4
def test_c4_unique_outside_band():
    l1, l2 = red.key_lambda_cr(4)
    assert _key_count(4, 0.5 * l1) == 1
    assert _key_count(4, 2 * l2) == 1


@C4
def test_c4_multiple_at_midpoint():
    l1, l2 = red.key_lambda_cr(4)
    assert _key_count(4, (l1 + l2) / 2) >= 2


# --- 5 ----------------------------------------------------------------------

C5 = criterion(5, "h6(1,lam)=lam and h6(2,lam)=-(lam-4)(5lam+4) exactly at 20 rationals; "
                  "psi(2)=0 exactly; one psi root on (1,100)")


@C5
def test_c5_polynomial_anchors():
    lams = [Fraction(int(p), int(q)) for p, q in zip(rng.integers(1, 500, 20), rng.integers(1, 50, 20))]
    for lam in lams:
        assert red.h6(Fraction(1), lam) == lam
        assert red.h6(Fraction(2), lam) == -(lam - 4) * (5 * lam + 4)
    assert red.psi12_polynomial()(Fraction(2)) == 0
    assert len(isolate_polynomial_roots(red.psi12_polynomial(), 1, 100)) == 1


# --- 6 ----------------------------------------------------------------------

C6 = criterion(6, "key system: converged solutions over {2,3,4}x{0.5,1,2,5,10} have |z0-z1| < 1e-10")


@C6
def test_c6_key_z0_equals_z1():
    sols = []
    for k in (2, 3, 4):
        for lam in (0.5, 1.0, 2.0, 5.0, 10.0):
            for start in ([1.0, 1.0, 1.0], [3.0, 0.5, 2.0]):
                r = sy.solve_fixed_point(lambda z: sy.key_system(k, lam, z), start)
                sols.append(r.z)
    assert len(sols) >= 20
    for z in sols:
        assert abs(z[0] - z[1]) < 1e-10


# --- 7 ----------------------------------------------------------------------

C7 = criterion(7, "oracle violation < 1e-10 on (TwoState,2,2), (Stick,2,1), (Key,2,1); "
                  "perturbed laws > 1e-4; < 10 s")


@C7
def test_c7_consistency_oracle():
    t0 = time.perf_counter()
    cases = []
    for lam in (1.0, 4.0):
        z = sy.solve_fixed_point(lambda t: sy.two_state_ti_map(2, lam, t), 0.5).z
        cases.append((TWO_STATE, 2, lam, z))
    for g in (STICK, KEY):
        z = sy.solve_fixed_point(lambda t: sy.ti_map_generic(g, 2, 1.0, t), np.ones(3)).z
        cases.append((g, 1, 1.0, z))
    for g, n, lam, z in cases:
        assert orc.check_consistency(g, 2, n, lam, z) < 1e-10
        for _ in range(5):
            bad = z * (1 + rng.choice([-1, 1], z.shape) * rng.uniform(0.05, 0.2, z.shape))
            assert orc.check_consistency(g, 2, n, lam, bad) > 1e-4
    assert time.perf_counter() - t0 < 10.0


# --- 8 ----------------------------------------------------------------------

C8 = criterion(8, "generic map matches stick/key at 100 points rel 1e-12; wp4 keeps I2 to 1e-14; "
                  "lam=5 lift residual < 1e-10")


@C8
def test_c8_generic_map():
    for _ in range(100):
        z = np.exp(rng.uniform(-3, 3, 3))
        k = int(rng.integers(1, 8))
        lam = float(np.exp(rng.uniform(-3, 3)))
        for g, ref in ((STICK, sy.stick_system), (KEY, sy.key_system)):
            a, b = sy.ti_map_generic(g, k, lam, z), ref(k, lam, z)
            assert np.max(np.abs(a - b) / np.abs(b)) < 1e-12


@C8
def test_c8_wp4_invariant_set():
    for _ in range(100):
        a, b = np.exp(rng.uniform(-3, 3, 2))
        k = int(rng.integers(1, 7))
        i = int(rng.integers(1, k + 2))
        out = sy.wp4_map(k, i, float(np.exp(rng.uniform(-2, 2))), [a, b, a, b])
        assert abs(out[0] - out[2]) <= 1e-14 * out[0]
        assert abs(out[1] - out[3]) <= 1e-14 * out[1]


@C8
def test_c8_wp_lift():
    lam = 5.0
    r = ph.classify_wp(lam)
    assert r.wp_count == 2
    for x in r.roots[1:]:
        z4 = ph.wp_law_from_x(x, lam)
        assert sy.in_i2(z4)
        z8 = sy.lift_wp4_to_wp8(2, 1, lam, z4)
        assert sy.residual(lambda z: sy.wp8_map(2, 1, lam, z), z8) < 1e-10


# --- 9 ----------------------------------------------------------------------

C9 = criterion(9, "f/phi round trips 1e-13; phi1 derivative vs finite difference rel 1e-5; "
                  "grid-halving stability; Descartes consistency")


@C9
def test_c9_round_trips():
    for _ in range(200):
        z = float(np.exp(rng.uniform(-5, 5)))
        k = int(rng.integers(1, 13))
        lam = red.stick_phi(z, k)
        assert abs(red.stick_f(z, k, lam) / z - 1) < 1e-13
    for x in rng.uniform(1.05, 10, 200):
        lam = red.phi_wp(x)
        assert abs(red.f_i2(red.f_i2(x, lam), lam) / x - 1) < 1e-13


@C9
def test_c9_phi1_derivative():
    h = 1e-6
    for k in (2, 4, 7, 20):
        for z in rng.uniform(0.1, 50, 30):
            fd = (red.key_phi1(z * (1 + h), k) - red.key_phi1(z * (1 - h), k)) / (2 * z * h)
            assert abs(red.key_phi1_prime(z, k) / fd - 1) < 1e-5


@C9
def test_c9_grid_halving():
    for k, lam in ((5, 0.7), (5, 1.0), (6, 1.1), (8, 0.5)):
        counts = {
            count_fixed_points(lambda z: red.stick_f(z, k, lam), 0.99 * lam, 1.01 * lam * 2**k,
                               lambda z: red.stick_f_prime(z, k, lam), n_grid=n).count
            for n in (64, 128, 256, 512, 1024)
        }
        assert len(counts) == 1


@C9
def test_c9_descartes():
    polys = [red.ti_cubic(Fraction(lam)) for lam in (Fraction(1, 2), 1, 4, 9)]
    polys += [red.h6_polynomial(Fraction(lam)) for lam in (3, 4, 5, 12)]
    polys += [red.stick_h_polynomial(k) for k in (3, 5, 8)]
    for p in polys:
        n = len(isolate_polynomial_roots(p.squarefree_part(), 0, p.cauchy_bound()))
        bound = descartes_positive_bound(p.squarefree_part())
        assert n <= bound and (bound - n) % 2 == 0
