from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcgibbs import reductions as red
from hcgibbs.roots import (
    Certificate,
    CertificateViolated,
    Polynomial,
    RootBracket,
    count_fixed_points,
    count_roots,
    descartes_positive_bound,
    interval_variations,
    isolate_polynomial_roots,
    isolate_roots,
    refine_root,
)


# --- Polynomial -----------------------------------------------------------


def test_trim_and_degree():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert Polynomial([0, 0]).is_zero


def test_arithmetic_exact():
    p = Polynomial([1, 1])
    q = p * p - Polynomial([1, 2, 1])
    assert q.is_zero
    assert (p**3)(Fraction(1, 2)) == Fraction(27, 8)
    assert Polynomial([0, 0, 3]).derivative() == Polynomial([0, 6])


def test_divmod_and_gcd():
    a = Polynomial.from_roots([1, 2, 3])
    b = Polynomial.from_roots([2, 5])
    q, r = a.divmod(b)
    assert (q * b + r - a).is_zero
    assert a.gcd(b).monic() == Polynomial([-2, 1])


def test_squarefree_factors():
    p = Polynomial.from_roots([1, 2, 2, 3, 3, 3])
    f = p.squarefree_factors()
    assert [g.monic() for g in f] == [Polynomial([-1, 1]), Polynomial([-2, 1]), Polynomial([-3, 1])]
    assert p.squarefree_part().monic() == Polynomial.from_roots([1, 2, 3]).monic().exact()


def test_compose_affine():
    p = Polynomial([1, 0, 1])
    q = p.compose_affine(2, 3)  # 1 + (2 + 3x)^2
    for x in (0, 1, Fraction(-2, 3)):
        assert q(x) == 1 + (2 + 3 * x) ** 2


# --- Descartes -------------------------------------------------------------


@pytest.mark.parametrize("lam", [0.1, 1, 4, 100])
def test_descartes_cubic(lam):
    assert descartes_positive_bound(red.ti_cubic(lam)) == 1


def test_descartes_stick_k3():
    assert descartes_positive_bound(red.stick_h_polynomial(3)) <= 2


def test_descartes_constant_and_zero():
    assert descartes_positive_bound(Polynomial([5])) == 0
    with pytest.raises(ValueError):
        descartes_positive_bound(Polynomial([0]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6).map(sorted), st.integers(1, 3))
def test_isolation_vs_descartes(rts, scale):
    p = Polynomial.from_roots([Fraction(r, 2) for r in rts]) * scale
    brs = isolate_polynomial_roots(p, Fraction(1, 7), 50)
    positive = sorted({Fraction(r, 2) for r in rts if Fraction(r, 2) > Fraction(1, 7)})
    assert len(brs) == len(positive)
    bound = descartes_positive_bound(p.squarefree_part())
    assert len(brs) <= bound and (bound - len(brs)) % 2 == 0
    for br, r in zip(brs, positive):
        assert br.lo < r < br.hi


def test_interval_variations_counts_roots():
    p = Polynomial.from_roots([Fraction(1, 3), 2, 5])
    assert interval_variations(p, 0, 1) == 1
    assert interval_variations(p, 1, 3) == 1
    assert interval_variations(p, 3, 4) == 0


# --- isolation of the reference polynomials -------------------------------


def test_period_two_brackets():
    assert len(isolate_polynomial_roots(red.period_two_polynomial(Fraction(5)), 1, 50)) == 3
    assert len(isolate_polynomial_roots(red.period_two_polynomial(Fraction(3)), 1, 50)) == 1


def test_h6_alone_brackets():
    assert len(isolate_polynomial_roots(red.h6_polynomial(5), 1, 50)) == 2
    assert isolate_polynomial_roots(red.h6_polynomial(3), 1, 50) == []


def test_h6_dense_grid_agrees():
    xs = np.linspace(1 + 1e-6, 50, 10**6)
    for lam, n in ((5.0, 2), (3.0, 0)):
        v = red.h6(xs, lam)
        assert np.count_nonzero(np.sign(v[1:]) != np.sign(v[:-1])) == n


def test_h6_double_root_at_critical_activity():
    (br,) = isolate_polynomial_roots(red.h6_polynomial(Fraction(4)), 1, 50)
    assert br.certificate is Certificate.TANGENCY_CANDIDATE
    assert br.multiplicity == 2
    assert br.contains(2)


def test_psi_single_root():
    p = red.psi12_polynomial()
    (br,) = isolate_polynomial_roots(p, 1, 100)
    assert br.certificate is Certificate.DESCARTES_ONE and br.contains(2)
    assert abs(refine_root(p, br, 1e-12) - 2) < 1e-12


def test_refine_examples():
    br = RootBracket(1, 3, Certificate.SIGN_CHANGE)
    assert refine_root(red.ti_cubic(4), br) == 2.0
    br = RootBracket(1, 2, Certificate.SIGN_CHANGE)
    assert abs(refine_root(red.ti_cubic(1), br) - 1.4655712319) < 1e-10
    x = refine_root(red.ti_cubic(1.0), br, df=red.ti_cubic(1.0).derivative())
    assert abs(x - 1.4655712318767682) < 1e-12


def test_refine_rejects_bad_brackets():
    p = red.ti_cubic(1)
    with pytest.raises(CertificateViolated):
        refine_root(p, RootBracket(2, 3, Certificate.SIGN_CHANGE))
    with pytest.raises(CertificateViolated):
        refine_root(p, RootBracket(1, 2, Certificate.TANGENCY_CANDIDATE, 2))


def test_bracket_requires_order():
    with pytest.raises(ValueError):
        RootBracket(2, 1, Certificate.SIGN_CHANGE)


def test_endpoint_root_rejected():
    with pytest.raises(ValueError):
        isolate_polynomial_roots(Polynomial.from_roots([1, 2]), 1, 3)


# --- smooth functions ------------------------------------------------------


def test_isolate_smooth_sign_changes():
    brs = isolate_roots(np.sin, 0.5, 10)
    assert len(brs) == 3
    for br, r in zip(brs, (np.pi, 2 * np.pi, 3 * np.pi)):
        assert br.contains(r)
        assert np.sign(np.sin(br.lo)) != np.sign(np.sin(br.hi))


def test_hidden_pair_needs_derivative_or_dip_search():
    # two roots 1e-4 apart, invisible on a coarse grid
    def f(x):
        return (x - 3) ** 2 - 1e-8

    def df(x):
        return 2 * (x - 3)

    assert len(isolate_roots(f, 0.1, 10, df, n_grid=16)) == 2
    assert len(isolate_roots(f, 0.1, 10, n_grid=16)) == 2


def test_tangency_flagged_not_counted():
    def f(x):
        return (x - 2) ** 2

    res = count_roots(f, 0.5, 5, lambda x: 2 * (x - 2))
    assert res.count == 0
    assert len(res.tangencies) == 1 and res.tangencies[0].contains(2)


def test_count_fixed_points_stick():
    def f(z):
        return red.stick_f(z, 5, 1.0)

    def df(z):
        return red.stick_f_prime(z, 5, 1.0)

    assert count_fixed_points(f, 1e-9, 4 * 3**5, df).count == 3
    assert count_fixed_points(lambda z: red.stick_f(z, 5, 0.5), 1e-9, 2 * 3**5).count == 1


def test_count_fixed_points_key_k2():
    res = count_fixed_points(lambda z: red.key_f(z, 2, 1.0), 1e-9, 40)
    assert res.count == 1


@pytest.mark.parametrize("lam", [0.7, 1.0, 1.05])
def test_grid_halving_stable(lam):
    counts = set()
    for n in (128, 256, 512, 1024):
        res = count_fixed_points(lambda z: red.stick_f(z, 5, lam), 0.5 * lam, 40 * lam,
                                 lambda z: red.stick_f_prime(z, 5, lam), n_grid=n)
        counts.add(res.count)
    assert len(counts) == 1


def test_sign_change_brackets_recheck():
    lam = 1.0
    g = lambda z: red.stick_f(z, 5, lam) - z  # noqa: E731
    res = count_roots(g, 0.5, 40, lambda z: red.stick_f_prime(z, 5, lam) - 1)
    for br, x in zip(res.brackets, res.roots):
        assert g(br.lo) * g(br.hi) < 0
        assert br.lo <= x <= br.hi
        assert abs(g(x)) <= 1e-9 * (abs(g(br.lo)) + abs(g(br.hi)))


def test_newton_path_agrees_with_bisection():
    p = red.ti_cubic(2.5)
    br = RootBracket(1.0, 3.0, Certificate.SIGN_CHANGE)
    a = refine_root(lambda x: p(x), br, 1e-13)
    b = refine_root(lambda x: p(x), br, 1e-13, df=p.derivative())
    assert abs(a - b) < 2e-13
