"""Scalar reductions of the boundary-law systems.

Weakly periodic two-state model (k=2, i=1) on the invariant set, with
``x = 1 + lam*z1`` and ``y = 1 + lam*z2``:

* :func:`f_i2` -- the map with ``y = f(x)``, ``x = f(y)``;
* :func:`h6` -- the sextic whose roots are the non translation-invariant
  solutions of ``f(f(x)) = x``;
* :func:`phi_wp` -- the positive branch ``lam(x)`` of ``h6(x, lam) = 0``;
* :func:`psi12` -- the degree-12 polynomial locating the critical point of
  :func:`phi_wp`.

Four-state models, translation-invariant laws:

* stick: :func:`stick_f`, :func:`stick_phi`, :func:`stick_h`;
* key: :func:`key_f`, :func:`key_phi1`, :func:`key_extrema`,
  :func:`key_lambda_cr` and the discriminant helpers.

Functions written with ``numpy`` accept scalars or arrays.  Everything
k-dependent that can overflow is evaluated in the log domain.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from .roots import Polynomial

K_MAX = 200


class DomainError(ValueError):
    pass


class NegativeDiscriminant(DomainError):
    pass


def _check_k(k: int, k_min: int = 1) -> int:
    if int(k) != k or not k_min <= k <= K_MAX:
        raise DomainError(f"k must be an integer in [{k_min}, {K_MAX}], got {k}")
    return int(k)


def _require(cond, msg):
    if not np.all(cond):
        raise DomainError(msg)


# ---------------------------------------------------------------------------
# weakly periodic two-state reduction


def f_i2(x, lam):
    """``lam x^2 / ((x^2 + lam)(x - 1))`` for ``x > 1``."""
    x = np.asarray(x, dtype=float)
    _require(x > 1, "f_i2 is defined for x > 1 only (pole at x = 1)")
    out = lam * x * x / ((x * x + lam) * (x - 1))
    return out.item() if out.ndim == 0 else out


def f_i2_prime(x, lam):
    x = np.asarray(x, dtype=float)
    _require(x > 1, "f_i2 is defined for x > 1 only (pole at x = 1)")
    u, du = lam * x * x, 2 * lam * x
    v, dv = (x * x + lam) * (x - 1), 3 * x * x - 2 * x + lam
    out = (du * v - u * dv) / (v * v)
    return out.item() if out.ndim == 0 else out


def ti_cubic(lam) -> Polynomial:
    """``x^3 - x^2 - lam``: its root above 1 is the translation-invariant point."""
    return Polynomial([-lam, 0, -1, 1])


def h6_coefficients(lam) -> list:
    """Ascending coefficients of the sextic; exact when ``lam`` is rational."""
    return [
        lam * lam,
        -3 * lam * lam,
        2 * lam * (2 * lam + 1),
        -lam * (2 * lam + 5),
        5 * lam + 1,
        -(lam + 2),
        1,
    ]


def h6_polynomial(lam) -> Polynomial:
    return Polynomial(h6_coefficients(lam))


def h6(x, lam):
    return h6_polynomial(lam)(x)


def period_two_polynomial(lam) -> Polynomial:
    """All solutions of ``f(f(x)) = x`` with ``x > 1``: the cubic times the sextic."""
    return ti_cubic(lam) * h6_polynomial(lam)


def phi_wp(x):
    """Positive root ``lam`` of ``h6(x, lam) = 0`` (a quadratic in ``lam``)."""
    x = np.asarray(x, dtype=float)
    _require(x > 1, "phi_wp is defined for x > 1 only")
    radicand = x**4 - 2 * x**3 + 3 * x**2 - 2 * x + 1
    _require(radicand > 0, "negative radicand in phi_wp")
    num = x * x * (x**3 - 5 * x * x + 5 * x - 2) - x**3 * np.sqrt(radicand)
    den = -2 * (x - 1) * (2 * x * x - 2 * x + 1)
    out = num / den
    return out.item() if out.ndim == 0 else out


def phi_wp_negative_branch(x):
    x = np.asarray(x, dtype=float)
    radicand = x**4 - 2 * x**3 + 3 * x**2 - 2 * x + 1
    num = x * x * (x**3 - 5 * x * x + 5 * x - 2) + x**3 * np.sqrt(radicand)
    out = num / (-2 * (x - 1) * (2 * x * x - 2 * x + 1))
    return out.item() if out.ndim == 0 else out


PSI12_COEFFICIENTS = (16, -152, 712, -2160, 4696, -7696, 9736,
                      -9592, 7312, -4224, 1760, -480, 64)


def psi12_polynomial() -> Polynomial:
    return Polynomial(PSI12_COEFFICIENTS)


def psi12(x):
    return psi12_polynomial()(x)


# ---------------------------------------------------------------------------
# stick


def _stick_log_ratio(z, k):
    # log((z/(z+1))^k + 1)
    return np.log1p(np.exp(k * (np.log(z) - np.log1p(z))))


def stick_f(z, k, lam):
    """Right-hand side of ``z = lam (z^k/(z+1)^k + 1)^k``."""
    k = _check_k(k)
    z = np.asarray(z, dtype=float)
    _require(z > 0, "stick_f needs z > 0")
    out = np.exp(np.log(lam) + k * _stick_log_ratio(z, k))
    return out.item() if out.ndim == 0 else out


def stick_f_prime(z, k, lam):
    k = _check_k(k)
    z = np.asarray(z, dtype=float)
    # f' = lam k (u+1)^(k-1) * k z^(k-1) / (z+1)^(k+1),  u = (z/(z+1))^k
    log_u_plus_1 = _stick_log_ratio(z, k)
    log_t = (np.log(lam) + 2 * math.log(k) + (k - 1) * log_u_plus_1
             + (k - 1) * np.log(z) - (k + 1) * np.log1p(z))
    out = np.exp(log_t)
    return out.item() if out.ndim == 0 else out


def stick_phi(z, k):
    """Activity at which ``z`` is a fixed point of :func:`stick_f`."""
    k = _check_k(k)
    z = np.asarray(z, dtype=float)
    _require(z > 0, "stick_phi needs z > 0")
    out = np.exp(np.log(z) - k * _stick_log_ratio(z, k))
    return out.item() if out.ndim == 0 else out


def stick_phi_prime(z, k):
    """``(z+1)^(k^2-1) h(z) / (z^k + (z+1)^k)^(k+1)`` in log-safe form."""
    k = _check_k(k)
    z = np.asarray(z, dtype=float)
    # divide numerator and denominator by (z+1)^(k^2+k):
    # phi' = h(z) / (z+1)^(k+1) / (u+1)^(k+1),  u = (z/(z+1))^k
    h = stick_h_scaled(z, k)  # h(z) / (z+1)^(k+1)
    out = h * np.exp(-(k + 1) * _stick_log_ratio(z, k))
    return out.item() if out.ndim == 0 else out


def stick_h_polynomial(k) -> Polynomial:
    """``z^(k+1) + (1+z)^(k+1) + z^k - k^2 z^k`` with exact integer coefficients."""
    k = _check_k(k)
    coeffs = [math.comb(k + 1, j) for j in range(k + 2)]
    coeffs[k + 1] += 1
    coeffs[k] += 1 - k * k
    return Polynomial(coeffs)


def stick_h(z, k):
    if isinstance(z, Rational):
        return stick_h_polynomial(k)(Fraction(z))
    return stick_h_scaled(z, k) * (1 + np.asarray(z, dtype=float)) ** (k + 1)


def stick_h_scaled(z, k):
    """``h(z) / (1+z)^(k+1)``, finite for every k up to the cap."""
    z = np.asarray(z, dtype=float)
    r = z / (1 + z)
    out = 1 + r ** (k + 1) + (1 - k * k) * r**k / (1 + z)
    return out.item() if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# key


def _key_log_root(z, k, lam):
    # log of (lam (2z+1)^k)^(1/(k+1))
    return (np.log(lam) + k * np.log1p(2 * z)) / (k + 1)


def key_f(z, k, lam):
    """Right-hand side of ``z = lam (z / (lam (2z+1)^k)^(1/(k+1)) + 1)^k``."""
    k = _check_k(k)
    z = np.asarray(z, dtype=float)
    _require(z > 0, "key_f needs z > 0")
    w = np.exp(np.log(z) - _key_log_root(z, k, lam))
    out = np.exp(np.log(lam) + k * np.log1p(w))
    return out.item() if out.ndim == 0 else out


def key_f_prime(z, k, lam):
    k = _check_k(k)
    z = np.asarray(z, dtype=float)
    w = np.exp(np.log(z) - _key_log_root(z, k, lam))
    # k lam (w+1)^(k-1) (2z+k+1) / ((k+1) (lam (2z+1)^(2k+1))^(1/(k+1)))
    log_den = (np.log(lam) + (2 * k + 1) * np.log1p(2 * z)) / (k + 1)
    out = np.exp(math.log(k / (k + 1)) + np.log(lam) + (k - 1) * np.log1p(w)
                 + np.log(2 * z + k + 1) - log_den)
    return out.item() if out.ndim == 0 else out


def key_phi1(z, k):
    """``z^(k+1) [2(k-1)z + k^2+k-1]^(k+1) / (2z+1)^(2k+1)``."""
    k = _check_k(k, 2)
    z = np.asarray(z, dtype=float)
    _require(z > 0, "key_phi1 needs z > 0")
    out = np.exp((k + 1) * (np.log(z) + np.log(2 * (k - 1) * z + k * k + k - 1))
                 - (2 * k + 1) * np.log1p(2 * z))
    return out.item() if out.ndim == 0 else out


def key_quadratic(k) -> Polynomial:
    """``4(k-1)z^2 - 2(k^3-k^2-k+2)z + (k+1)(k^2+k-1)``: the sign factor of phi1'.

    Its discriminant is ``4k^2 D1(k)`` and its roots are :func:`key_extrema`.
    """
    return Polynomial([(k + 1) * (k * k + k - 1), -2 * (k**3 - k * k - k + 2), 4 * (k - 1)])


def key_quadratic_as_printed(k) -> Polynomial:
    """The same quadratic with constant term ``(k-1)(k^2+k-1)``.

    Kept for comparison only: it is not the derivative factor of phi1 and its
    roots disagree with :func:`key_extrema`.
    """
    return Polynomial([(k - 1) * (k * k + k - 1), -2 * (k**3 - k * k - k + 2), 4 * (k - 1)])


def key_phi1_prime(z, k):
    k = _check_k(k, 2)
    z = np.asarray(z, dtype=float)
    q = key_quadratic(k).to_float()(z)
    out = q * np.exp(k * (np.log(z) + np.log(2 * (k - 1) * z + k * k + k - 1))
                     - (2 * k + 2) * np.log1p(2 * z))
    return out.item() if out.ndim == 0 else out


def key_d1(k: int) -> int:
    return k**4 - 2 * k**3 - 5 * k**2 + 2 * k + 5


def key_discriminant(k: int) -> int:
    """Discriminant ``4k^2 D1(k)`` of :func:`key_quadratic`."""
    k = _check_k(k, 2)
    return 4 * k * k * key_d1(k)


def key_extrema(k) -> tuple[float, float]:
    """Critical points ``(z1, z2)``, ``z1 > z2 > 0``, of :func:`key_phi1`."""
    k = _check_k(k, 2)
    d1 = key_d1(k)
    if d1 <= 0:
        raise NegativeDiscriminant(f"D1({k}) = {d1} <= 0: phi1 is increasing, no extrema")
    s = math.sqrt(d1)
    a = k**3 - k * k - k + 2
    z1 = (a + k * s) / (4 * (k - 1))
    # a - k sqrt(D1) rationalised: a^2 - k^2 D1 = 4 (k-1)(k+1)(k^2+k-1)
    z2 = (k + 1) * (k * k + k - 1) / (a + k * s)
    return z1, z2


def key_log_lambda_cr(k) -> tuple[float, float]:
    """Natural logs of the closed-form critical activities, smaller first."""
    k = _check_k(k, 2)
    d1 = key_d1(k)
    if d1 <= 0:
        raise NegativeDiscriminant(f"D1({k}) = {d1} <= 0: no critical activities")
    s = math.sqrt(d1)
    a = k**3 - k * k - k + 2
    # '+' branch factors, then the '-' branch with each difference rationalised
    plus = (a + k * s, k * k + k + 1 + s, k * k - k + 1 + s)
    minus = (
        4 * (k - 1) * (k + 1) * (k * k + k - 1) / plus[0],
        (4 * k**3 + 8 * k * k - 4) / plus[1],
        (8 * k * k - 4 * k - 4) / plus[2],
    )

    def closed_form(t):
        return (k * math.log((k - 1) / (2 * k))
                + (k + 1) * (math.log(t[0]) + math.log(t[1]))
                - math.log(4) - (2 * k + 1) * math.log(t[2]))

    return closed_form(plus), closed_form(minus)


def key_lambda_cr(k) -> tuple[float, float]:
    """Closed-form critical activities ``(phi1(z1), phi1(z2))``, smaller first.

    The values leave the double range for ``k >= 99``; use
    :func:`key_log_lambda_cr` there.
    """
    l1, l2 = key_log_lambda_cr(k)
    try:
        return math.exp(l1), math.exp(l2)
    except OverflowError:
        raise OverflowError(f"critical activities for k={k} exceed float range; "
                            "use key_log_lambda_cr") from None
