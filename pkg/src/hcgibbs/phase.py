"""Critical activities and regime classification.

Every count reported here comes from certified root isolation of a scalar
reduction; fixed-point iteration is never used to count.  Reports count
boundary-law solutions, which stand in one-to-one correspondence with the
splitting Gibbs measures of the model.
"""

from __future__ import annotations

import enum
import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import reductions as red
from . import systems
from .roots import (
    Certificate,
    RootBracket,
    count_fixed_points,
    isolate_polynomial_roots,
    refine_root,
)

CRITICAL_BAND = 1e-9
# exact isolation of the stick polynomial is cheap up to here
_EXACT_STICK_K = 40


class NoCriticalPoints(red.DomainError):
    pass


class RegimeMismatch(RuntimeError):
    """A certified count disagrees with the known regime structure."""


class Regime(enum.Enum):
    UNIQUE = "Unique"
    CRITICAL = "Critical"
    MULTIPLE = "Multiple"


class Model(enum.Enum):
    STICK = "StickTI"
    KEY = "KeyTI"
    WP = "WpIndex4"

    @classmethod
    def parse(cls, name) -> "Model":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        for m, aliases in ((cls.STICK, ("stick", "stickti")), (cls.KEY, ("key", "keyti")),
                           (cls.WP, ("wp", "wpindex4"))):
            if key in aliases:
                return m
        raise ValueError(f"unknown model {name!r}; expected stick, key or wp")


@dataclass
class PhaseReport:
    model: Model
    k: int
    lam: float
    regime: Regime
    ti_count: int
    wp_count: int = 0
    brackets: list[RootBracket] = field(default_factory=list)
    roots: list[float] = field(default_factory=list)
    critical_values: tuple[float, float] | None = None
    laws: list[np.ndarray] = field(default_factory=list)
    band_agrees: bool | None = None

    @property
    def total(self) -> int:
        return self.ti_count + self.wp_count

    def as_dict(self) -> dict:
        cv = None
        if self.critical_values is not None:
            # values past the float range are not representable in JSON
            l1, l2 = (v if math.isfinite(v) else None for v in self.critical_values)
            cv = {"lambda1": l1, "lambda2": l2}
        return {
            "model": self.model.value,
            "k": self.k,
            "lambda": self.lam,
            "regime": self.regime.value,
            "ti_count": self.ti_count,
            "wp_count": self.wp_count,
            "roots": list(self.roots),
            "critical_values": cv,
        }


def _regime_from(brackets: list[RootBracket]) -> Regime:
    if any(b.certificate is Certificate.TANGENCY_CANDIDATE for b in brackets):
        return Regime.CRITICAL
    return Regime.UNIQUE if len(brackets) == 1 else Regime.MULTIPLE


# ---------------------------------------------------------------------------
# stick


@dataclass(frozen=True)
class StickCritical:
    """``z1 < z2`` are the maximum and minimum points of ``stick_phi``."""

    k: int
    z1: float
    z2: float
    lambda1: float
    lambda2: float


@functools.lru_cache(maxsize=None)
def stick_critical_data(k: int) -> StickCritical:
    k = red._check_k(k)
    if k <= 4:
        raise NoCriticalPoints(f"stick h has no positive roots for k={k}; unique for all lambda")
    p = red.stick_h_polynomial(k)
    if k <= _EXACT_STICK_K:
        brs = isolate_polynomial_roots(p, 0, p.cauchy_bound())
        z1, z2 = (refine_root(p, b, 1e-14) for b in brs)
    else:
        # h(0) > 0, h(k+1) < 0 < h(k^2) and Descartes allows two positive roots
        if not (p(k + 1) < 0 < p(k * k) and p.sign_variations() == 2):
            raise RuntimeError(f"unexpected sign pattern of stick h for k={k}")
        def hs(z):
            return red.stick_h_scaled(z, k)
        z1 = refine_root(hs, RootBracket(0.0, float(k + 1), Certificate.SIGN_CHANGE), 1e-14)
        z2 = refine_root(hs, RootBracket(float(k + 1), float(k * k), Certificate.SIGN_CHANGE), 1e-14)
    return StickCritical(k, z1, z2, red.stick_phi(z2, k), red.stick_phi(z1, k))


def critical_stick(k: int) -> tuple[float, float]:
    c = stick_critical_data(k)
    return c.lambda1, c.lambda2


def _stick_count(k, lam, lo=None, hi=None):
    lo = 0.99 * lam if lo is None else lo
    hi = 1.01 * lam * 2.0**k if hi is None else hi

    def f(z):
        return red.stick_f(z, k, lam)

    def df(z):
        return red.stick_f_prime(z, k, lam)

    return count_fixed_points(f, lo, hi, df)


def classify_stick(k: int, lam: float, band: float = CRITICAL_BAND) -> PhaseReport:
    k = red._check_k(k)
    lam = _check_lam(lam)
    crit = stick_critical_data(k) if k >= 5 else None
    cv = (crit.lambda1, crit.lambda2) if crit else None

    if crit and min(abs(lam - crit.lambda1), abs(lam - crit.lambda2)) < band:
        # tangency: one simple root away from the double point
        if abs(lam - crit.lambda1) < band:
            zc, sub = crit.z2, _stick_count(k, lam, hi=crit.z1)
        else:
            zc, sub = crit.z1, _stick_count(k, lam, lo=crit.z2)
        if sub.count != 1:
            raise RegimeMismatch(f"stick k={k}, lambda={lam}: expected one simple root, got {sub.count}")
        w = 1e-9 * zc
        tb = RootBracket(zc - w, zc + w, Certificate.TANGENCY_CANDIDATE, 2)
        brackets = sorted(sub.brackets + [tb], key=lambda b: b.lo)
        roots = sorted(sub.roots + [zc])
        return PhaseReport(Model.STICK, k, lam, Regime.CRITICAL, 2, 0, brackets, roots, cv,
                           [systems.stick_lift(z, k, lam) for z in roots], True)

    res = _stick_count(k, lam)
    regime = _regime_from(res.brackets)
    n = res.count + len(res.tangencies)
    expected = 3 if crit and crit.lambda1 < lam < crit.lambda2 else 1
    if n != expected:
        raise RegimeMismatch(f"stick k={k}, lambda={lam}: {n} fixed points, expected {expected}")
    return PhaseReport(Model.STICK, k, lam, regime, n, 0, res.brackets, res.roots, cv,
                       [systems.stick_lift(z, k, lam) for z in res.roots], True)


# ---------------------------------------------------------------------------
# key


def key_upper_bound(k: int, lam: float) -> float:
    """A ``Z`` beyond which ``key_f(z) < z`` holds for every ``z``.

    Uses ``key_f(z) <= lam (1 + (z / (lam 2^k))^(1/(k+1)))^k``; that bound
    divided by ``z`` is decreasing, so the first ``Z`` where it drops below
    ``Z`` works for all larger ``z`` too.
    """
    log_c = -(math.log(lam) + k * math.log(2)) / (k + 1)
    log_z = math.log(lam) + k * math.log(2)
    while True:
        t = math.exp(log_c + log_z / (k + 1))
        if math.log(lam) + k * math.log1p(t) < log_z:
            return math.exp(log_z)
        log_z += math.log(2)


def classify_key(k: int, lam: float, band: float = CRITICAL_BAND) -> PhaseReport:
    """Certified count of key fixed points.

    ``band_agrees`` records whether the count fits the expected pattern
    (one solution outside the closed-form band ``[lambda1, lambda2]``, at
    least two strictly inside it, one for ``k`` in {2, 3}).  The count, not
    the expectation, decides the regime.  ``band`` is accepted for a uniform
    interface; no tangency is imposed at the closed-form values.
    """
    k = red._check_k(k, 2)
    lam = _check_lam(lam)
    cv = None
    if red.key_d1(k) > 0:
        l1, l2 = red.key_log_lambda_cr(k)
        cv = (math.exp(l1) if l1 < 709 else math.inf, math.exp(l2) if l2 < 709 else math.inf)

    def f(z):
        return red.key_f(z, k, lam)

    def df(z):
        return red.key_f_prime(z, k, lam)

    res = count_fixed_points(f, 0.99 * lam, key_upper_bound(k, lam), df)
    n = res.count + len(res.tangencies)
    if cv is None:
        agrees = n == 1
    elif cv[0] < lam < cv[1]:
        agrees = n >= 2
    elif lam < cv[0] or lam > cv[1]:
        agrees = n == 1
    else:
        agrees = None
    return PhaseReport(Model.KEY, k, lam, _regime_from(res.brackets), n, 0, res.brackets,
                       res.roots, cv, [systems.key_lift(z, k, lam) for z in res.roots], agrees)


# ---------------------------------------------------------------------------
# weakly periodic, k = 2, i = 1


@functools.lru_cache(maxsize=None)
def critical_wp() -> tuple[float, float]:
    """``(x0, lambda_cr)``: the extremum of ``phi_wp`` located via ``psi12``."""
    p = red.psi12_polynomial()
    (br,) = isolate_polynomial_roots(p, 1, 100)
    x0 = refine_root(p, br, 1e-15)
    snap = Fraction(x0).limit_denominator(1000)
    if br.contains(snap) and p(snap) == 0:
        x0 = float(snap)
    return x0, red.phi_wp(x0)


WP_RESIDUAL_TOL = 1e-10


def wp_law_from_x(x: float, lam: float) -> np.ndarray:
    """Reduced law ``(z1, z2, z7, z8)`` on the invariant set for root ``x``."""
    y = red.f_i2(x, lam)
    z1, z2 = (x - 1) / lam, (y - 1) / lam
    return np.array([z1, z2, z1, z2])


def _check_wp_law(z4, lam):
    r4 = systems.residual(lambda z: systems.wp4_map(2, 1, lam, z), z4)
    z8 = systems.lift_wp4_to_wp8(2, 1, lam, z4)
    r8 = systems.residual(lambda z: systems.wp8_map(2, 1, lam, z), z8)
    if max(r4, r8) >= WP_RESIDUAL_TOL:
        raise RegimeMismatch(f"weakly periodic law fails back-substitution (residuals {r4:.2e}, {r8:.2e})")
    return z8


def classify_wp(lam: float, band: float = CRITICAL_BAND) -> PhaseReport:
    """Count translation-invariant and weakly periodic laws for ``k=2, i=1``.

    ``laws`` holds 8-component laws: the translation-invariant one first,
    then one per weakly periodic root.
    """
    lam = _check_lam(lam)
    exact = Fraction(lam)
    x0, lam_cr = critical_wp()

    cubic = red.ti_cubic(exact)
    (tb,) = isolate_polynomial_roots(cubic, 1, cubic.cauchy_bound())
    x_ti = refine_root(cubic, tb, 1e-15)
    laws = [_check_wp_law(np.full(4, (x_ti - 1) / lam), lam)]
    brackets = [tb]
    roots = [x_ti]

    if abs(lam - lam_cr) < band:
        w = 1e-9
        brackets.append(RootBracket(x0 - w, x0 + w, Certificate.TANGENCY_CANDIDATE, 2))
        roots.append(x0)
        laws.append(systems.lift_wp4_to_wp8(2, 1, lam, wp_law_from_x(x0, lam)))
        return PhaseReport(Model.WP, 2, lam, Regime.CRITICAL, 1, 1, brackets, roots,
                           (lam_cr, lam_cr), laws, True)

    h = red.h6_polynomial(exact)
    wp_brs = isolate_polynomial_roots(h, 1, h.cauchy_bound())
    # exact isolation would flag a double root only at lambda == 4, inside the band
    xs = [refine_root(h, b, 1e-15) for b in wp_brs]
    for x in xs:
        laws.append(_check_wp_law(wp_law_from_x(x, lam), lam))
    brackets += wp_brs
    roots += xs
    n_wp = len(xs)
    regime = Regime.UNIQUE if n_wp == 0 else Regime.MULTIPLE
    expected = 2 if lam > lam_cr else 0
    if n_wp != expected:
        raise RegimeMismatch(f"wp lambda={lam}: {n_wp} non-TI roots, expected {expected}")
    return PhaseReport(Model.WP, 2, lam, regime, 1, n_wp, brackets, roots,
                       (lam_cr, lam_cr), laws, True)


# ---------------------------------------------------------------------------


def _check_lam(lam) -> float:
    lam = float(lam)
    if not (lam > 0 and math.isfinite(lam)):
        raise red.DomainError(f"lambda must be positive and finite, got {lam}")
    return lam


def classify(model, k: int, lam: float, band: float = CRITICAL_BAND) -> PhaseReport:
    model = Model.parse(model)
    if model is Model.STICK:
        return classify_stick(k, lam, band)
    if model is Model.KEY:
        return classify_key(k, lam, band)
    if k not in (None, 2):
        raise red.DomainError("the weakly periodic model is fixed at k=2, i=1")
    return classify_wp(lam, band)


def sweep(model, k, grid, band: float = CRITICAL_BAND, workers: int | None = None) -> list[PhaseReport]:
    """One report per grid point, ordered by lambda."""
    grid = [float(x) for x in grid]
    if not grid:
        raise ValueError("empty lambda grid")
    if any(x <= 0 for x in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("lambda grid must be positive and strictly increasing")
    model = Model.parse(model)

    def run(lam):
        return classify(model, k, lam, band)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            reports = list(ex.map(run, grid))
    else:
        reports = [run(lam) for lam in grid]
    return sorted(reports, key=lambda r: r.lam)
