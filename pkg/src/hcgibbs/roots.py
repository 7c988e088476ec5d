"""Real-root isolation, refinement and fixed-point counting.

Two isolation routes are provided:

* :func:`isolate_polynomial_roots` works in exact rational arithmetic and
  certifies each bracket with Descartes' rule of signs on a Moebius-transformed
  interval (the Vincent-Collins-Akritas bisection).  Multiple roots are
  detected exactly through ``gcd(p, p')``.
* :func:`isolate_roots` handles smooth scalar functions.  It scans a grid for
  sign changes and, when an analytic derivative is supplied, first splits the
  interval at the critical points so that every piece is monotone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import numpy as np


class RootIsolationError(ArithmeticError):
    pass


class CertificateViolated(RootIsolationError):
    pass


class Certificate(enum.Enum):
    SIGN_CHANGE = "SignChange"
    DESCARTES_ONE = "DescartesOne"
    TANGENCY_CANDIDATE = "TangencyCandidate"


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    certificate: Certificate
    multiplicity: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (float(self.lo) + float(self.hi))

    @property
    def width(self) -> float:
        return float(self.hi) - float(self.lo)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


def _sign(v) -> int:
    return int(v > 0) - int(v < 0)


# ---------------------------------------------------------------------------
# polynomials


def _to_exact(c):
    if isinstance(c, Rational):
        return Fraction(c)
    return Fraction(float(c))


class Polynomial:
    """Real polynomial with ascending coefficients, ``coeffs[i]`` for ``x**i``.

    Coefficients may be ints, Fractions or floats.  Arithmetic on ints and
    Fractions stays exact, so a polynomial built from rational data evaluates
    exactly at rational points.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Rational) for c in self.coeffs)

    def __call__(self, x):
        acc = 0 * x + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial([0])
        return Polynomial([i * c for i, c in enumerate(self.coeffs) if i > 0])

    def exact(self) -> "Polynomial":
        return Polynomial([_to_exact(c) for c in self.coeffs])

    def to_float(self) -> "Polynomial":
        return Polynomial([float(c) for c in self.coeffs])

    def monic(self) -> "Polynomial":
        lead = Fraction(self.coeffs[-1])
        return Polynomial([Fraction(c) / lead for c in self.coeffs])

    def divmod(self, other: "Polynomial"):
        """Exact polynomial long division."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        num = [Fraction(c) for c in self.coeffs]
        den = [Fraction(c) for c in other.coeffs]
        if len(num) < len(den):
            return Polynomial([0]), Polynomial(num)
        q = [Fraction(0)] * (len(num) - len(den) + 1)
        for i in range(len(q) - 1, -1, -1):
            q[i] = num[i + len(den) - 1] / den[-1]
            if q[i]:
                for j, d in enumerate(den):
                    num[i + j] -= q[i] * d
        return Polynomial(q), Polynomial(num[: len(den) - 1] or [0])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self.exact(), other.exact()
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "Polynomial":
        g = self.gcd(self.derivative())
        return self.exact() // g if g.degree > 0 else self.exact()

    def squarefree_factors(self) -> list["Polynomial"]:
        """Yun's algorithm: ``[a1, a2, ...]`` with ``p ~ a1 * a2**2 * a3**3 ...``,
        each ``ai`` square-free and the ``ai`` pairwise coprime."""
        p = self.exact()
        if p.degree < 1:
            return []
        dp = p.derivative()
        a0 = p.gcd(dp)
        b = p // a0
        c = dp // a0
        d = c - b.derivative()
        out = []
        while b.degree > 0:
            ai = b.gcd(d)
            b = b // ai
            c = d // ai
            d = c - b.derivative()
            out.append(ai)
        return out

    def compose_affine(self, a, b) -> "Polynomial":
        """Return ``x -> p(a + b*x)``."""
        out = Polynomial([self.coeffs[-1]])
        lin = Polynomial([a, b])
        for c in reversed(self.coeffs[:-1]):
            out = out * lin + c
        return out

    def reversed(self) -> "Polynomial":
        return Polynomial(list(reversed(self.coeffs)))

    def sign_variations(self) -> int:
        signs = [_sign(c) for c in self.coeffs if c != 0]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def cauchy_bound(self) -> float:
        """Every real root lies in ``(-B, B)``."""
        lead = abs(float(self.coeffs[-1]))
        return 1.0 + max((abs(float(c)) / lead for c in self.coeffs[:-1]), default=0.0)


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def descartes_positive_bound(p: Polynomial) -> int:
    """Sign changes of the coefficient sequence: an upper bound on the number
    of positive roots, of the same parity."""
    if p.is_zero:
        raise ValueError("Descartes bound undefined for the zero polynomial")
    return p.sign_variations()


def interval_variations(p: Polynomial, a, b) -> int:
    """Descartes bound for the number of roots of ``p`` in the open interval (a, b)."""
    q = p.compose_affine(a, b - a)  # roots in (0, 1)
    r = q.reversed()  # roots in (1, inf)
    s = r.compose_affine(1, 1)  # roots in (0, inf)
    return s.sign_variations()


def _split_point(p: Polynomial, a: Fraction, b: Fraction) -> Fraction:
    for num, den in ((1, 2), (13, 27), (14, 27), (2, 5), (3, 5), (1, 3), (2, 3)):
        m = a + (b - a) * Fraction(num, den)
        if p(m) != 0:
            return m
    raise RootIsolationError("could not find a non-root split point")


def isolate_polynomial_roots(p: Polynomial, lo, hi, max_depth: int = 300) -> list[RootBracket]:
    """Isolate the real roots of ``p`` in the open interval ``(lo, hi)``.

    Computation is exact: float coefficients and endpoints are converted to
    the rationals they represent.  Simple roots get a ``DESCARTES_ONE``
    bracket; roots of multiplicity > 1 get a ``TANGENCY_CANDIDATE`` bracket
    with the multiplicity recorded.  Brackets are ordered left to right.
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = _to_exact(lo), _to_exact(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    p = p.exact()
    if p.degree < 1:
        return []
    sqf = p.squarefree_part()
    brackets: list[tuple[Fraction, Fraction]] = []

    def recurse(a, b, depth):
        v = interval_variations(sqf, a, b)
        if v == 0:
            return
        if v == 1:
            brackets.append((a, b))
            return
        if depth >= max_depth:
            raise RootIsolationError("Descartes bisection depth exceeded")
        m = _split_point(sqf, a, b)
        recurse(a, m, depth + 1)
        recurse(m, b, depth + 1)

    a, b = lo, hi
    if sqf(a) == 0 or sqf(b) == 0:
        raise ValueError("interval endpoint is a root; nudge the interval")
    recurse(a, b, 0)

    factors = p.squarefree_factors()
    out = []
    for a, b in brackets:
        m = next((i for i, fac in enumerate(factors, 1)
                  if fac.degree > 0 and _sign(fac(a)) * _sign(fac(b)) < 0), 1)
        cert = Certificate.DESCARTES_ONE if m == 1 else Certificate.TANGENCY_CANDIDATE
        out.append(RootBracket(a, b, cert, multiplicity=m))
    return out


# ---------------------------------------------------------------------------
# smooth scalar functions


def _evaluate(f: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        ys = np.asarray(f(xs), dtype=float)
        if ys.shape == xs.shape:
            return ys
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(x))) for x in xs])


def make_grid(lo: float, hi: float, n: int, spacing: str = "auto") -> np.ndarray:
    if spacing == "auto":
        spacing = "log" if lo > 0 and hi / lo > 100 else "linear"
    if spacing == "log":
        return np.geomspace(lo, hi, n + 1)
    if spacing == "linear":
        return np.linspace(lo, hi, n + 1)
    raise ValueError(f"unknown grid spacing {spacing!r}")


def _bisect_sign(f, a, b, fa, iters=200, xtol=0.0):
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m <= a or m >= b or (b - a) <= xtol:
            break
        fm = f(m)
        if fm == 0:
            return m
        if _sign(fm) == _sign(fa):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _nudge(f, x, toward):
    # move an endpoint off an exact zero, staying inside the interval
    for frac in (1e-12, 1e-9, 1e-6):
        y = x + (toward - x) * frac
        if f(y) != 0:
            return y
    return x


def isolate_roots(
    f: Callable,
    lo: float,
    hi: float,
    df: Callable | None = None,
    *,
    n_grid: int = 512,
    max_depth: int = 60,
    spacing: str = "auto",
    tangency_tol: float = 1e-10,
) -> list[RootBracket]:
    """Bracket every root of ``f`` on ``[lo, hi]``.

    With ``df`` the interval is first cut at the zeros of ``df`` (found on
    the same grid), so each piece is monotone and holds at most one root.
    Without ``df`` the grid is scanned for sign changes, and local minima of
    ``|f|`` are searched by recursive subdivision for hidden root pairs.
    A critical point where ``|f| <= tangency_tol * (1 + |x|)`` but no sign
    change is seen is returned as a ``TANGENCY_CANDIDATE``.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if f(lo) == 0:
        lo = _nudge(f, lo, hi)
    if f(hi) == 0:
        hi = _nudge(f, hi, lo)
    xs = [float(x) for x in make_grid(lo, hi, n_grid, spacing)]
    if df is not None:
        return _isolate_monotone(f, df, xs, tangency_tol)
    return _isolate_scan(f, xs, max_depth, tangency_tol)


def _critical_points(df, xs):
    ds = _evaluate(df, np.asarray(xs))
    crit = []
    for j in range(len(xs) - 1):
        a, b = xs[j], xs[j + 1]
        da, db = ds[j], ds[j + 1]
        if da == 0 and j > 0:
            crit.append(a)
        elif _sign(da) * _sign(db) < 0:
            crit.append(_bisect_sign(df, a, b, da))
    return crit


def _isolate_monotone(f, df, xs, tol):
    cuts = [xs[0]] + _critical_points(df, xs) + [xs[-1]]
    vals = [f(c) for c in cuts]
    out: list[RootBracket] = []
    for j in range(len(cuts) - 1):
        a, b = cuts[j], cuts[j + 1]
        if a < b and _sign(vals[j]) * _sign(vals[j + 1]) < 0:
            out.append(RootBracket(a, b, Certificate.SIGN_CHANGE))
    # interior cuts are critical points of f; a near-zero value there with no
    # adjacent sign change is a (numerical) double root
    for j in range(1, len(cuts) - 1):
        c, v = cuts[j], vals[j]
        if abs(v) > tol * (1 + abs(c)):
            continue
        flanked = (_sign(vals[j - 1]) * _sign(v) < 0) or (_sign(v) * _sign(vals[j + 1]) < 0)
        if v == 0 or not flanked:
            out.append(_tangency_bracket(c, cuts[j - 1], cuts[j + 1]))
    return _dedupe(out)


def _tangency_bracket(c, left, right):
    w = max(1e-12 * (1 + abs(c)), 1e-9 * min(c - left, right - c))
    return RootBracket(max(left, c - w), min(right, c + w), Certificate.TANGENCY_CANDIDATE, 2)


def _dedupe(brackets):
    brackets = sorted(brackets, key=lambda br: (br.lo, br.hi))
    out = []
    for br in brackets:
        if out and br.certificate is Certificate.TANGENCY_CANDIDATE and out[-1].hi > br.lo:
            continue
        out.append(br)
    return out


def _isolate_scan(f, xs, max_depth, tol):
    ys = _evaluate(f, np.asarray(xs))
    out: list[RootBracket] = []
    n = len(xs)
    for j in range(n - 1):
        if _sign(ys[j]) * _sign(ys[j + 1]) < 0:
            out.append(RootBracket(xs[j], xs[j + 1], Certificate.SIGN_CHANGE))
    for j in range(1, n - 1):
        y0, y1, y2 = ys[j - 1], ys[j], ys[j + 1]
        if _sign(y0) == _sign(y1) == _sign(y2) != 0 and abs(y1) <= min(abs(y0), abs(y2)):
            out.extend(_search_pair(f, xs[j - 1], xs[j], xs[j + 1], y1, max_depth, tol))
    return _dedupe(out)


def _search_pair(f, a, m, b, fm, depth, tol):
    """Shrink a dip ``|f(m)| <= |f(a)|, |f(b)|`` of constant sign.

    A sign flip at a probe point ``x`` yields two certified roots, one in
    ``(a, x)`` and one in ``(x, b)``.
    """
    s = _sign(fm)
    for _ in range(depth):
        left, right = 0.5 * (a + m), 0.5 * (m + b)
        fl, fr = f(left), f(right)
        for x, v in ((left, fl), (right, fr)):
            if _sign(v) != s:
                if v == 0:
                    return [_tangency_bracket(x, a, b)]
                return [RootBracket(a, x, Certificate.SIGN_CHANGE),
                        RootBracket(x, b, Certificate.SIGN_CHANGE)]
        if abs(fl) < abs(fm) and abs(fl) <= abs(fr):
            a, m, b, fm = a, left, m, fl
        elif abs(fr) < abs(fm):
            a, m, b, fm = m, right, b, fr
        else:
            a, b = left, right
        if b - a <= 4e-16 * (1 + abs(m)):
            break
    if abs(fm) <= tol * (1 + abs(m)):
        return [_tangency_bracket(m, a, b)]
    return []


def refine_root(
    f: Callable,
    bracket: RootBracket,
    tol: float = 1e-12,
    df: Callable | None = None,
) -> float:
    """Shrink a certified bracket until its half-width is below ``tol``.

    Bisection guarantees progress.  When ``df`` is given, a Newton step from
    the bracket centre is tried each round and, if it lands inside, the
    bracket is tightened to ``[x - tol, x + tol]`` whenever the signs allow.
    Polynomials with exact coefficients are refined in exact arithmetic.
    """
    if bracket.certificate is Certificate.TANGENCY_CANDIDATE:
        raise CertificateViolated("tangency candidates carry no sign certificate")
    exact = isinstance(f, Polynomial) and f.is_exact
    conv = _to_exact if exact else float
    a, b = conv(bracket.lo), conv(bracket.hi)
    fa, fb = f(a), f(b)
    if fa == 0:
        return float(a)
    if fb == 0:
        return float(b)
    if _sign(fa) * _sign(fb) > 0:
        raise CertificateViolated(f"no sign change on [{float(a)}, {float(b)}]")
    sa = _sign(fa)
    use_newton = df is not None and not exact
    while b - a > 2 * tol:
        m = (a + b) / 2
        if not exact and not (a < m < b):
            break
        fm = f(m)
        if fm == 0:
            return float(m)
        if _sign(fm) == sa:
            a = m
        else:
            b = m
        if use_newton:
            d = df(m)
            if d != 0 and np.isfinite(d):
                x = m - fm / d
                lo_t, hi_t = x - tol, x + tol
                if a < lo_t and hi_t < b:
                    sl, sh = _sign(f(lo_t)), _sign(f(hi_t))
                    if sl == sa and sh == -sa:
                        a, b = lo_t, hi_t
    return float((a + b) / 2)


@dataclass
class FixedPointCount:
    count: int
    brackets: list[RootBracket]
    roots: list[float]
    tangencies: list[RootBracket] = field(default_factory=list)


def count_roots(f, lo, hi, df=None, *, refine_tol: float = 1e-12, **kw) -> FixedPointCount:
    brackets = isolate_roots(f, lo, hi, df, **kw)
    certified = [br for br in brackets if br.certificate is not Certificate.TANGENCY_CANDIDATE]
    tang = [br for br in brackets if br.certificate is Certificate.TANGENCY_CANDIDATE]
    roots = [refine_root(f, br, refine_tol, df) for br in certified]
    return FixedPointCount(len(certified), brackets, roots, tang)


def count_fixed_points(f, lo, hi, df=None, **kw) -> FixedPointCount:
    """Count solutions of ``f(x) = x`` on ``[lo, hi]``.

    Isolation runs on ``g(x) = f(x) - x``; pass ``df`` (the derivative of
    ``f``, not of ``g``) to enable monotone splitting.
    """

    def g(x):
        return f(x) - x

    dg = None if df is None else (lambda x: df(x) - 1.0)
    return count_roots(g, lo, hi, dg, **kw)
