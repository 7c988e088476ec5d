"""Boundary-law fixed-point maps and a damped fixed-point solver.

Component order conventions:

* four-state laws are ``(z0, z1, z2)`` with ``z3 = 1``;
* the 8-component weakly periodic law is ``(z1, ..., z8)``;
* the 4-component reduced law is ``(z1, z2, z7, z8)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ConstraintGraph


class NoConvergence(RuntimeError):
    def __init__(self, msg, last=None, residual=None):
        super().__init__(msg)
        self.last = last
        self.residual = residual


def ti_map_generic(g: ConstraintGraph, k: int, lam: float, z) -> np.ndarray:
    """Translation-invariant boundary-law map of a four-state graph.

    ``z'_i = lam * [(a_i0 z0 + a_i1 z1 + a_i2 z2 + a_i3) /
    (a_30 z0 + a_31 z1 + a_32 z2 + a_33)]^k`` for ``i = 0, 1, 2``.
    """
    if g.num_states != 4:
        raise ValueError("ti_map_generic expects a four-state graph")
    a = g.matrix().astype(float)
    zz = np.append(np.asarray(z, dtype=float), 1.0)
    num = a[:3] @ zz
    den = a[3] @ zz
    if den <= 0:
        raise ZeroDivisionError("state 3 has no admissible neighbour with positive weight")
    return lam * (num / den) ** k


def stick_system(k: int, lam: float, z) -> np.ndarray:
    z0, z1, z2 = z
    return np.array([lam * (z1 / z2) ** k,
                     lam * ((z0 + z2) / z2) ** k,
                     lam * ((z1 + 1) / z2) ** k])


def key_system(k: int, lam: float, z) -> np.ndarray:
    z0, z1, z2 = z
    return np.array([lam * ((z1 + z2) / z2) ** k,
                     lam * ((z0 + z2) / z2) ** k,
                     lam * ((z0 + z1 + 1) / z2) ** k])


def stick_lift(z1: float, k: int, lam: float) -> np.ndarray:
    """Full ``(z0, z1, z2)`` from a fixed point ``z1`` of the stick reduction."""
    log_z2 = (np.log(lam) + k * np.log1p(z1)) / (k + 1)
    z0 = np.exp(np.log(lam) + k * (np.log(z1) - log_z2))
    return np.array([z0, z1, np.exp(log_z2)])


def key_lift(z: float, k: int, lam: float) -> np.ndarray:
    """Full ``(z0, z1, z2)`` from a fixed point of the key reduction (``z0 = z1 = z``)."""
    z2 = np.exp((np.log(lam) + k * np.log1p(2 * z)) / (k + 1))
    return np.array([z, z, z2])


def two_state_ti_map(k: int, lam: float, z):
    return (1.0 + lam * np.asarray(z, dtype=float)) ** (-k)


def _check_i(k, i):
    if int(i) != i or not 1 <= i <= k + 1:
        raise ValueError(f"subgroup parameter i must satisfy 1 <= i <= k+1, got i={i}, k={k}")


def wp8_map(k: int, i: int, lam: float, z) -> np.ndarray:
    """The eight coupled equations for an index-four weakly periodic law."""
    _check_i(k, i)
    z1, z2, z3, z4, z5, z6, z7, z8 = np.asarray(z, dtype=float)

    def t(v):
        return 1.0 + lam * v

    return np.array([
        t(z4) ** -i * t(z2) ** -(k - i),
        t(z6) ** -i * t(z1) ** -(k - i),
        t(z4) ** -(i - 1) * t(z2) ** -(k - i + 1),
        t(z3) ** -(i - 1) * t(z7) ** -(k - i + 1),
        t(z6) ** -(i - 1) * t(z1) ** -(k - i + 1),
        t(z5) ** -(i - 1) * t(z8) ** -(k - i + 1),
        t(z5) ** -i * t(z8) ** -(k - i),
        t(z3) ** -i * t(z7) ** -(k - i),
    ])


def _rpow(x, p):
    # real power with 0-th power defined as 1 even when x is 0
    if p == 0:
        return np.ones_like(x)
    return np.exp(p * np.log(x))


def wp4_map(k: int, i: int, lam: float, z) -> np.ndarray:
    """The reduced four-component map on ``(z1, z2, z7, z8)``."""
    _check_i(k, i)
    z1, z2, z7, z8 = np.asarray(z, dtype=float)

    def comp(p, q, r):
        tp = 1.0 + lam * p
        return (tp**k / (_rpow(tp, k / i) + lam * _rpow(q, 1.0 - 1.0 / i)) ** i
                / (1.0 + lam * r) ** (k - i))

    return np.array([comp(z7, z8, z2), comp(z8, z7, z1), comp(z1, z2, z8), comp(z2, z1, z7)])


def lift_wp4_to_wp8(k: int, i: int, lam: float, z) -> np.ndarray:
    """Complete a reduced law ``(z1, z2, z7, z8)`` to all eight components.

    Eliminating the inner factors between equation pairs (1,3), (2,5), (7,6)
    and (8,4) gives each of ``z3..z6`` explicitly, e.g.
    ``z4 = z8^(1-1/i) (1 + lam z7)^(-k/i)``.
    """
    _check_i(k, i)
    z1, z2, z7, z8 = np.asarray(z, dtype=float)
    e = 1.0 - 1.0 / i
    z3 = _rpow(z1, e) * (1 + lam * z2) ** (-k / i)
    z4 = _rpow(z8, e) * (1 + lam * z7) ** (-k / i)
    z5 = _rpow(z2, e) * (1 + lam * z1) ** (-k / i)
    z6 = _rpow(z7, e) * (1 + lam * z8) ** (-k / i)
    return np.array([z1, z2, z3, z4, z5, z6, z7, z8])


def project_wp8(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    return z[[0, 1, 6, 7]]


def in_i2(z, tol: float = 1e-12) -> bool:
    z1, z2, z7, z8 = np.asarray(z, dtype=float)
    return abs(z1 - z7) <= tol * max(1.0, abs(z1)) and abs(z2 - z8) <= tol * max(1.0, abs(z2))


def residual(fmap: Callable, z) -> float:
    z = np.asarray(z, dtype=float)
    return float(np.max(np.abs(np.asarray(fmap(z)) - z)))


@dataclass
class FixedPointResult:
    z: np.ndarray
    iterations: int
    residual: float
    method: str = "damped"


def solve_fixed_point(
    fmap: Callable,
    start,
    tol: float = 1e-12,
    max_iter: int = 100_000,
    alpha: float = 0.5,
    stall: int = 200,
) -> FixedPointResult:
    """Damped iteration ``z <- (1 - alpha) z + alpha fmap(z)``.

    Stops when ``max |fmap(z) - z| < tol``.  If the residual has not halved
    over ``stall`` consecutive steps, ``alpha`` is halved (down to 1e-3);
    the schedule is deterministic.  For scalar maps a failed iteration falls
    back to bisection on ``fmap(z) - z``.  Raises :class:`NoConvergence`
    otherwise; certified counts should then come from the scalar reductions
    instead.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = np.array(start, dtype=float)
    if not np.all(z > 0):
        raise ValueError("start must be strictly positive")
    res = np.inf
    best, best_it = np.inf, 0
    for it in range(1, max_iter + 1):
        fz = np.asarray(fmap(z), dtype=float)
        if not np.all(np.isfinite(fz)):
            break
        res = float(np.max(np.abs(fz - z)))
        if res < tol:
            return FixedPointResult(fz if z.ndim == 0 else z, it, res)
        if res < 0.5 * best:
            best, best_it = res, it
        elif it - best_it >= stall and alpha > 1e-3:
            alpha, best, best_it = alpha / 2, res, it
        z = (1 - alpha) * z + alpha * fz
    if z.size == 1:
        root = _scalar_bisection(fmap, float(z.reshape(-1)[0]), tol)
        if root is not None:
            out = np.array(root).reshape(np.shape(start))
            return FixedPointResult(out, max_iter, residual(fmap, out), "bisection")
    raise NoConvergence(f"no convergence after {max_iter} iterations (residual {res:.3g})",
                        last=z, residual=res)


def _scalar_bisection(fmap, hint, tol):
    def g(x):
        return float(np.asarray(fmap(np.array(x))).reshape(-1)[0]) - x

    lo = 1e-300
    hi = max(hint, 1.0)
    if g(lo) <= 0:
        return None
    for _ in range(2000):
        if g(hi) < 0:
            break
        hi *= 2
    else:
        return None
    for _ in range(2000):
        m = 0.5 * (lo + hi)
        if m in (lo, hi):
            break
        if g(m) > 0:
            lo = m
        else:
            hi = m
        if hi - lo < tol * 1e-3:
            break
    m = 0.5 * (lo + hi)
    return m if abs(g(m)) < tol else None
