"""Brute-force finite-volume measures on the Cayley tree.

Configurations on the ball ``V_n`` are enumerated exactly, finite-volume
measures are built from per-vertex boundary weights on the outer shell, and
the Kolmogorov compatibility between consecutive volumes is checked
directly.  Everything here is deliberately naive: it is the ground truth the
solvers are tested against.

Weights.  With activities ``a_s`` and boundary weights ``w_s(x)`` on ``W_n``,

    mu_n(sigma) = prod_{x in V_n} a_{sigma(x)} * prod_{x in W_n} w_{sigma(x)}(x) / Z_n.

For the two-state model ``a = (1, lam)`` and ``w = (1, z_x)``.  A
four-state law ``(z0, z1, z2)`` is normalised at state 3, so the matching
choice is ``a = (lam, lam, lam, 1)`` and ``w = (z0/lam, z1/lam, z2/lam, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import TWO_STATE, ConstraintGraph, TreeParams

MAX_VERTICES = 22


class SizeGuardExceeded(ValueError):
    pass


class LabelingInfeasible(ValueError):
    pass


@dataclass(frozen=True)
class FiniteTree:
    """The ball of radius ``n`` around the root, vertices in BFS order.

    Every non-root vertex carries the generator ``letter`` of the edge to its
    parent; children of a vertex reached by letter ``a`` use the other ``k``
    letters, the root uses all ``k + 1``.
    """

    k: int
    n: int
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    letter: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, k: int, n: int, max_vertices: int = MAX_VERTICES) -> "FiniteTree":
        params = TreeParams(k, n)
        size = params.volume()
        if size > max_vertices:
            raise SizeGuardExceeded(f"|V_{n}| = {size} exceeds the limit of {max_vertices} vertices")
        parent, depth, letter = [-1], [0], [-1]
        children: list[list[int]] = [[]]
        frontier = [0]
        for d in range(1, n + 1):
            nxt = []
            for v in frontier:
                for a in range(k + 1):
                    if a == letter[v]:
                        continue
                    u = len(parent)
                    parent.append(v)
                    depth.append(d)
                    letter.append(a)
                    children.append([])
                    children[v].append(u)
                    nxt.append(u)
            frontier = nxt
        return cls(k, n, tuple(parent), tuple(depth), tuple(letter),
                   tuple(tuple(c) for c in children))

    @property
    def size(self) -> int:
        return len(self.parent)

    def shell(self, m: int) -> list[int]:
        return [v for v in range(self.size) if self.depth[v] == m]

    def ball_size(self, m: int) -> int:
        return sum(1 for d in self.depth if d <= m)


def enumerate_admissible(g: ConstraintGraph, k: int, n: int) -> list[tuple[int, ...]]:
    """All admissible configurations on ``V_n``, as state tuples in BFS order."""
    tree = FiniteTree.build(k, n)
    return _enumerate(g, tree)


def _enumerate(g, tree):
    m = g.num_states
    nbrs = [g.neighbours(s) for s in range(m)]
    out = []
    conf = [0] * tree.size

    # BFS order makes every parent precede its children
    def extend(v):
        if v == tree.size:
            out.append(tuple(conf))
            return
        options = range(m) if v == 0 else nbrs[conf[tree.parent[v]]]
        for s in options:
            conf[v] = s
            extend(v + 1)

    extend(0)
    return out


def occupied_count(c: Sequence[int]) -> int:
    return sum(1 for s in c if s >= 1)


@dataclass
class FiniteMeasure:
    tree: FiniteTree
    configs: list[tuple[int, ...]]
    probs: np.ndarray
    Z: float

    def marginal(self, m: int) -> dict[tuple[int, ...], float]:
        """Push the measure forward to ``V_m`` (``m <= n``)."""
        cut = self.tree.ball_size(m)
        parts: dict[tuple[int, ...], list[float]] = {}
        for c, p in zip(self.configs, self.probs):
            parts.setdefault(c[:cut], []).append(p)
        return {key: math.fsum(v) for key, v in parts.items()}

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return dict(zip(self.configs, self.probs))


def _weights_fn(boundary, num_states):
    if callable(boundary):
        return boundary
    w = np.asarray(boundary, dtype=float)
    if w.shape != (num_states,):
        raise ValueError(f"boundary weights need one entry per state ({num_states})")
    return lambda v: w


def _measure(g, tree, activities, weights, configs=None):
    configs = _enumerate(g, tree) if configs is None else configs
    outer = tree.shell(tree.n)
    a = np.asarray(activities, dtype=float)
    wv = {v: np.asarray(weights(v), dtype=float) for v in outer}
    for v, w in wv.items():
        if w.shape != (g.num_states,) or np.any(w <= 0):
            raise ValueError(f"boundary weights at vertex {v} must be positive, one per state")
    raw = np.empty(len(configs))
    for j, c in enumerate(configs):
        val = 1.0
        for s in c:
            val *= a[s]
        for v in outer:
            val *= wv[v][c[v]]
        raw[j] = val
    Z = math.fsum(raw)
    assert Z > 0, "all configuration weights vanished"
    return FiniteMeasure(tree, configs, raw / Z, Z)


def finite_measure(
    g: ConstraintGraph,
    k: int,
    n: int,
    lam: float,
    boundary: Sequence[float] | Callable[[int], Sequence[float]],
    activities: Sequence[float] | None = None,
) -> FiniteMeasure:
    """The measure on ``V_n`` with ``lam^(#occupied) * prod_{W_n} boundary``.

    ``boundary`` is either one weight vector for every vertex of ``W_n`` or a
    function ``vertex -> weights``.  ``activities`` overrides the default
    ``(1, lam, ..., lam)``.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    tree = FiniteTree.build(k, n)
    if activities is None:
        activities = [1.0] + [lam] * (g.num_states - 1)
    return _measure(g, tree, activities, _weights_fn(boundary, g.num_states))


def consistency_violation(
    g,
    k,
    n,
    activities,
    weights: Callable[[int], Sequence[float]],
    root_weights: Sequence[float] | None = None,
) -> float:
    """``max |marginal of mu_n on V_(n-1) - mu_(n-1)|`` over configurations.

    ``weights(v)`` gives the boundary weights at any non-root vertex ``v``.
    The root has ``k + 1`` successors rather than ``k``, so for ``n = 1`` its
    weights must be supplied separately as ``root_weights``.
    """
    if n < 1:
        raise ValueError("consistency needs n >= 1")
    if n == 1 and root_weights is None:
        raise ValueError("n = 1 needs the law's weights at the root")
    big = FiniteTree.build(k, n)
    small = FiniteTree.build(k, n - 1)
    mu_n = _measure(g, big, activities, weights)
    if n == 1:
        w0 = np.asarray(root_weights, dtype=float)
        small_w = lambda v: w0  # noqa: E731
    else:
        small_w = weights  # BFS numbering of V_(n-1) is a prefix of V_n's
    mu_small = _measure(g, small, activities, small_w).as_dict()
    marg = mu_n.marginal(n - 1)
    keys = set(marg) | set(mu_small)
    return max(abs(marg.get(c, 0.0) - mu_small.get(c, 0.0)) for c in keys)


def law_weights(g: ConstraintGraph, lam: float, law) -> tuple[np.ndarray, np.ndarray]:
    """Activities and per-vertex weights for a translation-invariant law."""
    law = np.atleast_1d(np.asarray(law, dtype=float))
    if g.num_states == 2:
        if law.shape != (1,) or law[0] <= 0:
            raise ValueError("two-state laws are a single positive number")
        return np.array([1.0, lam]), np.array([1.0, law[0]])
    if g.num_states == 4:
        if law.shape != (3,) or np.any(law <= 0):
            raise ValueError("four-state laws are (z0, z1, z2), all positive")
        return np.array([lam, lam, lam, 1.0]), np.append(law / lam, 1.0)
    raise ValueError("only two- and four-state graphs are supported")


def check_consistency(g: ConstraintGraph, k: int, n: int, lam: float, law) -> float:
    """Compatibility defect of a constant boundary law between ``V_n`` and ``V_(n-1)``."""
    act, w = law_weights(g, lam, law)
    # a constant law's value at the root, with k+1 successors, is w^((k+1)/k)
    return consistency_violation(g, k, n, act, lambda v: w, w ** ((k + 1) / k))


# ---------------------------------------------------------------------------
# index-four weakly periodic laws

# class of a vertex as (A-letter parity, length parity): H0..H3
_CLASS = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
# (class of x, class of parent) -> component index 0..7 of (z1..z8)
_PAIR_INDEX = {(3, 1): 0, (1, 3): 1, (3, 0): 2, (0, 3): 3,
               (1, 2): 4, (2, 1): 5, (2, 0): 6, (0, 2): 7}


def coset_classes(tree: FiniteTree, i: int) -> list[int]:
    """Class ``H0..H3`` of each vertex; letters ``0..i-1`` form the set A.

    A step along an A-letter flips both parities, any other step only the
    length parity.  The root lies in ``H0``.
    """
    if not 1 <= i <= tree.k + 1:
        raise LabelingInfeasible(f"need 1 <= i <= k+1, got i={i}, k={tree.k}")
    par = [(0, 0)]
    for v in range(1, tree.size):
        pa, pl = par[tree.parent[v]]
        step_a = 1 if tree.letter[v] < i else 0
        par.append((pa ^ step_a, pl ^ 1))
    return [_CLASS[p] for p in par]


def wp_vertex_components(tree: FiniteTree, i: int) -> list[int]:
    """Index into ``(z1..z8)`` of each non-root vertex (root gets -1)."""
    cls = coset_classes(tree, i)
    return [-1] + [_PAIR_INDEX[(cls[v], cls[tree.parent[v]])] for v in range(1, tree.size)]


def wp_consistency_check(k: int, i: int, lam: float, wp_solution, n: int = 2) -> float:
    """Compatibility defect of an 8-component weakly periodic two-state law."""
    if not 1 <= i <= k + 1:
        raise LabelingInfeasible(f"need 1 <= i <= k+1, got i={i}, k={k}")
    if n < 2:
        raise ValueError("the weakly periodic check needs n >= 2")
    z = np.asarray(wp_solution, dtype=float)
    if z.shape != (8,) or np.any(z <= 0):
        raise ValueError("weakly periodic laws have eight positive components")
    tree = FiniteTree.build(k, n)
    comp = wp_vertex_components(tree, i)
    act = np.array([1.0, lam])

    def weights(v):
        return np.array([1.0, z[comp[v]]])

    return consistency_violation(TWO_STATE, k, n, act, weights)
