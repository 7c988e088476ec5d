"""Constraint graphs, Cayley tree parameters and admissibility."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class GraphName(enum.Enum):
    STICK = "stick"
    KEY = "key"
    TWO_STATE = "two-state"


@dataclass(frozen=True)
class ConstraintGraph:
    """Admissible neighbour pairs on the state set ``{0, ..., m}``.

    ``adjacency[s][t]`` is True iff a vertex in state ``s`` may neighbour a
    vertex in state ``t``.  State 0 is the vacant state; everything else is
    occupied.
    """

    name: str
    adjacency: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.adjacency)
        if n < 2:
            raise ValueError("a constraint graph needs at least two states")
        for s, row in enumerate(self.adjacency):
            if len(row) != n:
                raise ValueError("adjacency must be square")
            for t in range(n):
                if row[t] != self.adjacency[t][s]:
                    raise ValueError(f"adjacency not symmetric at ({s}, {t})")

    @classmethod
    def from_edges(cls, name: str, num_states: int, edges: Iterable[tuple[int, int]]):
        rows = [[False] * num_states for _ in range(num_states)]
        for s, t in edges:
            if not (0 <= s < num_states and 0 <= t < num_states):
                raise ValueError(f"edge {{{s},{t}}} outside state set")
            rows[s][t] = rows[t][s] = True
        return cls(name, tuple(tuple(r) for r in rows))

    @property
    def num_states(self) -> int:
        return len(self.adjacency)

    def admissible(self, s: int, t: int) -> bool:
        n = self.num_states
        if not (0 <= s < n and 0 <= t < n):
            raise IndexError(f"state pair ({s}, {t}) out of range for {n} states")
        return self.adjacency[s][t]

    def degree(self, s: int) -> int:
        """Number of states allowed next to ``s`` (a self-loop counts once)."""
        return sum(self.adjacency[s])

    def neighbours(self, s: int) -> tuple[int, ...]:
        return tuple(t for t in range(self.num_states) if self.adjacency[s][t])

    def matrix(self) -> np.ndarray:
        return np.array(self.adjacency, dtype=int)

    def edges(self) -> list[tuple[int, int]]:
        n = self.num_states
        return [(s, t) for s in range(n) for t in range(s, n) if self.adjacency[s][t]]


STICK = ConstraintGraph.from_edges("stick", 4, [(0, 1), (1, 2), (2, 3)])
KEY = ConstraintGraph.from_edges("key", 4, [(0, 1), (0, 2), (1, 2), (2, 3)])
# the "whistle": note the self-loop at the vacant state
TWO_STATE = ConstraintGraph.from_edges("two-state", 2, [(0, 0), (0, 1)])

_BUILTINS = {
    GraphName.STICK: STICK,
    GraphName.KEY: KEY,
    GraphName.TWO_STATE: TWO_STATE,
}
_ALIASES = {"stick": GraphName.STICK, "key": GraphName.KEY,
            "two-state": GraphName.TWO_STATE, "twostate": GraphName.TWO_STATE,
            "two_state": GraphName.TWO_STATE}


def builtin_graph(name: GraphName | str) -> ConstraintGraph:
    """Return one of the built-in graphs; string names are case-insensitive."""
    if isinstance(name, str):
        try:
            name = _ALIASES[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown graph {name!r}; expected stick, key or two-state") from None
    return _BUILTINS[name]


def is_admissible_pair(g: ConstraintGraph, s: int, t: int) -> bool:
    return g.admissible(s, t)


@dataclass(frozen=True)
class TreeParams:
    """Order ``k`` of the Cayley tree and, for finite volumes, the depth ``n``."""

    k: int
    depth: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"tree order k must be an integer >= 1, got {self.k}")
        if int(self.depth) != self.depth or self.depth < 0:
            raise ValueError(f"depth must be a non-negative integer, got {self.depth}")

    def shell_size(self, m: int) -> int:
        """|W_m|: the root has k+1 children, every other vertex has k."""
        if m == 0:
            return 1
        return (self.k + 1) * self.k ** (m - 1)

    def volume(self) -> int:
        return sum(self.shell_size(m) for m in range(self.depth + 1))


def check_activity(lam) -> float:
    lam = float(lam)
    if not lam > 0 or not np.isfinite(lam):
        raise ValueError(f"activity must be a finite positive number, got {lam}")
    return lam
