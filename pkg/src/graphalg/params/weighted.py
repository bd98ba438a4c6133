"""Weighted target graphs, step functions and their automorphisms."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..linalg import frac


@dataclass(frozen=True)
class WeightedGraph:
    """Target graph H with positive node weights and symmetric edge weights.

    ``beta[i][i]`` is the weight of the loop at ``i``.
    """

    alpha: tuple[Fraction, ...]
    beta: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        alpha = tuple(frac(a) for a in self.alpha)
        beta = tuple(tuple(frac(b) for b in row) for row in self.beta)
        n = len(alpha)
        if len(beta) != n or any(len(row) != n for row in beta):
            raise ValueError(f"beta must be {n}x{n}")
        if any(a <= 0 for a in alpha):
            raise ValueError("node weights must be positive")
        for i in range(n):
            for j in range(i):
                if beta[i][j] != beta[j][i]:
                    raise ValueError(f"beta is not symmetric at ({i}, {j})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def total_weight(self) -> Fraction:
        return sum(self.alpha, Fraction(0))

    def is_unweighted(self) -> bool:
        return all(a == 1 for a in self.alpha) and all(b in (0, 1) for row in self.beta for b in row)

    @classmethod
    def unweighted(cls, n: int, edges: Sequence[tuple[int, int]] = ()) -> WeightedGraph:
        beta = [[0] * n for _ in range(n)]
        for u, v in edges:
            beta[u][v] = beta[v][u] = 1
        return cls(tuple([1] * n), tuple(tuple(r) for r in beta))

    @classmethod
    def complete(cls, n: int) -> WeightedGraph:
        return cls.unweighted(n, list(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> WeightedGraph:
        return cls.unweighted(n, [(i, i + 1) for i in range(n - 1)])

    def to_json(self) -> dict:
        return {
            "alpha": [str(a) for a in self.alpha],
            "beta": [[str(b) for b in row] for row in self.beta],
        }

    @classmethod
    def from_json(cls, data) -> WeightedGraph:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Fraction(a) for a in data["alpha"]),
                   tuple(tuple(Fraction(b) for b in row) for row in data["beta"]))


def twin_reduce(h: WeightedGraph) -> WeightedGraph:
    """Merge nodes with identical edge-weight rows, adding their node weights."""
    while True:
        groups: dict[tuple, list[int]] = {}
        for i, row in enumerate(h.beta):
            groups.setdefault(row, []).append(i)
        if len(groups) == h.n:
            return h
        reps = sorted(g[0] for g in groups.values())
        weight = {g[0]: sum((h.alpha[i] for i in g), Fraction(0)) for g in groups.values()}
        h = WeightedGraph(
            tuple(weight[r] for r in reps),
            tuple(tuple(h.beta[r][s] for s in reps) for r in reps),
        )


def automorphisms(h: WeightedGraph) -> list[tuple[int, ...]]:
    """All permutations preserving node weights and edge weights."""
    n = h.n
    out: list[tuple[int, ...]] = []
    perm = [0] * n
    used = [False] * n

    def extend(i):
        if i == n:
            out.append(tuple(perm))
            return
        for c in range(n):
            if used[c] or h.alpha[c] != h.alpha[i] or h.beta[c][c] != h.beta[i][i]:
                continue
            if any(h.beta[c][perm[j]] != h.beta[i][j] for j in range(i)):
                continue
            used[c] = True
            perm[i] = c
            extend(i + 1)
            used[c] = False

    extend(0)
    return out


def automorphism_orbit_count(h: WeightedGraph, k: int) -> int:
    """Number of orbits of Aut(h) on ordered k-tuples of nodes."""
    auts = automorphisms(h)
    seen: set[tuple[int, ...]] = set()
    orbits = 0
    for t in itertools.product(range(h.n), repeat=k):
        if t in seen:
            continue
        orbits += 1
        for s in auts:
            seen.add(tuple(s[x] for x in t))
    return orbits


@dataclass(frozen=True)
class StepFunction:
    """Symmetric kernel on [0,1]^2, constant on products of the parts."""

    lengths: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        lengths = tuple(frac(x) for x in self.lengths)
        values = tuple(tuple(frac(x) for x in row) for row in self.values)
        q = len(lengths)
        if q == 0 or any(x <= 0 for x in lengths) or sum(lengths) != 1:
            raise ValueError("part lengths must be positive and sum to 1")
        if len(values) != q or any(len(r) != q for r in values):
            raise ValueError(f"values must be {q}x{q}")
        for i in range(q):
            for j in range(q):
                if values[i][j] != values[j][i]:
                    raise ValueError("step function values must be symmetric")
                if not 0 <= values[i][j] <= 1:
                    raise ValueError("step function values must lie in [0, 1]")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_json(cls, data) -> StepFunction:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Fraction(x) for x in data["lengths"]),
                   tuple(tuple(Fraction(x) for x in r) for r in data["values"]))

    def to_json(self) -> dict:
        return {"lengths": [str(x) for x in self.lengths],
                "values": [[str(x) for x in r] for r in self.values]}


def step_to_weighted(w: StepFunction) -> WeightedGraph:
    return WeightedGraph(w.lengths, w.values)
