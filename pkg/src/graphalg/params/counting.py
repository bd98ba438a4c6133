"""Perfect matchings, eulerian orientations and the random-graph expectation."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from ..graphs import LabeledGraph


def perf(g: LabeledGraph) -> Fraction:
    """Number of perfect matchings; a bundle of m parallel edges offers m choices."""
    n = g.n
    if n % 2:
        return Fraction(0)
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, m in g.edges:
        if u != v:
            nbrs[u].append((v, m))
            nbrs[v].append((u, m))

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if mask == 0:
            return 1
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        return sum(m * count(rest & ~(1 << u)) for u, m in nbrs[v] if rest >> u & 1)

    return Fraction(count((1 << n) - 1))


def expt(g: LabeledGraph) -> Fraction:
    """2^-(number of adjacent node pairs), i.e. parallel edges and loops collapse."""
    pairs = sum(1 for u, v, _ in g.edges if u != v)
    return Fraction(1, 2 ** pairs)


def eul(g: LabeledGraph) -> Fraction:
    """Number of orientations with in-degree equal to out-degree at every node.

    Parallel edges are distinguishable; each loop is balanced either way round.
    """
    if any(d % 2 for d in g.degrees()):
        return Fraction(0)
    bundles = [(u, v, m) for u, v, m in g.edges if u != v]
    loops = g.loop_count
    # remaining[i][x]: multiplicity at x among bundles i.. (bounds the fixable imbalance)
    remaining = [[0] * g.n for _ in range(len(bundles) + 1)]
    for i in range(len(bundles) - 1, -1, -1):
        remaining[i] = remaining[i + 1][:]
        u, v, m = bundles[i]
        remaining[i][u] += m
        remaining[i][v] += m

    @lru_cache(maxsize=None)
    def count(i: int, net: tuple[int, ...]) -> int:
        if any(abs(x) > r for x, r in zip(net, remaining[i])):
            return 0
        if i == len(bundles):
            return 1
        u, v, m = bundles[i]
        total = 0
        for j in range(m + 1):  # j edges oriented u -> v
            d = 2 * j - m
            nxt = list(net)
            nxt[u] += d
            nxt[v] -= d
            total += comb(m, j) * count(i + 1, tuple(nxt))
        return total

    return Fraction(2 ** loops * count(0, (0,) * g.n))
