"""Slow, obviously-correct reference implementations used by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from graphalg.graphs import LabeledGraph
from graphalg.params import WeightedGraph


def brute_isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    """Try every bijection fixing labels positionally."""
    if (a.n, a.k, a.edge_count) != (b.n, b.k, b.edge_count):
        return False
    ea = {(u, v): m for u, v, m in a.edges}
    free_a = [x for x in range(a.n) if x not in a.labels]
    free_b = [x for x in range(b.n) if x not in b.labels]
    for perm in itertools.permutations(free_b):
        mp = dict(zip(a.labels, b.labels))
        mp.update(zip(free_a, perm))
        if all(b.multiplicity(mp[u], mp[v]) == m for (u, v), m in ea.items()):
            return True
    return False


def brute_corpus(k: int, max_nodes: int, max_mult: int) -> list[LabeledGraph]:
    """All k-labeled loopless multigraphs up to isomorphism, by pairwise brute-force filtering."""
    reps: list[LabeledGraph] = []
    for n in range(k, max_nodes + 1):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for mults in itertools.product(range(max_mult + 1), repeat=len(pairs)):
            g = LabeledGraph(n, [(u, v, m) for (u, v), m in zip(pairs, mults) if m], tuple(range(k)))
            if not any(brute_isomorphic(g, r) for r in reps):
                reps.append(g)
    return reps


def brute_hom_phi(g: LabeledGraph, h: WeightedGraph, phi=()) -> Fraction:
    """Sum over all maps V(g) -> V(h) extending phi on the labeled nodes."""
    total = Fraction(0)
    fixed = dict(zip(g.labels, phi))
    free = [x for x in range(g.n) if x not in fixed]
    for vals in itertools.product(range(h.n), repeat=len(free)):
        psi = dict(fixed)
        psi.update(zip(free, vals))
        w = Fraction(1)
        for x in free:
            w *= h.alpha[psi[x]]
        for u, v, m in g.edges:
            w *= h.beta[psi[u]][psi[v]] ** m
        total += w
    return total


def brute_hom(g: LabeledGraph, h: WeightedGraph) -> Fraction:
    return brute_hom_phi(g.unlabel(), h)


def brute_perf(g: LabeledGraph) -> int:
    edges = [(u, v) for u, v, m in g.edges if u != v for _ in range(m)]
    count = 0
    for subset in itertools.combinations(range(len(edges)), g.n // 2):
        touched = [x for i in subset for x in edges[i]]
        if g.n % 2 == 0 and len(set(touched)) == g.n:
            count += 1
    return count


def brute_eul(g: LabeledGraph) -> int:
    edges = [(u, v) for u, v, m in g.edges if u != v for _ in range(m)]
    loops = sum(m for u, v, m in g.edges if u == v)
    count = 0
    for flips in itertools.product((0, 1), repeat=len(edges)):
        net = [0] * g.n
        for (u, v), f in zip(edges, flips):
            a, b = (v, u) if f else (u, v)
            net[a] += 1
            net[b] -= 1
        if not any(net):
            count += 1
    return count * 2 ** loops


def brute_colorings(g: LabeledGraph, x: int) -> int:
    if g.loop_count:
        return 0
    return sum(all(c[u] != c[v] for u, v, _ in g.edges) for c in itertools.product(range(x), repeat=g.n))
