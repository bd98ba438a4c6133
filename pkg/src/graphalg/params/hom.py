"""Weighted homomorphism numbers by variable elimination.

hom_phi(F, H) sums over maps psi: V(F) -> V(H) extending phi; every node of F
outside the domain of phi contributes alpha(psi(i)) and every edge (with
multiplicity, loops included) contributes beta(psi(u), psi(v)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import perm as falling
from typing import Mapping, Sequence

import numpy as np

from ..graphs import LabeledGraph
from .weighted import StepFunction, WeightedGraph


def _num(x: Fraction):
    return x.numerator if x.denominator == 1 else x


@lru_cache(maxsize=256)
def _arrays(h: WeightedGraph):
    alpha = np.empty(h.n, dtype=object)
    alpha[:] = [_num(a) for a in h.alpha]
    beta = np.empty((h.n, h.n), dtype=object)
    for i in range(h.n):
        for j in range(h.n):
            beta[i, j] = _num(h.beta[i][j])
    return alpha, beta


def _align(vars_, arr, target, sizes):
    present = [v for v in target if v in vars_]
    if arr.ndim > 1:
        arr = np.transpose(arr, [vars_.index(v) for v in present])
    return arr.reshape([sizes[v] if v in vars_ else 1 for v in target])


def hom_tensor(
    g: LabeledGraph,
    h: WeightedGraph,
    keep: Sequence[int] = (),
    fixed: Mapping[int, int] | None = None,
) -> np.ndarray:
    """Object array indexed by the images of the ``keep`` nodes.

    Nodes in ``keep`` and in ``fixed`` carry no node weight; every other node
    is summed out.
    """
    fixed = dict(fixed or {})
    keep = tuple(keep)
    alpha, beta = _arrays(h)
    n_h = h.n
    dom = {v: ([fixed[v]] if v in fixed else list(range(n_h))) for v in range(g.n)}
    sizes = {v: len(d) for v, d in dom.items()}

    factors: list[tuple[tuple[int, ...], np.ndarray]] = []
    for v in range(g.n):
        if v not in fixed and v not in keep:
            factors.append(((v,), alpha[dom[v]]))
    for u, v, m in g.edges:
        if u == v:
            factors.append(((u,), np.diagonal(beta)[dom[u]] ** m))
        else:
            factors.append(((u, v), beta[np.ix_(dom[u], dom[v])] ** m))

    elim = [v for v in range(g.n) if v not in keep]
    nbrs = {v: set() for v in range(g.n)}
    for vs, _ in factors:
        for a in vs:
            nbrs[a].update(vs)
    while elim:
        x = min(elim, key=lambda v: (len(nbrs[v] - {v}), v))
        elim.remove(x)
        mine = [f for f in factors if x in f[0]]
        factors = [f for f in factors if x not in f[0]]
        union = sorted({a for vs, _ in mine for a in vs})
        prod = None
        for vs, arr in mine:
            a = _align(vs, arr, union, sizes)
            prod = a if prod is None else prod * a
        if prod is None:
            # isolated from every factor: node weight already included or fixed
            continue
        summed = np.asarray(prod, dtype=object).sum(axis=union.index(x))
        rest = tuple(a for a in union if a != x)
        factors.append((rest, np.asarray(summed, dtype=object).reshape([sizes[a] for a in rest])))
        for a in rest:
            nbrs[a].discard(x)
            nbrs[a].update(rest)

    out = np.empty([sizes[v] for v in keep], dtype=object)
    out[...] = 1
    for vs, arr in factors:
        out = out * _align(vs, arr, keep, sizes)
    return np.asarray(out, dtype=object)


def hom(g: LabeledGraph, h: WeightedGraph) -> Fraction:
    """hom(F, H) with the labels of F ignored."""
    return Fraction(hom_tensor(g.unlabel(), h).item())


def hom_phi(g: LabeledGraph, h: WeightedGraph, phi: Sequence[int] | Mapping[int, int]) -> Fraction:
    """phi maps label i (1-based when a mapping, 0-based position in a sequence) to a node of H."""
    if isinstance(phi, Mapping):
        images = [phi[i + 1] for i in range(g.k)]
    else:
        images = list(phi)
    if len(images) != g.k:
        raise ValueError(f"phi must assign all {g.k} labels")
    fixed = {g.labels[i]: images[i] for i in range(g.k)}
    return Fraction(hom_tensor(g, h, fixed=fixed).item())


@dataclass(frozen=True)
class HomProfile:
    """hom_phi values of a k-labeled (quantum) graph for every phi in V(H)^k."""

    h: WeightedGraph
    k: int
    values: dict

    def __getitem__(self, phi) -> Fraction:
        return self.values[tuple(phi)]

    def __eq__(self, other):
        return isinstance(other, HomProfile) and self.h == other.h and self.k == other.k \
            and self.values == other.values

    def __hash__(self):
        return hash((self.h, self.k, tuple(sorted(self.values.items()))))

    def matrix(self) -> list[list[Fraction]]:
        if self.k != 2:
            raise ValueError("matrix view needs k = 2")
        n = self.h.n
        return [[self.values[(i, j)] for j in range(n)] for i in range(n)]

    def vector(self) -> list[Fraction]:
        return [self.values[t] for t in itertools.product(range(self.h.n), repeat=self.k)]


def graph_profile(g: LabeledGraph, h: WeightedGraph) -> dict[tuple[int, ...], Fraction]:
    t = hom_tensor(g, h, keep=g.labels)
    return {phi: Fraction(t[phi] if phi else t.item())
            for phi in itertools.product(range(h.n), repeat=g.k)}


def profile(x, h: WeightedGraph) -> HomProfile:
    """Profile of a LabeledGraph or QuantumGraph (linear in the terms)."""
    from ..quantum import QuantumGraph

    if isinstance(x, LabeledGraph):
        return HomProfile(h, x.k, graph_profile(x, h))
    if not isinstance(x, QuantumGraph):
        raise TypeError(f"cannot profile {type(x).__name__}")
    values = {phi: Fraction(0) for phi in itertools.product(range(h.n), repeat=x.k)}
    for g, c in x.items():
        for phi, val in graph_profile(g, h).items():
            values[phi] += c * val
    return HomProfile(h, x.k, values)


def label_weight(h: WeightedGraph, phi: Sequence[int]) -> Fraction:
    w = Fraction(1)
    for i in phi:
        w *= h.alpha[i]
    return w


def inj(g: LabeledGraph, h: WeightedGraph) -> Fraction:
    """Weighted count of injective maps (labels ignored)."""
    n = g.n
    total = Fraction(0)
    for psi in itertools.permutations(range(h.n), n):
        w = Fraction(1)
        for v in range(n):
            w *= h.alpha[psi[v]]
        for u, v, m in g.edges:
            w *= h.beta[psi[u]][psi[v]] ** m
            if not w:
                break
        total += w
    return total


def t(g: LabeledGraph, h: WeightedGraph) -> Fraction:
    return hom(g, h) / h.total_weight ** g.n


def t0(g: LabeledGraph, h: WeightedGraph) -> Fraction:
    if not h.is_unweighted():
        raise ValueError("t0 is defined for unweighted targets only")
    if h.n < g.n:
        raise ValueError(f"t0 needs |V(H)| >= |V(F)|, got {h.n} < {g.n}")
    return inj(g, h) / falling(h.n, g.n)


def t_step(g: LabeledGraph, w: StepFunction) -> Fraction:
    """Density of F in a step kernel, summed directly over part assignments."""
    q = len(w.lengths)
    total = Fraction(0)
    for parts in itertools.product(range(q), repeat=g.n):
        val = Fraction(1)
        for p in parts:
            val *= w.lengths[p]
        for u, v, m in g.edges:
            val *= w.values[parts[u]][parts[v]] ** m
            if not val:
                break
        total += val
    return total
