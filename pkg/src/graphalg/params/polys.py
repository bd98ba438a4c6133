"""Tutte polynomial (q, v form), chromatic polynomial and group-valued flows."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..graphs import LabeledGraph, canonical_form

Poly = dict[tuple[int, int], int]  # (q exponent, v exponent) -> coefficient


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, 0) + c
        if not out[key]:
            del out[key]
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d
    return {key: c for key, c in out.items() if c}


def _ppow(a: Poly, e: int) -> Poly:
    out: Poly = {(0, 0): 1}
    for _ in range(e):
        out = _pmul(out, a)
    return out


_ONE: Poly = {(0, 0): 1}
_Q: Poly = {(1, 0): 1}


@lru_cache(maxsize=64)
def _bundle(m: int) -> Poly:
    """(1 + v)^m - 1: the weight of choosing a nonempty subset of m parallel edges."""
    p = _ppow({(0, 0): 1, (0, 1): 1}, m)
    return _padd(p, {(0, 0): -1})


@dataclass(frozen=True)
class TuttePolynomial:
    """sum over edge subsets A of q^{c(A)} v^{|A|}, stored sparsely."""

    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_poly(cls, p: Poly) -> TuttePolynomial:
        return cls(tuple(sorted((key, Fraction(c)) for key, c in p.items() if c)))

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coeffs)

    def __call__(self, q, v) -> Fraction:
        q, v = Fraction(q), Fraction(v)
        return sum((c * q ** i * v ** j for (i, j), c in self.coeffs), Fraction(0))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs, key=lambda t: (-t[0][0] - t[0][1], t[0])):
            mono = "*".join(x for x in (
                "" if i == 0 else ("q" if i == 1 else f"q^{i}"),
                "" if j == 0 else ("v" if j == 1 else f"v^{j}"),
            ) if x)
            parts.append(f"{c}" + (f"*{mono}" if mono else "") if c != 1 or not mono else mono)
        return " + ".join(parts)


def _components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps: dict[int, list[int]] = {}
    for x in range(n):
        comps.setdefault(find(x), []).append(x)
    return list(comps.values())


def _induced(nodes: list[int], edges) -> LabeledGraph:
    idx = {v: i for i, v in enumerate(nodes)}
    return LabeledGraph(len(nodes), [(idx[u], idx[v], m) for u, v, m in edges if u in idx], ())


def _tutte(g: LabeledGraph) -> Poly:
    loops = g.loop_count
    edges = [e for e in g.edges if e[0] != e[1]]
    result = _ppow({(0, 0): 1, (0, 1): 1}, loops) if loops else dict(_ONE)
    for comp in _components(g.n, edges):
        if len(comp) == 1:
            result = _pmul(result, _Q)
        else:
            result = _pmul(result, _tutte_connected(canonical_form(_induced(comp, edges))))
    return result


@lru_cache(maxsize=500_000)
def _tutte_connected(g: LabeledGraph) -> Poly:
    # g: connected, loopless, at least one edge, canonical
    deg = [0] * g.n
    cls = [0] * g.n
    for u, v, m in g.edges:
        deg[u] += m
        deg[v] += m
        cls[u] += 1
        cls[v] += 1
    leaf = next((x for x in range(g.n) if cls[x] == 1), None)
    if leaf is not None:
        # pendant bundle: leaf joins its neighbour or stays a component of its own
        u, v, m = next(e for e in g.edges if leaf in e[:2])
        rest = [(a - (a > leaf), b - (b > leaf), mm) for a, b, mm in g.edges if (a, b, mm) != (u, v, m)]
        return _pmul(_padd(_Q, _bundle(m)), _tutte(LabeledGraph(g.n - 1, rest, ())))
    x = min(range(g.n), key=lambda y: (deg[y], y))
    u, v, m = next(e for e in g.edges if x in e[:2])
    deleted = LabeledGraph(g.n, [e for e in g.edges if e != (u, v, m)], ())
    keep, drop = u, v
    contracted_edges = []
    for a, b, mm in g.edges:
        if (a, b) == (u, v):
            continue
        a = keep if a == drop else a
        b = keep if b == drop else b
        contracted_edges.append((a - (a > drop), b - (b > drop), mm))
    contracted = LabeledGraph(g.n - 1, contracted_edges, ())
    return _padd(_pmul(_bundle(m), _tutte(contracted)), _tutte(deleted))


def tutte_poly(g: LabeledGraph) -> TuttePolynomial:
    """Deletion-contraction on parallel classes, memoized on canonical forms."""
    return TuttePolynomial.from_poly(_tutte(g.unlabel()))


def tut(g: LabeledGraph, q, v) -> Fraction:
    return tutte_poly(g)(q, v)


def chr(g: LabeledGraph, x) -> Fraction:
    """Chromatic polynomial at x, read off the Tutte polynomial at (x, -1)."""
    return tutte_poly(g)(x, -1)


def tutte_subset_sum(g: LabeledGraph, q, v) -> Fraction:
    """Direct sum over all edge subsets; exponential, used as an oracle."""
    q, v = Fraction(q), Fraction(v)
    simple = [(a, b) for a, b, m in g.edges for _ in range(m)]
    total = Fraction(0)
    for mask in range(1 << len(simple)):
        chosen = [(a, b, 1) for i, (a, b) in enumerate(simple) if mask >> i & 1]
        c = len(_components(g.n, chosen))
        total += q ** c * v ** len(chosen)
    return total


# ---------------------------------------------------------------- flows


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups Z_{n_1} x ... x Z_{n_r}."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders or any(o < 1 for o in self.orders):
            raise ValueError(f"bad cyclic orders {self.orders}")

    @classmethod
    def parse(cls, spec: str) -> AbelianGroup:
        parts = [p.strip() for p in spec.replace("×", "x").split("x") if p.strip()]
        try:
            orders = tuple(int(p.lstrip("Zz")) for p in parts)
        except ValueError:
            raise ValueError(f"cannot parse group {spec!r}; expected e.g. Z2xZ3") from None
        return cls(orders)

    def __str__(self):
        return "x".join(f"Z{o}" for o in self.orders)

    @property
    def order(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(o) for o in self.orders)))

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def nonzero(self) -> frozenset:
        return frozenset(e for e in self.elements() if e != self.zero)

    def normalize(self, x) -> tuple[int, ...]:
        if isinstance(x, int):
            x = (x,)
        if len(x) != len(self.orders):
            raise ValueError(f"element {tuple(x)} does not match group {self}")
        return tuple(int(c) % o for c, o in zip(x, self.orders))


def _check_subset(group: AbelianGroup, s: Iterable) -> frozenset:
    s = frozenset(group.normalize(x) for x in s)
    bad = [x for x in s if group.neg(x) not in s]
    if bad:
        raise ValueError(f"subset is not closed under inversion: {sorted(bad)[0]} has no inverse in it")
    return s


def flo(
    g: LabeledGraph,
    group: AbelianGroup,
    subset: Iterable | None = None,
    orientation: Sequence[bool] | None = None,
    method: str = "auto",
) -> Fraction:
    """Number of S-flows: S-valued edge labels with in-sum equal to out-sum at every node.

    Each non-loop edge (u, v) with u < v is oriented u -> v, or v -> u when the
    matching entry of ``orientation`` is true.  Loops accept any element of S.
    ``method`` picks plain enumeration ("brute"), enumeration of non-tree edges
    ("tree") or a sweep over parallel classes ("dp"); "auto" uses brute force
    for tiny inputs and the sweep otherwise.
    """
    s = group.nonzero() if subset is None else _check_subset(group, subset)
    edges = []
    loops = 0
    for u, v, m in g.edges:
        for _ in range(m):
            if u == v:
                loops += 1
            else:
                edges.append((u, v))
    if orientation is not None:
        if len(orientation) != len(edges):
            raise ValueError("orientation must give one flag per non-loop edge")
        edges = [(v, u) if flip else (u, v) for (u, v), flip in zip(edges, orientation)]
    factor = len(s) ** loops
    if method == "auto":
        method = "brute" if len(s) ** len(edges) <= 256 else "dp"
    if method == "brute":
        count = _flo_brute(g.n, edges, group, s)
    elif method == "tree":
        count = _flo_tree(g.n, edges, group, s)
    elif method == "dp":
        count = _flo_dp(g.n, edges, group, s)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Fraction(factor * count)


def _flo_brute(n, edges, group, s) -> int:
    elems = sorted(s)
    count = 0
    for vals in itertools.product(elems, repeat=len(edges)):
        net = [group.zero] * n
        for (u, v), x in zip(edges, vals):
            net[u] = group.sub(net[u], x)
            net[v] = group.add(net[v], x)
        if all(x == group.zero for x in net):
            count += 1
    return count


def _bundle_sums(group, s, m) -> dict:
    """Element -> number of ways m ordered S-values sum to it."""
    dist = {group.zero: 1}
    for _ in range(m):
        nxt: dict = {}
        for a, c in dist.items():
            for x in s:
                b = group.add(a, x)
                nxt[b] = nxt.get(b, 0) + c
        dist = nxt
    return dist


def _flo_dp(n, edges, group, s) -> int:
    # sweep oriented bundles; the state is the net inflow at nodes that still have edges ahead
    bundles: dict[tuple[int, int], int] = {}
    for e in edges:
        bundles[e] = bundles.get(e, 0) + 1
    order = sorted(bundles, key=lambda e: (max(e), min(e)))
    last = {}
    for i, (u, v) in enumerate(order):
        last[u] = last[v] = i
    zero = group.zero
    states: dict[tuple, int] = {(zero,) * n: 1}
    for i, (u, v) in enumerate(order):
        dist = _bundle_sums(group, s, bundles[u, v])
        nxt: dict[tuple, int] = {}
        for st, c in states.items():
            for x, w in dist.items():
                net = list(st)
                net[u] = group.sub(net[u], x)
                net[v] = group.add(net[v], x)
                if (last[u] == i and net[u] != zero) or (last[v] == i and net[v] != zero):
                    continue
                key = tuple(net)
                nxt[key] = nxt.get(key, 0) + c * w
        states = nxt
        if not states:
            return 0
    return sum(states.values())


def _flo_tree(n, edges, group, s) -> int:
    # spanning forest: non-tree edges are free, tree edges are forced leaf-upwards
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, free = [], []
    for i, (u, v) in enumerate(edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            free.append(i)
        else:
            parent[ru] = rv
            tree.append(i)
    adj: dict[int, list[int]] = {x: [] for x in range(n)}
    for i in tree:
        u, v = edges[i]
        adj[u].append(i)
        adj[v].append(i)
    # order nodes so that every non-root node appears after its tree parent
    up_edge: dict[int, int] = {}
    order: list[int] = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            x = stack.pop()
            order.append(x)
            for i in adj[x]:
                u, v = edges[i]
                y = v if u == x else u
                if not seen[y]:
                    seen[y] = True
                    up_edge[y] = i
                    stack.append(y)
    elems = sorted(s)
    count = 0
    for vals in itertools.product(elems, repeat=len(free)):
        net = [group.zero] * n
        for i, x in zip(free, vals):
            u, v = edges[i]
            net[u] = group.sub(net[u], x)
            net[v] = group.add(net[v], x)
        ok = True
        for y in reversed(order):
            if y not in up_edge:
                if net[y] != group.zero:
                    ok = False
                    break
                continue
            i = up_edge[y]
            u, v = edges[i]
            # edge i carries x: y gains +x if it is the head, -x if it is the tail
            x = group.neg(net[y]) if v == y else net[y]
            if x not in s:
                ok = False
                break
            net[u] = group.sub(net[u], x)
            net[v] = group.add(net[v], x)
        if ok:
            count += 1
    return count


def random_orientation(g: LabeledGraph, rng: random.Random) -> list[bool]:
    return [rng.random() < 0.5 for u, v, m in g.edges if u != v for _ in range(m)]
