"""k-labeled multigraphs, canonical forms and the structural operations on them.

A :class:`LabeledGraph` is an immutable multigraph on nodes ``0..n-1`` (loops
allowed) together with a tuple ``labels`` where ``labels[i]`` is the node that
carries label ``i + 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


class CorpusTooLarge(GraphError):
    def __init__(self, estimate: int, limit: int):
        super().__init__(
            f"corpus enumeration would visit about {estimate} raw graphs "
            f"(limit {limit}); lower max_nodes or max_multiplicity"
        )
        self.estimate = estimate
        self.limit = limit


def _normalize_edges(n: int, edges: Iterable) -> tuple[tuple[int, int, int], ...]:
    mult: dict[tuple[int, int], int] = {}
    for e in edges:
        if len(e) == 2:
            u, v = e
            m = 1
        elif len(e) == 3:
            u, v, m = e
        else:
            raise GraphError(f"bad edge {e!r}")
        u, v, m = int(u), int(v), int(m)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if m < 0:
            raise GraphError(f"negative multiplicity on edge ({u}, {v})")
        if m == 0:
            continue
        key = (u, v) if u <= v else (v, u)
        mult[key] = mult.get(key, 0) + m
    return tuple(sorted((u, v, m) for (u, v), m in mult.items()))


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    edges: tuple[tuple[int, int, int], ...] = ()
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("node count must be nonnegative")
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))
        labels = tuple(int(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise GraphError(f"labels must sit on distinct nodes, got {labels}")
        for x in labels:
            if not 0 <= x < self.n:
                raise GraphError(f"labeled node {x} outside 0..{self.n - 1}")
        object.__setattr__(self, "labels", labels)

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges)

    @property
    def loop_count(self) -> int:
        return sum(m for u, v, m in self.edges if u == v)

    def multiplicity(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        for a, b, m in self.edges:
            if a == u and b == v:
                return m
        return 0

    def adjacency(self) -> list[dict[int, int]]:
        adj: list[dict[int, int]] = [{} for _ in range(self.n)]
        for u, v, m in self.edges:
            adj[u][v] = adj[u].get(v, 0) + m
            if u != v:
                adj[v][u] = adj[v].get(u, 0) + m
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v, m in self.edges:
            deg[u] += m
            deg[v] += m
        return deg

    def is_simple(self) -> bool:
        """No parallel edges, no loops, and labeled nodes pairwise nonadjacent."""
        if any(m > 1 or u == v for u, v, m in self.edges):
            return False
        return self.labels_independent()

    def labels_independent(self) -> bool:
        lab = set(self.labels)
        return not any(u in lab and v in lab for u, v, _ in self.edges)

    def unlabel(self) -> LabeledGraph:
        return LabeledGraph(self.n, self.edges, ())

    def relabel(self, labels: Sequence[int]) -> LabeledGraph:
        return LabeledGraph(self.n, self.edges, tuple(labels))

    def __repr__(self):
        es = ", ".join(f"{u}-{v}" + (f"x{m}" if m > 1 else "") for u, v, m in self.edges)
        return f"LabeledGraph(n={self.n}, labels={self.labels}, edges=[{es}])"


# ---------------------------------------------------------------- canonical form


def _refine(n: int, adj: list[dict[int, int]], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], m) for u, m in adj[v].items() if u != v)))
            for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [order[s] for s in sigs]
        if len(order) == ncolors:
            return colors
        ncolors = len(order)


def _twin_representatives(cell: list[int], adj: list[dict[int, int]]) -> list[int]:
    # swapping two twins of one cell is an automorphism of the colored graph, so
    # their subtrees give identical leaves; branch on one node per twin class
    reps: list[int] = []
    for v in cell:
        for r in reps:
            if adj[v].get(v, 0) != adj[r].get(r, 0):
                continue
            a = {u: m for u, m in adj[v].items() if u != v and u != r}
            b = {u: m for u, m in adj[r].items() if u != v and u != r}
            if a == b:
                break
        else:
            reps.append(v)
    return reps


def _leaf_code(order: list[int], edges) -> tuple:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for u, v, m in edges:
        a, b = pos[u], pos[v]
        out.append((a, b, m) if a <= b else (b, a, m))
    out.sort()
    return tuple(out), order


def _search(n, adj, edges, colors) -> tuple:
    colors = _refine(n, adj, colors)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    if len(cells) == n:
        return _leaf_code(sorted(range(n), key=colors.__getitem__), edges)
    target = min(c for c, vs in cells.items() if len(vs) > 1)
    best = None
    for v in _twin_representatives(cells[target], adj):
        c2 = [2 * c for c in colors]
        c2[v] -= 1
        leaf = _search(n, adj, edges, c2)
        if best is None or leaf[0] < best[0]:
            best = leaf
    return best


@lru_cache(maxsize=200_000)
def _canonical(g: LabeledGraph) -> LabeledGraph:
    n = g.n
    adj = g.adjacency()
    lab = {x: i for i, x in enumerate(g.labels)}
    init = [
        (0, lab[v], 0) if v in lab else (1, 0, adj[v].get(v, 0))
        for v in range(n)
    ]
    rank = {s: i for i, s in enumerate(sorted(set(init)))}
    code, order = _search(n, adj, g.edges, [rank[s] for s in init])
    return LabeledGraph(n, code, tuple(range(g.k)))


def canonical_form(g: LabeledGraph) -> LabeledGraph:
    """Return the canonical representative of ``g``.

    Labeled nodes are moved to ``0..k-1`` in label order and the unlabeled
    nodes are ordered so that the sorted edge list is minimal over the leaves
    of an individualization-refinement search.  Two graphs have equal
    canonical forms iff some isomorphism maps each label to the same label.
    """
    return _canonical(g)


def is_canonical(g: LabeledGraph) -> bool:
    return canonical_form(g) == g


def encode(g: LabeledGraph) -> bytes:
    c = canonical_form(g)
    return text_block(c).encode("ascii")


def sort_key(g: LabeledGraph) -> tuple:
    """Deterministic order: node count, label arity, then edge list."""
    c = canonical_form(g)
    return (c.n, c.k, c.edge_count, c.edges)


def isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    return a.k == b.k and canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------- constructors


def empty(k: int = 0) -> LabeledGraph:
    """O_k: k labeled nodes and no edges."""
    return LabeledGraph(k, (), tuple(range(k)))


def complete(k: int) -> LabeledGraph:
    """K_k with all nodes labeled."""
    return LabeledGraph(k, list(itertools.combinations(range(k), 2)), tuple(range(k)))


def path(n: int) -> LabeledGraph:
    """P_n: path on n nodes with the two end nodes labeled 1 and 2."""
    if n < 2:
        raise GraphError(f"path needs at least 2 nodes, got {n}")
    return LabeledGraph(n, [(i, i + 1) for i in range(n - 1)], (0, n - 1))


def cycle(n: int, labels: Sequence[int] = ()) -> LabeledGraph:
    if n < 1:
        raise GraphError("cycle needs at least one node")
    if n == 1:
        edges = [(0, 0)]
    elif n == 2:
        edges = [(0, 1, 2)]
    else:
        edges = [(i, (i + 1) % n) for i in range(n)]
    return LabeledGraph(n, edges, tuple(labels))


def unlabeled(n: int, edges: Iterable = ()) -> LabeledGraph:
    return LabeledGraph(n, tuple(edges), ())


# ---------------------------------------------------------------- operations


def glue_product(a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
    """Disjoint union with equally labeled nodes identified."""
    if a.k != b.k:
        raise GraphError(f"cannot glue a {a.k}-labeled graph to a {b.k}-labeled graph")
    lab_b = {x: i for i, x in enumerate(b.labels)}
    mapping = [0] * b.n
    nxt = a.n
    for v in range(b.n):
        if v in lab_b:
            mapping[v] = a.labels[lab_b[v]]
        else:
            mapping[v] = nxt
            nxt += 1
    edges = list(a.edges) + [(mapping[u], mapping[v], m) for u, v, m in b.edges]
    return LabeledGraph(nxt, edges, a.labels)


def _require_two(g: LabeledGraph, op: str):
    if g.k != 2:
        raise GraphError(f"{op} needs a 2-labeled graph, got k={g.k}")


def concatenate(a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
    """Identify label 2 of ``a`` with label 1 of ``b`` and unlabel the merged node."""
    _require_two(a, "concatenate")
    _require_two(b, "concatenate")
    mapping = [0] * b.n
    nxt = a.n
    for v in range(b.n):
        if v == b.labels[0]:
            mapping[v] = a.labels[1]
        else:
            mapping[v] = nxt
            nxt += 1
    edges = list(a.edges) + [(mapping[u], mapping[v], m) for u, v, m in b.edges]
    return LabeledGraph(nxt, edges, (a.labels[0], mapping[b.labels[1]]))


def star(g: LabeledGraph) -> LabeledGraph:
    _require_two(g, "star")
    return LabeledGraph(g.n, g.edges, (g.labels[1], g.labels[0]))


def contract_labels(g: LabeledGraph) -> LabeledGraph:
    """Identify the two labeled nodes; the result is 1-labeled."""
    _require_two(g, "contract_labels")
    a, b = g.labels
    if g.multiplicity(a, b):
        raise GraphError("labeled nodes are adjacent; contraction is only defined on nonadjacent labels")
    mapping = []
    nxt = 0
    for v in range(g.n):
        if v == b:
            mapping.append(None)
        else:
            mapping.append(nxt)
            nxt += 1
    mapping[b] = mapping[a]
    edges = [(mapping[u], mapping[v], m) for u, v, m in g.edges]
    return LabeledGraph(nxt, edges, (mapping[a],))


def identify_nodes(g: LabeledGraph, a: int, b: int) -> LabeledGraph:
    """Merge nodes a and b (edges between them become loops); labels dropped."""
    if a == b:
        return g.unlabel()
    if a > b:
        a, b = b, a
    mapping = [v if v < b else v - 1 for v in range(g.n)]
    mapping[b] = a
    return LabeledGraph(g.n - 1, [(mapping[u], mapping[v], m) for u, v, m in g.edges], ())


def delete_edge(g: LabeledGraph, u: int, v: int, count: int = 1) -> LabeledGraph:
    if u > v:
        u, v = v, u
    m = g.multiplicity(u, v)
    if m < count:
        raise GraphError(f"edge ({u}, {v}) has multiplicity {m} < {count}")
    edges = [(a, b, mm - count if (a, b) == (u, v) else mm) for a, b, mm in g.edges]
    return LabeledGraph(g.n, edges, g.labels)


def disjoint_union(a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
    """Unlabeled disjoint union (the product of 0-labeled graphs)."""
    return glue_product(a.unlabel(), b.unlabel())


# ---------------------------------------------------------------- corpus


@dataclass(frozen=True)
class Corpus:
    k: int
    max_nodes: int
    max_multiplicity: int
    simple_only: bool
    labels_independent: bool
    loops: bool
    members: tuple[LabeledGraph, ...] = field(repr=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[LabeledGraph]:
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


def _slots(n: int, k: int, labels_independent: bool, loops: bool) -> list[tuple[int, int]]:
    out = []
    for u in range(n):
        for v in range(u, n):
            if u == v and not loops:
                continue
            if labels_independent and u < k and v < k:
                continue
            out.append((u, v))
    return out


def corpus_size_estimate(k, max_nodes, max_multiplicity, simple_only=False,
                         labels_independent=False, loops=False) -> int:
    if simple_only:
        max_multiplicity, labels_independent, loops = 1, True, False
    return sum(
        (max_multiplicity + 1) ** len(_slots(n, k, labels_independent, loops))
        for n in range(k, max_nodes + 1)
    )


def raw_graphs(k, n, max_multiplicity, labels_independent=False, loops=False) -> Iterator[LabeledGraph]:
    """Every multiplicity assignment on n nodes with nodes 0..k-1 labeled."""
    slots = _slots(n, k, labels_independent, loops)
    for ms in itertools.product(range(max_multiplicity + 1), repeat=len(slots)):
        yield LabeledGraph(n, [(u, v, m) for (u, v), m in zip(slots, ms) if m], tuple(range(k)))


def enumerate_corpus(
    k: int,
    max_nodes: int,
    max_multiplicity: int = 2,
    simple_only: bool = False,
    labels_independent: bool = False,
    loops: bool = False,
    min_nodes: int | None = None,
    limit: int = 3_000_000,
) -> Corpus:
    """All pairwise non-isomorphic k-labeled multigraphs within the bounds."""
    if k < 0 or max_nodes < k:
        raise GraphError(f"need 0 <= k <= max_nodes, got k={k}, max_nodes={max_nodes}")
    if simple_only:
        max_multiplicity, labels_independent, loops = 1, True, False
    est = corpus_size_estimate(k, max_nodes, max_multiplicity, False, labels_independent, loops)
    if est > limit:
        raise CorpusTooLarge(est, limit)
    lo = k if min_nodes is None else max(k, min_nodes)
    seen: set[LabeledGraph] = set()
    for n in range(lo, max_nodes + 1):
        for g in raw_graphs(k, n, max_multiplicity, labels_independent, loops):
            seen.add(canonical_form(g))
    members = tuple(sorted(seen, key=sort_key))
    return Corpus(k, max_nodes, max_multiplicity, simple_only, labels_independent, loops, members)


# ---------------------------------------------------------------- text format


def text_block(g: LabeledGraph) -> str:
    lines = [f"graph k={g.k}", f"nodes {g.n}"]
    lines += [f"label {i + 1} {x}" for i, x in enumerate(g.labels)]
    lines += [f"edge {u} {v}" + (f" {m}" if m != 1 else "") for u, v, m in g.edges]
    return "\n".join(lines) + "\n"


def dumps(graphs: Iterable[LabeledGraph]) -> str:
    return "\n".join(text_block(g) for g in graphs)


class ParseError(GraphError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def loads(text: str) -> list[LabeledGraph]:
    """Parse one or more ``graph k=..`` blocks."""
    graphs: list[LabeledGraph] = []
    cur: dict | None = None

    def finish(lineno):
        if cur is None:
            return
        k = cur["k"]
        if cur["n"] is None:
            raise ParseError("graph block without a 'nodes' line", lineno)
        missing = [i for i in range(1, k + 1) if i not in cur["labels"]]
        if missing:
            raise ParseError(f"labels {missing} not assigned", cur["line"])
        extra = [i for i in cur["labels"] if not 1 <= i <= k]
        if extra:
            raise ParseError(f"label {extra[0]} out of range 1..{k}", cur["line"])
        labels = tuple(cur["labels"][i] for i in range(1, k + 1))
        try:
            graphs.append(LabeledGraph(cur["n"], cur["edges"], labels))
        except GraphError as e:
            raise ParseError(str(e), cur["line"]) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        toks = line.split()
        head = toks[0]
        try:
            if head == "graph":
                finish(lineno)
                if len(toks) != 2 or not toks[1].startswith("k="):
                    raise ParseError("expected 'graph k=<k>'", lineno, col)
                cur = {"k": int(toks[1][2:]), "n": None, "labels": {}, "edges": [], "line": lineno}
                continue
            if cur is None:
                raise ParseError(f"'{head}' before any 'graph' line", lineno, col)
            if head == "nodes" and len(toks) == 2:
                cur["n"] = int(toks[1])
            elif head == "label" and len(toks) == 3:
                i, x = int(toks[1]), int(toks[2])
                if i in cur["labels"]:
                    raise ParseError(f"duplicate label {i}", lineno, col)
                cur["labels"][i] = x
            elif head == "edge" and len(toks) in (3, 4):
                cur["edges"].append(tuple(int(t) for t in toks[1:]))
            else:
                raise ParseError(f"cannot parse {line!r}", lineno, col)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            bad = next((t for t in toks[1:] if not t.removeprefix("k=").lstrip("-").isdigit()), toks[0])
            raise ParseError(f"bad integer {bad!r}", lineno, raw.index(bad, col - 1) + 1) from None
    finish(len(text.splitlines()))
    return graphs


def loads_one(text: str) -> LabeledGraph:
    gs = loads(text)
    if len(gs) != 1:
        raise GraphError(f"expected exactly one graph block, found {len(gs)}")
    return gs[0]
