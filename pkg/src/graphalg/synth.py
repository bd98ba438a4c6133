"""Connector and contractor synthesis for homomorphism functions, and verifiers.

Everything works with the matrix image M(x)_{ij} = hom_{1->i, 2->j}(x, H) of a
2-labeled quantum graph x.  It is linear, turns gluing into the entrywise
product, concatenation into M(x) diag(alpha) M(y), and the label swap into
transposition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import graphs as gr
from . import linalg
from .connalg import connection_matrix
from .graphs import GraphError, LabeledGraph
from .params import WeightedGraph, twin_reduce
from .params.hom import graph_profile
from .quantum import QuantumGraph, evaluate, q_add, q_contract, q_product, q_scale

log = logging.getLogger(__name__)

Matrix = list[list[Fraction]]


class SynthesisError(RuntimeError):
    pass


def matrix_of(x, h: WeightedGraph) -> Matrix:
    if isinstance(x, LabeledGraph):
        x = QuantumGraph.of(x)
    if x and x.k != 2:
        raise GraphError("matrix_of needs a 2-labeled quantum graph")
    n = h.n
    out = linalg.zeros(n)
    for g, c in x.items():
        p = graph_profile(g, h)
        for i in range(n):
            for j in range(n):
                out[i][j] += c * p[(i, j)]
    return out


def minimal_polynomial(a) -> list[Fraction]:
    """Monic minimal polynomial, coefficients from the constant term up."""
    return linalg.minimal_polynomial(a)


def _reduce(h: WeightedGraph) -> WeightedGraph:
    r = twin_reduce(h)
    if r.n != h.n:
        log.info("merged twin nodes of the target: %d -> %d nodes", h.n, r.n)
    return r


def connector_coefficients(h: WeightedGraph) -> dict[int, Fraction]:
    """Map s -> a_s with B = sum_s a_s (B diag(alpha))^(s-1) B.

    B diag(alpha) is similar to a symmetric matrix, so its minimal polynomial is
    z^e h(z) with e in {0, 1} and h(0) != 0; with g = h / h(0) we read the
    coefficients off 1 - g(z) = sum_{s >= 2} a_s z^(s-1).
    """
    h = _reduce(h)
    b = linalg.as_matrix(h.beta)
    if all(x == 0 for row in b for x in row):
        return {}
    a = linalg.scale_diag(b, h.alpha)
    m = minimal_polynomial(a)
    e = 0
    while m[e] == 0:
        e += 1
    if e > 1:
        raise SynthesisError(f"minimal polynomial has z^{e} as a factor; B diag(alpha) is not diagonalizable")
    hp = m[e:]
    g = [c / hp[0] for c in hp]
    one_minus_g = [Fraction(1) - g[0]] + [-c for c in g[1:]]
    assert one_minus_g[0] == 0
    return {i + 1: c for i, c in enumerate(one_minus_g) if i >= 1 and c}


def synth_connector(h: WeightedGraph) -> QuantumGraph:
    """Quantum path y = sum a_s P_{s+1} with M(y) = B."""
    coef = connector_coefficients(h)
    return QuantumGraph(2, [(gr.path(s + 1), c) for s, c in sorted(coef.items())])


# ---------------------------------------------------------------- contractor


@dataclass(frozen=True)
class SPGenerator:
    """A series-parallel 2-labeled graph with the recipe that built it."""

    graph: LabeledGraph
    recipe: tuple  # ("K2",) | ("glue", i, j) | ("concat", i, j) | ("star", i)
    matrix: Matrix = field(compare=False, repr=False)


@dataclass(frozen=True)
class Closure:
    target: WeightedGraph
    generators: list[SPGenerator]

    def rebuild(self, i: int) -> LabeledGraph:
        """Reconstruct generator i from its recipe alone."""
        r = self.generators[i].recipe
        if r[0] == "K2":
            return gr.path(2)
        if r[0] == "glue":
            return gr.glue_product(self.rebuild(r[1]), self.rebuild(r[2]))
        if r[0] == "concat":
            return gr.concatenate(self.rebuild(r[1]), self.rebuild(r[2]))
        if r[0] == "star":
            return gr.star(self.rebuild(r[1]))
        raise ValueError(f"unknown recipe {r}")

    def is_series_parallel(self, g: LabeledGraph) -> bool:
        c = gr.canonical_form(g)
        return any(gr.canonical_form(self.rebuild(i)) == c
                   for i, gen in enumerate(self.generators) if gen.graph == c)


def contractor_closure(h: WeightedGraph) -> Closure:
    """Basis of the matrix span of series-parallel graphs, closed under the
    entrywise product, X diag(alpha) Y and transposition.

    Candidates are produced from pairs of basis elements in a fixed order and
    kept when their matrix is independent of the current span.  The span has
    dimension at most n^2, so the loop terminates.
    """
    alpha = h.alpha
    k2 = gr.path(2)
    gens = [SPGenerator(gr.canonical_form(k2), ("K2",), linalg.as_matrix(h.beta))]
    flat = [linalg.flatten(gens[0].matrix)]
    cur_rank = linalg.rank(flat)
    if cur_rank == 0:
        return Closure(h, [])
    done_pairs: set[tuple] = set()
    changed = True
    while changed:
        changed = False
        idx = len(gens)
        for i in range(idx):
            cands = [(("star", i), lambda i=i: gr.star(gens[i].graph),
                      lambda i=i: linalg.transpose(gens[i].matrix))]
            for j in range(i + 1):
                cands.append((("glue", j, i), lambda i=i, j=j: gr.glue_product(gens[j].graph, gens[i].graph),
                              lambda i=i, j=j: linalg.schur(gens[j].matrix, gens[i].matrix)))
            for j in range(idx):
                cands.append((("concat", j, i), lambda i=i, j=j: gr.concatenate(gens[j].graph, gens[i].graph),
                              lambda i=i, j=j: linalg.matmul(linalg.scale_diag(gens[j].matrix, alpha),
                                                             gens[i].matrix)))
            for recipe, build, mat in cands:
                if recipe in done_pairs:
                    continue
                done_pairs.add(recipe)
                m = mat()
                v = linalg.flatten(m)
                r = linalg.rank(flat + [v])
                if r > cur_rank:
                    gens.append(SPGenerator(gr.canonical_form(build()), recipe, m))
                    flat.append(v)
                    cur_rank = r
                    changed = True
    return Closure(h, gens)


def contractor_target(h: WeightedGraph) -> Matrix:
    """diag(1/alpha): the matrix image of every contractor of hom(., H).

    Gluing weights both labeled nodes by alpha while contraction weights the
    merged node once, so hom(xz) = hom(x') for all x forces
    M(z)_{ij} = [i = j] / alpha_i.  For unit node weights this is I.
    """
    n = h.n
    return [[Fraction(1) / h.alpha[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def synth_contractor(h: WeightedGraph, closure: Closure | None = None,
                     target: Matrix | None = None) -> QuantumGraph:
    """Series-parallel quantum graph z with M(z) = diag(1/alpha) (I when unweighted).

    ``target`` overrides the matrix to reach inside the closed span.
    """
    h = _reduce(h)
    for i, row in enumerate(h.beta):
        if all(x == 0 for x in row):
            raise SynthesisError(
                f"no contractor synthesizable: node {i} has an all-zero edge-weight row, "
                "so every series-parallel matrix vanishes on that row"
            )
    closure = closure or contractor_closure(h)
    goal = linalg.flatten(contractor_target(h) if target is None else linalg.as_matrix(target))
    coef = linalg.solve_combination([linalg.flatten(g.matrix) for g in closure.generators], goal)
    if coef is None:
        basis = [g.recipe for g in closure.generators]
        raise SynthesisError(f"target matrix is not in the closed span; basis recipes: {basis}")
    return QuantumGraph(2, [(g.graph, c) for g, c in zip(closure.generators, coef) if c])


# ---------------------------------------------------------------- verifiers


@dataclass(frozen=True)
class PointwiseReport:
    matches: bool
    simple: bool
    mismatches: list[tuple[int, int, Fraction, Fraction]]

    def __bool__(self):
        return self.matches


def _pointwise(z, h, target) -> PointwiseReport:
    m = matrix_of(z, h)
    bad = [(i, j, m[i][j], target[i][j]) for i in range(h.n) for j in range(h.n)
           if m[i][j] != target[i][j]]
    z = z if isinstance(z, QuantumGraph) else QuantumGraph.of(z)
    simple = all(g.is_simple() for g in z.graphs())
    return PointwiseReport(not bad, simple, bad)


def verify_connector_pointwise(z, h: WeightedGraph) -> PointwiseReport:
    """M(z) = B; ``simple`` reports whether z lies in the span of simple graphs."""
    return _pointwise(z, h, linalg.as_matrix(h.beta))


def verify_contractor_pointwise(z, h: WeightedGraph) -> PointwiseReport:
    """M(z) = diag(1/alpha), which is I for unit node weights."""
    return _pointwise(z, h, contractor_target(h))


@dataclass(frozen=True)
class ParamVerdict:
    passed: bool
    checked: int
    counterexample: LabeledGraph | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    simple: bool | None = None

    def __bool__(self):
        return self.passed


def _as_quantum(z) -> QuantumGraph:
    return z if isinstance(z, QuantumGraph) else QuantumGraph.of(z)


def verify_contractor_param(z, f: Callable, corpus) -> ParamVerdict:
    """f(x z) = f(x') for every corpus graph x with nonadjacent labels."""
    z = _as_quantum(z)
    members = list(corpus)
    for x in members:
        if not x.labels_independent():
            raise GraphError(f"contractor check needs nonadjacent labels, got {x!r}")
        lhs = sum((c * f(gr.glue_product(x, g)) for g, c in z.items()), Fraction(0))
        rhs = Fraction(f(gr.contract_labels(x)))
        if lhs != rhs:
            return ParamVerdict(False, len(members), x, lhs, rhs)
    return ParamVerdict(True, len(members))


def verify_connector_param(z, f: Callable, corpus) -> ParamVerdict:
    """f(z x) = f(K2 x) for every corpus graph x; simplicity reported separately."""
    z = _as_quantum(z)
    simple = all(g.is_simple() for g in z.graphs())
    k2 = gr.path(2)
    members = list(corpus)
    for x in members:
        lhs = sum((c * f(gr.glue_product(g, x)) for g, c in z.items()), Fraction(0))
        rhs = Fraction(f(gr.glue_product(k2, x)))
        if lhs != rhs:
            return ParamVerdict(False, len(members), x, lhs, rhs, simple)
    return ParamVerdict(True, len(members), simple=simple)


# ---------------------------------------------------------------- path relations


@dataclass(frozen=True)
class PathRelation:
    """P_start is congruent to sum_i coefficients[i-1] P_{start+i}."""

    start: int
    coefficients: list[Fraction]

    def as_connector(self) -> QuantumGraph:
        return QuantumGraph(2, [(gr.path(self.start + i), c)
                                for i, c in enumerate(self.coefficients, 1) if c])


def find_path_relation(h: WeightedGraph, max_start: int = 12) -> PathRelation:
    """Smallest start >= 2 whose path profile is a combination of longer paths.

    For each start the window of longer paths grows one path at a time, so the
    coefficients found are those of the shortest relation.
    """
    h = _reduce(h)
    n = h.n
    a = linalg.scale_diag(linalg.as_matrix(h.beta), h.alpha)
    # M(P_s) = (B diag(alpha))^(s-2) B, built incrementally
    mats = [linalg.as_matrix(h.beta)]

    def path_matrix(s):
        while len(mats) <= s - 2:
            mats.append(linalg.matmul(a, mats[-1]))
        return mats[s - 2]

    for start in range(2, max_start + 1):
        target = linalg.flatten(path_matrix(start))
        window: list[list[Fraction]] = []
        for width in range(1, n * n + 2):
            window.append(linalg.flatten(path_matrix(start + width)))
            coef = linalg.solve_combination(window, target)
            if coef is not None:
                return PathRelation(start, coef)
    raise SynthesisError(f"no path relation with start <= {max_start}")


# ---------------------------------------------------------------- contractibility


@dataclass(frozen=True)
class ContractibilityVerdict:
    refuted: bool
    kernel_dimension: int
    witness: QuantumGraph | None = None
    contracted: QuantumGraph | None = None
    against: LabeledGraph | None = None
    value: Fraction | None = None

    @property
    def verdict(self) -> str:
        return "REFUTED" if self.refuted else "CONSISTENT_ON_CORPUS"


def _contraction_test(f, x: QuantumGraph, corpus1) -> tuple[LabeledGraph, Fraction] | None:
    xc = q_contract(x)
    for y in corpus1:
        val = sum((c * f(gr.glue_product(g, y)) for g, c in xc.items()), Fraction(0))
        if val != 0:
            return y, val
    return None


def contractible_on_corpus(f: Callable, corpus2, corpus1, candidates: Sequence[QuantumGraph] = ()) -> ContractibilityVerdict:
    """Search for x in the corpus2 kernel of f whose contraction is not in the corpus1 kernel.

    Explicit ``candidates`` are tried first and must themselves be null on
    corpus2.  Then two-term differences of equal Gram columns, then a kernel
    basis.  A refutation is conclusive; otherwise the result only speaks for
    these corpora.
    """
    members = list(corpus2)
    for g in members:
        if not g.labels_independent():
            raise GraphError("contractibility corpus must have nonadjacent labels")
    gram = connection_matrix(f, members).entries
    kernel = linalg.nullspace(gram)
    dim = len(kernel)

    def null_on_corpus(x: QuantumGraph) -> bool:
        for z in members:
            if sum((c * f(gr.glue_product(g, z)) for g, c in x.items()), Fraction(0)) != 0:
                return False
        return True

    tries: list[QuantumGraph] = [c for c in candidates if null_on_corpus(c)]
    cols = {}
    for i, row in enumerate(gram):
        cols.setdefault(tuple(row), []).append(i)
    for idxs in cols.values():
        for j in idxs[1:]:
            tries.append(QuantumGraph(2, [(members[idxs[0]], 1), (members[j], -1)]))
    for w in kernel:
        tries.append(QuantumGraph(2, list(zip(members, w))))
    for x in tries:
        hit = _contraction_test(f, x, corpus1)
        if hit is not None:
            return ContractibilityVerdict(True, dim, x, q_contract(x), hit[0], hit[1])
    return ContractibilityVerdict(False, dim)


def rank_bound(z: QuantumGraph, h: WeightedGraph, k: int) -> Fraction:
    """hom(z^2, H)^k, an upper bound for rk(hom(., H), k) when z is a contractor."""
    from .params import hom

    zz = q_product(z, z)
    val = sum((c * hom(g, h) for g, c in zz.items()), Fraction(0))
    return val ** k
