"""Quantum graphs: finite rational combinations of canonical k-labeled graphs."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from . import graphs as gr
from .graphs import GraphError, LabeledGraph, canonical_form, sort_key
from .linalg import frac


class QuantumGraph:
    """Immutable map from canonical k-labeled graphs to nonzero rationals.

    The zero quantum graph has no terms and is compatible with every arity.
    """

    __slots__ = ("k", "_terms", "_hash")

    def __init__(self, k: int, terms: Mapping[LabeledGraph, object] | Iterable = ()):
        acc: dict[LabeledGraph, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            if g.k != k:
                raise GraphError(f"term with k={g.k} in a {k}-labeled quantum graph")
            c = frac(c)
            if not c:
                continue
            key = canonical_form(g)
            acc[key] = acc.get(key, Fraction(0)) + c
        self.k = k
        self._terms = {g: c for g, c in sorted(acc.items(), key=lambda t: sort_key(t[0])) if c}
        self._hash = None

    @classmethod
    def of(cls, g: LabeledGraph, coef=1) -> QuantumGraph:
        return cls(g.k, [(g, coef)])

    @classmethod
    def zero(cls, k: int = 0) -> QuantumGraph:
        return cls(k)

    @classmethod
    def combination(cls, k: int, coefs: Iterable, graphs: Iterable[LabeledGraph]) -> QuantumGraph:
        return cls(k, list(zip(graphs, coefs)))

    def items(self) -> Iterator[tuple[LabeledGraph, Fraction]]:
        return iter(self._terms.items())

    def graphs(self) -> list[LabeledGraph]:
        return list(self._terms)

    def coefficient(self, g: LabeledGraph) -> Fraction:
        return self._terms.get(canonical_form(g), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LabeledGraph):
            other = QuantumGraph.of(other)
        if not isinstance(other, QuantumGraph):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.k == other.k and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, tuple(self._terms.items()))) if self._terms else hash(())
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"QuantumGraph(k={self.k}, 0)"
        body = " + ".join(f"({c})*{g!r}" for g, c in self._terms.items())
        return f"QuantumGraph(k={self.k}, {body})"

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        return q_add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self):
        return q_scale(-1, self)

    def __sub__(self, other):
        return q_add(self, q_scale(-1, _lift(other)))

    def __rsub__(self, other):
        return q_add(_lift(other), q_scale(-1, self))

    def __mul__(self, other):
        if isinstance(other, (QuantumGraph, LabeledGraph)):
            return q_product(self, _lift(other))
        return q_scale(other, self)

    def __rmul__(self, other):
        if isinstance(other, LabeledGraph):
            return q_product(_lift(other), self)
        return q_scale(other, self)

    def __truediv__(self, c):
        return q_scale(1 / frac(c), self)

    def __matmul__(self, other):
        return q_concat(self, _lift(other))

    def __rmatmul__(self, other):
        return q_concat(_lift(other), self)

    def star(self) -> QuantumGraph:
        return q_star(self)

    def contract(self) -> QuantumGraph:
        return q_contract(self)

    def map_terms(self, op: Callable[[LabeledGraph], LabeledGraph], k: int) -> QuantumGraph:
        return QuantumGraph(k, [(op(g), c) for g, c in self._terms.items()])


def _lift(x) -> QuantumGraph:
    if isinstance(x, QuantumGraph):
        return x
    if isinstance(x, LabeledGraph):
        return QuantumGraph.of(x)
    raise TypeError(f"expected a graph or quantum graph, got {type(x).__name__}")


def _arity(x: QuantumGraph, y: QuantumGraph) -> int:
    if x and y and x.k != y.k:
        raise GraphError(f"arity mismatch: {x.k} vs {y.k}")
    return x.k if x else y.k


def q_add(x: QuantumGraph, y: QuantumGraph) -> QuantumGraph:
    k = _arity(x, y)
    return QuantumGraph(k, list(x.items()) + list(y.items()))


def q_scale(c, x: QuantumGraph) -> QuantumGraph:
    c = frac(c)
    return QuantumGraph(x.k, [(g, c * a) for g, a in x.items()])


def _bilinear(x, y, op, k) -> QuantumGraph:
    return QuantumGraph(k, [(op(g, h), a * b) for g, a in x.items() for h, b in y.items()])


def q_product(x: QuantumGraph, y: QuantumGraph) -> QuantumGraph:
    k = _arity(x, y)
    return _bilinear(x, y, gr.glue_product, k)


def _need_two(x: QuantumGraph, op: str):
    if x and x.k != 2:
        raise GraphError(f"{op} needs 2-labeled quantum graphs, got k={x.k}")


def q_concat(x: QuantumGraph, y: QuantumGraph) -> QuantumGraph:
    _need_two(x, "q_concat")
    _need_two(y, "q_concat")
    return _bilinear(x, y, gr.concatenate, 2)


def q_star(x: QuantumGraph) -> QuantumGraph:
    _need_two(x, "q_star")
    return x.map_terms(gr.star, 2)


def q_contract(x: QuantumGraph) -> QuantumGraph:
    _need_two(x, "q_contract")
    for g, _ in x.items():
        if not g.labels_independent():
            raise GraphError(f"cannot contract term {g!r}: its labeled nodes are adjacent")
    return x.map_terms(gr.contract_labels, 1)


def evaluate(f: Callable[[LabeledGraph], Fraction], x) -> Fraction:
    """Linear extension of a graph parameter."""
    x = _lift(x)
    return sum((c * f(g) for g, c in x.items()), Fraction(0))


def basis_vector(x: QuantumGraph, index: Mapping[LabeledGraph, int], size: int) -> list[Fraction]:
    out = [Fraction(0)] * size
    for g, c in x.items():
        out[index[g]] = c
    return out


# ---------------------------------------------------------------- JSON


def _graph_json(g: LabeledGraph) -> dict:
    return {
        "nodes": g.n,
        "labels": list(g.labels),
        "edges": [[u, v, m] for u, v, m in g.edges],
    }


def _graph_from_json(obj, k: int) -> LabeledGraph:
    if isinstance(obj, str):
        g = gr.loads_one(obj)
    else:
        g = LabeledGraph(int(obj["nodes"]), [tuple(e) for e in obj.get("edges", [])],
                         tuple(obj.get("labels", ())))
    if g.k != k:
        raise GraphError(f"term has k={g.k}, quantum graph declares k={k}")
    return g


def to_json(x: QuantumGraph) -> dict:
    return {
        "k": x.k,
        "terms": [{"coef": str(c), "graph": _graph_json(g)} for g, c in x.items()],
    }


def from_json(data) -> QuantumGraph:
    if isinstance(data, str):
        data = json.loads(data)
    k = int(data["k"])
    return QuantumGraph(k, [(_graph_from_json(t["graph"], k), Fraction(str(t["coef"])))
                            for t in data["terms"]])


def dumps(x: QuantumGraph) -> str:
    return json.dumps(to_json(x), indent=2)
