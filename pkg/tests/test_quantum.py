from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphalg import graphs as gr
from graphalg import quantum
from graphalg.graphs import GraphError, LabeledGraph
from graphalg.params import WeightedGraph, hom, hom_param, perf_param
from graphalg.quantum import QuantumGraph as Q

from .oracles import brute_hom
from .test_graphs import labeled_graphs

K2, O2, P3, P4 = gr.complete(2), gr.empty(2), gr.path(3), gr.path(4)
DOUBLE = LabeledGraph(2, [(0, 1, 2)], (0, 1))


@st.composite
def quantum_graphs(draw, k=2, max_terms=3):
    terms = draw(st.lists(st.tuples(labeled_graphs(k=k, max_nodes=4),
                                    st.fractions(-3, 3, max_denominator=3)), max_size=max_terms))
    return Q(k, terms)


def test_add_and_scale():
    x = Q.of(K2) + P3
    assert x - x == Q.zero(2)
    assert not (x * 0)
    assert Q.of(K2) + K2 == Q.of(K2, 2)


def test_terms_are_canonical_and_merged():
    a = LabeledGraph(3, [(0, 2), (2, 1)], (0, 1))
    b = LabeledGraph(3, [(1, 0), (0, 2)], (1, 2))
    x = Q(2, [(a, 1), (b, F(1, 2))])
    assert len(x) == 1 and x.coefficient(P3) == F(3, 2)


def test_product_expansion():
    d = Q.of(K2) - O2
    assert d * d == Q.of(DOUBLE) - Q.of(K2, 2) + O2
    assert Q.of(O2) * (Q.of(P3) - P4) == Q.of(P3) - P4


def test_concat_star_contract():
    assert Q.of(K2) @ (Q.of(K2) + P3) == Q.of(P3) + P4
    assert (Q.of(P3) - P4).star() == Q.of(P3) - P4
    assert Q.of(O2).contract() == Q.of(LabeledGraph(1, [], (0,)))
    with pytest.raises(GraphError, match="adjacent"):
        (Q.of(P3) + K2).contract()


def test_arity_mismatch():
    with pytest.raises(GraphError):
        Q.of(K2) + gr.empty(1)
    assert Q.zero(0) + K2 == Q.of(K2)


def test_evaluate():
    c4 = gr.cycle(4)
    assert quantum.evaluate(perf_param(), c4) == 2
    assert quantum.evaluate(perf_param(), Q.zero(2)) == 0
    k3 = WeightedGraph.complete(3)
    assert quantum.evaluate(hom_param(k3), Q.of(K2) + O2) == 15
    assert brute_hom(K2, k3) + brute_hom(O2, k3) == 15


@settings(max_examples=60, deadline=None)
@given(quantum_graphs(), quantum_graphs(), quantum_graphs())
def test_bilinearity_and_laws(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x @ y) @ z == x @ (y @ z)
    assert (x @ y).star() == y.star() @ x.star()


@settings(max_examples=40, deadline=None)
@given(quantum_graphs(), quantum_graphs())
def test_evaluation_is_linear(x, y):
    h = WeightedGraph([1, 2], [[0, 1], [1, F(1, 2)]])
    f = hom_param(h)
    assert quantum.evaluate(f, x + y) == quantum.evaluate(f, x) + quantum.evaluate(f, y)


@settings(max_examples=60, deadline=None)
@given(quantum_graphs(k=2, max_terms=4))
def test_json_round_trip(x):
    assert quantum.from_json(quantum.dumps(x)) == x


def test_json_accepts_text_blocks():
    data = {"k": 2, "terms": [{"coef": "-1/2", "graph": gr.text_block(P3)}]}
    assert quantum.from_json(data) == Q.of(P3, F(-1, 2))
    with pytest.raises(GraphError):
        quantum.from_json({"k": 1, "terms": [{"coef": "1", "graph": gr.text_block(P3)}]})


def test_hom_on_quantum_graph_matches_brute_force():
    h = WeightedGraph([F(1, 2), 3], [[1, 2], [2, 0]])
    x = Q.of(P4, 3) - DOUBLE + Q.of(O2, F(1, 5))
    expected = 3 * brute_hom(P4, h) - brute_hom(DOUBLE, h) + F(1, 5) * brute_hom(O2, h)
    assert quantum.evaluate(lambda g: hom(g, h), x) == expected
