import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from graphalg import graphs as gr
from graphalg import linalg
from graphalg.graphs import GraphError, LabeledGraph
from graphalg.params import (
    AbelianGroup,
    WeightedGraph,
    chr_param,
    eul_param,
    expt_param,
    flo_param,
    hom,
    hom_param,
    perf_param,
    tut_param,
)
from graphalg.quantum import QuantumGraph as Q
from graphalg.synth import (
    SynthesisError,
    connector_coefficients,
    contractible_on_corpus,
    contractor_closure,
    contractor_target,
    find_path_relation,
    matrix_of,
    rank_bound,
    synth_connector,
    synth_contractor,
    verify_connector_param,
    verify_connector_pointwise,
    verify_contractor_param,
    verify_contractor_pointwise,
)

from .oracles import brute_hom_phi
from .test_graphs import labeled_graphs
from .test_params import weighted_graphs

O2, K2, P3, P4 = gr.empty(2), gr.complete(2), gr.path(3), gr.path(4)
S4 = LabeledGraph(4, [(0, 3), (1, 3), (2, 3)], (0, 1))
K2H, K3H = WeightedGraph.complete(2), WeightedGraph.complete(3)
WEIGHTED = WeightedGraph([F(1, 2), 2], [[1, 3], [3, 0]])
LOOPED = WeightedGraph([1, 1], [[1, 1], [1, 0]])


def li_corpus(n=5, m=2):
    return gr.enumerate_corpus(2, n, m, labels_independent=True)


# ---------------------------------------------------------------- matrix image


@settings(max_examples=80, deadline=None)
@given(weighted_graphs(), labeled_graphs(k=2, max_nodes=4, loops=True))
def test_matrix_of_matches_brute_force(h, g):
    m = matrix_of(g, h)
    for i, j in itertools.product(range(h.n), repeat=2):
        assert m[i][j] == brute_hom_phi(g, h, (i, j))


def test_matrix_examples():
    assert matrix_of(K2, K3H) == linalg.as_matrix(K3H.beta)
    assert matrix_of(O2, K3H) == [[1] * 3] * 3
    assert matrix_of(P3, K2H) == linalg.identity(2)
    with pytest.raises(GraphError):
        matrix_of(gr.empty(1), K2H)


@settings(max_examples=60, deadline=None)
@given(weighted_graphs(), labeled_graphs(k=2, max_nodes=4), labeled_graphs(k=2, max_nodes=4))
def test_matrix_image_is_a_homomorphism(h, x, y):
    mx, my = matrix_of(x, h), matrix_of(y, h)
    assert matrix_of(gr.glue_product(x, y), h) == linalg.schur(mx, my)
    assert matrix_of(gr.concatenate(x, y), h) == linalg.matmul(linalg.scale_diag(mx, h.alpha), my)
    assert matrix_of(gr.star(x), h) == linalg.transpose(mx)


def test_path_matrices_are_powers():
    a = linalg.scale_diag(linalg.as_matrix(WEIGHTED.beta), WEIGHTED.alpha)
    m = linalg.as_matrix(WEIGHTED.beta)
    for s in range(2, 7):
        assert matrix_of(gr.path(s), WEIGHTED) == m
        m = linalg.matmul(a, m)


# ---------------------------------------------------------------- connectors


@pytest.mark.parametrize("h", [K2H, K3H, LOOPED, WEIGHTED, WeightedGraph.path(4),
                               WeightedGraph([1, 2, 3], [[0, 1, 2], [1, 1, 0], [2, 0, 0]])])
def test_connector_reproduces_edge_matrix(h):
    y = synth_connector(h)
    assert verify_connector_pointwise(y, h)
    assert all(gr.isomorphic(g, gr.path(g.n)) for g in y.graphs())


def test_connector_examples():
    assert synth_connector(K2H) == Q.of(P4)
    assert connector_coefficients(K3H) == {2: F(-1, 2), 3: F(1, 2)}
    assert synth_connector(LOOPED) == Q.of(P4) - P3
    assert synth_connector(WeightedGraph([1], [[1]])) == Q.of(P3)
    assert synth_connector(WeightedGraph([1, 1], [[0, 0], [0, 0]])) == Q.zero(2)


def test_connector_passes_hom_check():
    y = synth_connector(K3H)
    v = verify_connector_param(y, hom_param(K3H), gr.enumerate_corpus(2, 4, 2))
    assert v and v.simple


def test_perf_connectors():
    corpus = gr.enumerate_corpus(2, 4, 2)
    assert verify_connector_param(Q.of(P4), perf_param(), corpus)
    bad = verify_connector_param(Q.of(P3), perf_param(), corpus)
    assert not bad and bad.lhs != bad.rhs


# ---------------------------------------------------------------- contractors


@pytest.mark.parametrize("h", [K2H, K3H, LOOPED, WEIGHTED, WeightedGraph.complete(4)])
def test_contractor_hits_target(h):
    z = synth_contractor(h)
    assert verify_contractor_pointwise(z, h)
    closure = contractor_closure(h)
    assert all(closure.is_series_parallel(g) for g in z.graphs())


def test_contractor_examples():
    assert synth_contractor(K2H) == Q.of(P3)
    assert synth_contractor(K3H) == Q.of(P3, F(1, 2)) - Q.of(K2, F(1, 2))
    assert contractor_target(K3H) == linalg.identity(3)
    assert contractor_target(WEIGHTED) == [[2, 0], [0, F(1, 2)]]


def test_contractor_zero_row_is_reported():
    h = WeightedGraph([1, 1, 1], [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    with pytest.raises(SynthesisError, match="all-zero edge-weight row"):
        synth_contractor(h)


def test_contractor_outside_span_is_reported():
    with pytest.raises(SynthesisError, match="not in the closed span"):
        synth_contractor(K2H, target=[[1, 0], [0, 2]])


@pytest.mark.parametrize("h", [K3H, WEIGHTED])
def test_contractor_passes_parameter_check(h):
    z = synth_contractor(h)
    assert verify_contractor_param(z, hom_param(h), li_corpus(5, 1))


def test_identity_image_fails_for_weighted_target():
    closure = contractor_closure(WEIGHTED)
    z = synth_contractor(WEIGHTED, closure, target=linalg.identity(2))
    v = verify_contractor_param(z, hom_param(WEIGHTED), li_corpus(3, 1))
    assert not v and v.counterexample is not None


def test_contractor_check_rejects_adjacent_labels():
    with pytest.raises(GraphError):
        verify_contractor_param(Q.of(P3), hom_param(K2H), [K2])


def test_chromatic_contractor_sign():
    corpus = li_corpus()
    for x in (3, F(5, 2)):
        f = chr_param(x)
        assert verify_contractor_param(Q.of(O2) - K2, f, corpus)
        wrong = verify_contractor_param(Q.of(K2) - O2, f, corpus)
        assert not wrong and wrong.lhs == -wrong.rhs


def test_tutte_contractor():
    corpus = li_corpus()
    for q, v in ((F(2), F(-1)), (F(3), F(2)), (F(1, 2), F(5, 3))):
        z = (Q.of(K2) - O2) * (1 / v)
        assert verify_contractor_param(z, tut_param(q, v), corpus)


@pytest.mark.parametrize("group", ["Z2", "Z3", "Z4", "Z2xZ2"])
def test_flow_contractor(group):
    f = flo_param(AbelianGroup.parse(group))
    assert verify_contractor_param(Q.of(K2) + O2, f, li_corpus(4, 2))


def test_p3_contracts_for_perfect_matchings():
    # the middle node matches one label; the other label is then deleted
    assert verify_contractor_param(Q.of(P3), perf_param(), li_corpus(5, 2))
    assert not verify_contractor_param(Q.of(O2), perf_param(), li_corpus(4, 1))


# ---------------------------------------------------------------- relations and bounds


def test_contractor_is_concatenation_unit_under_hom():
    z = synth_contractor(K3H)
    for g in gr.enumerate_corpus(2, 4, 1):
        assert matrix_of(Q.of(g) @ z, K3H) == matrix_of(g, K3H)
        lhs = sum((c * hom(gr.concatenate(g, w), K3H) for w, c in z.items()), F(0))
        assert lhs == hom(g, K3H)


def test_rank_bound():
    assert rank_bound(synth_contractor(K3H), K3H, 2) == 9
    assert rank_bound(synth_contractor(K2H), K2H, 1) == 2


def test_path_relations():
    r = find_path_relation(K2H)
    assert (r.start, r.coefficients) == (2, [0, 1])
    assert r.as_connector() == Q.of(P4)
    r = find_path_relation(WeightedGraph([1], [[1]]))
    assert (r.start, r.coefficients) == (2, [1])
    r = find_path_relation(K3H)
    assert verify_connector_pointwise(r.as_connector(), K3H)


# ---------------------------------------------------------------- contractibility


def test_contractibility_verdicts():
    c2 = gr.enumerate_corpus(2, 4, 1, labels_independent=True)
    c1 = gr.enumerate_corpus(1, 3, 1)
    assert not contractible_on_corpus(hom_param(K3H), c2, c1).refuted
    assert not contractible_on_corpus(eul_param(), c2, c1).refuted
    v = contractible_on_corpus(expt_param(), c2, c1)
    assert v.verdict == "REFUTED" and v.value != 0


def test_expt_star_path_witness():
    c2 = gr.enumerate_corpus(2, 5, 1, labels_independent=True)
    c1 = gr.enumerate_corpus(1, 3, 1)
    v = contractible_on_corpus(expt_param(), c2, c1, candidates=[Q.of(S4) - P4])
    assert v.refuted and v.witness == Q.of(S4) - P4
