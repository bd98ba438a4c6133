import random
from fractions import Fraction as F

import pytest

from graphalg import graphs as gr
from graphalg import linalg
from graphalg.connalg import (
    EvaluationError,
    congruent_corpus,
    congruent_hom_exact,
    connection_matrix,
    find_negative_witness,
    psd_certify,
    quantum_square_value,
    rank_exact,
    saturate_rank,
)
from graphalg.graphs import LabeledGraph
from graphalg.params import (
    GraphParameter,
    WeightedGraph,
    automorphism_orbit_count,
    chr_param,
    expt,
    expt_param,
    hom_param,
    perf_param,
)
from graphalg.quantum import QuantumGraph as Q

O2, K2, P3, P4 = gr.empty(2), gr.complete(2), gr.path(3), gr.path(4)
S4 = LabeledGraph(4, [(0, 3), (1, 3), (2, 3)], (0, 1))
K2H, K3H = WeightedGraph.complete(2), WeightedGraph.complete(3)


def test_perf_matrix_on_o2_k2():
    cm = connection_matrix(perf_param(), [O2, K2])
    assert cm.entries == [[0, 1], [1, 2]]
    assert psd_certify(cm).verdict == "NOT_PSD"


def test_trivial_hom_gives_all_ones():
    one = WeightedGraph([1], [[1]])
    cm = connection_matrix(hom_param(one), gr.enumerate_corpus(2, 3, 1))
    assert all(x == 1 for row in cm.entries for x in row)
    assert cm.rank() == 1


def test_expt_entry():
    assert connection_matrix(expt_param(), [O2, K2]).entries[1][1] == F(1, 2)


def test_profile_fast_path_matches_direct_evaluation():
    corpus = gr.enumerate_corpus(2, 4, 1)
    h = WeightedGraph([F(1, 2), 2, 1], [[1, F(1, 3), 0], [F(1, 3), 0, 2], [0, 2, 1]])
    f = hom_param(h)
    assert connection_matrix(f, corpus).entries == connection_matrix(f, corpus, via_profiles=False).entries


def test_jobs_do_not_change_result():
    corpus = gr.enumerate_corpus(2, 4, 1)
    f = chr_param(3)
    assert connection_matrix(f, corpus, jobs=3).entries == connection_matrix(f, corpus).entries


def test_evaluation_errors_name_the_pair():
    def boom(g):
        if g.edge_count > 1:
            raise ArithmeticError("nope")
        return F(1)

    with pytest.raises(EvaluationError, match="members 1 and 1"):
        connection_matrix(GraphParameter("boom", boom), [O2, K2])


def test_rank_examples():
    assert rank_exact(linalg.identity(3)) == 3
    assert rank_exact([[1] * 5] * 5) == 1


def test_psd_examples_and_certificates():
    cert = psd_certify([[2, 1], [1, 2]])
    assert cert.psd and cert.verify([[2, 1], [1, 2]])
    cert = psd_certify([[1, 2], [2, 1]])
    assert not cert.psd and cert.value < 0
    assert linalg.quadratic_form([[1, 2], [2, 1]], [1, -1]) == -2
    assert cert.verify([[1, 2], [2, 1]])
    assert psd_certify(linalg.zeros(4)).psd
    with pytest.raises(ValueError):
        psd_certify([[1, 0], [1, 1]])


def test_congruence_examples():
    assert not congruent_corpus(P3, P3, perf_param(), [O2]).refuted
    corpus = gr.enumerate_corpus(2, 5, 1)
    c = congruent_corpus(S4, P4, expt_param(), corpus)
    assert c.verdict == "CONSISTENT_ON_CORPUS"
    s, p = Q.of(S4).contract(), Q.of(P4).contract()
    k1 = gr.enumerate_corpus(1, 1, 1)
    r = congruent_corpus(s, p, expt_param(), k1)
    assert r.refuted and r.value == F(1, 8)
    assert expt(gr.contract_labels(S4)) == F(1, 4)
    assert expt(gr.contract_labels(P4)) == F(1, 8)


def test_hom_congruence():
    assert not congruent_hom_exact(K2, P3, K2H)
    assert congruent_hom_exact(K2, P4, K2H)
    assert congruent_hom_exact(P3, Q.of(P3) + Q.zero(2), K3H)


def test_corpus_congruence_never_refutes_exact_congruence():
    rng = random.Random(4)
    corpus = list(gr.enumerate_corpus(2, 4, 1))
    f = hom_param(K2H)
    for _ in range(30):
        x, y = rng.choice(corpus), rng.choice(corpus)
        if congruent_hom_exact(x, y, K2H):
            assert not congruent_corpus(x, y, f, corpus).refuted


def test_negative_witnesses():
    corpus2 = gr.enumerate_corpus(2, 4, 1)
    assert find_negative_witness(chr_param(3), corpus2) is None
    w = find_negative_witness(perf_param(), corpus2)
    assert w is not None and quantum_square_value(perf_param(), w) < 0
    corpus3 = gr.enumerate_corpus(3, 5, 1, simple_only=True)
    w = find_negative_witness(chr_param(F(3, 2)), corpus3)
    assert w is not None and quantum_square_value(chr_param(F(3, 2)), w) < 0


def test_rank_invariances():
    corpus = list(gr.enumerate_corpus(2, 4, 1))
    f = chr_param(F(5, 2))
    base = connection_matrix(f, corpus).rank()
    rng = random.Random(8)
    shuffled = corpus[:]
    rng.shuffle(shuffled)
    assert connection_matrix(f, shuffled).rank() == base
    # appending a congruent copy (here: an isomorphic one) cannot raise the rank
    assert connection_matrix(f, corpus + [gr.star(corpus[-1])]).rank() == base


@pytest.mark.parametrize("h,k", [(K2H, 1), (K2H, 2), (K3H, 2), (WeightedGraph.path(4), 1),
                                 (WeightedGraph.path(3), 2)])
def test_hom_rank_bounded_by_orbits(h, k):
    sat = saturate_rank(hom_param(h), k, cap=4)
    assert sat.rank <= automorphism_orbit_count(h, k)
    ranks = [r for _, r in sat.ranks]
    assert ranks == sorted(ranks)


def test_saturation_reports_cap():
    sat = saturate_rank(chr_param(7), 2, start=2, cap=2)
    assert not sat.stabilized and sat.ranks == [(2, sat.rank)]


def test_certificate_json():
    data = psd_certify([[1, 2], [2, 1]]).to_json()
    assert data["verdict"] == "NOT_PSD" and F(data["value"]) < 0
    data = psd_certify([[F(1, 2), 0], [0, 1]]).to_json()
    assert sorted(data["diag"]) == ["1", "1/2"]
