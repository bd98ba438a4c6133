import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphalg import graphs as gr
from graphalg.graphs import GraphError, LabeledGraph, ParseError

from .oracles import brute_corpus, brute_isomorphic


@st.composite
def labeled_graphs(draw, k=None, max_nodes=5, max_mult=2, loops=False, max_edges=10):
    k = draw(st.integers(0, 2)) if k is None else k
    n = draw(st.integers(max(k, 1), max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_edges)) if pairs else []
    counts: dict = {}
    for e in chosen:
        counts[e] = min(counts.get(e, 0) + 1, max_mult)
    labels = draw(st.permutations(range(n)))[:k]
    return LabeledGraph(n, [(u, v, m) for (u, v), m in counts.items()], tuple(labels))


def shuffled(g: LabeledGraph, rng: random.Random) -> LabeledGraph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return LabeledGraph(g.n, [(perm[u], perm[v], m) for u, v, m in g.edges], tuple(perm[x] for x in g.labels))


P3 = gr.path(3)
P4 = gr.path(4)
K2 = gr.complete(2)
O2 = gr.empty(2)
S4 = LabeledGraph(4, [(0, 3), (1, 3), (2, 3)], (0, 1))


def test_edges_are_normalized():
    g = LabeledGraph(3, [(1, 0), (0, 1), (2, 1, 2)], ())
    assert g.edges == ((0, 1, 2), (1, 2, 2))
    assert g.edge_count == 4


def test_invalid_graphs_rejected():
    with pytest.raises(GraphError):
        LabeledGraph(2, [(0, 2)], ())
    with pytest.raises(GraphError):
        LabeledGraph(2, [], (0, 0))
    with pytest.raises(GraphError):
        gr.path(1)


# ---------------------------------------------------------------- canonical forms


def test_relabelings_of_c5_share_a_form():
    rng = random.Random(5)
    c5 = gr.cycle(5, labels=(0,))
    forms = {gr.canonical_form(shuffled(c5, rng)) for _ in range(20)}
    assert len(forms) == 1


def test_p4_and_labeled_star_differ():
    assert gr.canonical_form(P4) != gr.canonical_form(S4)
    assert not brute_isomorphic(gr.canonical_form(P4), gr.canonical_form(S4))


@settings(max_examples=150, deadline=None)
@given(labeled_graphs(loops=True), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant_and_idempotent(g, rng):
    c = gr.canonical_form(g)
    assert gr.canonical_form(shuffled(g, rng)) == c
    assert gr.canonical_form(c) == c
    assert gr.is_canonical(c)
    assert brute_isomorphic(g, c)


@settings(max_examples=150, deadline=None)
@given(labeled_graphs(k=1, max_nodes=4), labeled_graphs(k=1, max_nodes=4))
def test_canonical_equality_matches_brute_force(a, b):
    assert gr.isomorphic(a, b) == brute_isomorphic(a, b)


def test_labels_are_ordered_not_a_set():
    g = LabeledGraph(3, [(0, 2)], (0, 1))
    assert not gr.isomorphic(g, gr.star(g))


# ---------------------------------------------------------------- operations


def test_glue_unit_and_double_edge():
    assert gr.isomorphic(gr.glue_product(O2, P4), P4)
    kk = gr.glue_product(K2, K2)
    assert kk.n == 2 and kk.multiplicity(*kk.labels) == 2


def test_glue_of_two_p3_is_labeled_c4():
    c4 = LabeledGraph(4, [(0, 2), (2, 1), (1, 3), (3, 0)], (0, 1))
    assert gr.isomorphic(gr.glue_product(P3, P3), c4)
    assert brute_isomorphic(gr.canonical_form(gr.glue_product(P3, P3)), gr.canonical_form(c4))


@pytest.mark.parametrize("a,b", [(2, 2), (2, 3), (3, 4), (4, 2)])
def test_paths_compose(a, b):
    assert gr.isomorphic(gr.concatenate(gr.path(a), gr.path(b)), gr.path(a + b - 1))


def test_concat_with_pendant_gives_star():
    pendant = LabeledGraph(3, [(0, 1), (0, 2)], (0, 1))  # K_2 plus a leaf on label 1
    assert gr.isomorphic(gr.concatenate(K2, pendant), S4)
    bare = LabeledGraph(3, [(0, 2)], (0, 1))  # O_2 plus a leaf on label 1
    assert gr.isomorphic(gr.concatenate(K2, bare), LabeledGraph(4, [(0, 2), (2, 3)], (0, 1)))


def test_star():
    assert gr.isomorphic(gr.star(P3), P3)
    asym = LabeledGraph(4, [(0, 2), (2, 1), (0, 3)], (0, 1))
    assert not gr.isomorphic(gr.star(asym), asym)
    assert gr.isomorphic(gr.star(gr.star(asym)), asym)


def test_contract_labels():
    assert gr.isomorphic(gr.contract_labels(O2), LabeledGraph(1, [], (0,)))
    c = gr.contract_labels(P3)
    assert c.n == 2 and c.k == 1 and c.edges == ((0, 1, 2),)
    with pytest.raises(GraphError):
        gr.contract_labels(K2)


def test_path_shapes():
    assert gr.isomorphic(gr.path(2), K2)
    assert gr.path(3).edge_count == 2 and gr.path(4).edge_count == 3


@settings(max_examples=100, deadline=None)
@given(labeled_graphs(k=2), labeled_graphs(k=2), labeled_graphs(k=2))
def test_algebra_laws(x, y, z):
    assert gr.isomorphic(gr.glue_product(x, y), gr.glue_product(y, x))
    assert gr.isomorphic(gr.glue_product(gr.glue_product(x, y), z), gr.glue_product(x, gr.glue_product(y, z)))
    assert gr.isomorphic(gr.concatenate(gr.concatenate(x, y), z), gr.concatenate(x, gr.concatenate(y, z)))
    # star reverses concatenation and respects gluing
    assert gr.isomorphic(gr.star(gr.concatenate(x, y)), gr.concatenate(gr.star(y), gr.star(x)))
    assert gr.isomorphic(gr.star(gr.glue_product(x, y)), gr.glue_product(gr.star(x), gr.star(y)))


def test_delete_and_identify():
    g = gr.unlabeled(3, [(0, 1, 2), (1, 2)])
    assert gr.delete_edge(g, 1, 0).multiplicity(0, 1) == 1
    merged = gr.identify_nodes(g, 0, 1)
    assert merged.n == 2 and merged.loop_count == 2
    with pytest.raises(GraphError):
        gr.delete_edge(g, 0, 2)


# ---------------------------------------------------------------- corpora


def test_small_corpora():
    assert [g.n for g in gr.enumerate_corpus(0, 1, 1)] == [0, 1]
    simple = gr.enumerate_corpus(2, 2, 1, simple_only=True)
    assert list(simple) == [gr.canonical_form(O2)]


@pytest.mark.parametrize("k,n,m", [(1, 3, 1), (0, 4, 1), (2, 3, 2), (1, 3, 2)])
def test_corpus_matches_brute_enumerator(k, n, m):
    corpus = gr.enumerate_corpus(k, n, m)
    oracle = brute_corpus(k, n, m)
    assert len(corpus) == len(oracle)
    for g in oracle:
        assert sum(brute_isomorphic(g, c) for c in corpus) == 1


def test_corpus_is_deterministic_and_sorted():
    a = gr.enumerate_corpus(2, 4, 1)
    b = gr.enumerate_corpus(2, 4, 1)
    assert a.members == b.members
    assert list(a) == sorted(a, key=gr.sort_key)


def test_corpus_flags():
    ind = gr.enumerate_corpus(2, 4, 2, labels_independent=True)
    assert all(g.labels_independent() for g in ind)
    simple = gr.enumerate_corpus(2, 4, 2, simple_only=True)
    assert all(g.is_simple() for g in simple)
    looped = gr.enumerate_corpus(0, 2, 1, loops=True)
    assert any(g.loop_count for g in looped)


def test_corpus_refuses_huge_requests():
    with pytest.raises(gr.CorpusTooLarge) as err:
        gr.enumerate_corpus(2, 9, 3)
    assert err.value.estimate > err.value.limit


# ---------------------------------------------------------------- text format


@settings(max_examples=80, deadline=None)
@given(st.lists(labeled_graphs(loops=True), min_size=1, max_size=4))
def test_text_round_trip(graphs):
    assert gr.loads(gr.dumps(graphs)) == graphs


def test_text_comments_and_multiplicity():
    g = gr.loads_one("# a comment\ngraph k=1\nnodes 2\nlabel 1 1\nedge 0 1 3  # triple\n")
    assert g.labels == (1,) and g.multiplicity(0, 1) == 3


@pytest.mark.parametrize("text,line,col", [
    ("graph k=1\nnodes 2\nedge 0 y\n", 3, 8),
    ("nodes 2\n", 1, 1),
    ("graph k=2\nnodes 3\nlabel 1 0\nlabel 1 2\n", 4, 1),
    ("graph k=1\nnodes 2\n", 1, 1),
    ("graph k=0\nnodes 2\nedge 0 5\n", 1, 1),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as err:
        gr.loads(text)
    assert (err.value.line, err.value.col) == (line, col)


def test_encode_is_canonical():
    rng = random.Random(1)
    assert gr.encode(shuffled(S4, rng)) == gr.encode(S4)
