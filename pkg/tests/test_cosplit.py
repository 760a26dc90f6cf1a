import pytest
from hypothesis import given, settings, strategies as st

from shrubkit import corpus, cosplit as C, patterns
from shrubkit.graph import (
    BipartiteGraph,
    Graph,
    bipartite_complement,
    complete_bipartite,
    edgeless,
    path,
    path_bipartite,
)
from shrubkit.treemodel import BIJOIN, UNION, build_bicotree, evaluate, internal, leaf, random_tree_model
from shrubkit.cosplit import _BSplit

MATCHING = Graph.from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)])


def _valid(g, s, size=None, height=None):
    ok, why = C.validate_cosplit(g, s, size, height)
    assert ok, why


def test_budgets():
    assert [C.cosplit_budget(5, k) for k in range(4)] == [1, 3, 17, 87]
    assert C.cosplit_budget_closed(5, 2) == 20
    assert C.bipartite_budget(5, 1) == 2
    assert C.two_cosplit_budget(3, 2) == 12


def test_index_one_graph():
    assert patterns.strong_index(MATCHING)[0] == 1
    s = C.cosplit(MATCHING, 5)
    assert s.size <= 3 and s.height <= 2
    _valid(MATCHING, s, 3, 2)


def test_edgeless_single_part():
    s = C.cosplit(edgeless(5), 5)
    assert s.parts == [[0, 1, 2, 3, 4]] and s.height == 1
    assert C.two_cosplit(edgeless(5), 5).parts == [[0, 1, 2, 3, 4]]


def test_bipartite_base_cases():
    b = BipartiteGraph.from_edges([0, 1, 2], [3, 4, 5], [(0, 3), (0, 4), (1, 3), (1, 4), (2, 5)])
    s = C.two_cosplit_bipartite(b, 5)
    assert s.size == 2 and s.height <= 2
    _valid(b, s)
    star = complete_bipartite(1, 4)
    s = C.two_cosplit_bipartite(star, 5)
    assert s.parts == [[0], [1, 2, 3, 4]] and s.height <= 2


def test_preconditions():
    with pytest.raises(C.PreconditionError) as exc:
        C.cosplit(path(8), 5)
    assert exc.value.pattern == "P_t" and exc.value.witness is not None
    with pytest.raises(C.PreconditionError):
        C.two_cosplit_bipartite(path_bipartite(7), 5)


def test_frozen_cosplit_corpus():
    # (n, edges, size, height) of the non-trivial cosplits in a seeded corpus
    gs = corpus.induced_free_corpus(40, 12, 5, 2, seed=3, n_min=6)
    rows = [(g.n, g.num_edges(), C.cosplit(g, 5).size, C.cosplit(g, 5).height)
            for g in gs if C.cosplit(g, 5).size > 1]
    assert rows == FROZEN_COSPLIT


FROZEN_COSPLIT = [(7, 5, 4, 1), (7, 9, 6, 1), (6, 8, 5, 1), (6, 5, 4, 1), (12, 29, 5, 1)]


def test_merge_splits():
    k11 = _BSplit([1], [2], {(0, 0): internal([leaf(0), leaf(1)], BIJOIN)})
    other = _BSplit([4], [8], {(0, 0): internal([leaf(2), leaf(3)], BIJOIN)})
    m = C.merge_splits([k11, other], UNION)
    assert (m.lparts, m.rparts) == ([5], [10]) and m.height() == 2
    singles = [_BSplit([1 << v], [], {}) for v in range(3)]
    m = C.merge_splits(singles, UNION)
    assert m.lparts == [7] and m.certs == {}


def test_refine_with_bipartition_is_identity():
    b = complete_bipartite(2, 2)
    s = _BSplit([b.left], [b.right], {(0, 0): build_bicotree(b).root})
    r = C.refine_splits([(b.left, True), (b.right, False)], [s])
    assert (r.lparts, r.rparts) == (s.lparts, s.rparts)
    assert evaluate_pair(r, 0, 0) == b.graph.edge_set()


def evaluate_pair(s, i, j):
    from shrubkit.treemodel import TreeModel
    return evaluate(TreeModel(s.certs[(i, j)], 2)).edge_set()


def test_complement_transfer():
    b = complete_bipartite(2, 2)
    s = _BSplit([b.left], [b.right], {(0, 0): build_bicotree(b).root})
    t = C.complement_transfer_split(s)
    assert evaluate_pair(t, 0, 0) == frozenset() and t.height() == s.height()
    assert C.complement_transfer_split(t) == s


def test_violations_are_named():
    g = path(4)
    bad = C.Cosplit([[0, 1, 2, 3]], [C.edgeless_model(g.full)])
    ok, why = C.validate_cosplit(g, bad)
    assert not ok and "part 0" in why
    # two parts whose semi-induced graph is P4 with sides {0,2},{1,3}, certified wrongly
    ts = C.TwoCosplit([[0, 2], [1, 3]], [C.edgeless_model(5), C.edgeless_model(10)],
                      {(0, 1): C.edgeless_model(15, first=5)})
    ok, why = C.validate_cosplit(g, ts)
    assert not ok and "pair (0, 1)" in why


def test_json_round_trip():
    g = corpus.induced_free_corpus(1, 10, 5, 2, seed=1, n_min=6)[0]
    s = C.cosplit(g, 5)
    assert C.cosplit_to_json(C.cosplit_from_json(C.cosplit_to_json(s))) == C.cosplit_to_json(s)
    t = C.two_cosplit(g, 7)
    back = C.cosplit_from_json(C.cosplit_to_json(t))
    _valid(g, back)


def test_height_two_cographs():
    for seed in range(40):
        g = evaluate(random_tree_model(1, 2, 10, seed=seed), 10)
        s = C.two_cosplit(g, 5, check=False)
        _valid(g, s)
        assert s.height <= 2


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_bipartite_corpus_validates(seed):
    b = corpus.bipartite_free_corpus(1, 7, 5, 3, seed=seed)[0]
    s = C.two_cosplit_bipartite(b, 5)
    k = s.index
    _valid(b, s, C.bipartite_budget(5, k), max(2 * k, 1))
    # bipartite complement admits the transferred split with the same heights
    bc = bipartite_complement(b)
    sc = C.two_cosplit_bipartite(bc, 5)
    _valid(bc, sc)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_general_corpus_validates(seed):
    g = corpus.semi_free_corpus(1, 10, 7, 3, seed=seed, n_min=5)[0]
    s = C.two_cosplit(g, 7)
    _valid(g, s)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_induced_corpus_bounds(seed):
    g = corpus.induced_free_corpus(1, 12, 5, 2, seed=seed, n_min=6)[0]
    s = C.cosplit(g, 5)
    k = s.index
    _valid(g, s, C.cosplit_budget(5, k), max(2 * k, 1))
