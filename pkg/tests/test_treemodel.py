from hypothesis import given, strategies as st

from shrubkit import patterns
from shrubkit.graph import (
    complete,
    complete_bipartite,
    edgeless,
    half_graph,
    path,
    path_bipartite,
    semi_induced,
    to_mask,
    universal_threshold,
)
from shrubkit.treemodel import (
    BIJOIN,
    JOIN,
    UNION,
    TreeModel,
    bicotree_to_cotree,
    bimodel_matches,
    bipartite_from_model,
    build_bicotree,
    build_cotree,
    evaluate,
    induce_model,
    internal,
    leaf,
    model_from_json,
    model_matches,
    model_to_json,
    random_tree_model,
    semi_induce_model,
)

from conftest import bipartite_graphs, graphs


def _flat(rule, n=3):
    return TreeModel(internal([leaf(v) for v in range(n)], rule))


def test_evaluate_examples():
    assert evaluate(_flat(JOIN)) == complete(3)
    assert evaluate(_flat(UNION)) == edgeless(3)
    m = TreeModel(internal([internal([leaf(0), leaf(1)]), internal([leaf(2), leaf(3)])], JOIN))
    assert evaluate(m).edge_set() == complete_bipartite(2, 2).graph.edge_set()
    assert m.height() == 2


def test_build_cotree_examples():
    assert build_cotree(path(4)) is None
    assert build_cotree(complete(5)).height() == 1
    t = build_cotree(path(3))
    assert t.height() == 2 and evaluate(t, 3) == path(3)
    assert build_cotree(complete(3)).height() == 1
    k22 = complete_bipartite(2, 2).graph
    assert build_cotree(k22).height() == 2


def test_build_bicotree_examples():
    t = build_bicotree(complete_bipartite(2, 3))
    assert t.height() == 1 and t.root.rule == BIJOIN
    h2 = build_bicotree(half_graph(2))
    assert h2 is not None and h2.height() <= 3
    b6 = path_bipartite(6)
    t6 = build_bicotree(b6)
    if t6 is not None:
        assert bimodel_matches(t6, b6.graph.adj, b6.left, b6.right)


def test_height_of_single_leaf_root():
    assert TreeModel(internal([leaf(0)])).height() == 1


def test_semi_induce_model_examples():
    t = build_cotree(complete(4))
    s = semi_induce_model(t, [0, 1], [2, 3])
    assert s.height() == 1
    assert evaluate(s).edge_set() == semi_induced(complete(4), [0, 1], [2, 3]).graph.edge_set()
    e = semi_induce_model(build_cotree(edgeless(4)), [0, 1], [2, 3])
    assert evaluate(e, 4).num_edges() == 0
    r2 = universal_threshold(2)
    s = semi_induce_model(build_cotree(r2), [0, 1], [2, 3])
    assert evaluate(s).edge_set() == half_graph(2).graph.edge_set()


def test_induce_and_reverse():
    k2 = induce_model(build_cotree(complete(3)), [0, 2])
    assert evaluate(k2, 3).edge_set() == frozenset({(0, 2)})
    b = complete_bipartite(2, 2)
    h = bicotree_to_cotree(build_bicotree(b))
    assert evaluate(h, 4) == complete(4)
    assert semi_induced(evaluate(h, 4), b.left, b.right) == b
    h2 = half_graph(2)
    c = bicotree_to_cotree(build_bicotree(h2))
    assert c.height() <= 3
    assert semi_induced(evaluate(c, 4), h2.left, h2.right) == h2


def test_random_models():
    g = evaluate(random_tree_model(1, 1, 5, seed=0), 5)
    assert g in (complete(5), edgeless(5))
    g = evaluate(random_tree_model(1, 3, 10, seed=2), 10)
    assert build_cotree(g).height() <= 3
    assert random_tree_model(2, 3, 9, seed=4) == random_tree_model(2, 3, 9, seed=4)


def test_frozen_random_models():
    m = random_tree_model(2, 3, 8, seed=5)
    assert m.height() == 3
    assert evaluate(m, 8).edges() == [(0, 2), (0, 3), (1, 3), (2, 4), (2, 5), (2, 6), (2, 7),
                                      (3, 4), (3, 5), (3, 6), (3, 7), (4, 5)]
    g = evaluate(random_tree_model(1, 3, 10, seed=11), 10)
    assert (g.num_edges(), build_cotree(g).height()) == (37, 2)


def test_json_round_trip():
    m = random_tree_model(3, 3, 12, seed=1)
    assert model_from_json(model_to_json(m)) == m


@given(graphs(n_min=1, n_max=9))
def test_cotree_iff_p4_free(g):
    t = build_cotree(g)
    p4_free = g.n < 4 or patterns.find_induced(g, path(4)) is None
    assert (t is not None) == p4_free
    if t is not None:
        assert model_matches(t, g.adj, g.full)


@given(bipartite_graphs(side_max=5))
def test_bicotree_round_trip(b):
    t = build_bicotree(b)
    if t is not None:
        assert bimodel_matches(t, b.graph.adj, b.left, b.right)
        assert bipartite_from_model(t).graph.edge_set() == b.graph.edge_set()


@given(st.integers(1, 3), st.integers(1, 12), st.integers(0, 10 ** 6))
def test_random_cograph_height(h, n, seed):
    g = evaluate(random_tree_model(1, h, n, seed=seed), n)
    t = build_cotree(g)
    assert t is not None and t.height() <= h
    # induced restriction keeps evaluation consistent
    keep = to_mask(range(0, n, 2))
    sub = induce_model(t, keep)
    assert model_matches(sub, g.adj, keep)
