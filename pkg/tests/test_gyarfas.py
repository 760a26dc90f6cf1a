import random

import pytest
from hypothesis import given, strategies as st

from shrubkit import corpus, gyarfas, patterns
from shrubkit.graph import (
    BipartiteGraph,
    Graph,
    complete,
    cycle,
    half_graph,
    is_connected,
    path,
    to_list,
    to_mask,
)
from shrubkit.gyarfas import GyarfasDecomposition


def star(n):
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def test_path_from_endpoint():
    y = gyarfas.build(path(5), [0])
    assert [to_list(b) for b in y.bags] == [[0], [1], [2], [3], [4]]
    assert y.hook[1:] == [0, 1, 2, 3]
    assert gyarfas.height(y) == 4
    deepest = max(range(len(y.bags)), key=lambda i: y.level[i])
    assert gyarfas.hook_path(y, deepest) == [0, 1, 2, 3, 4]


def test_star_and_clique():
    # every leaf is its own component once the center is gone, hence its own bag
    y = gyarfas.build(star(4), [0])
    assert [to_list(b) for b in y.bags] == [[0], [1], [2], [3], [4]] and y.height() == 1
    assert set(y.hook[1:]) == {0}
    assert gyarfas.level_union(gyarfas.build(star(3), [0]), 1) == [1, 2, 3]
    y = gyarfas.build(complete(5), [2])
    assert [to_list(b) for b in y.bags] == [[2], [0, 1, 3, 4]] and y.height() == 1
    assert gyarfas.hook_path(y, 1) == [2, 0]


def test_frozen_random_decomposition():
    g = corpus.random_connected_graph(12, 0.3, random.Random(3))
    y = gyarfas.build(g)
    assert (g.num_edges(), y.height()) == (15, 4)
    assert [(to_list(b), p, h) for b, p, h in zip(y.bags, y.parent, y.hook)] == [
        ([0], -1, None), ([1, 6, 7, 9, 10], 0, 0), ([11], 1, 6), ([3], 2, 11), ([2], 3, 3),
        ([4], 1, 6), ([5], 5, 4), ([8], 1, 10)]


def test_cross_edge_violation():
    # P3 0-1-2 with bags {1} -> {0}, {2} as siblings is fine; put the edge across siblings
    g = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    y = GyarfasDecomposition()
    y._add(1, -1, None)
    y._add(2, 0, 0)
    y._add(4, 0, 0)
    ok, why = gyarfas.validate(g, y)
    assert not ok and why.startswith("property 3")


def test_hook_misses_vertex_violation():
    g = star(3)
    y = GyarfasDecomposition()
    y._add(1 << 1, -1, None)
    y._add(0b1101, 0, 1)
    ok, why = gyarfas.validate(g, y)
    assert not ok and why.startswith("property 5")


def test_bipartite_levels():
    h3 = half_graph(3)
    y = gyarfas.build(h3.graph, [0])
    assert gyarfas.bipartite_levels_check(h3, y)
    c6 = BipartiteGraph(cycle(6), to_mask([0, 2, 4]), to_mask([1, 3, 5]))
    y = GyarfasDecomposition()
    y._add(1, -1, None)
    y._add(to_mask([1, 2, 3, 4, 5]), 0, 0)
    assert not gyarfas.bipartite_levels_check(c6, y)


def test_bad_roots():
    with pytest.raises(ValueError):
        gyarfas.build(path(3), [7])
    with pytest.raises(ValueError):
        gyarfas.build(path(3), [0, 2])


def test_json_round_trip():
    g = corpus.random_connected_graph(10, 0.3, random.Random(0))
    y = gyarfas.build(g)
    z = GyarfasDecomposition.from_json(y.to_json())

    def shape(d):
        return {(b, d.bags[p] if p >= 0 else None, h) for b, p, h in zip(d.bags, d.parent, d.hook)}

    assert shape(z) == shape(y)
    assert gyarfas.validate(g, z)[0]
    assert gyarfas.to_dot(y).startswith("digraph")


def test_random_connected_graphs_validate():
    rng = random.Random(11)
    for _ in range(500):
        g = corpus.random_connected_graph(rng.randint(1, 20), rng.choice((0.1, 0.2, 0.4)), rng)
        ok, why = gyarfas.validate(g, gyarfas.build(g))
        assert ok, why


def test_random_bipartite_levels():
    rng = random.Random(5)
    for _ in range(200):
        b = corpus.random_connected_bipartite(rng.randint(1, 6), rng.randint(1, 6), 0.4, rng)
        assert gyarfas.bipartite_levels_check(b, gyarfas.build(b.graph))


@given(st.integers(1, 14), st.floats(0.1, 0.6), st.integers(0, 10 ** 6))
def test_hook_paths_are_induced(n, p, seed):
    g = corpus.random_connected_graph(n, p, random.Random(seed))
    y = gyarfas.build(g)
    for i in range(len(y.bags)):
        seq = gyarfas.hook_path(y, i)
        pairs = {(a, b) for a in range(len(seq)) for b in range(a + 1, len(seq))}
        assert {(a, b) for a, b in pairs if g.has_edge(seq[a], seq[b])} == {(a, a + 1) for a in range(len(seq) - 1)}
        # the path hits every level once, so a P_t-free graph has height <= t - 2
        assert len(seq) == y.level[i] + 1


@given(st.integers(2, 9), st.integers(0, 10 ** 6))
def test_p5_free_height(n, seed):
    g = corpus.random_connected_graph(n, 0.5, random.Random(seed))
    if patterns.find_induced(g, path(5)) is None:
        assert gyarfas.build(g).height() <= 3
    assert is_connected(g)
