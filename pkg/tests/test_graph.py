import pytest
from hypothesis import given

from shrubkit.graph import (
    BipartiteGraph,
    Graph,
    bipartite_complement,
    complement,
    complete,
    complete_bipartite,
    connected_components,
    cycle,
    disjoint_union,
    edgeless,
    half_graph,
    lexicographic_product,
    path,
    path_bipartite,
    random_bipartite,
    random_graph,
    semi_induced,
    to_list,
    to_mask,
    universal_threshold,
)
from shrubkit import patterns

from conftest import bipartite_graphs, graphs


def test_complement_of_triangle_is_edgeless():
    assert complement(complete(3)) == edgeless(3)


def test_complement_of_p4_is_p4_via_2413():
    # P4 = 0-1-2-3; relabelling 1,3,0,2 along the complement path
    c = complement(path(4))
    assert c.edge_set() == frozenset({(0, 2), (0, 3), (1, 3)})
    order = [1, 3, 0, 2]
    assert all(c.has_edge(order[i], order[i + 1]) for i in range(3))


def test_complement_involution_random():
    for seed in range(10):
        g = random_graph(8, 0.4, seed)
        assert complement(complement(g)) == g


def test_bipartite_complement_of_biclique():
    b = bipartite_complement(complete_bipartite(3, 4))
    assert b.graph.num_edges() == 0
    assert (b.left.bit_count(), b.right.bit_count()) == (3, 4)


def test_bipartite_complement_of_p4():
    # P4 v1-v2-v3-v4 as 0-1-2-3, sides {0,2} and {1,3}
    b = BipartiteGraph(path(4), to_mask([0, 2]), to_mask([1, 3]))
    assert bipartite_complement(b).edges() == [(0, 3)]


def test_bipartite_complement_involution_random():
    for seed in range(10):
        b = random_bipartite(5, 5, 0.5, seed)
        assert bipartite_complement(bipartite_complement(b)) == b


def test_semi_induced_examples():
    s = semi_induced(complete(5), [0, 1], [2, 3])
    assert (s.left, s.right, s.graph.num_edges()) == (0b11, 0b1100, 4)
    assert semi_induced(edgeless(4), [0], [1, 2]).graph.num_edges() == 0
    # R3 with its clique side: the clique edges vanish and H3 remains
    r3 = semi_induced(universal_threshold(3), [0, 1, 2], [3, 4, 5])
    assert r3.graph.edge_set() == half_graph(3).graph.edge_set()


def test_components():
    assert connected_components(edgeless(3)) == [[0], [1], [2]]
    assert connected_components(path(5)) == [[0, 1, 2, 3, 4]]
    two = disjoint_union(complete(3), complete(3))
    assert sorted(len(c) for c in connected_components(two)) == [3, 3]


def test_lex_product_identity_and_c5():
    h = path(4)
    assert lexicographic_product(complete(1), h) == h
    lex = lexicographic_product(cycle(5), cycle(5))
    assert lex.n == 25
    assert patterns.clique_number(lex) == 4


def test_generators():
    assert half_graph(1).edges() == [(0, 1)]
    assert universal_threshold(2).edge_set() == frozenset({(0, 1), (0, 2), (0, 3), (1, 3)})
    assert path(4).num_edges() == 3
    assert path_bipartite(4).left == 0b0101


def test_invalid_inputs():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 5)])
    with pytest.raises(ValueError):
        BipartiteGraph(complete(3), 0b011, 0b100)
    with pytest.raises(ValueError):
        path(0)


def test_mask_helpers():
    assert to_list(to_mask([5, 0, 3])) == [0, 3, 5]


@given(graphs())
def test_complement_is_involution(g):
    assert complement(complement(g)) == g
    if g.n:
        assert g.num_edges() + complement(g).num_edges() == g.n * (g.n - 1) // 2


@given(bipartite_graphs())
def test_bipartite_complement_edge_count(b):
    nl, nr = b.left.bit_count(), b.right.bit_count()
    assert b.graph.num_edges() + bipartite_complement(b).graph.num_edges() == nl * nr
