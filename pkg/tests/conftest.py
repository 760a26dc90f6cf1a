from hypothesis import HealthCheck, settings, strategies as st

from shrubkit.graph import BipartiteGraph, Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, n_min=0, n_max=8):
    n = draw(st.integers(n_min, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def bipartite_graphs(draw, side_min=1, side_max=5):
    nl = draw(st.integers(side_min, side_max))
    nr = draw(st.integers(side_min, side_max))
    pairs = [(u, v) for u in range(nl) for v in range(nl, nl + nr)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return BipartiteGraph.from_edges(range(nl), range(nl, nl + nr), [e for e, k in zip(pairs, keep) if k])
