"""Seeded instance generators and rejection-sampled corpora for experiments."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable, Iterator

from . import patterns
from .graph import (
    BipartiteGraph,
    Graph,
    bipartite_complement,
    complement,
    components_within,
    lowest,
    path,
    path_bipartite,
    half_graph,
    universal_threshold,
)
from .treemodel import bipartite_from_model, evaluate, random_tree_model


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (``2^(n choose 2)`` of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])


def connect(g: Graph) -> Graph:
    """Join consecutive components by an edge between their smallest vertices."""
    comps = components_within(g.adj, g.full)
    if len(comps) <= 1:
        return g
    extra = [(lowest(a), lowest(b)) for a, b in zip(comps, comps[1:])]
    return Graph.from_edges(g.n, g.edges() + extra)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return connect(Graph.from_edges(n, edges))


def random_connected_bipartite(nl: int, nr: int, p: float, rng: random.Random) -> BipartiteGraph:
    n = nl + nr
    edges = [(u, v) for u in range(nl) for v in range(nl, n) if rng.random() < p]
    g = Graph.from_edges(n, edges)
    comps = components_within(g.adj, g.full)
    left = (1 << nl) - 1
    # bridge components through a cross pair so the sides stay independent
    for a, b in zip(comps, comps[1:]):
        if a & left and b & ~left:
            edges.append((lowest(a & left), lowest(b & ~left)))
        elif a & ~left and b & left:
            edges.append((lowest(b & left), lowest(a & ~left)))
        elif a & left:
            # both components purely left: impossible unless isolated left vertices
            edges.append((lowest(a), lowest(g.full & ~left)))
        else:
            edges.append((lowest(left), lowest(a)))
    b = BipartiteGraph(Graph.from_edges(n, edges), left, g.full ^ left)
    if len(components_within(b.graph.adj, b.graph.full)) > 1:
        return random_connected_bipartite(nl, nr, min(1.0, p + 0.1), rng)
    return b


def substitution_graph(rng: random.Random, n: int) -> Graph:
    """A random base graph on a few vertices with each vertex blown up into a small cograph."""
    base_n = rng.randint(min(n, 4), min(n, 6))
    cuts = sorted(rng.sample(range(1, n), base_n - 1)) if base_n > 1 else []
    blocks = [list(range(i, j)) for i, j in zip([0] + cuts, cuts + [n])]
    p = rng.choice((0.3, 0.5, 0.7))
    base = [(a, b) for a in range(base_n) for b in range(a + 1, base_n) if rng.random() < p]
    edges = [(u, v) for a, b in base for u in blocks[a] for v in blocks[b]]
    for blk in blocks:
        if len(blk) > 1:
            inner = evaluate(random_tree_model(1, rng.randint(1, 2), len(blk), seed=rng.randrange(1 << 30)))
            edges += [(blk[u], blk[v]) for u, v in inner.edges()]
    return Graph.from_edges(n, edges)


def mixed_graph(rng: random.Random, n_min: int, n_max: int) -> Graph:
    """A third each of shallow tree-model graphs, cograph substitutions into a
    small random graph, and Erdős–Rényi graphs."""
    n = rng.randint(n_min, n_max)
    r = rng.random()
    if r < 1 / 3:
        m = random_tree_model(rng.randint(1, 3), rng.randint(1, 3), n, seed=rng.randrange(1 << 30))
        return evaluate(m, n)
    if r < 2 / 3 and n >= 2:
        return substitution_graph(rng, n)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                                if rng.random() < rng.choice((0.2, 0.5, 0.8))])


def mixed_bipartite(rng: random.Random, side_max: int) -> BipartiteGraph:
    nl, nr = rng.randint(1, side_max), rng.randint(1, side_max)
    if rng.random() < 0.5:
        m = random_tree_model(2, rng.randint(1, 3), nl + nr, seed=rng.randrange(1 << 30), bipartite=True)
        b = bipartite_from_model(m)
        if b.left and b.right:
            return b
    p = rng.choice((0.2, 0.5, 0.8))
    edges = [(u, v) for u in range(nl) for v in range(nl, nl + nr) if rng.random() < p]
    return BipartiteGraph.from_edges(range(nl), range(nl, nl + nr), edges)


def sample(gen: Callable[[random.Random], object], keep: Callable[[object], bool], count: int,
           seed: int = 0, max_tries: int | None = None) -> list:
    """First ``count`` generated instances accepted by ``keep``."""
    rng = random.Random(seed)
    out, tries = [], 0
    limit = max_tries if max_tries is not None else 200 * count
    while len(out) < count and tries < limit:
        tries += 1
        x = gen(rng)
        if keep(x):
            out.append(x)
    if len(out) < count:
        raise RuntimeError(f"rejection sampling produced {len(out)} of {count} after {tries} tries")
    return out


def excludes_induced(g: Graph, t: int, k: int | None = None) -> bool:
    pats = [path(t), complement(path(t))] if t <= g.n else []
    if k is not None and 2 * k <= g.n:
        pats.append(universal_threshold(k))
    return all(patterns.find_induced(g, p) is None for p in pats)


def excludes_semi_induced(g: Graph, t: int, k: int | None = None) -> bool:
    pats = [path_bipartite(t), bipartite_complement(path_bipartite(t))] if t <= g.n else []
    if k is not None and 2 * k <= g.n:
        pats.append(half_graph(k))
    return all(patterns.find_semi_induced(g, p) is None for p in pats)


def excludes_bipartite(b: BipartiteGraph, t: int, k: int | None = None) -> bool:
    pats = [path_bipartite(t), bipartite_complement(path_bipartite(t))] if t <= b.n else []
    if k is not None and 2 * k <= b.n:
        pats.append(half_graph(k))
    return all(patterns.find_induced_bipartite(b, p) is None for p in pats)


def induced_free_corpus(count: int, n_max: int, t: int = 5, k: int = 2, seed: int = 0,
                        n_min: int = 1) -> list[Graph]:
    """Graphs with no induced ``P_t``, complement of ``P_t`` or ``R_k``."""
    return sample(lambda r: mixed_graph(r, n_min, n_max), lambda g: excludes_induced(g, t, k), count, seed)


def semi_free_corpus(count: int, n_max: int, t: int = 5, k: int = 2, seed: int = 0,
                     n_min: int = 1) -> list[Graph]:
    """Graphs semi-inducing neither ``P_t``, its bipartite complement, nor ``H_k``."""
    return sample(lambda r: mixed_graph(r, n_min, n_max), lambda g: excludes_semi_induced(g, t, k), count, seed)


def bipartite_free_corpus(count: int, side_max: int, t: int = 5, k: int = 2, seed: int = 0) -> list[BipartiteGraph]:
    return sample(lambda r: mixed_bipartite(r, side_max), lambda b: excludes_bipartite(b, t, k), count, seed)


def cograph_corpus(count: int, h: int, n_max: int, seed: int = 0) -> list[Graph]:
    rng = random.Random(seed)
    return [evaluate(random_tree_model(1, h, rng.randint(1, n_max), seed=rng.randrange(1 << 30)))
            for _ in range(count)]


def bicograph_corpus(count: int, h: int, n_max: int, seed: int = 0) -> list[BipartiteGraph]:
    """Bi-cographs with both sides nonempty, from random 2-colored bi-cotrees."""
    def gen(rng):
        m = random_tree_model(2, h, rng.randint(2, n_max), seed=rng.randrange(1 << 30), bipartite=True)
        return bipartite_from_model(m)

    return sample(gen, lambda b: bool(b.left and b.right), count, seed)
