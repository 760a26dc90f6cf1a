"""Corpus experiments behind ``shrubkit verify``; each returns per-instance rows."""

from __future__ import annotations

import random

from . import corpus, cosplit, gyarfas, patterns, sparsify
from .graph import Graph, components_within, path, universal_threshold


def chi_bound(count: int = 200, n_max: int = 14, seed: int = 0, t: int = 5, k: int = 2) -> list[dict]:
    """chi(G) <= |cosplit| * omega(G) on graphs without induced P_t, its complement, R_k."""
    rows = []
    for i, g in enumerate(corpus.induced_free_corpus(count, n_max, t, k, seed, n_min=n_max // 2)):
        cs = cosplit.cosplit(g, t, check=False)
        omega, chi = patterns.clique_number(g), patterns.chromatic_number(g)
        rows.append({"instance": i, "n": g.n, "edges": g.num_edges(), "parts": cs.size,
                     "omega": omega, "chi": chi, "bound": cs.size * omega,
                     "pass": chi <= cs.size * omega})
    return rows


def homogeneous(count: int = 500, n_max: int = 12, seed: int = 0, k: int = 2) -> list[dict]:
    """Homogeneous set of size at least ``n^(1/2k) / 4`` in R_k-free graphs."""
    rk = universal_threshold(k)
    graphs = corpus.sample(lambda r: corpus.mixed_graph(r, 1, n_max),
                           lambda g: g.n < rk.n or patterns.find_induced(g, rk) is None, count, seed)
    rows = []
    for i, g in enumerate(graphs):
        size = len(patterns.homogeneous_set(g))
        need = g.n ** (1 / (2 * k)) / 4
        rows.append({"instance": i, "n": g.n, "homogeneous": size, "bound": round(need, 6),
                     "pass": size >= need})
    return rows


def _height_row(i: int, g: Graph, t: int) -> dict:
    y = gyarfas.build(g)
    ok, why = gyarfas.validate(g, y)
    free = g.n < t or patterns.find_induced(g, path(t)) is None
    passed = ok and (not free or y.height() <= t - 2)
    return {"instance": i, "n": g.n, "edges": g.num_edges(), "height": y.height(),
            "path_free": free, "valid": ok, "report": why or "", "pass": passed}


def height_bounds(count: int = 1000, n_max: int = 9, seed: int = 0, t: int = 5,
                  exhaustive_n: int = 0) -> list[dict]:
    """Gyárfás decompositions validate, and have height <= t-2 on P_t-free graphs.

    All connected labelled graphs up to ``exhaustive_n`` vertices, then
    ``count`` random connected graphs up to ``n_max`` vertices.
    """
    rows = []
    i = 0
    for n in range(1, exhaustive_n + 1):
        for g in corpus.all_graphs(n):
            if len(components_within(g.adj, g.full)) == 1:
                rows.append(_height_row(i, g, t))
                i += 1
    rng = random.Random(seed)
    for _ in range(count):
        g = corpus.random_connected_graph(rng.randint(1, n_max), rng.choice((0.15, 0.3, 0.5)), rng)
        rows.append(_height_row(i, g, t))
        i += 1
    return rows


def roundtrip(count: int = 500, n_max: int = 12, seed: int = 0, t: int = 5, k: int = 2) -> list[dict]:
    """Full sparsification pipeline: decode(encode(G)) == G."""
    rows = []
    for i, g in enumerate(corpus.semi_free_corpus(count, n_max, t, k, seed, n_min=n_max // 2)):
        c, rep = sparsify.sparsify_pipeline(g, t, k, check=False)
        rows.append({"instance": i, "n": g.n, "parts": rep["parts"], "height": rep["height"],
                     "encoded_edges": rep["encoded_edges"], "degeneracy": rep["degeneracy"],
                     "degeneracy_bound": rep["degeneracy_bound"],
                     "pass": rep["round_trip"] and rep["degeneracy"] <= rep["degeneracy_bound"]})
    return rows


EXPERIMENTS = {
    "chi-bound": chi_bound,
    "homogeneous": homogeneous,
    "height-bounds": height_bounds,
    "roundtrip": roundtrip,
}
