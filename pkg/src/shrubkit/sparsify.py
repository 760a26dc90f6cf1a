"""Sparsification: encode graphs with shallow (bi-)cotrees as sparse colored graphs.

A partition chain ``P_0 = {V}, P_1, ..., P_h`` splits every part alternately
into components (odd levels) and co-components (even levels); for bipartite
graphs the co-components are taken in the bipartite complement.  Two
vertices are adjacent iff the last level at which they share a part is odd.
The encoding marks one representative per part and level (the smallest
vertex) and joins it to the rest of its part.

Decoding recovers the chain level by level.  With smallest-vertex
representatives a part's representative also represents the subpart it
falls into, so inside a part with representative ``p`` a vertex ``u != p``
sees exactly one level-``i`` mark besides ``p``, namely its own new
representative, or none if that is ``p`` again.

Level 0 contributes no edges: every vertex shares the single level-0 part
anyway, and leaving those edges out keeps treedepth within ``h``.

When the layers of a 2-cosplit are overlaid, edges inside a part would be
ambiguous between the part layer and the pair layers.  Pair layers therefore
only use edges across the two parts: every live (two-sided) part gets one
representative per side, and a second family ``D_i`` marks the level at
which a vertex ends up alone in its part.
"""

from __future__ import annotations

import re

import logging
from dataclasses import dataclass, field
from itertools import combinations

from . import patterns
from .graph import BipartiteGraph, Graph, bits, co_components_within, components_within, lowest, to_list, to_mask

log = logging.getLogger(__name__)


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    predicates: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for name, mask in self.predicates.items():
            if mask >> self.graph.n:
                raise ValueError(f"predicate {name} mentions a vertex outside the graph")

    def marked(self, name: str) -> int:
        return self.predicates.get(name, 0)

    def to_json(self) -> dict:
        return {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges()],
                "predicates": {k: to_list(v) for k, v in sorted(self.predicates.items())}}

    @classmethod
    def from_json(cls, d: dict) -> "ColoredGraph":
        g = Graph.from_edges(int(d["n"]), [tuple(e) for e in d["edges"]])
        return cls(g, {k: to_mask(v) for k, v in d.get("predicates", {}).items()})


@dataclass
class PartitionChain:
    """Levels ``0..h`` of successively refining partitions (masks, sorted by smallest vertex)."""

    levels: list[list[int]]
    bipartite: bool = False

    @property
    def h(self) -> int:
        return len(self.levels) - 1

    def representatives(self, i: int) -> list[int]:
        return [lowest(p) for p in self.levels[i]]

    def part_of(self, i: int) -> dict[int, int]:
        out = {}
        for p in self.levels[i]:
            for v in bits(p):
                out[v] = p
        return out

    def is_discrete(self) -> bool:
        return all(p.bit_count() == 1 for p in self.levels[-1])


def _bico_components(adj, left: int, mask: int) -> list[int]:
    """Components of the bipartite complement of the bipartite graph on ``mask``."""
    co = {}
    for v in bits(mask):
        other = (mask & ~left) if left >> v & 1 else (mask & left)
        co[v] = other & ~adj[v]
    return components_within(co, mask)


def _chain(adj, vertices: int, h: int | None, left: int | None) -> PartitionChain:
    levels = [[vertices] if vertices else []]
    i = 0
    while True:
        if all(p.bit_count() == 1 for p in levels[-1]):
            if h is None or i >= h:
                break
        elif h is not None and i >= h:
            kind = "bi-cograph" if left is not None else "cograph"
            raise EncodingError(f"not a {kind} whose chain becomes discrete within {h} levels")
        i += 1
        nxt = []
        for p in levels[-1]:
            if i % 2:
                nxt.extend(components_within(adj, p))
            elif left is None:
                nxt.extend(co_components_within(adj, p))
            else:
                nxt.extend(_bico_components(adj, left, p))
        nxt.sort(key=lowest)
        if i > 1:
            kept = set(levels[-2]) & set(levels[-1]) & set(nxt)
            if any(p.bit_count() > 1 for p in kept):
                kind = "bi-cograph" if left is not None else "cograph"
                raise EncodingError(f"not a {kind}: a part is both connected and co-connected")
        levels.append(nxt)
    return PartitionChain(levels, left is not None)


def partition_chain_cograph(g: Graph, h: int | None = None, within: int | None = None) -> PartitionChain:
    """Chain of ``g[within]``; ``h=None`` stops at the first discrete level."""
    return _chain(g.adj, g.full if within is None else within, h, None)


def partition_chain_bicograph(b: BipartiteGraph, h: int | None = None) -> PartitionChain:
    return _chain(b.graph.adj, b.graph.full, h, b.left)


def chain_length(adj, vertices: int, left: int | None = None) -> int:
    return _chain(adj, vertices, None, left).h


# --- single-layer encoding ------------------------------------------------

def _layer_edges(chain: PartitionChain) -> set[tuple[int, int]]:
    edges = set()
    for i in range(1, chain.h):
        for p in chain.levels[i]:
            r = lowest(p)
            for v in bits(p & ~(1 << r)):
                edges.add((min(r, v), max(r, v)))
    return edges


def _layer_marks(chain: PartitionChain, prefix: str) -> dict[str, int]:
    return {f"{prefix}P{i}": to_mask(chain.representatives(i)) for i in range(chain.h + 1)}


def encode_cograph(g: Graph, h: int | None = None) -> ColoredGraph:
    """Cograph encoding: chain marks ``P0..Ph`` and representative-to-part edges.

    ``h=None`` uses the shortest chain (at least one level).  A cotree of
    height ``c`` needs at most ``c + 1`` levels, ``c`` when its root is a union.
    """
    if h is not None and h < 1:
        raise EncodingError("h must be at least 1")
    chain = partition_chain_cograph(g, h)
    if h is None and chain.h < 1:
        chain = partition_chain_cograph(g, 1)
    return ColoredGraph(Graph.from_edges(g.n, sorted(_layer_edges(chain))), _layer_marks(chain, ""))


def encode_bicograph(b: BipartiteGraph, h: int | None = None) -> ColoredGraph:
    """Bi-cograph encoding on its own; the sides are kept as predicates ``L`` and ``R``."""
    if h is not None and h < 1:
        raise EncodingError("h must be at least 1")
    chain = partition_chain_bicograph(b, h)
    if h is None and chain.h < 1:
        chain = partition_chain_bicograph(b, 1)
    preds = _layer_marks(chain, "")
    preds["L"], preds["R"] = b.left, b.right
    return ColoredGraph(Graph.from_edges(b.n, sorted(_layer_edges(chain))), preds)


def _family(c: ColoredGraph, prefix: str, letter: str = "P") -> list[int]:
    out, i = [], 0
    while f"{prefix}{letter}{i}" in c.predicates:
        out.append(c.predicates[f"{prefix}{letter}{i}"])
        i += 1
    return out


def _recover_reps(adj, vertices: int, marks: list[int]) -> list[dict[int, int]]:
    """Per level, the representative of every vertex's part."""
    if not vertices:
        return [{} for _ in marks]
    top = marks[0] & vertices
    if top.bit_count() != 1:
        raise EncodingError("level 0 must mark exactly one vertex")
    reps = [{v: lowest(top) for v in bits(vertices)}]
    for i in range(1, len(marks)):
        prev = reps[-1]
        groups: dict[int, int] = {}
        for v, p in prev.items():
            groups[p] = groups.get(p, 0) | 1 << v
        cur = {}
        for v, p in prev.items():
            if v == p:
                cur[v] = v
                continue
            cand = (adj[v] | 1 << v) & groups[p] & marks[i] & ~(1 << p)
            if cand.bit_count() > 1:
                raise EncodingError(f"vertex {v} sees several level-{i} representatives")
            cur[v] = lowest(cand) if cand else p
        reps.append(cur)
    last = reps[-1]
    if len(set(last.values())) != len(last):
        raise EncodingError("the recovered chain does not end in singletons")
    return reps


def _last_common(reps: list[dict[int, int]], u: int, v: int) -> int:
    j = 0
    for i, r in enumerate(reps):
        if r[u] == r[v]:
            j = i
        else:
            break
    return j


def _decode_layer(adj, vertices: int, marks: list[int], cross: tuple[int, int] | None = None):
    """Yield the decoded edges among ``vertices`` (only ``cross`` pairs if given)."""
    reps = _recover_reps(adj, vertices, marks)
    for u, v in combinations(to_list(vertices), 2):
        if cross is not None:
            a, b = cross
            if not ((a >> u & 1 and b >> v & 1) or (b >> u & 1 and a >> v & 1)):
                continue
        if _last_common(reps, u, v) % 2:
            yield u, v


def decode_cograph(c: ColoredGraph) -> Graph:
    marks = _family(c, "")
    if len(marks) < 2:
        raise EncodingError("expected predicates P0..Ph with h >= 1")
    return Graph.from_edges(c.graph.n, _decode_layer(c.graph.adj, c.graph.full, marks))


def decode_bicograph(c: ColoredGraph) -> BipartiteGraph:
    marks = _family(c, "")
    if len(marks) < 2 or "L" not in c.predicates or "R" not in c.predicates:
        raise EncodingError("expected predicates P0..Ph, L and R")
    left, right = c.predicates["L"], c.predicates["R"]
    edges = _decode_layer(c.graph.adj, c.graph.full, marks, (left, right))
    return BipartiteGraph(Graph.from_edges(c.graph.n, edges), left, right)


def elimination_forest(chain: PartitionChain) -> list[int | None]:
    """Parent of each vertex: its deepest representative other than itself.

    Every encoded edge joins a vertex to one of its representatives, which is
    an ancestor in this forest, and root paths have at most ``h`` vertices.
    """
    n = max((p.bit_length() for p in chain.levels[0]), default=0)
    parent: list[int | None] = [None] * n
    for i in range(1, chain.h + 1):
        for p in chain.levels[i]:
            r = lowest(p)
            for v in bits(p & ~(1 << r)):
                parent[v] = r
    return parent


def forest_depth(g: Graph, parent: list[int | None]) -> int:
    """Depth of an elimination forest after checking that it covers every edge."""
    def ancestors(v):
        out = 0
        while v is not None:
            out |= 1 << v
            v = parent[v]
        return out

    anc = [ancestors(v) for v in range(g.n)]
    for u, v in g.edges():
        if not (anc[u] >> v & 1 or anc[v] >> u & 1):
            raise EncodingError(f"edge {u}-{v} is not between an ancestor and a descendant")
    return max((a.bit_count() for a in anc), default=0)


# --- pair layers (cross edges only) ---------------------------------------

def _pair_layer(adj, x: int, y: int):
    """Marks ``P``, death marks ``D`` and cross edges for ``G[x, y]``."""
    chain = _chain(adj, x | y, None, x)
    h = max(chain.h, 1)
    levels = chain.levels + [chain.levels[-1]] * (h - chain.h)
    pm, dm = [0] * (h + 1), [0] * (h + 1)
    edges = set()
    alive = x | y
    for i, parts in enumerate(levels):
        for p in parts:
            px, py = p & x, p & y
            if px and py:
                rx, ry = lowest(px), lowest(py)
                pm[i] |= 1 << rx | 1 << ry
                if i >= 1:
                    edges.update((min(rx, v), max(rx, v)) for v in bits(py))
                    edges.update((min(ry, u), max(ry, u)) for u in bits(px))
            elif p & alive:
                dm[i] |= p
                alive &= ~p
    return pm, dm, edges


def _only(mask: int, what: str) -> int:
    if mask.bit_count() != 1:
        raise EncodingError(f"expected exactly one {what}, found {mask.bit_count()}")
    return lowest(mask)


def _decode_pair(adj, x: int, y: int, pm: list[int], dm: list[int]):
    """Yield the edges of ``G[x, y]`` from a cross-only pair layer."""
    keys: dict[int, tuple[int, int]] = {v: (_only(pm[0] & x, "level-0 mark in x"),
                                            _only(pm[0] & y, "level-0 mark in y"))
                                        for v in bits(x | y)}
    history = [dict(keys)]
    for i in range(1, len(pm)):
        groups: dict[tuple[int, int], int] = {}
        for v, key in keys.items():
            groups[key] = groups.get(key, 0) | 1 << v
        nxt = {}
        for (px, py), q in groups.items():
            live = q & ~dm[i]
            mark = pm[i] & live
            opp: dict[int, int] = {}
            for u in bits(live & ~(1 << px) & ~(1 << py)):
                side, base = (y, py) if x >> u & 1 else (x, px)
                cand = adj[u] & side & mark & ~(1 << base)
                if cand.bit_count() > 1:
                    raise EncodingError(f"vertex {u} sees several level-{i} representatives")
                opp[u] = lowest(cand) if cand else base
            for p, side, base in ((px, y, py), (py, x, px)):
                if not live >> p & 1:
                    continue
                found = [w for w in bits(mark & side & ~(1 << base)) if opp.get(w) == p]
                if len(found) > 1:
                    raise EncodingError(f"representative {p} is claimed by several parts")
                opp[p] = found[0] if found else base
            for u, w in opp.items():
                if not live >> w & 1:
                    raise EncodingError(f"vertex {u} points at a vertex that left the layer")
            # parts are the classes of u ~ opp[u]
            comp = components_within(_symmetric(opp, len(adj)), live)
            for s in comp:
                key = (_only(s & x & mark, "x-representative"), _only(s & y & mark, "y-representative"))
                for v in bits(s):
                    nxt[v] = key
        keys = nxt
        history.append(dict(keys))
    if keys:
        raise EncodingError("some vertices never became singletons")
    for u in bits(x):
        for v in bits(y):
            j = max(i for i, hk in enumerate(history) if u in hk and v in hk and hk[u] == hk[v])
            if j % 2:
                yield (u, v) if u < v else (v, u)


def _symmetric(pointer: dict[int, int], n: int) -> list[int]:
    adj = [0] * n
    for u, w in pointer.items():
        adj[u] |= 1 << w
        adj[w] |= 1 << u
    return adj


# --- 2-cosplit encoding ---------------------------------------------------

def _edge_adj(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def encode(g: Graph, s) -> ColoredGraph:
    """Encoding along a 2-cosplit: part colors ``X<p>``, a cograph layer ``A<p>:`` per part and a
    cross-only layer ``B<p>,<q>:`` per pair of parts, all overlaid on ``V(g)``."""
    from .cosplit import validate_cosplit

    ok, why = validate_cosplit(g, s)
    if not ok:
        raise EncodingError(f"invalid 2-cosplit: {why}")
    masks = s.masks
    preds: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for p, xm in enumerate(masks):
        preds[f"X{p}"] = xm
        chain = _chain(g.adj, xm, None, None)
        if chain.h < 1:
            chain = _chain(g.adj, xm, 1, None)
        edges |= _layer_edges(chain)
        preds.update(_layer_marks(chain, f"A{p}:"))
    for p, q in combinations(range(len(masks)), 2):
        xm, ym = masks[p], masks[q]
        cross = [0] * g.n
        for v in bits(xm):
            cross[v] = g.adj[v] & ym
        for v in bits(ym):
            cross[v] = g.adj[v] & xm
        pm, dm, pe = _pair_layer(cross, xm, ym)
        edges |= pe
        for i, (a, b) in enumerate(zip(pm, dm)):
            preds[f"B{p},{q}:P{i}"] = a
            preds[f"B{p},{q}:D{i}"] = b
    return ColoredGraph(Graph.from_edges(g.n, sorted(edges)), preds)


def decode(c: ColoredGraph) -> Graph:
    """Inverse of :func:`encode`; predicates with other names are ignored."""
    masks = _family(c, "", "X")
    if not masks:
        raise EncodingError("no part colors X0, X1, ...")
    seen = 0
    for m in masks:
        if m & seen:
            raise EncodingError("part colors overlap")
        seen |= m
    if seen != c.graph.full:
        raise EncodingError("part colors do not cover the vertex set")
    adj = c.graph.adj
    out: list[tuple[int, int]] = []
    for p, xm in enumerate(masks):
        marks = _family(c, f"A{p}:")
        if not marks:
            raise EncodingError(f"missing family A{p}:P0..")
        inner = [nb & xm for nb in adj]
        out.extend(_decode_layer(inner, xm, marks))
    for p, q in combinations(range(len(masks)), 2):
        xm, ym = masks[p], masks[q]
        pm, dm = _family(c, f"B{p},{q}:"), _family(c, f"B{p},{q}:", "D")
        if not pm or len(pm) != len(dm):
            raise EncodingError(f"missing or ragged family B{p},{q}:")
        cross = [0] * c.graph.n
        for v in bits(xm):
            cross[v] = adj[v] & ym
        for v in bits(ym):
            cross[v] = adj[v] & xm
        out.extend(_decode_pair(cross, xm, ym, pm, dm))
    return Graph.from_edges(c.graph.n, out)


# --- bounds and the pipeline ----------------------------------------------

def degeneracy_bound(n_parts: int, h_max: int) -> int:
    """``h_max * (N + N(N-1)/2)``: one layer per part and per pair."""
    return h_max * (n_parts + n_parts * (n_parts - 1) // 2)


def predicate_count_bound(n_parts: int, h: int) -> int:
    """Part colors, ``h+1`` marks per part, and ``2(h+1)`` marks per pair."""
    return n_parts + n_parts * (h + 1) + n_parts * (n_parts - 1) * (h + 1)


def layer_levels(c: ColoredGraph) -> int:
    """Largest ``h`` over the mark families present in an encoding."""
    best = 0
    for name in c.predicates:
        m = _LEVEL.search(name)
        if m:
            best = max(best, int(m.group(1)))
    return best


_LEVEL = re.compile(r"(?:^|:)[PD](\d+)$")


def longest_induced_path(g: Graph, cap: int | None = None) -> int | None:
    """Vertex count of a longest induced path, or ``None`` when beyond the search caps."""
    from .graph import path

    cap = patterns.CAPS.pattern if cap is None else cap
    if g.n > patterns.CAPS.host:
        return None
    best = 1 if g.n else 0
    for t in range(2, g.n + 1):
        if t > cap:
            return None
        if patterns.find_induced(g, path(t)) is None:
            break
        best = t
    return best


def sparsify_pipeline(g: Graph, t: int, k: int | None = None, check: bool = True):
    """2-cosplit, encode, and verify the round trip; returns ``(colored, report)``."""
    from .cosplit import check_semi_induced_exclusions, two_cosplit

    if check:
        check_semi_induced_exclusions(g, max(t, 5), k)
    # excluding H_k keeps every index below 2k+1
    s = two_cosplit(g, t, k_budget=None if k is None else 2 * k, check=False)
    c = encode(g, s)
    back = decode(c)
    h = layer_levels(c)
    report = {
        "n": g.n,
        "edges": g.num_edges(),
        "parts": s.size,
        "height": s.height,
        "encoded_edges": c.graph.num_edges(),
        "degeneracy": patterns.degeneracy(c.graph),
        "degeneracy_bound": degeneracy_bound(s.size, s.height),
        "levels": h,
        "predicates": len(c.predicates),
        "predicate_bound": predicate_count_bound(s.size, h),
        "round_trip": back.edge_set() == g.edge_set(),
    }
    if g.n <= patterns.CAPS.treedepth:
        report["treedepth"] = patterns.treedepth(c.graph)
        report["longest_induced_path"] = longest_induced_path(c.graph)
    log.debug("sparsify: %s", report)
    if not report["round_trip"]:
        raise AssertionError("decode(encode(g)) differs from g")
    return c, report
