"""Colored bounded-height tree models, cotrees and bi-cotrees.

A tree model is a rooted tree whose leaves are graph vertices.  Each leaf has
a color in ``1..k`` and each internal node a symmetric rule telling which
color pairs are adjacent when their least common ancestor is that node.
Rules are stored as the set of color pairs ``(c, d)`` with ``c <= d`` that
fire; any pair not listed is 0.

Cotrees are 1-colored models (rule ``{(1, 1)}`` is a join, empty a union).
Bi-cotrees are 2-colored with the bipartition as coloring; their rules only
ever contain ``(1, 2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .graph import (
    BipartiteGraph,
    Graph,
    bits,
    co_components_within,
    components_within,
    to_mask,
)

JOIN = frozenset({(1, 1)})
UNION = frozenset()
BIJOIN = frozenset({(1, 2)})


@dataclass(frozen=True)
class Node:
    children: tuple["Node", ...] = ()
    vertex: int | None = None
    color: int = 1
    rule: frozenset = field(default=frozenset())

    @property
    def is_leaf(self) -> bool:
        return self.vertex is not None

    def fires(self, c: int, d: int) -> bool:
        return (min(c, d), max(c, d)) in self.rule

    def leaves(self) -> Iterator["Node"]:
        if self.is_leaf:
            yield self
        else:
            for ch in self.children:
                yield from ch.leaves()

    def height(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(ch.height() for ch in self.children)


def leaf(v: int, color: int = 1) -> Node:
    return Node(vertex=v, color=color)


def internal(children, rule=UNION) -> Node:
    return Node(children=tuple(children), rule=frozenset(rule))


@dataclass(frozen=True)
class TreeModel:
    root: Node
    k: int = 1

    def __post_init__(self):
        seen = set()
        for lf in self.root.leaves():
            if lf.vertex in seen:
                raise ValueError(f"vertex {lf.vertex} appears twice")
            if not 1 <= lf.color <= self.k:
                raise ValueError(f"leaf {lf.vertex} has color {lf.color} outside 1..{self.k}")
            seen.add(lf.vertex)
        if self.root.is_leaf:
            raise ValueError("the root of a tree model must be internal")

    @property
    def vertices(self) -> list[int]:
        return sorted(lf.vertex for lf in self.root.leaves())

    @property
    def vertex_mask(self) -> int:
        return to_mask(self.vertices)

    def height(self) -> int:
        return self.root.height()

    def colors(self) -> dict[int, int]:
        return {lf.vertex: lf.color for lf in self.root.leaves()}


def _pairs(node: Node, out: set):
    """Collect edges defined below ``node``; returns its leaves."""
    if node.is_leaf:
        return [node]
    groups = [_pairs(ch, out) for ch in node.children]
    if node.rule:
        for i, gi in enumerate(groups):
            for gj in groups[i + 1:]:
                for u in gi:
                    for v in gj:
                        if node.fires(u.color, v.color):
                            out.add((min(u.vertex, v.vertex), max(u.vertex, v.vertex)))
    return [lf for grp in groups for lf in grp]


def evaluate_edges(m: TreeModel) -> frozenset[tuple[int, int]]:
    out: set = set()
    _pairs(m.root, out)
    return frozenset(out)


def evaluate(m: TreeModel, n: int | None = None) -> Graph:
    """The graph defined by ``m`` on vertices ``0..n-1`` (default: max leaf + 1)."""
    n = max(m.vertices) + 1 if n is None else n
    return Graph.from_edges(n, evaluate_edges(m))


def model_matches(m: TreeModel, adj, vertices: int) -> bool:
    """Does ``m`` define exactly the subgraph given by ``adj`` on ``vertices``?"""
    if m.vertex_mask != vertices:
        return False
    want = {(u, v) for u in bits(vertices) for v in bits(adj[u] & vertices) if u < v}
    return evaluate_edges(m) == want


def height(m: TreeModel) -> int:
    return m.height()


# --- recognition ----------------------------------------------------------

def _cotree_node(adj, mask: int) -> Node | None:
    if mask & (mask - 1) == 0:
        return leaf(mask.bit_length() - 1)
    comps = components_within(adj, mask)
    rule = UNION
    if len(comps) == 1:
        comps = co_components_within(adj, mask)
        rule = JOIN
        if len(comps) == 1:
            return None
    children = []
    for c in comps:
        ch = _cotree_node(adj, c)
        if ch is None:
            return None
        children.append(ch)
    return internal(children, rule)


def build_cotree(g: Graph, within: int | None = None) -> TreeModel | None:
    """Minimum-height cotree of ``g[within]``, or None if it contains an induced P4."""
    within = g.full if within is None else within
    if not within:
        return None
    node = _cotree_node(g.adj, within)
    if node is None:
        return None
    if node.is_leaf:
        node = internal([node])
    return TreeModel(node, 1)


def _bicotree_node(adj, left: int, mask: int) -> Node | None:
    if mask & (mask - 1) == 0:
        v = mask.bit_length() - 1
        return leaf(v, 1 if left >> v & 1 else 2)
    comps = components_within(adj, mask)
    rule = UNION
    if len(comps) == 1:
        right = mask & ~left
        co_adj = {}
        for v in bits(mask):
            other = right if left >> v & 1 else left & mask
            co_adj[v] = other & ~adj[v]
        comps = components_within(co_adj, mask)
        rule = BIJOIN
        if len(comps) == 1:
            return None
    children = []
    for c in comps:
        ch = _bicotree_node(adj, left, c)
        if ch is None:
            return None
        children.append(ch)
    return internal(children, rule)


def build_bicotree_masks(adj, left: int, right: int) -> TreeModel | None:
    """Bi-cotree for the bipartite graph with adjacency ``adj`` on sides ``left``/``right``.

    ``adj`` may contain edges inside a side; only cross-side pairs are read.
    """
    mask = left | right
    if not mask:
        return None
    cross = {v: adj[v] & (right if left >> v & 1 else left) for v in bits(mask)}
    node = _bicotree_node(cross, left, mask)
    if node is None:
        return None
    if node.is_leaf:
        node = internal([node])
    return TreeModel(node, 2)


def build_bicotree(b: BipartiteGraph) -> TreeModel | None:
    return build_bicotree_masks(b.graph.adj, b.left, b.right)


def bimodel_matches(m: TreeModel, adj, left: int, right: int) -> bool:
    """Does bi-cotree ``m`` define the semi-induced graph between ``left`` and ``right``?"""
    if m.k != 2 or m.vertex_mask != left | right:
        return False
    for lf in m.root.leaves():
        if lf.color != (1 if left >> lf.vertex & 1 else 2):
            return False
    want = {(min(u, v), max(u, v)) for u in bits(left) for v in bits(adj[u] & right)}
    return evaluate_edges(m) == want


# --- model transformations ------------------------------------------------

def _restrict(node: Node, keep: int) -> Node | None:
    if node.is_leaf:
        return node if keep >> node.vertex & 1 else None
    kids = [c for c in (_restrict(ch, keep) for ch in node.children) if c is not None]
    if not kids:
        return None
    if len(kids) == 1:
        return kids[0]
    return Node(children=tuple(kids), rule=node.rule)


def induce_model(t: TreeModel, s) -> TreeModel:
    """Restrict a model to the leaves in ``s``; one-child nodes are contracted."""
    keep = s if isinstance(s, int) else to_mask(s)
    node = _restrict(t.root, keep)
    if node is None:
        raise ValueError("restriction to an empty vertex set")
    if node.is_leaf:
        node = internal([node], t.root.rule)
    return TreeModel(node, t.k)


def _map_tree(node: Node, leaf_fn, rule_fn) -> Node:
    if node.is_leaf:
        return leaf_fn(node)
    return Node(children=tuple(_map_tree(ch, leaf_fn, rule_fn) for ch in node.children),
                rule=rule_fn(node.rule))


def semi_induce_model(t: TreeModel, a, b) -> TreeModel:
    """Bi-cotree of ``G[A, B]`` from a cotree of ``G`` (same tree, recolored)."""
    a = a if isinstance(a, int) else to_mask(a)
    b = b if isinstance(b, int) else to_mask(b)
    if a & b:
        raise ValueError("sides overlap")
    if t.vertex_mask != a | b:
        t = induce_model(t, a | b)
    node = _map_tree(t.root,
                     lambda lf: leaf(lf.vertex, 1 if a >> lf.vertex & 1 else 2),
                     lambda rule: BIJOIN if (1, 1) in rule else UNION)
    return TreeModel(node, 2)


def bicotree_to_cotree(t: TreeModel) -> TreeModel:
    """Cotree ``H`` on the same leaves with ``H[A, B]`` equal to the bi-cograph."""
    node = _map_tree(t.root, lambda lf: leaf(lf.vertex),
                     lambda rule: JOIN if (1, 2) in rule else UNION)
    return TreeModel(node, 1)


def bipartite_complement_model(t: TreeModel) -> TreeModel:
    """Flip every bipartite join/union bit; the tree itself is untouched."""
    node = _map_tree(t.root, lambda lf: lf,
                     lambda rule: UNION if (1, 2) in rule else BIJOIN)
    return TreeModel(node, 2)


def complement_model(t: TreeModel) -> TreeModel:
    node = _map_tree(t.root, lambda lf: lf,
                     lambda rule: UNION if (1, 1) in rule else JOIN)
    return TreeModel(node, 1)


def union_model(models: list[TreeModel], rule=UNION) -> TreeModel:
    """A new root with the given rule over the roots of ``models``."""
    if len(models) == 1:
        return models[0]
    k = max(m.k for m in models)
    return TreeModel(internal([m.root for m in models], rule), k)


# --- random generation ----------------------------------------------------

def _random_partition(rng: random.Random, items: list, max_parts: int) -> list[list]:
    parts = rng.randint(2, min(len(items), max_parts))
    rng.shuffle(items)
    cuts = sorted(rng.sample(range(1, len(items)), parts - 1))
    return [items[i:j] for i, j in zip([0] + cuts, cuts + [len(items)])]


def random_tree_model(k: int, h: int, n: int, seed: int | None = None,
                      bipartite: bool = False, max_children: int = 4) -> TreeModel:
    """Random ``k``-colored model of height ``<= h`` on leaves ``0..n-1``.

    With ``bipartite=True`` the model is a bi-cotree (``k`` forced to 2 and
    same-color pairs never fire).
    """
    for name, val in (("k", k), ("h", h), ("n", n)):
        if val < 1:
            raise ValueError(f"{name} must be positive")
    if bipartite:
        k = 2
    rng = random.Random(seed)
    pairs = [(c, d) for c in range(1, k + 1) for d in range(c, k + 1) if not (bipartite and c == d)]

    def rule():
        return frozenset(p for p in pairs if rng.random() < 0.5)

    def build(vs: list[int], depth: int) -> Node:
        if len(vs) == 1 and depth > 0:
            return leaf(vs[0], rng.randint(1, k))
        if depth == h - 1 or len(vs) == 1:
            return internal([leaf(v, rng.randint(1, k)) for v in vs], rule())
        return internal([build(p, depth + 1) for p in _random_partition(rng, vs, max_children)], rule())

    return TreeModel(build(list(range(n)), 0), k)


def bipartite_from_model(m: TreeModel) -> BipartiteGraph:
    """The bipartite graph of a bi-cotree with sides given by leaf colors."""
    g = evaluate(m)
    colors = m.colors()
    left = to_mask(v for v, c in colors.items() if c == 1)
    return BipartiteGraph(g, left, g.full ^ left)


# --- serialization --------------------------------------------------------

def node_to_json(node: Node) -> dict:
    if node.is_leaf:
        return {"leaf": node.vertex, "color": node.color}
    return {"rule": sorted(list(p) for p in node.rule),
            "children": [node_to_json(ch) for ch in node.children]}


def node_from_json(d: dict) -> Node:
    if "leaf" in d:
        return leaf(int(d["leaf"]), int(d.get("color", 1)))
    return internal([node_from_json(ch) for ch in d["children"]],
                    frozenset((min(c), max(c)) for c in map(tuple, d.get("rule", []))))


def model_to_json(m: TreeModel) -> dict:
    return {"k": m.k, "height": m.height(), "root": node_to_json(m.root)}


def model_from_json(d: dict) -> TreeModel:
    return TreeModel(node_from_json(d["root"]), int(d.get("k", 1)))
