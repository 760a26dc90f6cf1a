"""Gyárfás decompositions: rooted forests of vertex bags with hooks.

Construction follows the classical path argument: start from a singleton
root bag, and for every component ``C`` of what is left pick the smallest
bag vertex ``v`` with a neighbour in ``C``; the child bag is ``N(v) & C``
with hook ``v``.  Bags are vertex masks over the host graph, so the same
code decomposes induced subgraphs, complements and bipartite complements
by passing a different adjacency and vertex mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import BipartiteGraph, Graph, bits, components_within, lowest, to_list


@dataclass
class GyarfasDecomposition:
    bags: list[int] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)
    hook: list[int | None] = field(default_factory=list)
    level: list[int] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)

    def _add(self, bag: int, parent: int, hook: int | None) -> int:
        idx = len(self.bags)
        self.bags.append(bag)
        self.parent.append(parent)
        self.hook.append(hook)
        self.level.append(0 if parent < 0 else self.level[parent] + 1)
        self.children.append([])
        if parent >= 0:
            self.children[parent].append(idx)
        return idx

    @property
    def roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p < 0]

    def height(self) -> int:
        return max(self.level, default=0)

    def level_union(self, i: int) -> int:
        out = 0
        for bag, lvl in zip(self.bags, self.level):
            if lvl == i:
                out |= bag
        return out

    def descendants(self, idx: int, strict: bool = True) -> list[int]:
        out, stack = [], list(self.children[idx])
        while stack:
            j = stack.pop()
            out.append(j)
            stack.extend(self.children[j])
        return out if strict else [idx] + out

    def subtree_mask(self, idx: int, strict: bool = False) -> int:
        out = 0
        for j in self.descendants(idx, strict):
            out |= self.bags[j]
        return out

    def opposite_parity_part(self, idx: int) -> int:
        """``B`` together with its descendants at levels of the other parity."""
        lvl = self.level[idx]
        out = self.bags[idx]
        for j in self.descendants(idx):
            if (self.level[j] - lvl) % 2:
                out |= self.bags[j]
        return out

    def to_json(self) -> dict:
        return {"height": self.height(),
                "bags": [{"vertices": to_list(b), "parent": p, "hook": h, "level": lvl}
                         for b, p, h, lvl in zip(self.bags, self.parent, self.hook, self.level)]}

    @classmethod
    def from_json(cls, d: dict) -> "GyarfasDecomposition":
        y = cls()
        entries = d["bags"]
        # parents always precede children in our own output, but do not rely on it
        order = sorted(range(len(entries)), key=lambda i: entries[i]["level"])
        remap = {}
        for i in order:
            e = entries[i]
            p = -1 if e["parent"] is None or e["parent"] < 0 else remap[e["parent"]]
            remap[i] = y._add(sum(1 << v for v in e["vertices"]), p, e["hook"])
        return y


def build_from_adj(adj: Sequence[int], within: int, roots: dict[int, int] | None = None,
                   root_pool: int | None = None) -> GyarfasDecomposition:
    """Decompose the graph ``adj`` restricted to ``within``.

    Each component gets the root listed in ``roots`` (component index ->
    vertex), else its smallest vertex inside ``root_pool``, else its
    smallest vertex.
    """
    y = GyarfasDecomposition()
    for ci, comp in enumerate(components_within(adj, within)):
        if roots and ci in roots:
            r = roots[ci]
            if not comp >> r & 1:
                raise ValueError(f"root {r} is not in component {to_list(comp)}")
        else:
            pool = comp & root_pool if root_pool is not None else 0
            r = lowest(pool or comp)
        stack = [(comp, 1 << r, -1, None)]
        while stack:
            region, bag, parent, hook = stack.pop()
            idx = y._add(bag, parent, hook)
            for sub in reversed(components_within(adj, region & ~bag)):
                pivot = next(v for v in bits(bag) if adj[v] & sub)
                stack.append((sub, adj[pivot] & sub, idx, pivot))
    return y


def build(g: Graph, roots: Sequence[int] | None = None, within: int | None = None,
          root_pool: int | None = None) -> GyarfasDecomposition:
    """Gyárfás decomposition of ``g[within]``.

    ``roots`` lists initial vertices, at most one per component; components
    without one use the smallest vertex (in ``root_pool`` when given).
    """
    within = g.full if within is None else within
    by_comp = None
    if roots:
        comps = components_within(g.adj, within)
        by_comp = {}
        for r in roots:
            if not (0 <= r < g.n) or not within >> r & 1:
                raise ValueError(f"root {r} is not a vertex of the graph")
            ci = next(i for i, c in enumerate(comps) if c >> r & 1)
            if ci in by_comp:
                raise ValueError(f"two roots given for the component of {r}")
            by_comp[ci] = r
    return build_from_adj(g.adj, within, by_comp, root_pool)


def validate_adj(adj: Sequence[int], within: int, y: GyarfasDecomposition) -> tuple[bool, str | None]:
    n_bags = len(y.bags)
    seen = 0
    for i, bag in enumerate(y.bags):
        if not bag:
            return False, f"property 1: bag {i} is empty"
        if bag & seen:
            return False, f"property 1: bag {i} overlaps an earlier bag"
        seen |= bag
    if seen != within:
        return False, "property 1: bags do not cover the vertex set"
    for i in y.roots:
        if y.bags[i].bit_count() != 1:
            return False, f"property 2: root bag {i} is not a singleton"
    where = {}
    for i, bag in enumerate(y.bags):
        for v in bits(bag):
            where[v] = i
    anc = []
    for i in range(n_bags):
        chain, j = set(), i
        while j >= 0:
            chain.add(j)
            j = y.parent[j]
        anc.append(chain)
    for u in bits(within):
        for v in bits(adj[u] & within):
            if u < v:
                bu, bv = where[u], where[v]
                if bu not in anc[bv] and bv not in anc[bu]:
                    return False, f"property 3: edge {u}-{v} joins incomparable bags {bu} and {bv}"
    for i in range(n_bags):
        sub = y.subtree_mask(i)
        if len(components_within(adj, sub)) != 1:
            return False, f"property 4: subtree of bag {i} is disconnected"
    for i in range(n_bags):
        p = y.parent[i]
        if p < 0:
            continue
        h = y.hook[i]
        if h is None or not y.bags[p] >> h & 1:
            return False, f"property 5: hook of bag {i} is not in its parent"
        if y.bags[i] & ~adj[h]:
            return False, f"property 5: hook {h} misses a vertex of bag {i}"
        if adj[h] & y.subtree_mask(i, strict=True):
            return False, f"property 5: hook {h} sees a strict descendant of bag {i}"
    comps = components_within(adj, within)
    if len(y.roots) != len(comps):
        return False, "property 2: expected one root bag per component"
    return True, None


def validate(g: Graph, y: GyarfasDecomposition, within: int | None = None) -> tuple[bool, str | None]:
    """Check all five defining properties; report the first violation."""
    return validate_adj(g.adj, g.full if within is None else within, y)


def height(y: GyarfasDecomposition) -> int:
    return y.height()


def level_union(y: GyarfasDecomposition, i: int) -> list[int]:
    return to_list(y.level_union(i))


def bipartite_levels_check(b: BipartiteGraph, y: GyarfasDecomposition) -> bool:
    """Every bag independent and each root's levels alternate between the sides."""
    adj = b.graph.adj
    for i, bag in enumerate(y.bags):
        for v in bits(bag):
            if adj[v] & bag:
                return False
        side = b.left if bag & b.left else b.right
        if bag & ~side:
            return False
    for i, p in enumerate(y.parent):
        if p >= 0 and bool(y.bags[i] & b.left) == bool(y.bags[p] & b.left):
            return False
    return True


def hook_path(y: GyarfasDecomposition, bag: int) -> list[int]:
    """Hooks along the root-to-``bag`` chain plus one vertex of ``bag``: an induced path."""
    chain, j = [], bag
    while j >= 0:
        chain.append(j)
        j = y.parent[j]
    chain.reverse()
    verts = [y.hook[c] for c in chain[1:]]
    return verts + [lowest(y.bags[bag])]


def to_dot(y: GyarfasDecomposition, name: str = "gyarfas") -> str:
    lines = [f"digraph {name} {{", "  compound=true;", "  node [shape=circle];"]
    for i, bag in enumerate(y.bags):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="bag {i} (level {y.level[i]})";')
        for v in bits(bag):
            lines.append(f"    v{v};")
        lines.append("  }")
    for i, p in enumerate(y.parent):
        if p >= 0:
            tgt = lowest(y.bags[i])
            lines.append(f'  v{y.hook[i]} -> v{tgt} [lhead=cluster_{i}, label="hook"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
