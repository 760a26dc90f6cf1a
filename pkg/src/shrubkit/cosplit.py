"""Cosplits and 2-cosplits with certificates.

A cosplit partitions the vertices so every part induces a cograph; a
2-cosplit additionally needs every pair of parts to semi-induce a
bi-cograph.  The constructions here recurse on the strong index (general
graphs) or the bipartite index (bipartite graphs), which strictly drops on
the bags handed to each recursive call.  Certificates (cotrees and
bi-cotrees) are assembled structurally alongside the partition instead of
being recovered afterwards, so their heights follow the recursion.

Inside the recursion vertex sets are bitmasks over the host graph and
certificates are bare :class:`~shrubkit.treemodel.Node` trees; leaf colors
of bi-cotrees are fixed up when the public result is assembled.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from . import patterns
from .graph import (
    BipartiteGraph,
    Graph,
    bits,
    components_within,
    lowest,
    path,
    semi_induced_mask,
    path_bipartite,
    bipartite_complement,
    complement,
    half_graph,
    to_list,
    to_mask,
)
from .gyarfas import build_from_adj
from .patterns import CAPS, PatternWitness
from .treemodel import (
    BIJOIN,
    JOIN,
    UNION,
    Node,
    TreeModel,
    _restrict,
    bimodel_matches,
    build_bicotree,
    build_cotree,
    internal,
    leaf,
    model_from_json,
    model_matches,
    model_to_json,
    semi_induce_model,
    induce_model,
)

log = logging.getLogger(__name__)


class PreconditionError(ValueError):
    """The input contains a pattern the construction assumes absent."""

    def __init__(self, message: str, pattern: str, witness: PatternWitness | None = None):
        super().__init__(message)
        self.pattern = pattern
        self.witness = witness


# --- size budgets ---------------------------------------------------------

def cosplit_budget(t: int, k: int) -> int:
    """Part-count bound for cosplits: ``N_1 = 3``, ``N_k = (2t-5) N_{k-1} + 2``."""
    t = max(t, 4)
    if k <= 0:
        return 1
    n = 3
    for _ in range(k - 1):
        n = (t - 3) * n + (t - 2) * n + 2
    return n


def cosplit_budget_closed(t: int, k: int) -> int:
    """The closed-form upper bound ``4 (2t-5)^(k-1)``."""
    t = max(t, 4)
    return 4 * (2 * t - 5) ** max(k - 1, 0)


def bipartite_budget(t: int, k: int) -> int:
    """Part-count bound for bipartite 2-cosplits: ``N_1 = 2``, ``N_k = t^(t+1) N_{k-1}^(t^2)``."""
    t = max(t, 5)
    if k <= 0:
        return 2
    n = 2
    for _ in range(k - 1):
        n = t ** (t + 1) * n ** (t * t)
    return n


def two_cosplit_budget(n0: int, n1: int) -> int:
    """``N_0 * N_1^(N_0 - 1)`` for refining a cosplit by pairwise 2-cosplits."""
    return n0 * n1 ** max(n0 - 1, 0)


# --- results --------------------------------------------------------------

def _as_model(node: Node, k: int = 1) -> TreeModel:
    return TreeModel(node if not node.is_leaf else internal([node]), k)


def _recolor(node: Node, first: int) -> Node:
    if node.is_leaf:
        return leaf(node.vertex, 1 if first >> node.vertex & 1 else 2)
    return Node(children=tuple(_recolor(ch, first) for ch in node.children), rule=node.rule)


def edgeless_model(vertices: int, first: int | None = None) -> TreeModel:
    """Height-1 model of an edgeless graph; 2-colored if ``first`` is given."""
    if first is None:
        return TreeModel(internal([leaf(v) for v in bits(vertices)], UNION), 1)
    return TreeModel(internal([leaf(v, 1 if first >> v & 1 else 2) for v in bits(vertices)], UNION), 2)


@dataclass
class Cosplit:
    parts: list[list[int]]
    certificates: list[TreeModel]
    index: int | None = None

    @property
    def size(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        return max((c.height() for c in self.certificates), default=0)

    @property
    def masks(self) -> list[int]:
        return [to_mask(p) for p in self.parts]


@dataclass
class TwoCosplit:
    parts: list[list[int]]
    part_certificates: list[TreeModel]
    pair_certificates: dict[tuple[int, int], TreeModel] = field(default_factory=dict)
    index: int | None = None

    @property
    def size(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        hs = [c.height() for c in self.part_certificates]
        hs += [c.height() for c in self.pair_certificates.values()]
        return max(hs, default=0)

    @property
    def masks(self) -> list[int]:
        return [to_mask(p) for p in self.parts]


# --- validation -----------------------------------------------------------

def validate_cosplit(g: Graph | BipartiteGraph, s: Cosplit | TwoCosplit,
                     size_bound: int | None = None,
                     height_bound: int | None = None) -> tuple[bool, str | None]:
    """Re-check the partition, every certificate, and the optional bounds."""
    host = g.graph if isinstance(g, BipartiteGraph) else g
    masks = s.masks
    seen = 0
    for i, m in enumerate(masks):
        if not m:
            return False, f"part {i} is empty"
        if m & seen:
            return False, f"part {i} overlaps an earlier part"
        seen |= m
    if seen != host.full:
        return False, "parts do not cover the vertex set"
    if isinstance(g, BipartiteGraph) and isinstance(s, TwoCosplit):
        for i, m in enumerate(masks):
            if m & g.left and m & g.right:
                return False, f"part {i} straddles the bipartition"
    certs = s.certificates if isinstance(s, Cosplit) else s.part_certificates
    if len(certs) != len(masks):
        return False, "one certificate per part expected"
    for i, (m, c) in enumerate(zip(masks, certs)):
        if not model_matches(c, host.adj, m):
            return False, f"part {i} certificate does not evaluate to G[part {i}]"
    if isinstance(s, TwoCosplit):
        for i, j in combinations(range(len(masks)), 2):
            c = s.pair_certificates.get((i, j))
            if c is None:
                return False, f"pair ({i}, {j}) has no certificate"
            if not bimodel_matches(c, host.adj, masks[i], masks[j]):
                return False, f"pair ({i}, {j}) certificate does not evaluate to G[part {i}, part {j}]"
    if size_bound is not None and s.size > size_bound:
        return False, f"size {s.size} exceeds bound {size_bound}"
    if height_bound is not None and s.height > height_bound:
        return False, f"height {s.height} exceeds bound {height_bound}"
    return True, None


# --- precondition checks --------------------------------------------------

def _searchable(n: int, pattern_size: int) -> bool:
    return n <= CAPS.host and pattern_size <= CAPS.pattern


def check_induced_exclusions(g: Graph, t: int, k: int | None = None):
    """Raise if ``g`` has an induced ``P_t``, complement of ``P_t`` or (with ``k``) ``R_k``."""
    if _searchable(g.n, t):
        for name, pat in (("P_t", path(t)), ("co-P_t", complement(path(t)))):
            w = patterns.find_induced(g, pat)
            if w is not None:
                raise PreconditionError(f"graph contains an induced {name} (t={t})", name, w)
    if k is not None and _searchable(g.n, 2 * k):
        from .graph import universal_threshold
        w = patterns.find_induced(g, universal_threshold(k))
        if w is not None:
            raise PreconditionError(f"graph contains an induced R_k (k={k})", "R_k", w)


def check_bipartite_exclusions(b: BipartiteGraph, t: int, k: int | None = None):
    """Raise if ``b`` has a side-respecting induced ``P_t``, its bipartite complement, or ``H_k``."""
    if _searchable(b.n, t):
        pt = path_bipartite(t)
        for name, pat in (("P_t", pt), ("bico-P_t", bipartite_complement(pt))):
            w = patterns.find_induced_bipartite(b, pat)
            if w is not None:
                raise PreconditionError(f"bipartite graph contains an induced {name} (t={t})", name, w)
    if k is not None and _searchable(b.n, 2 * k):
        w = patterns.find_induced_bipartite(b, half_graph(k))
        if w is not None:
            raise PreconditionError(f"bipartite graph contains an induced H_k (k={k})", "H_k", w)


def check_semi_induced_exclusions(g: Graph, t: int, k: int | None = None):
    """Raise if ``g`` semi-induces ``P_t``, its bipartite complement, or ``H_k``."""
    if _searchable(g.n, t):
        pt = path_bipartite(t)
        for name, pat in (("P_t", pt), ("bico-P_t", bipartite_complement(pt))):
            w = patterns.find_semi_induced(g, pat)
            if w is not None:
                raise PreconditionError(f"graph semi-induces {name} (t={t})", name, w)
    if k is not None and _searchable(g.n, 2 * k):
        w = patterns.find_semi_induced(g, half_graph(k))
        if w is not None:
            raise PreconditionError(f"graph semi-induces H_k (k={k})", "H_k", w)


# --- cosplit of graphs excluding P_t and its complement -------------------

def _combine(nodes: list[Node], rule) -> Node | None:
    nodes = [x for x in nodes if x is not None]
    if not nodes:
        return None
    if len(nodes) == 1:
        return nodes[0]
    return internal(nodes, rule)


@dataclass
class _Ctx:
    t: int
    exact_cap: int
    check_drops: bool = True
    max_index: int = 0


def _sind(g: Graph, within: int, budget: int | None, ctx: _Ctx) -> tuple[int, bool]:
    if within.bit_count() <= ctx.exact_cap:
        return patterns.strong_index(g, within)[0], True
    if budget is None:
        raise ValueError("vertex set too large for an exact strong index and no budget given")
    return budget, False


def _cosplit_rec(g: Graph, within: int, budget: int | None, ctx: _Ctx) -> list[tuple[int, Node | None]]:
    """Aligned list of ``(part mask, cotree node)``; empty parts are ``(0, None)``."""
    if not within:
        return []
    if within.bit_count() == 1:
        return [(within, leaf(lowest(within)))]
    k, exact = _sind(g, within, budget, ctx)
    if k <= 1:
        u = lowest(within)
        nbrs = g.adj[u] & within
        rest = within & ~nbrs & ~(1 << u)
        out = []
        for part in (nbrs, rest, 1 << u):
            if not part:
                out.append((0, None))
                continue
            cert = build_cotree(g, part)
            if cert is None or cert.height() > 2:
                raise AssertionError("strong index 1 part is not a height-2 cograph")
            node = cert.root if part.bit_count() > 1 else leaf(lowest(part))
            out.append((part, node))
        return out

    def child(mask: int) -> list[tuple[int, Node | None]]:
        if exact and ctx.check_drops and mask.bit_count() <= ctx.exact_cap:
            ck = patterns.strong_index(g, mask)[0]
            if ck >= k:
                raise AssertionError(f"strong index did not drop: {ck} >= {k}")
        return _cosplit_rec(g, mask, k - 1, ctx)

    adj = g.adj
    y = build_from_adj(adj, within)
    # level-i bags, i >= 2: disjoint unions by aligned index
    deep: dict[int, list[list[tuple[int, Node | None]]]] = {}
    for idx, bag in enumerate(y.bags):
        if y.level[idx] >= 2:
            deep.setdefault(y.level[idx], []).append(child(bag))
    # level-1 bags: decompose each co-component of G[B]
    shallow: dict[int, list[list[list[tuple[int, Node | None]]]]] = {}
    p10_nodes = []
    for idx, bag in enumerate(y.bags):
        if y.level[idx] != 1:
            continue
        co_adj = [0] * g.n
        for v in bits(bag):
            co_adj[v] = bag & ~adj[v] & ~(1 << v)
        yc = build_from_adj(co_adj, bag)
        roots = 0
        per_level: dict[int, list[list[tuple[int, Node | None]]]] = {}
        for jdx, cbag in enumerate(yc.bags):
            if yc.level[jdx] == 0:
                roots |= cbag
            else:
                per_level.setdefault(yc.level[jdx], []).append(child(cbag))
        # distinct co-components are complete to each other
        p10_nodes.append(_combine([leaf(v) for v in bits(roots)], JOIN))
        for j, splits in per_level.items():
            shallow.setdefault(j, []).append(splits)

    out: list[tuple[int, Node | None]] = []
    p0 = y.level_union(0)
    out.append((p0, _combine([leaf(v) for v in bits(p0)], UNION)))
    p10 = 0
    for nd in p10_nodes:
        for lf in nd.leaves():
            p10 |= 1 << lf.vertex
    out.append((p10, _combine(p10_nodes, UNION)))
    for i in sorted(deep):
        splits = deep[i]
        width = max(len(s) for s in splits)
        for ell in range(width):
            mask, nodes = 0, []
            for s in splits:
                if ell < len(s) and s[ell][0]:
                    mask |= s[ell][0]
                    nodes.append(s[ell][1])
            out.append((mask, _combine(nodes, UNION)))
    for j in sorted(shallow):
        per_bag = shallow[j]
        width = max(len(s) for splits in per_bag for s in splits)
        for ell in range(width):
            mask, bag_nodes = 0, []
            for splits in per_bag:
                joined = []
                for s in splits:
                    if ell < len(s) and s[ell][0]:
                        mask |= s[ell][0]
                        joined.append(s[ell][1])
                bag_nodes.append(_combine(joined, JOIN))
            out.append((mask, _combine(bag_nodes, UNION)))
    return out


def cosplit(g: Graph, t: int, k_budget: int | None = None, check: bool = True,
            exact_cap: int | None = None) -> Cosplit:
    """Cosplit of a graph excluding induced ``P_t`` and its complement.

    The recursion depth is governed by the strong index, computed exactly
    whenever the current vertex set is within ``exact_cap`` (default: the
    index search cap) and otherwise taken from ``k_budget`` minus the depth.
    """
    t = max(t, 4)
    if check:
        check_induced_exclusions(g, t)
    ctx = _Ctx(t=t, exact_cap=CAPS.index if exact_cap is None else exact_cap)
    index = None
    if g.n <= ctx.exact_cap:
        index = patterns.strong_index(g)[0]
    elif k_budget is None:
        raise ValueError("graph too large for an exact strong index; pass k_budget")
    k = index if index is not None else k_budget
    whole = build_cotree(g) if g.n else None
    if whole is not None and whole.height() <= max(2 * k, 1):
        # already a shallow cograph: one part beats the recursion's base case
        return Cosplit([list(range(g.n))], [whole], index)
    raw = _cosplit_rec(g, g.full, k, ctx)
    parts, certs = [], []
    for mask, node in raw:
        if mask:
            parts.append(to_list(mask))
            certs.append(_as_model(node, 1))
    log.debug("cosplit: n=%d index=%s parts=%d", g.n, index, len(parts))
    return Cosplit(parts, certs, index)


# --- bipartite 2-cosplits -------------------------------------------------

@dataclass
class _BSplit:
    """Side-aligned 2-cosplit of a bipartite piece.

    ``lparts``/``rparts`` are index-aligned part lists per side (zeros allowed);
    ``certs[(i, j)]`` is a bi-cotree node for ``G[lparts[i], rparts[j]]``
    whenever both are nonempty.  Same-side pairs are edgeless and carry no
    certificate until the final assembly.
    """

    lparts: list[int] = field(default_factory=list)
    rparts: list[int] = field(default_factory=list)
    certs: dict[tuple[int, int], Node] = field(default_factory=dict)

    def transposed(self) -> "_BSplit":
        return _BSplit(self.rparts, self.lparts, {(j, i): nd for (i, j), nd in self.certs.items()})

    def height(self) -> int:
        return max((nd.height() for nd in self.certs.values()), default=0)


def _flip(node: Node) -> Node:
    if node.is_leaf:
        return node
    return Node(children=tuple(_flip(ch) for ch in node.children),
                rule=UNION if (1, 2) in node.rule else BIJOIN)


def complement_transfer_split(s: _BSplit) -> _BSplit:
    """Same partition, every bipartite join/union bit flipped; heights unchanged."""
    return _BSplit(list(s.lparts), list(s.rparts), {key: _flip(nd) for key, nd in s.certs.items()})


def _part(lst: list[int], i: int) -> int:
    return lst[i] if i < len(lst) else 0


def _pair_children(s: _BSplit, i: int, j: int) -> list[Node]:
    a, b = _part(s.lparts, i), _part(s.rparts, j)
    if a and b:
        return [s.certs[(i, j)]]
    return [leaf(v) for v in bits(a | b)]


def merge_splits(pieces: list[_BSplit], rule=UNION) -> _BSplit:
    """Align pieces over pairwise non-adjacent (``UNION``) or completely joined
    (``BIJOIN``) vertex sets into one split; heights grow by at most one."""
    pieces = [p for p in pieces if any(p.lparts) or any(p.rparts)]
    if len(pieces) == 1:
        return pieces[0]
    nl = max((len(p.lparts) for p in pieces), default=0)
    nr = max((len(p.rparts) for p in pieces), default=0)
    out = _BSplit([0] * nl, [0] * nr)
    for p in pieces:
        for i, m in enumerate(p.lparts):
            out.lparts[i] |= m
        for j, m in enumerate(p.rparts):
            out.rparts[j] |= m
    for i in range(nl):
        for j in range(nr):
            if out.lparts[i] and out.rparts[j]:
                kids = [nd for p in pieces for nd in _pair_children(p, i, j)]
                out.certs[(i, j)] = _combine(kids, rule)
    return out


def _biclique_union_split(adj, left: int, right: int) -> _BSplit:
    """Trivial split ``{left, right}`` of a disjoint union of bicliques."""
    nodes = []
    for comp in components_within(adj, left | right):
        cl, cr = comp & left, comp & right
        if cl and cr:
            for v in bits(cl):
                if (adj[v] & right) != cr:
                    raise AssertionError("component is not a complete bipartite graph")
            nodes.append(internal([leaf(v) for v in bits(comp)], BIJOIN))
        else:
            nodes.extend(leaf(v) for v in bits(comp))
    out = _BSplit([left] if left else [], [right] if right else [])
    if left and right:
        out.certs[(0, 0)] = _combine(nodes, UNION)
    return out


def refine_splits(regions: list[tuple[int, bool]], splits: list[_BSplit]) -> _BSplit:
    """Coarsest common refinement of side-respecting ``regions`` by ``splits``.

    ``splits[a]`` must cover region ``a`` together with every later region on
    the other side; the pair certificate of parts in regions ``a < b`` is
    restricted from ``splits[a]``.
    """
    where = []
    for s in splits:
        loc = {}
        for i, m in enumerate(s.lparts):
            for v in bits(m):
                loc[v] = (0, i)
        for j, m in enumerate(s.rparts):
            for v in bits(m):
                loc[v] = (1, j)
        where.append(loc)
    out = _BSplit()
    lorig, rorig = [], []
    for a, (mask, is_left) in enumerate(regions):
        groups: dict[tuple, int] = {}
        for v in bits(mask):
            sig = tuple(loc.get(v) for loc in where)
            groups[sig] = groups.get(sig, 0) | 1 << v
        for sig in sorted(groups, key=lambda s: lowest(groups[s])):
            if is_left:
                out.lparts.append(groups[sig])
                lorig.append(a)
            else:
                out.rparts.append(groups[sig])
                rorig.append(a)
    for i, x in enumerate(out.lparts):
        for j, y in enumerate(out.rparts):
            a, b = lorig[i], rorig[j]
            s = splits[min(a, b)]
            loc = where[min(a, b)]
            (_, pi), (_, pj) = loc[lowest(x)], loc[lowest(y)]
            node = _restrict(s.certs[(pi, pj)], x | y)
            out.certs[(i, j)] = node
    return out


def _bind(adj, left: int, right: int, budget: int | None, ctx: _Ctx) -> tuple[int, bool]:
    if (left | right).bit_count() <= ctx.exact_cap:
        return patterns.bipartite_index_adj(adj, left, right)[0], True
    if budget is None:
        raise ValueError("vertex set too large for an exact bipartite index and no budget given")
    return budget, False


def _bip_rec(adj, left: int, right: int, budget: int | None, ctx: _Ctx) -> _BSplit:
    if not left | right:
        return _BSplit()
    k, exact = _bind(adj, left, right, budget, ctx)
    ctx.max_index = max(ctx.max_index, k)
    if k <= 1:
        return _biclique_union_split(adj, left, right)

    has_l = to_mask(v for v in bits(left) if adj[v] & right)
    has_r = to_mask(v for v in bits(right) if adj[v] & left)
    complemented = swapped = False
    work = adj
    if left & ~has_l and right & ~has_r:
        work = list(adj)
        for v in bits(left):
            work[v] = right & ~adj[v]
        for v in bits(right):
            work[v] = left & ~adj[v]
        complemented = True
        has_r = to_mask(v for v in bits(right) if work[v] & left)
    a_side, b_side = left, right
    if b_side & ~has_r:
        a_side, b_side = right, left
        swapped = True

    inner = _bip_body(work, a_side, b_side, k, child_factory(work, k, exact, ctx))
    if complemented:
        inner = complement_transfer_split(inner)
    return inner.transposed() if swapped else inner


def child_factory(adj, k: int, exact: bool, ctx: _Ctx):
    def child(cl: int, cr: int) -> _BSplit:
        if exact and ctx.check_drops and (cl | cr).bit_count() <= ctx.exact_cap:
            ck = patterns.bipartite_index_adj(adj, cl, cr)[0]
            if ck >= k:
                raise AssertionError(f"bipartite index did not drop: {ck} >= {k}")
        return _bip_rec(adj, cl, cr, k - 1, ctx)
    return child


def _bip_body(adj, a_side: int, b_side: int, k: int, child) -> _BSplit:
    """Inductive step with every root bag on ``a_side`` (no isolated vertex on ``b_side``)."""
    vs = a_side | b_side
    y = build_from_adj(adj, vs, root_pool=a_side)
    top = y.height()
    regions, splits = [], []
    for i in range(top + 1):
        pieces = []
        for idx, bag in enumerate(y.bags):
            if y.level[idx] != i:
                continue
            gb = y.opposite_parity_part(idx)
            if i == 0:
                pieces.append(_biclique_union_split(adj, gb & a_side, gb & b_side))
            elif i == 1:
                pieces.append(_level_one(adj, a_side, b_side, bag, gb, child))
            else:
                pieces.append(child(gb & a_side, gb & b_side))
        regions.append((y.level_union(i), i % 2 == 0))
        splits.append(merge_splits(pieces, UNION))
    return refine_splits(regions, splits)


def _level_one(adj, a_side: int, b_side: int, bag: int, gb: int, child) -> _BSplit:
    """Split of ``G_B`` for a level-1 bag ``B`` (contained in ``b_side``)."""
    d = gb & a_side
    removed = to_mask(u for u in bits(d) if adj[u] & bag == bag)
    keep = gb & ~removed
    co = [0] * len(adj)
    for v in bits(keep & a_side):
        co[v] = bag & ~adj[v]
    for v in bits(bag):
        co[v] = keep & a_side & ~adj[v]
    yp = build_from_adj(co, keep, root_pool=bag)
    top = max(yp.height(), 1 if removed else 0)
    regions, splits = [], []
    for j in range(top + 1):
        pieces = []
        for idx, cbag in enumerate(yp.bags):
            if yp.level[idx] != j:
                continue
            gp = yp.opposite_parity_part(idx)
            if j == 0:
                pieces.append(_biclique_union_split(adj, gp & a_side, gp & b_side))
            else:
                pieces.append(child(gp & a_side, gp & b_side))
        wj = yp.level_union(j)
        if j == 1:
            wj |= removed
        if j <= 1:
            # removed vertices see all of the bag: joined into both of these levels
            pieces.extend(_BSplit([1 << u], []) for u in bits(removed))
        regions.append((wj, j % 2 == 1))
        splits.append(merge_splits(pieces, BIJOIN))
    return refine_splits(regions, splits)


def _assemble_bipartite(s: _BSplit, index: int | None) -> TwoCosplit:
    masks = [m for m in s.lparts if m] + [m for m in s.rparts if m]
    lidx = {m: i for i, m in enumerate(s.lparts) if m}
    ridx = {m: j for j, m in enumerate(s.rparts) if m}
    nl = sum(1 for m in s.lparts if m)
    parts = [to_list(m) for m in masks]
    part_certs = [edgeless_model(m) for m in masks]
    pair = {}
    for p, q in combinations(range(len(masks)), 2):
        x, y = masks[p], masks[q]
        if p < nl <= q:
            node = s.certs[(lidx[x], ridx[y])]
            pair[(p, q)] = _as_model(_recolor(node, x), 2)
        else:
            pair[(p, q)] = edgeless_model(x | y, first=x)
    return TwoCosplit(parts, part_certs, pair, index)


def two_cosplit_bipartite(b: BipartiteGraph, t: int, k_budget: int | None = None,
                          check: bool = True, exact_cap: int | None = None) -> TwoCosplit:
    """2-cosplit refining the bipartition of ``b`` (excluding induced ``P_t`` and its
    bipartite complement), recursing on the bipartite index."""
    t = max(t, 5)
    if check:
        check_bipartite_exclusions(b, t)
    ctx = _Ctx(t=t, exact_cap=CAPS.index if exact_cap is None else exact_cap)
    adj = b.graph.adj
    index = None
    if b.n <= ctx.exact_cap:
        index = patterns.bipartite_index_adj(adj, b.left, b.right)[0]
    elif k_budget is None:
        raise ValueError("graph too large for an exact bipartite index; pass k_budget")
    k = index if index is not None else k_budget
    whole = build_bicotree(b) if b.left and b.right else None
    if whole is not None and whole.height() <= max(2 * k, 1):
        # already a shallow bi-cograph: the bipartition itself is a 2-cosplit
        raw = _BSplit([b.left], [b.right], {(0, 0): whole.root})
        return _assemble_bipartite(raw, index)
    raw = _bip_rec(adj, b.left, b.right, k, ctx)
    log.debug("bipartite 2-cosplit: n=%d index=%s max inner index=%d", b.n, index, ctx.max_index)
    return _assemble_bipartite(raw, index)


# --- 2-cosplits of general graphs -----------------------------------------

def _locate(s: _BSplit) -> dict[int, int]:
    loc = {}
    for parts in (s.lparts, s.rparts):
        for i, m in enumerate(parts):
            for v in bits(m):
                loc[v] = i
    return loc


def two_cosplit(g: Graph, t: int, k_budget: int | None = None, check: bool = True,
                exact_cap: int | None = None) -> TwoCosplit:
    """2-cosplit of a graph with no semi-induced ``P_t`` or bipartite complement of ``P_t``.

    A cosplit ``X_1..X_m`` of ``g`` is refined by a bipartite 2-cosplit of
    every ``G[X_i, X_j]``; parts inside one ``X_i`` are pinned down by their
    part indices in all the pairwise splits.  ``k_budget`` bounds both the
    strong index and the bipartite indices when these are too large to search.
    """
    t = max(t, 5)
    if check:
        check_semi_induced_exclusions(g, t)
    cap = CAPS.index if exact_cap is None else exact_cap
    base = cosplit(g, t, k_budget, check=False, exact_cap=cap)
    xs = base.masks
    ctx = _Ctx(t=t, exact_cap=cap)
    splits: dict[tuple[int, int], _BSplit] = {}
    locs: dict[tuple[int, int], dict[int, int]] = {}
    for x, y in combinations(range(len(xs)), 2):
        adj = semi_induced_mask(g, xs[x], xs[y])
        sp = _bip_rec(adj, xs[x], xs[y], k_budget, ctx)
        splits[(x, y)] = sp
        locs[(x, y)] = _locate(sp)
    masks, owner = [], []
    for x, xm in enumerate(xs):
        groups: dict[tuple, int] = {}
        for v in bits(xm):
            sig = tuple(locs[(min(x, y), max(x, y))][v] for y in range(len(xs)) if y != x)
            groups[sig] = groups.get(sig, 0) | 1 << v
        for sig in sorted(groups, key=lambda s: lowest(groups[s])):
            masks.append(groups[sig])
            owner.append(x)
    part_certs = [induce_model(base.certificates[owner[p]], m) for p, m in enumerate(masks)]
    pair = {}
    for p, q in combinations(range(len(masks)), 2):
        a, b = masks[p], masks[q]
        x, y = owner[p], owner[q]
        if x == y:
            pair[(p, q)] = semi_induce_model(base.certificates[x], a, b)
            continue
        sp, loc = splits[(x, y)], locs[(x, y)]
        i, j = loc[lowest(a)], loc[lowest(b)]
        node = _restrict(sp.certs[(i, j)], a | b)
        pair[(p, q)] = _as_model(_recolor(node, a), 2)
    return TwoCosplit([to_list(m) for m in masks], part_certs, pair, base.index)


# --- serialization --------------------------------------------------------

def cosplit_to_json(s: Cosplit | TwoCosplit) -> dict:
    out = {"size": s.size, "height": s.height, "index": s.index, "parts": s.parts}
    if isinstance(s, Cosplit):
        out["kind"] = "cosplit"
        out["certificates"] = [model_to_json(c) for c in s.certificates]
    else:
        out["kind"] = "2-cosplit"
        out["part_certificates"] = [model_to_json(c) for c in s.part_certificates]
        out["pair_certificates"] = [{"pair": [i, j], "model": model_to_json(c)}
                                    for (i, j), c in sorted(s.pair_certificates.items())]
    return out


def cosplit_from_json(d: dict) -> Cosplit | TwoCosplit:
    parts = [list(p) for p in d["parts"]]
    if d.get("kind", "cosplit") == "cosplit":
        return Cosplit(parts, [model_from_json(c) for c in d["certificates"]], d.get("index"))
    pair = {tuple(e["pair"]): model_from_json(e["model"]) for e in d["pair_certificates"]}
    return TwoCosplit(parts, [model_from_json(c) for c in d["part_certificates"]], pair, d.get("index"))
