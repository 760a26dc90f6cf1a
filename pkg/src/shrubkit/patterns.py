"""Exact search for (semi-)induced patterns, the two index invariants, and
small-graph oracles (clique, chromatic number, treedepth, degeneracy).

Everything here is exhaustive branch-and-bound over neighbourhood bitsets,
so each entry point enforces a size cap and raises :class:`CapExceeded`
rather than silently approximating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .graph import (
    BipartiteGraph,
    Graph,
    bits,
    complement,
    components_within,
    half_graph,
    lowest,
    to_list,
    universal_threshold,
)


class CapExceeded(RuntimeError):
    """An exact search was asked to run on an instance above its size cap."""


@dataclass
class SearchCaps:
    pattern: int = 10
    host: int = 64
    index: int = 40
    chromatic: int = 16
    treedepth: int = 16
    clique: int = 30
    homogeneous: int = 64


CAPS = SearchCaps()


def _check_cap(size: int, cap: int, what: str):
    if size > cap:
        raise CapExceeded(f"{what}: {size} vertices exceeds cap {cap}")


# --- witnesses ------------------------------------------------------------

@dataclass(frozen=True)
class IndexWitness:
    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b)}


@dataclass(frozen=True)
class PatternWitness:
    """``mapping[p]`` is the host vertex playing pattern vertex ``p``."""

    mapping: tuple[int, ...]
    mode: Literal["induced", "semi-induced"]

    def to_json(self) -> dict:
        return {"mode": self.mode, "mapping": list(self.mapping)}


def check_index_witness(g: Graph, w: IndexWitness, kind: Literal["strong", "bipartite"],
                        sides: tuple[int, int] | None = None) -> bool:
    a, b = w.a, w.b
    if len(a) != len(b) or len(set(a) | set(b)) != 2 * len(a):
        return False
    k = len(a)
    for i in range(k):
        for j in range(i + 1, k):
            if not g.has_edge(a[i], b[j]) or g.has_edge(b[i], a[j]):
                return False
    if kind == "strong":
        for i in range(k):
            for j in range(i + 1, k):
                if not g.has_edge(a[i], a[j]) or g.has_edge(b[i], b[j]):
                    return False
    else:
        if sides is None:
            raise ValueError("bipartite witnesses need the host sides")
        left, right = sides
        amask = sum(1 << v for v in a)
        bmask = sum(1 << v for v in b)
        if not ((amask & ~left == 0 and bmask & ~right == 0) or
                (amask & ~right == 0 and bmask & ~left == 0)):
            return False
    return True


def check_pattern_witness(g: Graph, pattern: Graph | BipartiteGraph, w: PatternWitness) -> bool:
    m = w.mapping
    if len(set(m)) != len(m) or any(not 0 <= v < g.n for v in m):
        return False
    if w.mode == "induced":
        if isinstance(pattern, BipartiteGraph):
            pattern = pattern.graph
        pairs = [(p, q) for p in range(pattern.n) for q in range(p + 1, pattern.n)]
        return all(pattern.has_edge(p, q) == g.has_edge(m[p], m[q]) for p, q in pairs)
    if not isinstance(pattern, BipartiteGraph):
        raise TypeError("semi-induced witnesses need a bipartite pattern")
    return all(pattern.graph.has_edge(p, q) == g.has_edge(m[p], m[q])
               for p in bits(pattern.left) for q in bits(pattern.right))


# --- pattern search -------------------------------------------------------

def _search_order(pattern_adj: Sequence[int], n: int) -> list[int]:
    # Connected-first greedy order so constraints bite early.
    order, placed = [], 0
    remaining = (1 << n) - 1
    while remaining:
        best, score = None, None
        for p in bits(remaining):
            s = ((pattern_adj[p] & placed).bit_count(), pattern_adj[p].bit_count())
            if score is None or s > score:
                best, score = p, s
        order.append(best)
        placed |= 1 << best
        remaining ^= 1 << best
    return order


def _embed(host_adj, within, pattern_adj, n, constrained, domains):
    """Backtracking embedding.

    ``constrained[p]`` is the mask of pattern vertices whose (non-)adjacency
    with ``p`` must be mirrored; ``domains[p]`` restricts where ``p`` may go.
    """
    order = _search_order([pattern_adj[p] & constrained[p] for p in range(n)], n)
    pos = {p: i for i, p in enumerate(order)}
    image = [None] * n
    need_deg = [(pattern_adj[p] & constrained[p]).bit_count() for p in range(n)]
    # Static degree filter on candidates.
    filt = []
    for p in range(n):
        mask = 0
        for v in bits(domains[p] & within):
            if (host_adj[v] & within).bit_count() >= need_deg[p]:
                mask |= 1 << v
        filt.append(mask)

    def rec(i, used):
        if i == n:
            return True
        p = order[i]
        cand = filt[p] & ~used
        for q in bits(constrained[p]):
            if pos[q] < i:
                hv = host_adj[image[q]]
                cand &= hv if pattern_adj[p] >> q & 1 else ~hv
                if not cand:
                    return False
        for v in bits(cand):
            image[p] = v
            if rec(i + 1, used | 1 << v):
                return True
        image[p] = None
        return False

    return tuple(image) if rec(0, 0) else None


def find_induced(g: Graph, pattern: Graph, within: int | None = None) -> PatternWitness | None:
    """Induced copy of ``pattern`` in ``g`` (optionally inside vertex mask ``within``)."""
    _check_cap(pattern.n, CAPS.pattern, "pattern")
    _check_cap(g.n, CAPS.host, "host")
    within = g.full if within is None else within
    if pattern.n > within.bit_count():
        return None
    n = pattern.n
    allp = (1 << n) - 1
    constrained = [allp ^ (1 << p) for p in range(n)]
    found = _embed(g.adj, within, pattern.adj, n, constrained, [within] * n)
    return PatternWitness(found, "induced") if found is not None else None


def find_semi_induced(g: Graph, pattern: BipartiteGraph, within: int | None = None,
                      sides: tuple[int, int] | None = None) -> PatternWitness | None:
    """Disjoint ``A, B`` with ``G[A, B]`` isomorphic to ``pattern`` side-for-side.

    With ``sides`` given, the pattern's left side must land inside
    ``sides[0]`` and its right side inside ``sides[1]``.
    """
    _check_cap(pattern.n, CAPS.pattern, "pattern")
    _check_cap(g.n, CAPS.host, "host")
    within = g.full if within is None else within
    n = pattern.n
    if n > within.bit_count():
        return None
    constrained = [pattern.right if pattern.left >> p & 1 else pattern.left for p in range(n)]
    if sides is None:
        domains = [within] * n
    else:
        domains = [sides[0] if pattern.left >> p & 1 else sides[1] for p in range(n)]
    found = _embed(g.adj, within, pattern.graph.adj, n, constrained, domains)
    return PatternWitness(found, "semi-induced") if found is not None else None


def find_induced_bipartite(b: BipartiteGraph, pattern: BipartiteGraph) -> PatternWitness | None:
    """Side-respecting induced copy of a bipartite pattern in a bipartite host.

    Both orientations of the pattern relative to the host sides are tried.
    """
    w = find_semi_induced(b.graph, pattern, sides=(b.left, b.right))
    if w is None:
        w = find_semi_induced(b.graph, pattern, sides=(b.right, b.left))
    return w


# --- index invariants -----------------------------------------------------

def strong_index(g: Graph, within: int | None = None) -> tuple[int, IndexWitness]:
    """Exact strong index of ``g[within]`` with a witness.

    After fixing pairs ``(a_1, b_1) .. (a_j, b_j)`` every later ``a`` and ``b``
    must lie in ``N(a_i) - N[b_i]`` for all ``i <= j``, so the longest
    extension depends only on that candidate mask and is memoised on it.
    """
    within = g.full if within is None else within
    _check_cap(within.bit_count(), CAPS.index, "strong_index")
    adj = g.adj
    memo: dict[int, tuple[int, int, int]] = {}

    def best(cand: int) -> int:
        got = memo.get(cand)
        if got is not None:
            return got[0]
        top, pick = 0, (-1, -1)
        if cand.bit_count() >= 2:
            for a in bits(cand):
                na = adj[a] & cand
                if na.bit_count() < 2 * top:
                    # every later pair lives in N(a); too few to beat top
                    continue
                for b in bits(cand):
                    if b == a:
                        continue
                    nxt = na & ~adj[b] & ~(1 << b)
                    if nxt.bit_count() // 2 + 1 <= top:
                        continue
                    val = 1 + best(nxt)
                    if val > top:
                        top, pick = val, (a, b)
        memo[cand] = (top, *pick)
        return top

    k = best(within)
    a_seq, b_seq, cand = [], [], within
    while True:
        top, a, b = memo[cand]
        if top == 0:
            break
        a_seq.append(a)
        b_seq.append(b)
        cand = cand & adj[a] & ~adj[b] & ~(1 << b)
    return k, IndexWitness(tuple(a_seq), tuple(b_seq))


def bipartite_index_adj(adj: Sequence[int], left: int, right: int) -> tuple[int, IndexWitness]:
    """Bipartite index of the graph ``adj`` with sides ``left``/``right`` (cross pairs only)."""
    _check_cap((left | right).bit_count(), CAPS.index, "bipartite_index")
    best_k, best_w = 0, IndexWitness((), ())
    for aside, bside in ((left, right), (right, left)):
        memo: dict[tuple[int, int], tuple[int, int, int]] = {}

        def rec(ca: int, cb: int) -> int:
            key = (ca, cb)
            got = memo.get(key)
            if got is not None:
                return got[0]
            top, pick = 0, (-1, -1)
            if ca and cb:
                for x in bits(ca):
                    nb_next = cb & adj[x]
                    if nb_next.bit_count() < top:
                        # every later b must be a neighbour of x
                        continue
                    for y in bits(cb):
                        nxt_b = nb_next & ~(1 << y)
                        nxt_a = ca & ~adj[y] & ~(1 << x)
                        if min(nxt_a.bit_count(), nxt_b.bit_count()) + 1 <= top:
                            continue
                        val = 1 + rec(nxt_a, nxt_b)
                        if val > top:
                            top, pick = val, (x, y)
            memo[key] = (top, *pick)
            return top

        k = rec(aside, bside)
        if k > best_k:
            a_seq, b_seq, ca, cb = [], [], aside, bside
            while True:
                top, x, y = memo[(ca, cb)]
                if top == 0:
                    break
                a_seq.append(x)
                b_seq.append(y)
                ca, cb = ca & ~adj[y] & ~(1 << x), cb & adj[x] & ~(1 << y)
            best_k, best_w = k, IndexWitness(tuple(a_seq), tuple(b_seq))
    return best_k, best_w


def bipartite_index(b: BipartiteGraph, within: int | None = None) -> tuple[int, IndexWitness]:
    """Exact bipartite index of ``b[within]`` with a witness (0 if a side is empty)."""
    within = b.graph.full if within is None else within
    return bipartite_index_adj(b.graph.adj, b.left & within, b.right & within)


def half_graph_from_index(b: BipartiteGraph, w: IndexWitness, k: int) -> PatternWitness:
    """Induced ``H_k`` extracted from a bipartite-index witness of order ``>= 2k+1``.

    Indices are split by whether ``a_i b_i`` is an edge; a class of size
    ``k+1`` gives ``H_{k+1}`` (edge class) or its bipartite complement
    (non-edge class), and ``H_k`` is read off either one.  The result maps
    ``H_k``'s vertex ``i`` to ``a_i`` and ``k+j`` to ``b_j``.
    """
    g = b.graph
    if k < 1 or w.order < 2 * k + 1:
        raise ValueError(f"need a witness of order >= {2 * k + 1}, got {w.order}")
    if not check_index_witness(g, w, "bipartite", (b.left, b.right)):
        raise ValueError("invalid bipartite-index witness")
    edge_idx = [i for i in range(w.order) if g.has_edge(w.a[i], w.b[i])]
    non_idx = [i for i in range(w.order) if not g.has_edge(w.a[i], w.b[i])]
    if len(edge_idx) >= k + 1:
        idx = edge_idx[:k]
        mapping = [w.a[i] for i in idx] + [w.b[i] for i in idx]
    else:
        idx = non_idx[:k + 1]
        mapping = [w.a[i] for i in idx[:k]] + [w.b[i] for i in idx[1:]]
    return PatternWitness(tuple(mapping), "semi-induced")


def max_induced_threshold_order(g: Graph) -> int:
    """Largest ``k`` with an induced ``R_k`` in ``g``."""
    k = 0
    while 2 * (k + 1) <= g.n and find_induced(g, universal_threshold(k + 1)) is not None:
        k += 1
    return k


def max_induced_half_graph_order(b: BipartiteGraph) -> int:
    k = 0
    while 2 * (k + 1) <= b.n and find_induced_bipartite(b, half_graph(k + 1)) is not None:
        k += 1
    return k


# --- threshold graphs -----------------------------------------------------

def threshold_sequence(h: Graph) -> list[tuple[int, str]] | None:
    """Removal order of universal ('u') / isolated ('i') vertices, or None."""
    rest = h.full
    seq = []
    while rest:
        size = rest.bit_count()
        if size == 1:
            # a lone vertex is both; keep the previous kind so runs stay on one side
            seq.append((lowest(rest), seq[-1][1] if seq else "u"))
            break
        for v in bits(rest):
            d = (h.adj[v] & rest).bit_count()
            if d == size - 1:
                seq.append((v, "u"))
                break
            if d == 0:
                seq.append((v, "i"))
                break
        else:
            return None
        rest &= ~(1 << seq[-1][0])
    return seq


def threshold_embed(h: Graph, k: int) -> PatternWitness:
    """Induced embedding of a threshold graph on ``<= k`` vertices into ``R_k``.

    Host numbering is that of :func:`universal_threshold`: ``a_i = i``,
    ``b_j = k + j``.
    """
    if h.n > k:
        raise ValueError(f"threshold graph has {h.n} > {k} vertices")
    seq = threshold_sequence(h)
    if seq is None:
        raise ValueError("not a threshold graph")
    mapping = [0] * h.n
    c, prev = 0, None
    for v, kind in seq:
        if prev == "u" and kind == "u" or prev == "i":
            c += 1
        mapping[v] = c if kind == "u" else k + c
        prev = kind
    return PatternWitness(tuple(mapping), "induced")


# --- classical oracles ----------------------------------------------------

def _max_clique(adj: Sequence[int], cand: int) -> int:
    """Maximum clique mask inside ``cand`` (greedy-colouring bound)."""
    best = 0

    def expand(clique: int, cand: int):
        nonlocal best
        # Colour classes give an upper bound on what cand can add.
        order, bounds = [], []
        rest, colour = cand, 0
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = lowest(avail)
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        size = clique.bit_count()
        for v, bound in zip(reversed(order), reversed(bounds)):
            if size + bound <= best.bit_count():
                return
            new = clique | 1 << v
            nc = cand & adj[v]
            if nc:
                expand(new, nc)
            elif new.bit_count() > best.bit_count():
                best = new
            cand &= ~(1 << v)

    if cand:
        expand(0, cand)
    return best


def max_clique(g: Graph, within: int | None = None) -> list[int]:
    within = g.full if within is None else within
    _check_cap(within.bit_count(), CAPS.clique, "clique")
    return to_list(_max_clique(g.adj, within))


def clique_number(g: Graph, within: int | None = None) -> int:
    return len(max_clique(g, within))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def homogeneous_set(g: Graph) -> list[int]:
    """A largest clique or independent set; ties go to the clique."""
    _check_cap(g.n, CAPS.homogeneous, "homogeneous_set")
    clique = to_list(_max_clique(g.adj, g.full))
    indep = to_list(_max_clique(complement(g).adj, g.full))
    return clique if len(clique) >= len(indep) else indep


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by DSatur-ordered branch and bound."""
    _check_cap(g.n, CAPS.chromatic, "chromatic_number")
    n = g.n
    if n == 0:
        return 0
    adj = g.adj
    lower = clique_number(g)
    colour = [-1] * n
    best = n

    def rec(coloured: int, used: int):
        nonlocal best
        if used >= best:
            return
        if coloured == n:
            best = used
            return
        # DSatur: most distinct neighbour colours, then highest degree.
        pick, key = -1, None
        for v in range(n):
            if colour[v] < 0:
                sat = len({colour[u] for u in bits(adj[v]) if colour[u] >= 0})
                kv = (sat, adj[v].bit_count())
                if key is None or kv > key:
                    pick, key = v, kv
        forbidden = {colour[u] for u in bits(adj[pick]) if colour[u] >= 0}
        for c in range(min(used + 1, best - 1)):
            if c in forbidden:
                continue
            colour[pick] = c
            rec(coloured + 1, max(used, c + 1))
            colour[pick] = -1
            if best == lower:
                return

    rec(0, 0)
    return best


def degeneracy(g: Graph) -> int:
    """Max over the min-degree elimination order of the removed vertex's degree."""
    rest, d = g.full, 0
    while rest:
        v = min(bits(rest), key=lambda u: ((g.adj[u] & rest).bit_count(), u))
        d = max(d, (g.adj[v] & rest).bit_count())
        rest &= ~(1 << v)
    return d


def treedepth_at_most(g: Graph, h: int, within: int | None = None,
                      _memo: dict | None = None) -> bool:
    within = g.full if within is None else within
    _check_cap(within.bit_count(), CAPS.treedepth, "treedepth")
    adj = g.adj
    memo = {} if _memo is None else _memo

    def fits(mask: int, depth: int) -> bool:
        if not mask:
            return True
        if depth <= 0:
            return False
        key = (mask, depth)
        got = memo.get(key)
        if got is not None:
            return got
        comps = components_within(adj, mask)
        if len(comps) > 1:
            ok = all(fits(c, depth) for c in comps)
        elif mask.bit_count() == 1:
            ok = True
        elif depth == 1:
            ok = False
        else:
            order = sorted(bits(mask), key=lambda v: -(adj[v] & mask).bit_count())
            ok = any(fits(mask & ~(1 << v), depth - 1) for v in order)
        memo[key] = ok
        return ok

    return fits(within, h)


def treedepth(g: Graph, within: int | None = None) -> int:
    """Exact treedepth (0 for the empty graph)."""
    within = g.full if within is None else within
    _check_cap(within.bit_count(), CAPS.treedepth, "treedepth")
    if not within:
        return 0
    memo: dict = {}
    h = 1
    while not treedepth_at_most(g, h, within, memo):
        h += 1
    return h

