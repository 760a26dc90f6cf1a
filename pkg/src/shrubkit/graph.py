"""Simple undirected graphs stored as per-vertex neighbourhood bitsets.

Vertices are the integers ``0..n-1``.  A vertex set is an ``int`` bitmask
(bit ``v`` set iff ``v`` is in the set); helpers convert between masks and
sorted lists.  Graphs are immutable once built.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_list(mask: int) -> list[int]:
    return list(bits(mask))


def lowest(mask: int) -> int:
    """Smallest vertex of a nonempty mask."""
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, nb in enumerate(self.adj):
            if nb >> self.n:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @property
    def full(self) -> int:
        """Mask of all vertices."""
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int, within: int | None = None) -> int:
        nb = self.adj[v] if within is None else self.adj[v] & within
        return nb.bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class BipartiteGraph:
    """A graph with a fixed bipartition into ``left`` and ``right`` masks."""

    graph: Graph
    left: int
    right: int

    def __post_init__(self):
        g = self.graph
        if self.left & self.right or (self.left | self.right) != g.full:
            raise ValueError("sides must partition the vertex set")
        for v in bits(self.left):
            if g.adj[v] & self.left:
                raise ValueError("left side is not independent")
        for v in bits(self.right):
            if g.adj[v] & self.right:
                raise ValueError("right side is not independent")

    @classmethod
    def from_edges(cls, left: Iterable[int], right: Iterable[int], edges) -> "BipartiteGraph":
        left, right = to_mask(left), to_mask(right)
        n = (left | right).bit_length()
        return cls(Graph.from_edges(n, edges), left, right)

    @property
    def n(self) -> int:
        return self.graph.n

    def side_of(self, v: int) -> int:
        """0 for the left side, 1 for the right side."""
        return 0 if self.left >> v & 1 else 1

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(self.graph, self.right, self.left)

    def edges(self) -> list[tuple[int, int]]:
        return self.graph.edges()


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Relabelled copy of ``G[vertices]`` plus the new-to-old vertex map."""
    old = sorted(set(vertices))
    index = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        adj.append(to_mask(index[u] for u in bits(g.adj[v]) if u in index))
    return Graph(len(old), tuple(adj)), old


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(g.adj)), g.labels)


def bipartite_complement(b: BipartiteGraph) -> BipartiteGraph:
    g = b.graph
    adj = []
    for v, nb in enumerate(g.adj):
        other = b.right if b.left >> v & 1 else b.left
        adj.append(other & ~nb)
    return BipartiteGraph(Graph(g.n, tuple(adj), g.labels), b.left, b.right)


def semi_induced_mask(g: Graph, a: int, b: int) -> list[int]:
    """Adjacency masks (indexed by host vertex) of ``G[A, B]``; zero outside ``A | B``."""
    if a & b:
        raise ValueError("semi-induced sides must be disjoint")
    adj = [0] * g.n
    for v in bits(a):
        adj[v] = g.adj[v] & b
    for v in bits(b):
        adj[v] = g.adj[v] & a
    return adj


def semi_induced(g: Graph, a: Iterable[int] | int, b: Iterable[int] | int) -> BipartiteGraph:
    """The bipartite graph ``G[A, B]`` on ``A | B``, relabelled to ``0..|A|+|B|-1``.

    Vertices of ``A`` come first (in increasing order), then those of ``B``.
    The original identifiers are kept in the labels.
    """
    a = a if isinstance(a, int) else to_mask(a)
    b = b if isinstance(b, int) else to_mask(b)
    if a & b:
        raise ValueError("semi-induced sides must be disjoint")
    old = to_list(a) + to_list(b)
    index = {v: i for i, v in enumerate(old)}
    edges = [(index[u], index[v]) for u in bits(a) for v in bits(g.adj[u] & b)]
    na = a.bit_count()
    graph = Graph.from_edges(len(old), edges, labels=[str(v) for v in old])
    return BipartiteGraph(graph, (1 << na) - 1, ((1 << len(old)) - 1) ^ ((1 << na) - 1))


def components_within(adj: Sequence[int], vertices: int) -> list[int]:
    """Connected components of the graph given by ``adj`` restricted to ``vertices``.

    Returned as masks, ordered by smallest vertex.
    """
    comps = []
    rest = vertices
    while rest:
        frontier = seen = rest & -rest
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= vertices & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def co_components_within(adj: Sequence[int], vertices: int) -> list[int]:
    """Components of the complement of the induced subgraph on ``vertices``."""
    comps = []
    rest = vertices
    while rest:
        frontier = seen = rest & -rest
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= vertices & ~adj[v] & ~(1 << v)
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def connected_components(g: Graph, vertices: int | None = None) -> list[list[int]]:
    return [to_list(c) for c in components_within(g.adj, g.full if vertices is None else vertices)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components_within(g.adj, g.full)) == 1


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(u, x)`` is numbered ``u * h.n + x``."""
    m = h.n
    block = (1 << m) - 1
    adj = []
    for u in range(g.n):
        outer = 0
        for v in bits(g.adj[u]):
            outer |= block << (v * m)
        for x in range(m):
            adj.append(outer | (h.adj[x] << (u * m)))
    return Graph(g.n * m, tuple(adj))


# --- generators -----------------------------------------------------------

def _positive(**params):
    for name, value in params.items():
        if value < 1:
            raise ValueError(f"{name} must be positive, got {value}")


def path(t: int) -> Graph:
    _positive(t=t)
    return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle(t: int) -> Graph:
    if t < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def complete(n: int) -> Graph:
    _positive(n=n)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def edgeless(n: int) -> Graph:
    _positive(n=n)
    return Graph(n, (0,) * n)


def complete_bipartite(p: int, q: int) -> BipartiteGraph:
    _positive(p=p, q=q)
    return BipartiteGraph.from_edges(range(p), range(p, p + q),
                                     [(u, v) for u in range(p) for v in range(p, p + q)])


def half_graph(k: int) -> BipartiteGraph:
    """``a_i = i``, ``b_j = k + j`` (0-based); edge ``a_i b_j`` iff ``i <= j``."""
    _positive(k=k)
    edges = [(i, k + j) for i in range(k) for j in range(i, k)]
    return BipartiteGraph.from_edges(range(k), range(k, 2 * k), edges)


def universal_threshold(k: int) -> Graph:
    """Half-graph on the same numbering plus a clique on ``a_0..a_{k-1}``."""
    _positive(k=k)
    edges = half_graph(k).edges() + [(i, j) for i in range(k) for j in range(i + 1, k)]
    return Graph.from_edges(2 * k, edges)


def path_bipartite(t: int) -> BipartiteGraph:
    """``P_t`` with its unique bipartition (even positions on the left)."""
    g = path(t)
    left = to_mask(range(0, t, 2))
    return BipartiteGraph(g, left, g.full ^ left)


def random_graph(n: int, p: float, seed: int | None = None) -> Graph:
    _positive(n=n)
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_bipartite(nl: int, nr: int, p: float, seed: int | None = None) -> BipartiteGraph:
    _positive(nl=nl, nr=nr)
    rng = random.Random(seed)
    edges = [(u, v) for u in range(nl) for v in range(nl, nl + nr) if rng.random() < p]
    return BipartiteGraph.from_edges(range(nl), range(nl, nl + nr), edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges += [(u + offset, v + offset) for u, v in h.edges()]
        offset += h.n
    return Graph.from_edges(offset, edges)
