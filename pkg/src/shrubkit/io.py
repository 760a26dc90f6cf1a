"""JSON and DOT input/output for graphs, bipartite graphs and tree models."""

from __future__ import annotations

import json
from pathlib import Path

from .graph import BipartiteGraph, Graph, bits, to_list, to_mask
from .treemodel import Node, TreeModel


def graph_to_json(g: Graph | BipartiteGraph) -> dict:
    host = g.graph if isinstance(g, BipartiteGraph) else g
    out: dict = {"n": host.n, "edges": [list(e) for e in host.edges()]}
    if isinstance(g, BipartiteGraph):
        out["sides"] = {"left": to_list(g.left), "right": to_list(g.right)}
    if host.labels is not None:
        out["labels"] = list(host.labels)
    return out


def graph_from_json(d: dict) -> Graph | BipartiteGraph:
    """A :class:`BipartiteGraph` when ``sides`` is present, else a :class:`Graph`."""
    try:
        n = int(d["n"])
        edges = [(int(u), int(v)) for u, v in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from None
    g = Graph.from_edges(n, edges, labels=d.get("labels"))
    sides = d.get("sides")
    if sides is None:
        return g
    return BipartiteGraph(g, to_mask(sides["left"]), to_mask(sides["right"]))


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def write_text(path: str | Path | None, text: str):
    """Write ``text`` to ``path``, or to stdout when ``path`` is ``None`` or ``-``."""
    if path is None or str(path) == "-":
        print(text, end="")
        return
    Path(path).write_text(text)


def read_graph(path: str | Path) -> Graph | BipartiteGraph:
    return graph_from_json(read_json(path))


def _vertex_name(host: Graph, v: int) -> str:
    if host.labels is not None:
        return json.dumps(host.labels[v])
    return f"v{v}"


def graph_to_dot(g: Graph | BipartiteGraph, name: str = "G") -> str:
    host = g.graph if isinstance(g, BipartiteGraph) else g
    lines = [f"graph {name} {{"]
    if isinstance(g, BipartiteGraph):
        for side, mask, shape in (("left", g.left, "box"), ("right", g.right, "ellipse")):
            lines.append(f"  subgraph cluster_{side} {{")
            lines.append(f'    label="{side}";')
            for v in bits(mask):
                lines.append(f"    {_vertex_name(host, v)} [shape={shape}];")
            lines.append("  }")
    else:
        for v in range(host.n):
            lines.append(f"  {_vertex_name(host, v)};")
    for u, v in host.edges():
        lines.append(f"  {_vertex_name(host, u)} -- {_vertex_name(host, v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _rule_label(rule) -> str:
    if not rule:
        return "union"
    return " ".join(f"{a}-{b}" for a, b in sorted(rule))


def model_to_dot(m: TreeModel, name: str = "model") -> str:
    """The tree with every internal node labelled by its adjacency rule."""
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    counter = [0]

    def walk(node: Node) -> str:
        if node.is_leaf:
            ident = f"v{node.vertex}"
            lines.append(f'  {ident} [label="{node.vertex}", xlabel="c{node.color}"];')
            return ident
        ident = f"n{counter[0]}"
        counter[0] += 1
        lines.append(f'  {ident} [shape=box, label="{_rule_label(node.rule)}"];')
        for ch in node.children:
            lines.append(f"  {ident} -> {walk(ch)};")
        return ident

    walk(m.root)
    lines.append("}")
    return "\n".join(lines) + "\n"
