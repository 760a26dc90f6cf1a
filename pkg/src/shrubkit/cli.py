"""Command-line interface: ``shrubkit <command> ...``.

Exit codes: 0 success, 1 validation failure, 2 precondition violated or
pattern found, 3 search cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import sys

from . import cosplit, gyarfas, io, patterns, sparsify, treemodel
from .graph import (
    BipartiteGraph,
    Graph,
    bipartite_complement,
    complement,
    complete,
    complete_bipartite,
    components_within,
    cycle,
    edgeless,
    half_graph,
    lexicographic_product,
    path,
    path_bipartite,
    random_bipartite,
    random_graph,
    universal_threshold,
)

log = logging.getLogger("shrubkit")

OK, FAILED, PRECONDITION, CAP = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --- gen ------------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise CliError(f"--{name.replace('_', '-')} is required for this family", FAILED)


def make_graph(args) -> Graph | BipartiteGraph:
    fam = args.family
    if fam in ("path", "cycle", "co-path", "path-bipartite", "bico-path"):
        _need(args, "t")
        return {"path": path, "cycle": cycle, "co-path": lambda t: complement(path(t)),
                "path-bipartite": path_bipartite,
                "bico-path": lambda t: bipartite_complement(path_bipartite(t))}[fam](args.t)
    if fam in ("complete", "edgeless"):
        _need(args, "n")
        return (complete if fam == "complete" else edgeless)(args.n)
    if fam == "complete-bipartite":
        _need(args, "nl", "nr")
        return complete_bipartite(args.nl, args.nr)
    if fam in ("half-graph", "threshold"):
        _need(args, "k")
        return half_graph(args.k) if fam == "half-graph" else universal_threshold(args.k)
    if fam == "random":
        _need(args, "n")
        return random_graph(args.n, args.p, args.seed)
    if fam == "random-bipartite":
        _need(args, "nl", "nr")
        return random_bipartite(args.nl, args.nr, args.p, args.seed)
    if fam == "tree-model":
        _need(args, "k", "h", "n")
        m = treemodel.random_tree_model(args.k, args.h, args.n, seed=args.seed, bipartite=args.bipartite)
        return treemodel.bipartite_from_model(m) if args.bipartite else treemodel.evaluate(m, args.n)
    if fam == "lex-c5":
        return lexicographic_product(cycle(5), cycle(5))
    raise CliError(f"unknown family {fam}", FAILED)


FAMILIES = ["path", "cycle", "co-path", "path-bipartite", "bico-path", "complete", "edgeless",
            "complete-bipartite", "half-graph", "threshold", "random", "random-bipartite",
            "tree-model", "lex-c5"]


def cmd_gen(args) -> int:
    try:
        g = make_graph(args)
    except ValueError as exc:
        raise CliError(str(exc), FAILED) from None
    io.write_text(args.out, io.dumps(io.graph_to_json(g)))
    return OK


# --- detect ---------------------------------------------------------------

def _pattern(name: str, size: int):
    table = {
        "path": lambda: path(size),
        "co-path": lambda: complement(path(size)),
        "cycle": lambda: cycle(size),
        "clique": lambda: complete(size),
        "threshold": lambda: universal_threshold(size),
        "path-bipartite": lambda: path_bipartite(size),
        "bico-path": lambda: bipartite_complement(path_bipartite(size)),
        "half-graph": lambda: half_graph(size),
    }
    if name not in table:
        raise CliError(f"unknown pattern {name}", FAILED)
    return table[name]()


def _host(g) -> Graph:
    return g.graph if isinstance(g, BipartiteGraph) else g


def cmd_detect(args) -> int:
    g = io.read_graph(args.graph)
    if args.index:
        if args.index == "strong":
            k, w = patterns.strong_index(_host(g))
        else:
            if not isinstance(g, BipartiteGraph):
                raise CliError("the bipartite index needs a graph with sides", FAILED)
            k, w = patterns.bipartite_index(g)
        io.write_text(args.out, io.dumps({"index": args.index, "value": k, "witness": w.to_json()}))
        return OK
    if args.pattern is None or args.size is None:
        raise CliError("give --pattern and --size, or --index", FAILED)
    pat = _pattern(args.pattern, args.size)
    mode = args.mode
    if mode == "semi-induced":
        if not isinstance(pat, BipartiteGraph):
            raise CliError("semi-induced search needs a bipartite pattern", FAILED)
        w = patterns.find_semi_induced(_host(g), pat)
    elif mode == "bipartite":
        if not (isinstance(g, BipartiteGraph) and isinstance(pat, BipartiteGraph)):
            raise CliError("side-respecting search needs bipartite host and pattern", FAILED)
        w = patterns.find_induced_bipartite(g, pat)
    else:
        w = patterns.find_induced(_host(g), _host(pat))
    report = {"pattern": args.pattern, "size": args.size, "mode": mode, "found": w is not None,
              "witness": None if w is None else w.to_json()}
    io.write_text(args.out, io.dumps(report))
    return PRECONDITION if w is not None else OK


# --- stats ----------------------------------------------------------------

def _maybe(fn):
    try:
        return fn()
    except patterns.CapExceeded:
        return None


def graph_stats(g) -> dict:
    host = _host(g)
    cot = treemodel.build_cotree(host)
    out = {
        "n": host.n,
        "edges": host.num_edges(),
        "components": len(components_within(host.adj, host.full)),
        "degeneracy": patterns.degeneracy(host),
        "clique_number": _maybe(lambda: patterns.clique_number(host)),
        "independence_number": _maybe(lambda: patterns.independence_number(host)),
        "chromatic_number": _maybe(lambda: patterns.chromatic_number(host)),
        "treedepth": _maybe(lambda: patterns.treedepth(host)),
        "strong_index": _maybe(lambda: patterns.strong_index(host)[0]),
        "cograph": cot is not None,
        "cotree_height": None if cot is None else cot.height(),
    }
    if isinstance(g, BipartiteGraph):
        bic = treemodel.build_bicotree(g)
        out["bipartite_index"] = _maybe(lambda: patterns.bipartite_index(g)[0])
        out["bicograph"] = bic is not None
        out["bicotree_height"] = None if bic is None else bic.height()
    return out


def cmd_stats(args) -> int:
    io.write_text(args.out, io.dumps(graph_stats(io.read_graph(args.graph))))
    return OK


# --- decompose ------------------------------------------------------------

def _check_t(t: int, least: int, what: str):
    if t < least:
        raise CliError(f"{what} needs t >= {least}, got {t}", FAILED)


def _gyarfas(g, args) -> tuple[dict, bool, str]:
    host = _host(g)
    roots = [int(r) for r in args.roots.split(",")] if args.roots else None
    y = gyarfas.build(host, roots)
    ok, why = gyarfas.validate(host, y)
    out = {"mode": "gyarfas", "decomposition": y.to_json()}
    if ok and isinstance(g, BipartiteGraph):
        ok = gyarfas.bipartite_levels_check(g, y)
        why = None if ok else "bags are not independent or levels do not alternate sides"
    if args.dot:
        io.write_text(args.dot, gyarfas.to_dot(y))
    return out, ok, why


def _bounds(budget, t: int, k: int | None):
    if k is None:
        return None, None
    return budget(t, k), max(2 * k, 1)


def _cosplit(g, args, two: bool) -> tuple[dict, bool, str]:
    t = args.t
    if two:
        _check_t(t, 5, "a 2-cosplit")
        if isinstance(g, BipartiteGraph):
            s = cosplit.two_cosplit_bipartite(g, t, args.k_budget)
            bounds = _bounds(cosplit.bipartite_budget, t, s.index)
        else:
            s = cosplit.two_cosplit(g, t, args.k_budget)
            bounds = (None, None)
    else:
        _check_t(t, 4, "a cosplit")
        host = _host(g)
        if args.k is not None:
            cosplit.check_induced_exclusions(host, t, args.k)
        s = cosplit.cosplit(host, t, args.k_budget)
        bounds = _bounds(cosplit.cosplit_budget, t, s.index)
    ok, why = cosplit.validate_cosplit(g, s, *bounds) if args.validate else (True, None)
    data = cosplit.cosplit_to_json(s)
    if not args.emit_certificates:
        for key in ("certificates", "part_certificates", "pair_certificates"):
            data.pop(key, None)
    out = {"mode": "cosplit2" if two else "cosplit", "decomposition": data,
           "bounds": {"size": bounds[0], "height": bounds[1]}}
    if args.dot:
        io.write_text(args.dot, _partition_dot(_host(g), s.masks))
    return out, ok, why


def _partition_dot(g: Graph, masks: list[int]) -> str:
    lines = ["graph cosplit {"]
    for i, m in enumerate(masks):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="part {i}";')
        lines.extend(f"    v{v};" for v in range(g.n) if m >> v & 1)
        lines.append("  }")
    lines.extend(f"  v{u} -- v{v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sparsify(g, args) -> tuple[dict, bool, str]:
    _check_t(args.t, 5, "sparsification")
    c, report = sparsify.sparsify_pipeline(_host(g), args.t, args.k)
    return {"mode": "sparsify", "colored": c.to_json(), "report": report}, report["round_trip"], None


def cmd_decompose(args) -> int:
    g = io.read_graph(args.graph)
    mode = args.mode
    if mode == "gyarfas":
        out, ok, why = _gyarfas(g, args)
    elif mode in ("cosplit", "cosplit2"):
        out, ok, why = _cosplit(g, args, mode == "cosplit2")
    else:
        out, ok, why = _sparsify(g, args)
    out["validation"] = {"ok": ok, "report": why}
    io.write_text(args.out, io.dumps(out))
    return OK if ok else FAILED


def cmd_cosplit(args, two: bool) -> int:
    args.mode = "cosplit2" if two else "cosplit"
    return cmd_decompose(args)


# --- sparsify / desparsify ------------------------------------------------

def cmd_sparsify(args) -> int:
    _check_t(args.t, 5, "sparsification")
    g = _host(io.read_graph(args.graph))
    c, report = sparsify.sparsify_pipeline(g, args.t, args.k)
    io.write_text(args.out, io.dumps(c.to_json()))
    if args.report:
        io.write_text(args.report, io.dumps(report))
    return OK if report["round_trip"] else FAILED


def cmd_desparsify(args) -> int:
    c = sparsify.ColoredGraph.from_json(io.read_json(args.colored))
    io.write_text(args.out, io.dumps(io.graph_to_json(sparsify.decode(c))))
    return OK


# --- verify ---------------------------------------------------------------

def cmd_verify(args) -> int:
    from . import experiments

    fn = experiments.EXPERIMENTS[args.experiment]
    kwargs = {"seed": args.seed}
    if args.count is not None:
        kwargs["count"] = args.count
    if args.n_max is not None:
        kwargs["n_max"] = args.n_max
    rows = fn(**kwargs)
    passed = sum(1 for r in rows if r["pass"])
    summary = {"experiment": args.experiment, "instances": len(rows), "passed": passed,
               "failed": len(rows) - passed}
    fh = open(args.csv, "w", newline="") if args.csv and args.csv != "-" else sys.stdout
    try:
        if rows:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    print(json.dumps(summary, sort_keys=True), file=sys.stderr if fh is sys.stdout else sys.stdout)
    return OK if passed == len(rows) else FAILED


# --- export-dot -----------------------------------------------------------

def cmd_export_dot(args) -> int:
    d = io.read_json(args.input)
    if "decomposition" in d:
        d = d["decomposition"]
    if "colored" in d:
        d = d["colored"]
    if "predicates" in d:
        text = _colored_dot(sparsify.ColoredGraph.from_json(d))
    elif "bags" in d:
        text = gyarfas.to_dot(gyarfas.GyarfasDecomposition.from_json(d))
    elif "root" in d:
        text = io.model_to_dot(treemodel.model_from_json(d))
    elif "n" in d and "edges" in d:
        text = io.graph_to_dot(io.graph_from_json(d))
    else:
        raise CliError("unrecognised JSON document", FAILED)
    io.write_text(args.out, text)
    return OK


def _colored_dot(c) -> str:
    g = c.graph
    lines = ["graph colored {"]
    for v in range(g.n):
        names = [name for name, m in sorted(c.predicates.items()) if m >> v & 1]
        lines.append(f'  v{v} [label="{v}\\n{" ".join(names)}"];')
    lines.extend(f"  v{u} -- v{v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- parser ---------------------------------------------------------------

def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shrubkit", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file of option defaults; flags override it")
    p.add_argument("--log-level", default="WARNING")
    for cap in ("pattern", "host", "index", "chromatic", "treedepth", "clique", "homogeneous"):
        p.add_argument(f"--cap-{cap}", type=_positive_int, help=f"size cap for {cap} searches")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    g = add("gen", cmd_gen, "generate a graph")
    g.add_argument("family", choices=FAMILIES)
    for flag in ("t", "k", "h", "n", "nl", "nr"):
        g.add_argument(f"--{flag}", type=int)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bipartite", action="store_true")
    g.add_argument("-o", "--out")

    d = add("detect", cmd_detect, "search for a pattern or compute an index")
    d.add_argument("graph")
    d.add_argument("--pattern")
    d.add_argument("--size", type=int)
    d.add_argument("--mode", choices=["induced", "semi-induced", "bipartite"], default="induced")
    d.add_argument("--index", choices=["strong", "bipartite"])
    d.add_argument("-o", "--out")

    def decomposition_flags(sp):
        sp.add_argument("graph")
        sp.add_argument("--t", type=int, default=5)
        sp.add_argument("--k", type=int)
        sp.add_argument("--k-budget", type=int)
        sp.add_argument("--roots")
        sp.add_argument("--validate", action=argparse.BooleanOptionalAction, default=True)
        sp.add_argument("--emit-certificates", action=argparse.BooleanOptionalAction, default=True)
        sp.add_argument("--dot")
        sp.add_argument("-o", "--out")

    dc = add("decompose", cmd_decompose, "Gyárfás decomposition, cosplit, 2-cosplit or sparsification")
    dc.add_argument("mode", choices=["gyarfas", "cosplit", "cosplit2", "sparsify"])
    decomposition_flags(dc)
    decomposition_flags(add("cosplit", lambda a: cmd_cosplit(a, False), "cosplit with certificates"))
    decomposition_flags(add("cosplit2", lambda a: cmd_cosplit(a, True), "2-cosplit with certificates"))

    s = add("sparsify", cmd_sparsify, "encode a graph as a sparse colored graph")
    s.add_argument("graph")
    s.add_argument("--t", type=int, default=5)
    s.add_argument("--k", type=int)
    s.add_argument("--report")
    s.add_argument("-o", "--out")

    ds = add("desparsify", cmd_desparsify, "decode a colored graph")
    ds.add_argument("colored")
    ds.add_argument("-o", "--out")

    v = add("verify", cmd_verify, "run a corpus experiment")
    v.add_argument("experiment", choices=["chi-bound", "homogeneous", "height-bounds", "roundtrip"])
    v.add_argument("--count", type=_positive_int)
    v.add_argument("--n-max", type=_positive_int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--csv")

    e = add("export-dot", cmd_export_dot, "DOT for a graph, tree model or decomposition JSON")
    e.add_argument("input")
    e.add_argument("-o", "--out")

    st = add("stats", cmd_stats, "exact parameters of a graph")
    st.add_argument("graph")
    st.add_argument("-o", "--out")
    return p


def _load_config(parser, argv) -> None:
    path_ = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path_ = argv[i + 1]
        elif tok.startswith("--config="):
            path_ = tok.split("=", 1)[1]
    if path_ is None:
        return
    cfg = io.read_json(path_)
    if not isinstance(cfg, dict):
        raise CliError("config file must hold a JSON object", FAILED)
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    parser.set_defaults(**cfg)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.set_defaults(**cfg)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    saved = dataclasses.replace(patterns.CAPS)
    try:
        _load_config(parser, argv)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            # usage errors count as failures; exit 2 is reserved for preconditions
            return OK if exc.code in (0, None) else FAILED
        logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                            format="%(levelname)s %(name)s: %(message)s")
        for cap in ("pattern", "host", "index", "chromatic", "treedepth", "clique", "homogeneous"):
            val = getattr(args, f"cap_{cap}")
            if val is not None:
                if int(val) < 1:
                    raise CliError(f"cap {cap} must be positive", FAILED)
                setattr(patterns.CAPS, cap, int(val))
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except cosplit.PreconditionError as exc:
        detail = {"error": str(exc), "pattern": exc.pattern,
                  "witness": None if exc.witness is None else exc.witness.to_json()}
        print(json.dumps(detail, sort_keys=True), file=sys.stderr)
        return PRECONDITION
    except patterns.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return CAP
    except (sparsify.EncodingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    finally:
        patterns.CAPS.__dict__.update(vars(saved))


if __name__ == "__main__":
    sys.exit(main())
