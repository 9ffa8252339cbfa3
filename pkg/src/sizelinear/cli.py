"""Command-line front end.

Every subcommand writes line-delimited JSON to stdout and diagnostics to
stderr. Exit codes: 0 success, 1 computational failure (budget exhausted or
incomplete search), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .certify import KnowledgeBase, classify
from .construct import (
    ConstructionError,
    deletion_high_girth,
    graph_stats,
    named_graph,
    parse_graph_name,
    greedy_high_girth,
)
from .graphcore import Graph, GraphError, canonical_code, graph6_decode, graph6_encode, read_graph6
from .minsearch import (
    MinSearchError,
    PipelineBuild,
    PipelineError,
    SearchLimits,
    minimal_density_critical,
    excluded_subgraph_pipeline,
)
from .ramsey import Budget, RamseyError, RamseyResult, evidence_curve, ramsey_exact
from .store import ResultStore, ramsey_key

log = logging.getLogger("sizelinear")

EXIT_OK, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _strip_timing(doc):
    if isinstance(doc, dict):
        return {k: _strip_timing(v) for k, v in doc.items() if k != "timing"}
    if isinstance(doc, list):
        return [_strip_timing(v) for v in doc]
    return doc


def _emit(args, doc: dict) -> None:
    if not args.timing:
        doc = _strip_timing(doc)
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def load_graphs(arg: str) -> list[Graph]:
    """Graphs named by ``arg``: a graph6 file (wins on a name clash), a catalog
    shorthand such as K4 or petersen, or a literal graph6 string."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            graphs = list(read_graph6(fh))
        if not graphs:
            raise UsageError(f"{arg}: no graphs in file")
        return graphs
    try:
        return [parse_graph_name(arg)]
    except GraphError:
        pass
    try:
        return [graph6_decode(arg)]
    except GraphError:
        raise UsageError(f"{arg!r} is neither a file, a catalog name nor a graph6 string") from None


def load_graph(arg: str) -> Graph:
    graphs = load_graphs(arg)
    if len(graphs) != 1:
        raise UsageError(f"{arg}: expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def _budget(args) -> Budget:
    return Budget(args.max_nodes, args.max_seconds, args.max_order, args.threads)


def _store(args) -> ResultStore | None:
    return None if args.no_store else ResultStore(args.store)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.method == "greedy":
        graph, lg = greedy_high_girth(args.order, args.girth, args.cap, args.seed)
    else:
        graph, lg = deletion_high_girth(args.order, args.girth, args.p, args.seed)
    _emit(args, {"graph6": graph6_encode(graph), "log": lg.to_json()})
    return EXIT_OK


def cmd_certify(args) -> int:
    kb = KnowledgeBase.default()
    if args.facts:
        kb.load_facts(args.facts)
    graphs = []
    for src in args.graphs:
        graphs += load_graphs(src)
    if args.infile:
        graphs += load_graphs(args.infile)
    if not graphs:
        raise UsageError("certify needs --in FILE or graph arguments")
    for g in graphs:
        _emit(args, classify(g, kb).to_json())
    return EXIT_OK


def cmd_minimal(args) -> int:
    g = load_graph(args.graph)
    limits = SearchLimits(args.search_order, args.max_states, args.max_seconds)
    report = minimal_density_critical(g, limits)
    _emit(args, report.to_json())
    return EXIT_OK if report.complete else EXIT_BUDGET


def cmd_pipeline(args) -> int:
    excluded = []
    for src in args.exclude:
        excluded += load_graphs(src)
    build = PipelineBuild(
        method=args.method,
        start_order=args.start_order,
        max_order=args.max_graph_order,
        degree_cap=args.cap,
        seed=args.seed,
        edge_probability=args.p,
    )
    try:
        report = excluded_subgraph_pipeline(excluded, build)
    except PipelineError as exc:
        if "forest" in str(exc):
            raise UsageError(str(exc)) from None
        log.error("%s", exc)
        return EXIT_BUDGET
    _emit(args, report.to_json())
    return EXIT_OK


def _ramsey(args, g: Graph, h: Graph) -> RamseyResult:
    store = _store(args)
    key = ramsey_key(canonical_code(g), canonical_code(h))
    if store is not None:
        doc = store.get("ramsey", key)
        if doc is not None:
            cached = RamseyResult.from_json(doc)
            if cached.exact and canonical_code(cached.g) == canonical_code(g) and canonical_code(cached.h) == canonical_code(h):
                log.info("store hit for %s", key)
                return cached
    res = ramsey_exact(g, h, _budget(args))
    if store is not None and res.exact:
        store.put("ramsey", key, res.to_json())
    return res


def cmd_ramsey(args) -> int:
    res = _ramsey(args, load_graph(args.g), load_graph(args.h))
    _emit(args, res.to_json())
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_evidence(args) -> int:
    g = load_graph(args.g)
    rows = evidence_curve(g, args.family, range(1, args.max_k + 1), _budget(args))
    for row in rows:
        _emit(args, row)
    return EXIT_BUDGET if any(r.get("budget_exhausted") for r in rows) else EXIT_OK


def cmd_catalog(args) -> int:
    if args.params:
        g = named_graph(args.name, *(int(p) for p in args.params))
    else:
        try:
            g = parse_graph_name(args.name)
        except GraphError:
            g = named_graph(args.name)
    doc = {"name": args.name, "params": [int(p) for p in args.params], "graph6": graph6_encode(g)}
    doc.update(graph_stats(g))
    _emit(args, doc)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads for the Ramsey search")
    common.add_argument("--timing", action="store_true", help="include wall-time fields in the output")
    common.add_argument("--store", default=None, help="result store directory (default $RSL_STORE or .rsl-store)")
    common.add_argument("--no-store", action="store_true", help="neither read nor write the result store")
    common.add_argument("-v", "--verbose", action="count", default=0)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-nodes", "--budget", type=int, default=None, dest="max_nodes",
                        help="search node budget")
    budget.add_argument("--max-seconds", type=float, default=None)
    budget.add_argument("--max-order", type=int, default=13)

    parser = argparse.ArgumentParser(prog="sizelinear", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a high-girth graph")
    p.add_argument("method", choices=["greedy", "deletion"])
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--girth", type=int, required=True)
    p.add_argument("--cap", type=int, default=6, help="degree cap (greedy)")
    p.add_argument("--p", default="1/4", help="edge probability as a fraction (deletion)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", parents=[common], help="classify graphs as size-linear or not")
    p.add_argument("graphs", nargs="*", help="graph6 files, catalog names or graph6 strings")
    p.add_argument("--in", dest="infile", default=None, help="graph6 file")
    p.add_argument("--facts", default=None, help="extra knowledge-base facts (JSON)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("minimal-candidates", parents=[common], help="minimal dense subgraphs")
    p.add_argument("graph")
    p.add_argument("--search-order", type=int, default=16)
    p.add_argument("--max-states", type=int, default=500_000)
    p.add_argument("--max-seconds", type=float, default=None)
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("pipeline", parents=[common], help="excluded-subgraph pipeline")
    p.add_argument("--exclude", action="append", required=True, help="graph6 file or catalog name (repeatable)")
    p.add_argument("--method", choices=["greedy", "deletion"], default="greedy")
    p.add_argument("--start-order", type=int, default=16)
    p.add_argument("--max-graph-order", type=int, default=62)
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--p", default="1/4")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("ramsey", parents=[common, budget], help="exact r(G, H)")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("evidence", parents=[common, budget], help="r(G, H_k)/e(H_k) for a family")
    p.add_argument("--g", required=True)
    p.add_argument("--family", choices=["matchings", "paths", "stars"], required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.set_defaults(func=cmd_evidence)

    p = sub.add_parser("catalog", parents=[common], help="look up a named graph")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_catalog)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, GraphError, ConstructionError, MinSearchError, RamseyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
