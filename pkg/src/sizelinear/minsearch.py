"""Inclusion-minimal dense subgraphs and the excluded-subgraph pipeline.

A graph is *density-critical* when e >= 2v - 2 (and v >= 3). Such graphs are
not Ramsey size-linear, so the minimal ones are the candidates this module
reports. Minimal here means minimal for the density condition, which is a
proxy: see ``CAVEAT``.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

from .certify import (
    DensityCertificate,
    RslVerdict,
    Status,
    classify,
    is_dependent,
    lll_exponent,
)
from .construct import ConstructionLog, deletion_high_girth, greedy_high_girth
from .graphcore import (
    ACYCLIC,
    CanonicalCode,
    Graph,
    average_degree,
    canonical_code,
    canonical_form,
    girth,
    graph6_encode,
    subgraph_embedding,
)
from .graphcore.graph6 import MAX_ORDER as GRAPH6_MAX_ORDER
from .rng import SplitMix64

CAVEAT = (
    "Candidates are minimal with respect to the density condition e(H) >= 2v(H) - 2, "
    "not with respect to Ramsey size-linearity. Every candidate is not Ramsey size-linear, "
    "so each one contains a minimally non-size-linear subgraph, but that subgraph may be "
    "a proper subgraph of the candidate."
)

DEFAULT_MAX_ORDER = 16


class MinSearchError(ValueError):
    pass


class PipelineError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


def is_density_critical(g: Graph) -> bool:
    return g.order >= 3 and g.n_edges >= 2 * g.order - 2


@dataclass(frozen=True)
class SearchLimits:
    max_order: int = DEFAULT_MAX_ORDER
    max_states: int = 500_000
    max_seconds: float | None = None


@dataclass(frozen=True)
class Candidate:
    graph: Graph
    code: CanonicalCode
    embedding: tuple[int, ...]
    certificate: DensityCertificate

    def to_json(self) -> dict:
        return {
            "graph": graph6_encode(self.graph),
            "code": str(self.code),
            "embedding": list(self.embedding),
            "certificate": self.certificate.to_json(),
        }


@dataclass
class CandidateReport:
    source: Graph
    candidates: list[Candidate]
    nodes: int
    seconds: float
    complete: bool = True
    method: str = "exhaustive"
    caveat: str = CAVEAT

    def to_json(self) -> dict:
        return {
            "source": graph6_encode(self.source),
            "candidates": [c.to_json() for c in self.candidates],
            "complete": self.complete,
            "method": self.method,
            "caveat": self.caveat,
            "stats": {"nodes": self.nodes},
            "timing": {"seconds": round(self.seconds, 6)},
        }


def _reduce(g: Graph) -> Graph:
    """3-core, relabelled onto 0..k-1 (order preserving)."""
    return g.induced_subgraph(g.k_core(3))


def _make_candidate(source: Graph, form: Graph, code: CanonicalCode) -> Candidate:
    emb = subgraph_embedding(form, source)
    if emb is None:
        raise AssertionError("candidate does not embed into its source")
    cert = DensityCertificate(form, tuple(emb), form.n_edges - (2 * form.order - 2), lll_exponent(form))
    return Candidate(form, code, tuple(emb), cert)


def _finish(source, found: dict, nodes, start, complete, method) -> CandidateReport:
    candidates = [_make_candidate(source, form, code) for code, form in sorted(found.items())]
    return CandidateReport(source, candidates, nodes, time.perf_counter() - start, complete, method)


# The candidates below a state depend only on its isomorphism class, and an
# entry is written only once its subtree is fully explored, so the memo can
# be shared across calls.
_STATE_MEMO: dict[CanonicalCode, frozenset[CanonicalCode]] = {}
_STATE_MEMO_CAP = 1_000_000
_MEMO_LOCK = threading.Lock()


def _memo() -> dict[CanonicalCode, frozenset[CanonicalCode]]:
    with _MEMO_LOCK:
        if len(_STATE_MEMO) > _STATE_MEMO_CAP:
            _STATE_MEMO.clear()
    return _STATE_MEMO


def clear_memo() -> None:
    with _MEMO_LOCK:
        _STATE_MEMO.clear()


def minimal_density_critical(
    g: Graph, limits: SearchLimits | None = None, backend: str | None = None
) -> CandidateReport:
    """All subgraphs H of ``g`` (up to isomorphism) with e(H) >= 2v(H) - 2 none of
    whose proper subgraphs satisfy the same inequality.

    Depth-first deletion search. A state is the 3-core of a dependent subgraph
    (deleting a vertex of degree <= 2 never destroys the inequality). Its
    children delete one edge and re-take the 3-core, which also covers
    vertex deletions. A state with no dependent child is minimal. States are
    memoized by canonical code, and each memo entry holds the candidates
    reachable below it.
    """
    limits = limits or SearchLimits()
    if g.order > limits.max_order:
        raise MinSearchError(f"order {g.order} exceeds the search bound {limits.max_order}")
    start = time.perf_counter()
    memo = _memo()
    labeled: dict[tuple, CanonicalCode] = {}
    found: dict[CanonicalCode, Graph] = {}
    nodes = 0

    def code_of(x: Graph) -> CanonicalCode:
        key = (x.order, x.adj)
        c = labeled.get(key)
        if c is None:
            c = labeled[key] = canonical_code(x, limit=GRAPH6_MAX_ORDER)
        return c

    def explore(x: Graph) -> frozenset[CanonicalCode]:
        nonlocal nodes
        code = code_of(x)
        hit = memo.get(code)
        if hit is not None:
            for c in hit:
                found.setdefault(c, c.graph())
            return hit
        nodes += 1
        if nodes > limits.max_states or (
            limits.max_seconds is not None and time.perf_counter() - start > limits.max_seconds
        ):
            raise SearchBudgetExceeded
        result: set[CanonicalCode] = set()
        seen_children = set()
        for u, v in x.edges():
            y = _reduce(x.remove_edge(u, v))
            if not is_dependent(y, backend):
                continue
            cy = code_of(y)
            if cy in seen_children:
                continue
            seen_children.add(cy)
            result |= explore(y)
        if not seen_children:
            # no proper subgraph is dependent, so x is minimal
            assert x.n_edges == 2 * x.order - 2
            found.setdefault(code, code.graph())
            result = {code}
        memo[code] = frozenset(result)
        return memo[code]

    root = _reduce(g)
    complete = True
    if is_dependent(root, backend):
        try:
            for code in explore(root):
                found.setdefault(code, code.graph())
        except SearchBudgetExceeded:
            complete = False
    return _finish(g, found, nodes, start, complete, "exhaustive")


def peel_minimal(g: Graph, order: list[tuple[int, int]] | None = None, backend: str | None = None) -> Graph | None:
    """One inclusion-minimal density-critical subgraph, found by a single deletion pass.

    Edges are tried in ``order`` (default: lexicographic); an edge is dropped
    whenever the rest stays dependent. One pass suffices because a subgraph
    of a non-dependent graph is non-dependent. Returns the 3-core of what is
    left (relabelled), or None when ``g`` itself is not dependent.
    """
    edges = set(g.edges())
    current = g
    if not is_dependent(current, backend):
        return None
    for e in order if order is not None else g.edges():
        if e not in edges:
            continue
        trial = current.remove_edge(*e)
        if is_dependent(trial, backend):
            current = trial
            edges.discard(e)
    core = current.k_core(3)
    result = current.induced_subgraph(core)
    assert result.n_edges == 2 * result.order - 2
    return result


def peeled_candidates(
    g: Graph, rounds: int = 8, seed: int = 0, backend: str | None = None
) -> CandidateReport:
    """Candidates from ``rounds`` peels (lexicographic, then seeded shuffles).

    For graphs too large for the exhaustive search. Each result is a genuine
    minimal candidate, but the list is not claimed to be complete.
    """
    start = time.perf_counter()
    rng = SplitMix64(seed)
    found: dict[CanonicalCode, Graph] = {}
    base = g.edges()
    for r in range(rounds):
        order = list(base) if r == 0 else rng.shuffle(list(base))
        sub = peel_minimal(g, order, backend)
        if sub is None:
            break
        form, _ = canonical_form(sub, limit=GRAPH6_MAX_ORDER)
        found.setdefault(canonical_code(sub, limit=GRAPH6_MAX_ORDER), form)
    return _finish(g, found, rounds, start, False, "peel")


# ----------------------------------------------------------------------
# pipeline
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineBuild:
    method: str = "greedy"
    start_order: int = 16
    max_order: int = GRAPH6_MAX_ORDER
    degree_cap: int = 6
    seed: int = 0
    attempts_per_order: int = 4
    edge_probability: str = "1/4"
    peel_rounds: int = 8


@dataclass
class PipelineReport:
    excluded: list[tuple[Graph, int]]
    g: int
    g0: Graph
    log: ConstructionLog
    checks: dict
    verdict: RslVerdict
    candidates: CandidateReport
    distinctness: list[dict]
    caveat: str = CAVEAT

    def to_json(self) -> dict:
        return {
            "excluded": [{"graph": graph6_encode(x), "girth": l} for x, l in self.excluded],
            "g": self.g,
            "G0": {"graph": graph6_encode(self.g0), "log": self.log.to_json()},
            "checks": self.checks,
            "verdict": self.verdict.to_json(),
            "candidates": self.candidates.to_json(),
            "distinctness": self.distinctness,
            "caveat": self.caveat,
        }


def _build(order: int, g: int, build: PipelineBuild, seed: int):
    if build.method == "greedy":
        return greedy_high_girth(order, g, build.degree_cap, seed)
    if build.method == "deletion":
        return deletion_high_girth(order, g, build.edge_probability, seed)
    raise PipelineError(f"unknown construction method {build.method!r}")


def excluded_subgraph_pipeline(
    excluded: list[Graph], build: PipelineBuild | None = None, limits: SearchLimits | None = None
) -> PipelineReport:
    """Given graphs G_1..G_k each containing a cycle, build a graph of girth
    g = 1 + max girth(G_i) and average degree >= 4, certify it dense, and
    extract minimal dense subgraphs, none of which contains any G_i."""
    build = build or PipelineBuild()
    limits = limits or SearchLimits()
    if not excluded:
        raise PipelineError("need at least one excluded graph")
    lengths = []
    for x in excluded:
        ell = girth(x)
        if ell is ACYCLIC:
            raise PipelineError(
                f"excluded graph {graph6_encode(x)} is a forest: it has no cycle, and forests are size-linear"
            )
        lengths.append(ell)
    target = 1 + max(lengths)

    g0 = log = None
    order = build.start_order
    while g0 is None:
        for k in range(build.attempts_per_order):
            graph, lg = _build(order, target, build, build.seed + k)
            if average_degree(graph) >= 4:
                g0, log = graph, lg
                break
        if g0 is None:
            if order >= build.max_order:
                raise PipelineError(
                    f"no graph with average degree >= 4 and girth >= {target} up to order {order}"
                )
            order = min(2 * order, build.max_order)

    got = girth(g0)
    avg = average_degree(g0)
    checks = {
        "girth": got,
        "girth_ok": got >= target,
        "average_degree": f"{avg.numerator}/{avg.denominator}",
        "average_degree_ok": avg >= 4,
        "edges": g0.n_edges,
        "order": g0.order,
        "edges_at_least_2v": g0.n_edges >= 2 * g0.order,
    }
    if not all(checks[k] for k in ("girth_ok", "average_degree_ok", "edges_at_least_2v")):
        raise AssertionError(f"pipeline checks failed: {checks}")
    verdict = classify(g0)
    if verdict.status is not Status.NONLINEAR:
        raise AssertionError("G0 was not certified non-size-linear")

    if g0.order <= limits.max_order:
        report = minimal_density_critical(g0, limits)
    else:
        report = peeled_candidates(g0, build.peel_rounds, build.seed)

    distinct = []
    for i, cand in enumerate(report.candidates):
        cg = girth(cand.graph)
        for j, (x, ell) in enumerate(zip(excluded, lengths)):
            by_girth = cg is not ACYCLIC and cg >= target > ell
            by_search = subgraph_embedding(x, cand.graph) is None
            if not (by_girth and by_search):
                raise AssertionError(f"candidate {i} fails distinctness against excluded graph {j}")
            distinct.append(
                {"candidate": i, "excluded": j, "girth_argument": by_girth, "embedding_absent": by_search}
            )
    return PipelineReport(
        list(zip(excluded, lengths)), target, g0, log, checks, verdict, report, distinct
    )
