"""Exact small Ramsey numbers r(G, H) by branch and bound over edge colourings.

Colour 1 is red (forbidden pattern G), colour 0 is blue (forbidden pattern H).
The search fixes the colours of the edges at vertex 0 to a non-increasing
pattern (red neighbours 1..d, blue neighbours d+1..N-1); every colouring is
isomorphic to one of these, and each value of d is an independent subtree.
Subtrees are searched in order d = 0, 1, ...; the reported witness and node
count come from the first subtree (in that order) holding a colouring, so the
result does not depend on how many workers run the subtrees.
"""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from . import _kernels
from .certify import chvatal_tree_ramsey, forest_linear_bound, sidorenko_bound
from .graphcore import (
    CanonicalCode,
    Graph,
    canonical_code,
    enumerate_copies,
    from_edge_list,
    graph6_decode,
    graph6_encode,
    subgraph_embedding,
)

log = logging.getLogger(__name__)

HARD_MAX_ORDER = 13
RED, BLUE = 1, 0
_CHUNK = 1 << 16


class RamseyError(ValueError):
    pass


class BoundViolation(AssertionError):
    """A computed value contradicts an analytic bound; indicates a bug."""


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None
    max_order: int = HARD_MAX_ORDER
    threads: int = 1

    def to_json(self) -> dict:
        return {
            "max_nodes": self.max_nodes,
            "max_seconds": self.max_seconds,
            "max_order": self.max_order,
        }


@dataclass(frozen=True)
class Coloring:
    """Red/blue colouring of K_n given by its red edges (the rest are blue)."""

    n: int
    red_edges: tuple[tuple[int, int], ...]

    def red_graph(self) -> Graph:
        return from_edge_list(self.n, self.red_edges)

    def blue_graph(self) -> Graph:
        return self.red_graph().complement()

    def swapped(self) -> "Coloring":
        blue = self.blue_graph().edges()
        return Coloring(self.n, tuple(blue))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "red_edges": [list(e) for e in self.red_edges],
            "red_graph6": graph6_encode(self.red_graph()),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Coloring":
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in doc["red_edges"]))
        return cls(int(doc["n"]), edges)


def validate_witness(g: Graph, h: Graph, coloring: Coloring) -> bool:
    """True iff the colouring has no red copy of g and no blue copy of h.

    Uses direct subgraph search in each colour class, independent of the copy
    tables driving the search.
    """
    red = coloring.red_graph()
    return subgraph_embedding(g, red) is None and subgraph_embedding(h, coloring.blue_graph()) is None


@dataclass
class ArrowDecision:
    """Outcome of one arrow query: ``arrows`` is None when the budget ran out."""

    n: int
    arrows: bool | None
    witness: Coloring | None
    nodes: int
    seconds: float


@dataclass
class RamseyResult:
    g: Graph
    h: Graph
    pair_key: tuple[CanonicalCode, CanonicalCode]
    lo: int
    hi: int
    value: int | None
    witness: Coloring | None
    nodes: int
    seconds: float
    budget: Budget
    bound_sources: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        doc = {"g": graph6_encode(self.g), "h": graph6_encode(self.h)}
        if self.value is not None:
            doc["value"] = self.value
        else:
            doc["lo"] = self.lo
            doc["hi"] = self.hi
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
        doc["bounds"] = {"lo": self.lo, "hi": self.hi, "sources": self.bound_sources}
        doc["stats"] = {"nodes": self.nodes}
        doc["budget"] = self.budget.to_json()
        doc["timing"] = {"seconds": round(self.seconds, 6)}
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "RamseyResult":
        g = graph6_decode(doc["g"])
        h = graph6_decode(doc["h"])
        witness = Coloring.from_json(doc["witness"]) if "witness" in doc else None
        b = doc.get("budget", {})
        return cls(
            g=g,
            h=h,
            pair_key=(canonical_code(g), canonical_code(h)),
            lo=doc["bounds"]["lo"],
            hi=doc["bounds"]["hi"],
            value=doc.get("value"),
            witness=witness,
            nodes=doc["stats"]["nodes"],
            seconds=doc.get("timing", {}).get("seconds", 0.0),
            budget=Budget(b.get("max_nodes"), b.get("max_seconds"), b.get("max_order", HARD_MAX_ORDER)),
            bound_sources=doc["bounds"].get("sources", {}),
        )


def _check_pattern(p: Graph, name: str) -> None:
    if p.n_edges == 0:
        raise RamseyError(f"{name} has no edges")
    if p.isolated_vertices():
        raise RamseyError(f"{name} has isolated vertices")


def host_edge_order(n: int) -> list[tuple[int, int]]:
    """Search order of K_n's edges: the star at vertex 0, then by larger endpoint."""
    star = [(0, j) for j in range(1, n)]
    rest = sorted(((i, j) for i, j in combinations(range(1, n), 2)), key=lambda e: (e[1], e[0]))
    return star + rest


class _Problem:
    """Copy tables for 'does K_n arrow (g, h)'."""

    def __init__(self, g: Graph, h: Graph, n: int):
        self.n = n
        self.order = host_edge_order(n)
        index = {e: i for i, e in enumerate(self.order)}
        ptr = [0]
        flat: list[int] = []
        colors: list[int] = []
        for pattern, col in ((g, RED), (h, BLUE)):
            for copy in enumerate_copies(pattern, n):
                flat.extend(index[e] for e in copy)
                ptr.append(len(flat))
                colors.append(col)
        n_edges = len(self.order)
        self.cp_ptr = np.asarray(ptr, dtype=np.int64)
        self.cp_edges = np.asarray(flat, dtype=np.int64)
        self.cp_color = np.asarray(colors, dtype=np.int64)
        n_copies = len(colors)
        counts = np.zeros(n_edges + 1, dtype=np.int64)
        for e in flat:
            counts[e + 1] += 1
        self.ec_ptr = np.cumsum(counts)
        fill = self.ec_ptr[:-1].copy()
        ec_idx = np.zeros(len(flat), dtype=np.int64)
        for k in range(n_copies):
            for q in range(ptr[k], ptr[k + 1]):
                e = flat[q]
                ec_idx[fill[e]] = k
                fill[e] += 1
        self.ec_idx = ec_idx
        self.n_copies = n_copies
        # single-edge patterns forbid their colour on every edge outright
        forced = {}
        for k in range(n_copies):
            if ptr[k + 1] - ptr[k] == 1:
                e = flat[ptr[k]]
                c = 1 - colors[k]
                if forced.get(e, c) != c:
                    forced[e] = -1
                else:
                    forced[e] = c
        self.forced = forced

    def subtrees(self) -> list[int]:
        return list(range(self.n)) if self.n >= 2 else [0]


class _Subtree:
    """Resumable search state for one star pattern."""

    def __init__(self, prob: _Problem, d: int, kern):
        self.prob = prob
        self.kern = kern
        n_edges = len(prob.order)
        self.color = -np.ones(n_edges, dtype=np.int64)
        self.same = np.zeros(prob.n_copies, dtype=np.int64)
        self.other = np.zeros(prob.n_copies, dtype=np.int64)
        self.trail = np.zeros(n_edges + 1, dtype=np.int64)
        self.ctrl = np.zeros(4, dtype=np.int64)
        self.dec_edge = np.zeros(n_edges + 1, dtype=np.int64)
        self.dec_mark = np.zeros(n_edges + 1, dtype=np.int64)
        self.dec_tried = np.zeros(n_edges + 1, dtype=np.int64)
        size = prob.n_copies + n_edges + 2
        self.queue_e = np.zeros(size, dtype=np.int64)
        self.queue_c = np.zeros(size, dtype=np.int64)
        self.status: int | None = None

        root_e: list[int] = []
        root_c: list[int] = []
        if any(c == -1 for c in prob.forced.values()):
            self.status = _kernels.EXHAUSTED
            return
        for e, c in sorted(prob.forced.items()):
            root_e.append(e)
            root_c.append(c)
        if prob.n >= 2:
            for j in range(1, prob.n):
                root_e.append(j - 1)  # star edges come first in the order
                root_c.append(RED if j <= d else BLUE)
        ok = kern.assign_root(
            np.asarray(root_e, dtype=np.int64),
            np.asarray(root_c, dtype=np.int64),
            prob.cp_ptr, prob.cp_edges, prob.cp_color, prob.ec_ptr, prob.ec_idx,
            self.color, self.same, self.other, self.trail, self.ctrl,
            self.queue_e, self.queue_c,
        )
        if not ok:
            self.status = _kernels.EXHAUSTED

    @property
    def nodes(self) -> int:
        return int(self.ctrl[2])

    def step(self, node_quota: int) -> int:
        if self.status in (_kernels.EXHAUSTED, _kernels.FOUND):
            return self.status
        p = self.prob
        self.status = int(
            self.kern.arrow_search(
                p.cp_ptr, p.cp_edges, p.cp_color, p.ec_ptr, p.ec_idx,
                self.color, self.same, self.other, self.trail, self.ctrl,
                self.dec_edge, self.dec_mark, self.dec_tried, self.queue_e, self.queue_c,
                BLUE, self.nodes + node_quota,
            )
        )
        return self.status

    def coloring(self) -> Coloring:
        red = tuple(sorted(e for e, c in zip(self.prob.order, self.color) if c == RED))
        return Coloring(self.prob.n, red)


def arrows(
    g: Graph,
    h: Graph,
    n: int,
    budget: Budget | None = None,
    backend: str | None = None,
) -> ArrowDecision:
    """Decide whether every red/blue colouring of K_n has a red g or a blue h."""
    budget = budget or Budget()
    _check_pattern(g, "G")
    _check_pattern(h, "H")
    if n < 1:
        raise RamseyError("host order must be at least 1")
    if n > min(budget.max_order, HARD_MAX_ORDER):
        raise RamseyError(f"host order {n} above cap {min(budget.max_order, HARD_MAX_ORDER)}")
    kern = _kernels.kernels_for(backend or _kernels.default_backend())
    start = time.perf_counter()
    deadline = None if budget.max_seconds is None else start + budget.max_seconds
    prob = _Problem(g, h, n)
    roots = prob.subtrees()

    winner = [len(roots)]  # smallest subtree index holding a colouring
    lock = threading.Lock()
    spent = [0]
    found: dict[int, Coloring] = {}
    results: list[tuple[int, int] | None] = [None] * len(roots)

    def run(i: int) -> tuple[int, int]:
        sub = _Subtree(prob, roots[i], kern)
        while True:
            if i > winner[0]:
                return _kernels.PAUSED, sub.nodes
            before = sub.nodes
            chunk = _CHUNK
            if budget.max_nodes is not None:
                with lock:
                    chunk = max(1, min(chunk, budget.max_nodes - spent[0]))
            status = sub.step(chunk)
            with lock:
                spent[0] += sub.nodes - before
                over_nodes = budget.max_nodes is not None and spent[0] >= budget.max_nodes
                if status == _kernels.FOUND:
                    found[i] = sub.coloring()
                    winner[0] = min(winner[0], i)
            if status != _kernels.PAUSED:
                return status, sub.nodes
            if over_nodes or (deadline is not None and time.perf_counter() > deadline):
                return _kernels.PAUSED, sub.nodes

    if budget.threads <= 1:
        for i in range(len(roots)):
            results[i] = run(i)
            if results[i][0] != _kernels.EXHAUSTED:
                break
    else:
        with ThreadPoolExecutor(max_workers=budget.threads) as pool:
            futures = [pool.submit(run, i) for i in range(len(roots))]
            for i, fut in enumerate(futures):
                results[i] = fut.result()

    nodes = 0
    for i in range(len(roots)):
        res = results[i]
        if res is None:
            break
        status, sub_nodes = res
        nodes += sub_nodes
        if status == _kernels.FOUND:
            witness = found[i]
            return ArrowDecision(n, False, witness, nodes, time.perf_counter() - start)
        if status == _kernels.PAUSED:
            return ArrowDecision(n, None, None, nodes, time.perf_counter() - start)
    return ArrowDecision(n, True, None, nodes, time.perf_counter() - start)


# ----------------------------------------------------------------------
# analytic bounds
# ----------------------------------------------------------------------


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking (small graphs only)."""
    n = g.order
    if n == 0:
        return 0
    order = sorted(range(n), key=lambda v: -g.degree(v))
    for k in range(1, n + 1):
        colors = [-1] * n

        def place(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            for c in range(min(k, used + 1)):
                if all(colors[w] != c for w in g.neighbors(v)):
                    colors[v] = c
                    if place(i + 1, max(used, c + 1)):
                        return True
                    colors[v] = -1
            return False

        if place(0, 0):
            return k
    return n  # pragma: no cover


def _largest_component(g: Graph) -> int:
    return max((len(c) for c in g.components()), default=0)


def _is_complete(g: Graph) -> bool:
    return g.n_edges == g.order * (g.order - 1) // 2


def _is_triangle(g: Graph) -> bool:
    return g.order == 3 and g.n_edges == 3


def _is_tree(g: Graph) -> bool:
    return g.is_forest() and g.is_connected()


def ramsey_bounds(g: Graph, h: Graph) -> tuple[int, int, dict]:
    """Analytic bracket ``lo <= r(g, h) <= hi`` plus the name of each bound used."""
    _check_pattern(g, "G")
    _check_pattern(h, "H")
    lo_candidates = {
        "order": max(g.order, h.order),
        "chromatic-component": max(
            (chromatic_number(g) - 1) * (_largest_component(h) - 1) + 1,
            (chromatic_number(h) - 1) * (_largest_component(g) - 1) + 1,
        ),
    }
    hi_candidates = {"clique-binomial": comb(g.order + h.order - 2, g.order - 1)}
    if g.n_edges == 1:
        hi_candidates["single-edge"] = h.order
    if h.n_edges == 1:
        hi_candidates["single-edge"] = g.order
    if _is_tree(g) and _is_complete(h):
        hi_candidates["chvatal"] = chvatal_tree_ramsey(g.order, h.order)
    if _is_tree(h) and _is_complete(g):
        hi_candidates["chvatal"] = chvatal_tree_ramsey(h.order, g.order)
    if _is_triangle(g):
        hi_candidates["sidorenko"] = sidorenko_bound(h)
    if _is_triangle(h):
        hi_candidates["sidorenko"] = min(hi_candidates.get("sidorenko", 10**9), sidorenko_bound(g))
    if g.is_forest():
        hi_candidates["forest"] = forest_linear_bound(g, h)
    if h.is_forest():
        hi_candidates["forest"] = min(hi_candidates.get("forest", 10**9), forest_linear_bound(h, g))
    lo_name = max(lo_candidates, key=lambda k: (lo_candidates[k], k))
    hi_name = min(hi_candidates, key=lambda k: (hi_candidates[k], k))
    lo, hi = lo_candidates[lo_name], hi_candidates[hi_name]
    if lo > hi:
        raise BoundViolation(f"lower bound {lo} ({lo_name}) exceeds upper bound {hi} ({hi_name})")
    return lo, hi, {"lo": lo_name, "hi": hi_name}


# ----------------------------------------------------------------------
# exact values
# ----------------------------------------------------------------------

_CACHE: dict[tuple[CanonicalCode, CanonicalCode], RamseyResult] = {}
_CACHE_LOCK = threading.Lock()


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def ramsey_exact(
    g: Graph,
    h: Graph,
    budget: Budget | None = None,
    backend: str | None = None,
    use_cache: bool = True,
) -> RamseyResult:
    """Least N such that K_N arrows (g, h), with a validated witness at N - 1.

    The search walks upward from one below the analytic lower bound. If the
    budget runs out the result carries only the bracket established so far.
    """
    budget = budget or Budget()
    key = (canonical_code(g), canonical_code(h))
    if use_cache:
        with _CACHE_LOCK:
            hit = _CACHE.get(key)
        # isomorphic patterns have the same copies in K_n, so the witness transfers as is
        if hit is not None and hit.witness is not None and validate_witness(g, h, hit.witness):
            return RamseyResult(
                g, h, key, hit.lo, hit.hi, hit.value, hit.witness, hit.nodes, 0.0,
                budget, dict(hit.bound_sources),
            )

    start = time.perf_counter()
    lo, hi, sources = ramsey_bounds(g, h)
    cap = min(budget.max_order, HARD_MAX_ORDER)
    nodes = 0
    witness: Coloring | None = None
    known_lo = lo
    n = max(lo - 1, 1)
    value = None
    while n <= min(hi, cap):
        remaining = None
        if budget.max_seconds is not None:
            remaining = budget.max_seconds - (time.perf_counter() - start)
            if remaining <= 0:
                break
        sub_budget = Budget(
            None if budget.max_nodes is None else max(budget.max_nodes - nodes, 1),
            remaining,
            budget.max_order,
            budget.threads,
        )
        dec = arrows(g, h, n, sub_budget, backend)
        nodes += dec.nodes
        log.debug("r(G,H): N=%d arrows=%s nodes=%d", n, dec.arrows, dec.nodes)
        if dec.arrows is None:
            break
        if dec.arrows:
            if n < lo:
                raise BoundViolation(f"K_{n} arrows although the lower bound is {lo}")
            if witness is None or witness.n != n - 1:
                raise BoundViolation("missing witness below the arrow threshold")
            value = n
            hi = n
            break
        if not validate_witness(g, h, dec.witness):
            raise AssertionError("search produced an invalid witness colouring")
        witness = dec.witness
        known_lo = max(known_lo, n + 1)
        if n == hi:
            raise BoundViolation(f"witness on K_{n} contradicts the upper bound {hi} ({sources['hi']})")
        n += 1

    result = RamseyResult(
        g, h, key, known_lo if value is None else value, hi, value, witness, nodes,
        time.perf_counter() - start, budget, sources,
    )
    if value is not None and use_cache:
        with _CACHE_LOCK:
            _CACHE[key] = result
    return result


def evidence_curve(
    g: Graph,
    family: str,
    ks: Iterable[int],
    budget: Budget | None = None,
    backend: str | None = None,
) -> list[dict]:
    """Rows ``(k, H_k, e(H_k), r or bounds, r/e)`` probing the size-linear ratio."""
    from .construct import named_graph

    makers = {"matchings": "matching", "paths": "path", "stars": "star"}
    if family not in makers:
        raise RamseyError(f"unknown family {family!r}; choose from {sorted(makers)}")
    rows = []
    for k in ks:
        hk = named_graph(makers[family], k)
        res = ramsey_exact(g, hk, budget, backend)
        e = hk.n_edges
        row = {
            "k": k,
            "h": graph6_encode(hk),
            "edges": e,
        }
        if res.exact:
            row["value"] = res.value
            row["ratio"] = _frac(Fraction(res.value, e))
        else:
            row["lo"] = res.lo
            row["hi"] = res.hi
            row["ratio_interval"] = [_frac(Fraction(res.lo, e)), _frac(Fraction(res.hi, e))]
            row["budget_exhausted"] = True
        rows.append(row)
    return rows


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
