"""Brute-force reference implementations, independent of the package code paths.

Only ``Graph`` construction is shared; everything else goes through networkx
or plain enumeration.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from sizelinear.graphcore import Graph, from_edge_list


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return from_edge_list(len(index), [(index[u], index[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def atlas(max_order: int = 7) -> tuple[Graph, ...]:
    """All graphs on 1..max_order vertices up to isomorphism (networkx atlas, max 7)."""
    return tuple(from_nx(h) for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= max_order)


def nx_isomorphic(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


def nx_contains(host: Graph, pattern: Graph) -> bool:
    """Is ``pattern`` a (not necessarily induced) subgraph of ``host``?"""
    if pattern.order > host.order or pattern.n_edges > host.n_edges:
        return False
    hd = sorted(host.degrees(), reverse=True)
    pd = sorted(pattern.degrees(), reverse=True)
    if any(p > h for p, h in zip(pd, hd)):
        return False  # an injection cannot raise degrees
    return GraphMatcher(to_nx(host), to_nx(pattern)).subgraph_is_monomorphic()


def brute_max_slack(g: Graph) -> int | None:
    """max over vertex sets S with |S| >= 3 of e(S) - 2|S| + 2, when >= 0."""
    best = None
    for k in range(3, g.order + 1):
        for s in combinations(range(g.order), k):
            e = sum(1 for u, v in combinations(s, 2) if g.has_edge(u, v))
            slack = e - 2 * k + 2
            if slack >= 0 and (best is None or slack > best):
                best = slack
    return best


def brute_is_minimal_critical(g: Graph) -> bool:
    """Critical, and no graph obtained by deleting one edge or one vertex has a critical subgraph."""
    if g.order < 3 or g.n_edges < 2 * g.order - 2:
        return False
    for u, v in g.edges():
        if brute_max_slack(g.remove_edge(u, v)) is not None:
            return False
    for v in range(g.order):
        rest = g.induced_subgraph([w for w in range(g.order) if w != v])
        if brute_max_slack(rest) is not None:
            return False
    return True


@lru_cache(maxsize=None)
def minimal_critical_atlas(max_order: int = 7) -> tuple[Graph, ...]:
    return tuple(g for g in atlas(max_order) if brute_is_minimal_critical(g))


@lru_cache(maxsize=None)
def brute_candidates(g: Graph) -> tuple[Graph, ...]:
    if brute_max_slack(g) is None:
        return ()  # nothing dense inside, so no candidate can embed
    # candidates have minimum degree 3, so they sit inside the 3-core
    core = from_nx(nx.k_core(to_nx(g), 3))
    return tuple(x for x in minimal_critical_atlas(7) if nx_contains(core, x))


def is_nx_tree(g: Graph) -> bool:
    return g.order >= 1 and nx.is_tree(to_nx(g))


def graphs_with_edges(m: int) -> list[Graph]:
    """All graphs with exactly m edges and no isolated vertices, up to isomorphism.

    Grown one edge at a time: join two existing vertices, hang a new vertex,
    or add a disjoint edge.
    """
    level = [nx.Graph()]
    for _ in range(m):
        buckets: dict[tuple, list[nx.Graph]] = {}
        for h in level:
            n = h.number_of_nodes()
            options = [(u, v) for u, v in combinations(range(n), 2) if not h.has_edge(u, v)]
            options += [(u, n) for u in range(n)] + [(n, n + 1)]
            for u, v in options:
                x = h.copy()
                x.add_edge(u, v)
                key = tuple(sorted(d for _, d in x.degree()))
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(x, f) for f in bucket):
                    bucket.append(x)
        level = [x for b in buckets.values() for x in b]
    return [from_nx(h) for h in level]


def brute_arrows(g: Graph, h: Graph, n: int) -> bool:
    """Every red/blue colouring of K_n has a red g or a blue h (tiny n only)."""
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}

    def copies(p: Graph) -> set[int]:
        out = set()
        for img in permutations(range(n), p.order):
            mask = 0
            for u, v in p.edges():
                a, b = sorted((img[u], img[v]))
                mask |= 1 << index[(a, b)]
            out.add(mask)
        return out

    red_copies, blue_copies = copies(g), copies(h)
    full = (1 << len(pairs)) - 1
    for red in range(1 << len(pairs)):
        blue = full ^ red
        if not any(c & red == c for c in red_copies) and not any(c & blue == c for c in blue_copies):
            return False
    return True


def brute_ramsey(g: Graph, h: Graph, max_n: int = 6) -> int | None:
    for n in range(1, max_n + 1):
        if brute_arrows(g, h, n):
            return n
    return None
