"""Subgraph (monomorphism) search and enumeration of pattern copies in K_n."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graph import Graph, _bits


def _match_order(pattern: Graph) -> list[int]:
    """Pattern vertices ordered so each one is adjacent to as many earlier ones as possible."""
    n = pattern.order
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        # most already-placed neighbours, then highest degree, then lowest label
        v = max(
            remaining,
            key=lambda x: ((pattern.adj[x] & placed).bit_count(), pattern.degree(x), -x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _twins(pattern: Graph) -> list[list[int]]:
    """For each vertex, the vertices with the same neighbourhood apart from each other.

    Swapping two such twins is an automorphism, and twin classes are disjoint,
    so every copy has an embedding that is increasing on each class.
    """
    n = pattern.order
    adj = pattern.adj
    return [
        [u for u in range(n) if u != v and adj[u] & ~(1 << v) == adj[v] & ~(1 << u)]
        for v in range(n)
    ]


def _embeddings(pattern: Graph, host: Graph, break_twins: bool = False) -> Iterator[list[int]]:
    """Yield every injective edge-preserving map (as a list pattern -> host).

    With ``break_twins`` only maps increasing on each twin class are produced,
    which still reaches every copy (edge set) of the pattern.
    """
    n = pattern.order
    if n > host.order or pattern.n_edges > host.n_edges:
        return
    order = _match_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    # for each pattern vertex: earlier-matched neighbours
    back = [[w for w in _bits(pattern.adj[v]) if pos[w] < pos[v]] for v in order]
    pdeg = [pattern.degree(v) for v in order]
    hdeg = host.degrees()
    full = (1 << host.order) - 1
    image = [-1] * n
    twins = _twins(pattern) if break_twins else [[] for _ in range(n)]
    # twins of order[k] matched before it, split by label
    below = [[t for t in twins[v] if pos[t] < pos[v] and t < v] for v in order]
    above = [[t for t in twins[v] if pos[t] < pos[v] and t > v] for v in order]

    def extend(k: int, used: int) -> Iterator[list[int]]:
        if k == n:
            yield list(image)
            return
        cand = full & ~used
        for w in back[k]:
            cand &= host.adj[image[w]]
        for t in below[k]:
            cand &= ~((2 << image[t]) - 1)
        for t in above[k]:
            cand &= (1 << image[t]) - 1
        for h in _bits(cand):
            if hdeg[h] < pdeg[k]:
                continue
            image[order[k]] = h
            yield from extend(k + 1, used | 1 << h)
        image[order[k]] = -1

    yield from extend(0, 0)


def subgraph_embedding(pattern: Graph, host: Graph) -> list[int] | None:
    """An injective map carrying every pattern edge to a host edge, or ``None``."""
    return next(_embeddings(pattern, host), None)


def is_subgraph(pattern: Graph, host: Graph) -> bool:
    return subgraph_embedding(pattern, host) is not None


def edge_index(n: int) -> dict[tuple[int, int], int]:
    """Index of each edge ``(u, v)``, ``u < v``, of ``K_n`` in lexicographic order."""
    return {e: i for i, e in enumerate(combinations(range(n), 2))}


def enumerate_copies(pattern: Graph, host_order: int) -> list[tuple[tuple[int, int], ...]]:
    """Distinct copies of ``pattern`` in ``K_host_order`` as sorted edge tuples."""
    return [tuple(c) for c in _copies_cached(pattern, host_order)]


@lru_cache(maxsize=256)
def _copies_cached(pattern: Graph, host_order: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if pattern.order > host_order:
        return ()
    edges = pattern.edges()
    seen: set[frozenset] = set()
    out = []
    complete = Graph(host_order, tuple(((1 << host_order) - 1) & ~(1 << v) for v in range(host_order)))
    for image in _embeddings(pattern, complete, break_twins=True):
        copy = frozenset((min(image[u], image[v]), max(image[u], image[v])) for u, v in edges)
        if copy not in seen:
            seen.add(copy)
            out.append(tuple(sorted(copy)))
    out.sort()
    return tuple(out)
