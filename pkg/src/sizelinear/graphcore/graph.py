"""Immutable labeled simple graphs stored as per-vertex neighbor bitmasks."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, self-loops, ...)."""


class Acyclic(enum.Enum):
    """Girth marker for forests."""

    ACYCLIC = "acyclic"

    def __repr__(self) -> str:
        return "Acyclic"


class Unreachable(enum.Enum):
    """Distance marker for vertices in different components."""

    UNREACHABLE = "unreachable"

    def __repr__(self) -> str:
        return "Unreachable"


ACYCLIC = Acyclic.ACYCLIC
UNREACHABLE = Unreachable.UNREACHABLE


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..order-1``.

    ``adj[v]`` is an integer bitmask of the neighbours of ``v``. Instances are
    immutable; every operation that changes structure returns a new graph.
    """

    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0 or len(self.adj) != self.order:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.order) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if mask >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in _bits(mask):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return from_edge_list(order, edges)

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    # -- basic queries ----------------------------------------------------

    @cached_property
    def n_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @cached_property
    def _edge_list(self) -> tuple[tuple[int, int], ...]:
        out = []
        for u in range(self.order):
            for v in _bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return tuple(out)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return list(self._edge_list)

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.order) if not self.adj[v]]

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.order):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.order <= 1 or len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.n_edges == self.order - len(self.components())

    def k_core(self, k: int) -> list[int]:
        """Vertices of the ``k``-core (maximal subgraph of min degree >= k)."""
        alive = (1 << self.order) - 1
        changed = True
        while changed:
            changed = False
            for v in _bits(alive):
                if (self.adj[v] & alive).bit_count() < k:
                    alive &= ~(1 << v)
                    changed = True
        return list(_bits(alive))

    # -- derived graphs ---------------------------------------------------

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, re-indexed in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("repeated vertex in induced_subgraph")
        adj = []
        for v in vertices:
            mask = 0
            for w in _bits(self.adj[v]):
                i = index.get(w)
                if i is not None:
                    mask |= 1 << i
            adj.append(mask)
        return Graph(len(vertices), tuple(adj))

    def edge_subgraph(self, edges: Iterable[Sequence[int]]) -> tuple["Graph", list[int]]:
        """Subgraph formed by ``edges`` on the vertices they touch.

        Returns the re-indexed graph and the list mapping new -> old vertex.
        """
        edges = [tuple(e) for e in edges]
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"({u}, {v}) is not an edge")
        verts = sorted({x for e in edges for x in e})
        index = {v: i for i, v in enumerate(verts)}
        return from_edge_list(len(verts), [(index[u], index[v]) for u, v in edges]), verts

    def remove_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.order, tuple(adj))

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.order, tuple(adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.order)):
            raise GraphError("relabel needs a permutation of the vertices")
        adj = [0] * self.order
        for u, v in self._edge_list:
            a, b = perm[u], perm[v]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return Graph(self.order, tuple(adj))

    def complement(self) -> "Graph":
        full = (1 << self.order) - 1
        return Graph(self.order, tuple(full & ~m & ~(1 << v) for v, m in enumerate(self.adj)))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.order
        return Graph(self.order + other.order, self.adj + tuple(m << shift for m in other.adj))

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.order, self.order), dtype=np.uint8)
        for u, v in self._edge_list:
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges()})"


def from_edge_list(order: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    if order < 0:
        raise GraphError("order must be non-negative")
    adj = [0] * order
    for e in edges:
        u, v = e
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{order - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(order, tuple(adj))


def girth(g: Graph) -> int | Acyclic:
    """Length of a shortest cycle, or ``ACYCLIC`` for a forest."""
    best = None
    for root in range(g.order):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in _bits(g.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return ACYCLIC if best is None else best


def girth_at_least(g: Graph, target: int) -> bool:
    value = girth(g)
    return value is ACYCLIC or value >= target


def distance(g: Graph, u: int, v: int) -> int | Unreachable:
    """Hop distance from ``u`` to ``v`` (``UNREACHABLE`` across components)."""
    if not (0 <= u < g.order and 0 <= v < g.order):
        raise GraphError(f"vertex out of range: {u}, {v}")
    if u == v:
        return 0
    seen = 1 << u
    frontier = 1 << u
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for x in _bits(frontier):
            nxt |= g.adj[x]
        frontier = nxt & ~seen
        if frontier >> v & 1:
            return d
        seen |= frontier
    return UNREACHABLE


def average_degree(g: Graph) -> Fraction:
    """Exact average degree ``2e/v``."""
    if g.order == 0:
        raise GraphError("average degree of the empty graph is undefined")
    return Fraction(2 * g.n_edges, g.order)
