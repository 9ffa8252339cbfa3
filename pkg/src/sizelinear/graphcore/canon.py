"""Canonical labeling by partition refinement plus backtracking.

The search individualizes a vertex of the first non-singleton cell, refines to
an equitable partition and recurses; each discrete partition yields a relabeled
graph and the lexicographically least graph6 bit string over all leaves is the
canonical form. Automorphisms discovered at equal leaves prune sibling branches
that lie in the same orbit of the pointwise stabilizer of the current prefix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError
from .graph6 import graph6_encode

DEFAULT_LIMIT = 32


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-class fingerprint: graph6 bytes of the canonical form."""

    code: bytes

    def graph(self) -> Graph:
        from .graph6 import graph6_decode

        return graph6_decode(self.code.decode("ascii"))

    def __str__(self) -> str:
        return self.code.decode("ascii")


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; cell order depends only on isomorphism-invariant data."""
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((g.adj[v] & m).bit_count() for m in masks) for v in cell}
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _leaf_value(g: Graph, order: list[int]) -> int:
    # vertex order[i] gets label i; bits in graph6 order, first bit most significant
    value = 0
    adj = g.adj
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            value = value << 1 | (row >> order[i] & 1)
    return value


def canonical_form(g: Graph, limit: int = DEFAULT_LIMIT) -> tuple[Graph, list[int]]:
    """Return ``(canonical graph, perm)`` with ``g.relabel(perm) == canonical graph``."""
    n = g.order
    if n > limit:
        raise GraphError(f"order {n} exceeds canonicalization limit {limit}")
    if n == 0:
        return g, []

    degree_classes: dict[int, list[int]] = {}
    for v in range(n):
        degree_classes.setdefault(g.degree(v), []).append(v)
    root = _refine(g, [degree_classes[d] for d in sorted(degree_classes)])

    best_value: int | None = None
    best_order: list[int] = []
    automorphisms: list[list[int]] = []

    def same_orbit(v: int, explored: list[int], prefix: list[int]) -> bool:
        gens = [a for a in automorphisms if all(a[p] == p for p in prefix)]
        if not gens:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for a in gens:
                y = a[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(w in orbit for w in explored)

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        nonlocal best_value, best_order
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            value = _leaf_value(g, order)
            if best_value is None or value < best_value:
                best_value, best_order = value, order
            elif value == best_value:
                # order -> best_order maps g onto itself
                aut = [0] * n
                for a, b in zip(order, best_order):
                    aut[a] = b
                automorphisms.append(aut)
            return
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if explored and same_orbit(v, explored, prefix):
                continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_refine(g, child), prefix + [v])

    search(root, [])
    perm = [0] * n
    for label, v in enumerate(best_order):
        perm[v] = label
    return g.relabel(perm), perm


def canonical_code(g: Graph, limit: int = DEFAULT_LIMIT) -> CanonicalCode:
    """Canonical code of ``g``: equal iff the graphs are isomorphic."""
    form, _ = canonical_form(g, limit)
    return CanonicalCode(graph6_encode(form).encode("ascii"))
