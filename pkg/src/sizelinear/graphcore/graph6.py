"""graph6 text encoding (small-order header form only, order <= 62)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph, GraphError

MAX_ORDER = 62


class Graph6Error(GraphError):
    pass


def _upper_triangle_bits(g: Graph) -> list[int]:
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    return [g.adj[i] >> j & 1 for j in range(1, g.order) for i in range(j)]


def graph6_encode(g: Graph) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    n = g.order
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds the small-order graph6 header")
    bits = _upper_triangle_bits(g)
    bits += [0] * (-len(bits) % 6)
    chars = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return "".join(chars)


def graph6_decode(line: str) -> Graph:
    """Decode one graph6 line; an optional ``>>graph6<<`` header is accepted."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise Graph6Error("empty graph6 line")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise Graph6Error(f"invalid graph6 character in {line!r}")
    n = codes[0]
    if n == 63:
        raise Graph6Error("large-order graph6 headers are not supported")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(codes) - 1 != nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for order {n}, got {len(codes) - 1}")
    bits = []
    for c in codes[1:]:
        bits.extend(c >> (5 - i) & 1 for i in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("non-zero padding bits")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def read_graph6(stream: TextIO) -> Iterator[Graph]:
    for line in stream:
        if line.strip():
            yield graph6_decode(line)


def write_graph6(graphs: Iterable[Graph], stream: TextIO) -> None:
    for g in graphs:
        stream.write(graph6_encode(g) + "\n")
