"""Graph representation, structural queries, canonical codes and graph6 I/O."""

from .canon import CanonicalCode, canonical_code, canonical_form
from .embed import edge_index, enumerate_copies, is_subgraph, subgraph_embedding
from .graph import (
    ACYCLIC,
    UNREACHABLE,
    Acyclic,
    Graph,
    GraphError,
    Unreachable,
    average_degree,
    distance,
    from_edge_list,
    girth,
    girth_at_least,
)
from .graph6 import Graph6Error, graph6_decode, graph6_encode, read_graph6, write_graph6

__all__ = [
    "ACYCLIC",
    "UNREACHABLE",
    "Acyclic",
    "CanonicalCode",
    "Graph",
    "Graph6Error",
    "GraphError",
    "Unreachable",
    "average_degree",
    "canonical_code",
    "canonical_form",
    "distance",
    "edge_index",
    "enumerate_copies",
    "from_edge_list",
    "girth",
    "girth_at_least",
    "graph6_decode",
    "graph6_encode",
    "is_subgraph",
    "read_graph6",
    "subgraph_embedding",
    "write_graph6",
]
