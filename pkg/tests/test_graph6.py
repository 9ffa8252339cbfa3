import io

import networkx as nx
import pytest
from hypothesis import given, settings
from oracles import to_nx

from sizelinear.graphcore import (
    Graph,
    Graph6Error,
    graph6_decode,
    graph6_encode,
    read_graph6,
    write_graph6,
)
from test_graphcore import graphs


def test_known_strings(G):
    assert graph6_encode(G("K3")) == "Bw"
    assert graph6_encode(Graph.empty(1)) == "@"
    assert graph6_encode(G("K4")) == "C~"


def test_header_accepted(G):
    assert graph6_decode(">>graph6<<Bw") == G("K3")


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "~??~"])
def test_malformed(bad):
    with pytest.raises(Graph6Error):
        graph6_decode(bad)


def test_full_catalog_roundtrip(small_graphs):
    for g in small_graphs:
        assert graph6_decode(graph6_encode(g)) == g


@settings(max_examples=200, deadline=None)
@given(graphs(max_order=20))
def test_roundtrip_and_networkx_agreement(g):
    text = graph6_encode(g)
    assert graph6_decode(text) == g
    assert nx.to_graph6_bytes(to_nx(g), header=False).decode().strip() == text


def test_stream_roundtrip(small_graphs):
    buf = io.StringIO()
    write_graph6(small_graphs[:50], buf)
    buf.seek(0)
    assert list(read_graph6(buf)) == list(small_graphs[:50])
