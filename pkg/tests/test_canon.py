import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher
from oracles import nx_contains, nx_isomorphic, to_nx

from sizelinear.graphcore import (
    GraphError,
    canonical_code,
    canonical_form,
    enumerate_copies,
    is_subgraph,
    subgraph_embedding,
)
from test_graphcore import graphs


def test_codes_separate_the_catalog(small_graphs):
    codes = {canonical_code(g) for g in small_graphs}
    assert len(codes) == len(small_graphs) == 1252


def test_canonical_form_is_isomorphic_and_fixed(small_graphs):
    for g in small_graphs[::7]:
        form, perm = canonical_form(g)
        assert sorted(perm) == list(range(g.order))
        assert g.relabel(perm) == form
        assert canonical_form(form)[0] == form


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=10), st.randoms(use_true_random=False))
def test_code_invariant_under_relabel(g, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    assert canonical_code(g.relabel(perm)) == canonical_code(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=7), graphs(max_order=7))
def test_code_equality_is_isomorphism(a, b):
    assert (canonical_code(a) == canonical_code(b)) == nx_isomorphic(a, b)


def test_symmetric_graphs_are_quick(G):
    for name in ("K4_4", "K2_2_2", "petersen", "K12", "C12"):
        g = G(name)
        assert canonical_code(g.relabel(list(reversed(range(g.order))))) == canonical_code(g)


def test_order_limit(G):
    with pytest.raises(GraphError):
        canonical_code(G("C40"), limit=32)


def test_code_roundtrip(G):
    code = canonical_code(G("W4"))
    assert nx_isomorphic(code.graph(), G("W4"))


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=5), graphs(max_order=8))
def test_embedding_agrees_with_networkx(pattern, host):
    emb = subgraph_embedding(pattern, host)
    assert (emb is not None) == nx_contains(host, pattern)
    if emb is not None:
        assert len(set(emb)) == pattern.order
        assert all(host.has_edge(emb[u], emb[v]) for u, v in pattern.edges())


def test_k4_not_in_k222(G):
    assert not is_subgraph(G("K4"), G("K2_2_2"))
    assert is_subgraph(G("W4"), G("K2_2_2"))


def _automorphisms(g):
    h = to_nx(g)
    return sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())


@pytest.mark.parametrize(
    "name,n",
    [("K3", 5), ("P4", 5), ("C4", 6), ("M2", 6), ("S3", 6), ("K4", 6), ("S6", 9), ("M3", 8), ("K2_3", 7), ("W4", 7), ("C5", 7)],
)
def test_copy_counts(G, name, n):
    p = G(name)
    expected = math.perm(n, p.order) // _automorphisms(p)
    copies = enumerate_copies(p, n)
    assert len(copies) == len(set(copies)) == expected
