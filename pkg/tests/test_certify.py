import json
import random
from fractions import Fraction

import pytest
from oracles import brute_max_slack, graphs_with_edges, nx_contains

from sizelinear.certify import (
    CertifyError,
    DensityCertificate,
    KnowledgeBase,
    KnowledgeBaseConflict,
    Status,
    chvatal_tree_ramsey,
    classify,
    density_certificate,
    forest_linear_bound,
    forest_linear_coefficient,
    is_dependent,
    lll_exponent,
    max_density_slack,
    proper_subgraphs_of_k4,
    sidorenko_bound,
)
from sizelinear.graphcore import Graph, canonical_code, from_edge_list


def random_corpus(count=500, max_order=8, seed=20240917):
    rnd = random.Random(seed)
    out = []
    for _ in range(count):
        n = rnd.randint(1, max_order)
        p = rnd.choice([0.2, 0.35, 0.5, 0.65, 0.8])
        out.append(from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p]))
    return out


@pytest.mark.parametrize("v,n,expected", [(3, 3, 5), (4, 3, 7), (1, 5, 1)])
def test_chvatal(v, n, expected):
    assert chvatal_tree_ramsey(v, n) == expected


def test_sidorenko(G):
    assert sidorenko_bound(G("M2")) == 5
    assert sidorenko_bound(G("P4")) == 7
    assert sidorenko_bound(G("K2")) == 3
    with pytest.raises(CertifyError):
        sidorenko_bound(Graph.empty(2))


def test_forest_bound(G):
    assert forest_linear_bound(G("P3"), G("K3")) == 11
    assert forest_linear_bound(G("K2"), G("K2")) == 2
    assert forest_linear_bound(G("P4"), G("M2")) == 10
    assert forest_linear_bound(G("M2"), G("K3")) == 3 * 5 + 1
    with pytest.raises(CertifyError):
        forest_linear_bound(G("C5"), G("K2"))


def test_forest_coefficient_dominates_bound(G):
    for t in ("P2", "P3", "P5", "S4", "M3"):
        tree = G(t)
        c = forest_linear_coefficient(tree)
        for m in range(1, 12):
            assert (tree.order - 1) * (2 * m - 1) + 1 <= c * m


def test_lll_exponent(G):
    assert lll_exponent(G("K4")) == Fraction(5, 2)
    assert lll_exponent(G("K3_4")) == Fraction(11, 5)
    assert lll_exponent(G("C5")) == Fraction(4, 3)
    with pytest.raises(CertifyError):
        lll_exponent(G("K2"))


def test_exponent_threshold_equivalence(small_graphs):
    for g in small_graphs:
        if g.order >= 3:
            assert (lll_exponent(g) > 2) == (g.n_edges >= 2 * g.order - 2)


def test_density_examples(G):
    cert = density_certificate(G("K4"))
    assert cert.slack == 0 and cert.witness.order == 4 and cert.check(G("K4"))
    assert density_certificate(G("P5")) is None
    assert density_certificate(G("K2_2_2")).slack >= 2


def test_certificate_rejects_forgery(G):
    cert = density_certificate(G("K5"))
    assert cert.check(G("K5"))
    assert not cert.check(G("K4_4"))
    bad = DensityCertificate(cert.witness, cert.embedding, cert.slack + 1, cert.lll_exponent)
    assert not bad.check(G("K5"))
    assert DensityCertificate.from_json(json.loads(json.dumps(cert.to_json()))) == cert


def test_density_matches_brute_force_on_catalog(small_graphs):
    for g in small_graphs:
        found = max_density_slack(g)
        expected = brute_max_slack(g)
        assert (found is None) == (expected is None), g
        if found is not None:
            assert found[0] == expected
            cert = density_certificate(g)
            assert cert.check(g) and cert.slack == expected
        assert is_dependent(g) == (expected is not None)


def test_density_matches_brute_force_on_random_corpus():
    for g in random_corpus():
        found = max_density_slack(g)
        expected = brute_max_slack(g)
        assert (found is None) == (expected is None)
        if found is not None:
            assert found[0] == expected


@pytest.mark.parametrize("seed", range(4))
def test_flow_and_exhaustive_agree(seed):
    for g in random_corpus(60, 14, seed):
        a = max_density_slack(g, "exhaustive")
        b = max_density_slack(g, "flow")
        assert (a is None) == (b is None)
        if a is not None:
            assert a[0] == b[0]


def test_kb_defaults(G):
    kb = KnowledgeBase.default()
    assert len(kb.nonlinear) == 1
    assert canonical_code(G("K4")) in kb.nonlinear
    assert {canonical_code(s) for s in proper_subgraphs_of_k4()} | {canonical_code(G("K3"))} == set(kb.linear)
    for sub in proper_subgraphs_of_k4():
        assert classify(sub, kb).status is Status.LINEAR


def test_kb_conflict(G):
    kb = KnowledgeBase.default()
    with pytest.raises(KnowledgeBaseConflict):
        kb.add(G("K4"), "linear", "bogus")


def test_kb_facts_file(tmp_path, G):
    kb = KnowledgeBase.default()
    path = tmp_path / "facts.json"
    path.write_text(json.dumps([{"graph6": "Dhc", "status": "linear", "citation": "external"}]))
    kb.load_facts(path)
    assert classify(G("C5"), kb).status is Status.LINEAR
    assert classify(G("C5")).status is Status.UNKNOWN


@pytest.mark.parametrize(
    "name,status,rule",
    [
        ("K4", Status.NONLINEAR, "density"),
        ("P5", Status.LINEAR, "forest"),
        ("C5", Status.UNKNOWN, None),
        ("K5", Status.NONLINEAR, "density"),
        ("K3", Status.LINEAR, "known-linear-supergraph"),
    ],
)
def test_classify_examples(G, name, status, rule):
    v = classify(G(name))
    assert v.status is status
    if rule:
        assert rule in v.rules
    if status is Status.NONLINEAR:
        assert v.density is not None and v.density.check(G(name))


def test_forest_verdict_has_coefficient(G):
    v = classify(G("P5"))
    assert v.linear_coefficient == 2 * (5 - 1) + 1
    assert "linear_coefficient" in v.to_json()


def test_consistency_over_catalog(small_graphs, G):
    k4 = G("K4")
    for g in small_graphs:
        v = classify(g)  # raises on conflicting justifications
        if g.is_forest():
            assert v.status is Status.LINEAR
        if nx_contains(g, k4):
            assert v.status is Status.NONLINEAR
        if v.status is Status.NONLINEAR:
            assert v.density is not None or "known-nonlinear-subgraph" in v.rules


def test_verdicts_are_upward_monotone(small_graphs):
    upto6 = [g for g in small_graphs if g.order <= 6]
    nonlinear = [g for g in upto6 if classify(g).status is Status.NONLINEAR]
    for g in upto6:
        if any(nx_contains(g, x) for x in nonlinear if x.order <= g.order):
            assert classify(g).status is Status.NONLINEAR


def test_sparse_graphs_with_few_edges_are_never_dense():
    for m in range(1, 5):
        for h in graphs_with_edges(m):
            assert density_certificate(h) is None
