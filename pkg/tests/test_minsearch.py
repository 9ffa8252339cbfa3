import json
import time

import pytest
from oracles import brute_candidates, minimal_critical_atlas, nx_contains, nx_isomorphic

from sizelinear.certify import Status, density_certificate
from sizelinear.graphcore import ACYCLIC, canonical_code, girth, graph6_decode
from sizelinear.minsearch import (
    CAVEAT,
    MinSearchError,
    PipelineBuild,
    PipelineError,
    SearchLimits,
    is_density_critical,
    minimal_density_critical,
    peel_minimal,
    peeled_candidates,
    excluded_subgraph_pipeline,
)


def _check_candidate(c, source):
    g = c.graph
    assert g.n_edges == 2 * g.order - 2
    assert g.min_degree() >= 3
    assert g.is_connected()
    assert c.certificate.slack == 0 and c.certificate.check(source)
    assert c.certificate.lll_exponent > 2


def test_is_density_critical(G):
    assert is_density_critical(G("K4"))
    assert not is_density_critical(G("K3_3"))
    assert is_density_critical(G("W4"))
    assert not is_density_critical(G("K2"))


def test_oracle_minimal_graphs_have_the_derived_shape():
    graphs = minimal_critical_atlas(7)
    assert graphs
    for g in graphs:
        assert g.is_connected() and g.min_degree() >= 3 and g.n_edges == 2 * g.order - 2


def test_k4(G):
    report = minimal_density_critical(G("K4"))
    assert [str(c.code) for c in report.candidates] == [str(canonical_code(G("K4")))]
    assert report.complete


def test_k44_contains_k34(G):
    start = time.perf_counter()
    report = minimal_density_critical(G("K4_4"))
    assert time.perf_counter() - start < 60
    assert canonical_code(G("K3_4")) in {c.code for c in report.candidates}
    for c in report.candidates:
        _check_candidate(c, G("K4_4"))


def test_k222_contains_w4_but_not_k4(G):
    report = minimal_density_critical(G("K2_2_2"))
    codes = {c.code for c in report.candidates}
    assert canonical_code(G("W4")) in codes
    assert not any(nx_isomorphic(c.graph, G("K4")) for c in report.candidates)


@pytest.mark.parametrize("name", ["P6", "S5", "M3", "C6", "K3_3", "petersen"])
def test_sparse_inputs_give_nothing(G, name):
    assert minimal_density_critical(G(name)).candidates == []


def test_order_bound(G):
    with pytest.raises(MinSearchError):
        minimal_density_critical(G("K17"))
    assert minimal_density_critical(G("K5"), SearchLimits(max_order=5)).complete


def test_budget_flags_partial_results(G):
    report = minimal_density_critical(G("K8"), SearchLimits(max_states=3))
    assert not report.complete
    for c in report.candidates:
        _check_candidate(c, G("K8"))


def test_completeness_against_brute_force(small_graphs):
    for g in small_graphs:
        report = minimal_density_critical(g)
        got = sorted(c.code for c in report.candidates)
        expected = sorted({canonical_code(x) for x in brute_candidates(g)})
        assert got == expected, g
        assert (got == []) == (density_certificate(g) is None)
        for c in report.candidates:
            _check_candidate(c, g)
            assert nx_contains(g, c.graph)


def test_peel_yields_a_minimal_candidate(G):
    for name in ("K6", "K4_4", "K2_2_2", "K2_2_3"):
        g = G(name)
        sub = peel_minimal(g)
        assert sub.n_edges == 2 * sub.order - 2
        full = {c.code for c in minimal_density_critical(g).candidates}
        assert canonical_code(sub) in full
    assert peel_minimal(G("C7")) is None


def test_peeled_candidates_are_valid(G):
    report = peeled_candidates(G("K3_3_3"), rounds=5)
    assert report.candidates and not report.complete
    for c in report.candidates:
        _check_candidate(c, G("K3_3_3"))


def test_report_json(G):
    doc = json.loads(json.dumps(minimal_density_critical(G("K2_2_2")).to_json()))
    assert doc["caveat"] == CAVEAT
    assert graph6_decode(doc["source"]) == G("K2_2_2")
    assert [c["code"] for c in doc["candidates"]] == sorted(c["code"] for c in doc["candidates"])


@pytest.fixture(scope="module")
def k4_pipeline():
    from sizelinear.construct import parse_graph_name

    return excluded_subgraph_pipeline([parse_graph_name("K4")])


def test_pipeline_k4(k4_pipeline, G):
    rep = k4_pipeline
    assert rep.g == 4
    assert girth(rep.g0) >= 4
    assert rep.g0.n_edges >= 2 * rep.g0.order
    assert rep.verdict.status is Status.NONLINEAR
    assert rep.log.replay() == rep.g0
    assert rep.candidates.candidates
    assert len(rep.distinctness) == len(rep.candidates.candidates)
    for c in rep.candidates.candidates:
        _check_candidate(c, rep.g0)
        assert girth(c.graph) >= 4
        assert not nx_contains(c.graph, G("K4"))
    assert all(d["girth_argument"] and d["embedding_absent"] for d in rep.distinctness)
    assert rep.caveat == CAVEAT


def test_pipeline_json_is_recheckable(k4_pipeline):
    doc = json.loads(json.dumps(k4_pipeline.to_json()))
    g0 = graph6_decode(doc["G0"]["graph"])
    assert g0 == k4_pipeline.g0
    assert doc["g"] == 1 + max(x["girth"] for x in doc["excluded"])
    for c in doc["candidates"]["candidates"]:
        w = graph6_decode(c["graph"])
        assert all(g0.has_edge(c["embedding"][u], c["embedding"][v]) for u, v in w.edges())


def test_pipeline_two_excluded(G):
    rep = excluded_subgraph_pipeline([G("K4"), G("W4")])
    assert rep.g == 4
    assert len(rep.distinctness) == 2 * len(rep.candidates.candidates)


def test_pipeline_higher_girth(G):
    rep = excluded_subgraph_pipeline([G("C4")])
    assert rep.g == 5
    assert all(girth(c.graph) >= 5 for c in rep.candidates.candidates)


def test_pipeline_rejects_forests(G):
    with pytest.raises(PipelineError, match="forest"):
        excluded_subgraph_pipeline([G("P4")])
    with pytest.raises(PipelineError, match="forest"):
        excluded_subgraph_pipeline([G("K4"), G("M2")])


def test_pipeline_budget(G):
    with pytest.raises(PipelineError, match="average degree"):
        excluded_subgraph_pipeline([G("K4")], PipelineBuild(start_order=8, max_order=12))


def test_pipeline_deletion_method(G):
    rep = excluded_subgraph_pipeline([G("K4")], PipelineBuild(method="deletion", start_order=32, edge_probability="1/4"))
    assert girth(rep.g0) is not ACYCLIC and girth(rep.g0) >= 4
