import json
import multiprocessing as mp

from sizelinear.certify import classify
from sizelinear.graphcore import canonical_code
from sizelinear.minsearch import minimal_density_critical
from sizelinear.ramsey import ramsey_exact
from sizelinear.store import FORMAT_VERSION, ResultStore, default_root, graph_key, ramsey_key


def _k3k3(G):
    res = ramsey_exact(G("K3"), G("K3"))
    return ramsey_key(*res.pair_key), res.to_json()


def test_default_root_from_env(store_dir):
    assert default_root() == store_dir


def test_empty_store(store_dir):
    assert ResultStore().get("ramsey", "00") is None


def test_put_get_roundtrip(store_dir, G):
    store = ResultStore()
    key, doc = _k3k3(G)
    store.put("ramsey", key, doc)
    assert store.get("ramsey", key) == json.loads(json.dumps(doc))
    on_disk = json.loads((store_dir / "ramsey" / f"{key}.json").read_text())
    assert on_disk["format_version"] == FORMAT_VERSION


def test_other_kinds(store_dir, G):
    store = ResultStore()
    v = classify(G("K5"))
    store.put("verdict", graph_key(canonical_code(G("K5"))), v.to_json())
    assert store.get("verdict", graph_key(canonical_code(G("K5"))))["status"] == "CertifiedNonlinear"
    rep = minimal_density_critical(G("K2_2_2"))
    store.put("candidates", graph_key(canonical_code(G("K2_2_2"))), rep.to_json())
    assert store.get("candidates", graph_key(canonical_code(G("K2_2_2"))))["caveat"]


def test_corrupt_entries_are_quarantined(store_dir, G):
    store = ResultStore()
    key, doc = _k3k3(G)
    path = store.put("ramsey", key, doc)
    path.write_text("{ not json")
    assert store.get("ramsey", key) is None
    assert not path.exists()
    assert list((store_dir / "quarantine").iterdir())


def test_invalid_witness_is_quarantined(store_dir, G):
    store = ResultStore()
    key, doc = _k3k3(G)
    doc["witness"]["red_edges"] = [[0, 1], [1, 2], [0, 2]]  # a red triangle
    store.put("ramsey", key, doc)
    assert store.get("ramsey", key) is None


def test_forged_certificate_is_quarantined(store_dir, G):
    store = ResultStore()
    doc = classify(G("K5")).to_json()
    doc["density"]["slack"] = 7
    key = graph_key(canonical_code(G("K5")))
    store.put("verdict", key, doc)
    assert store.get("verdict", key) is None


def test_rejects_odd_keys(store_dir):
    import pytest

    from sizelinear.store import StoreError

    with pytest.raises(StoreError):
        ResultStore().put("ramsey", "../evil", {})
    with pytest.raises(StoreError):
        ResultStore().get("nonsense", "00")


def _writer(root, key, doc, barrier):
    barrier.wait()
    for _ in range(20):
        ResultStore(root).put("ramsey", key, doc)


def test_concurrent_puts(store_dir, G):
    key, doc = _k3k3(G)
    ctx = mp.get_context("spawn")
    barrier = ctx.Barrier(2)
    procs = [ctx.Process(target=_writer, args=(str(store_dir), key, doc, barrier)) for _ in range(2)]
    for p in procs:
        p.start()
    for p in procs:
        p.join(60)
        assert p.exitcode == 0
    assert ResultStore(store_dir).get("ramsey", key) == json.loads(json.dumps(doc))
    leftovers = [p for p in (store_dir / "ramsey").iterdir() if p.name.startswith(".tmp-")]
    assert leftovers == []
