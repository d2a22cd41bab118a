import json
import re

import pytest

from powergraphs import claims
from powergraphs.algo import clique_number_exact
from powergraphs.claims import (
    CLAIM_IDS,
    FAIL,
    PASS,
    SKIPPED,
    ClaimReport,
    Corpus,
    default_corpus,
    run_corpus,
    sylow_shape_ok,
    verify,
)
from powergraphs.divisors import weight
from powergraphs.errors import UsageError
from powergraphs.graph import BitGraph, build_power_graph


def test_claim_ids():
    assert len(CLAIM_IDS) == 17 and len(set(CLAIM_IDS)) == 17


def test_verify_examples(grp):
    assert verify("THM-CLIQUE", grp("C12")).status == PASS
    assert verify("COR-COMPONENTS", grp("C2xC2")).status == PASS
    assert verify("DIAM-4", grp("S3xZ6")).status == SKIPPED
    assert verify("OBS-COMPLETE", grp("C1")).status == SKIPPED
    assert verify("EX-QN-3", grp("Q8")).status == SKIPPED
    with pytest.raises(UsageError):
        verify("NOPE", grp("C2"))


def test_dicyclic_odd_examples(grp):
    reports = [verify("EX-QN-3", grp(f"Dic{n}")) for n in (3, 5, 7, 9)]
    assert [r.status for r in reports] == [PASS] * 4


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        ClaimReport("DIAM-1", "C2", FAIL)


def test_sylow_shape_examples(grp):
    assert sylow_shape_ok(grp("C12"))
    assert sylow_shape_ok(grp("C3xQ8"))
    assert not sylow_shape_ok(grp("E2^2xC3"))
    assert not sylow_shape_ok(grp("S3"))


def test_report_json_shape(grp):
    r = verify("DIAM-1", grp("C4"))
    d = r.to_dict()
    assert set(d) == {"claim", "group", "status", "witness", "ms"} and d["ms"] is None
    assert isinstance(r.to_dict(timing=True)["ms"], float)


def test_empty_corpus():
    res = run_corpus(Corpus(()))
    assert res.reports == () and res.summary == {PASS: 0, FAIL: 0, SKIPPED: 0}
    assert not res.failed


def test_unknown_claim_in_run():
    with pytest.raises(UsageError):
        run_corpus(Corpus.from_texts(["C2"]), ["X"])


def test_default_corpus_has_no_failures():
    res = run_corpus(default_corpus(max_order=64))
    assert not res.failed, [r for r in res.reports if r.status == FAIL][:3]
    assert all(r.witness for r in res.reports if r.status == SKIPPED)


def test_worker_count_does_not_change_reports():
    corpus = Corpus.from_texts(["C12", "S3", "Dic5", "S3xZ6", "C2xC2", "D8"])
    one = json.dumps(run_corpus(corpus, workers=1).to_json_obj())
    two = json.dumps(run_corpus(corpus, workers=3).to_json_obj())
    assert one == two


def test_oversized_group_is_skipped():
    res = run_corpus(Corpus.from_texts(["C50"]), ["DIAM-1"], limits=claims.Limits(max_order=10))
    assert res.reports[0].status == SKIPPED


def test_broken_weight_is_caught_with_checkable_witness(grp, monkeypatch):
    monkeypatch.setattr(claims, "weight", lambda n: weight(n) + (n == 12))
    r = verify("COR-CLIQUE-NILP", grp("C12"))
    assert r.status == FAIL
    m = re.search(r"omega\(reduced\)=(\d+) but weight\(exp=(\d+)\)=(\d+)", r.witness)
    omega, e, w = map(int, m.groups())
    # replay: the clique number is recomputed independently and really differs
    assert omega == clique_number_exact(build_power_graph(grp("C12"))) == 8
    assert e == 12 and w == 9 != omega


def test_broken_linkage_is_caught(grp, monkeypatch):
    real = claims.build_linkage_graph

    def no_edges(G):
        link = real(G)
        return BitGraph.empty(link.n)

    monkeypatch.setattr(claims, "build_linkage_graph", no_edges)
    r = verify("LEM-LINKAGE", grp("C6"))
    assert r.status == FAIL and "2 nodes" in r.witness
