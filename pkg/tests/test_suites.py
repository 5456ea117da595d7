import pytest

from biembed import suites
from biembed.trees import TruncationParams


def test_signature_complete():
    assert suites.signature_complete(TruncationParams(1, 2, 1))
    assert not suites.signature_complete(TruncationParams(0, 2, 1))
    assert not suites.signature_complete(TruncationParams(1, 2, 0))


def test_report_summary_and_status():
    rep = suites.SuiteReport("demo", cases=3)
    assert rep.ok and rep.summary().startswith("PASS demo: 3 cases, 0 failures")
    rep.fail("boom")
    assert not rep.ok and rep.summary().startswith("FAIL demo")


def test_suite_registry_covers_every_criterion():
    assert len(suites.SUITES) == 14
    assert all(callable(fn) for fn in suites.SUITES.values())


def test_roundtrip_refuses_incomplete_bounds():
    rep = suites.reduction_roundtrip(p=TruncationParams(1, 2, 0))
    assert not rep.ok


def test_roundtrip_pairs_are_proper_and_distinct():
    import random
    pairs = suites._inclusion_pairs(TruncationParams(1, 2, 1), 20, random.Random(0))
    assert len({(S.nodes, T.nodes) for S, T in pairs}) == 20
    assert all(S.nodes and S.nodes < T.nodes for S, T in pairs)


def test_small_ordered_builds_are_distinct_and_bounded():
    builds = suites.small_ordered_builds(8)
    assert len(builds) == 9
    assert all(len(G) <= 8 for _, _, G in builds)
    assert len({G for _, _, G in builds}) == len(builds)


def test_suite_detects_injected_fault(monkeypatch):
    monkeypatch.setattr(suites, "is_ultrametric", lambda M: False)
    rep = suites.ultrametric(count=3)
    assert not rep.ok and len(rep.failures) == rep.cases


def test_timing_is_recorded():
    rep = suites.slice_injectivity(count=2)
    assert rep.ok and rep.seconds > 0
