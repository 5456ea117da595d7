"""One test per acceptance criterion, run at the stated size and time limit.

Each test prints a single ``ACCEPT <n> PASS|FAIL`` line.
"""

import time

import pytest

from biembed import suites
from biembed.corpus import leaf_pairs_at_distance_two, unlabeled_trees
from biembed.trees import TruncationParams


def _report(capsys, number: int, title: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPT {number:2d} {'PASS' if ok else 'FAIL'} {title}: {detail}")


def _judge(capsys, number, title, report, limit_s, min_cases=1, extra_ok=True, extra=""):
    ok = report.ok and report.seconds < limit_s and report.cases >= min_cases and extra_ok
    detail = (
        f"{report.cases} cases (need >= {min_cases}), {len(report.failures)} failures, "
        f"{report.seconds:.1f}s (limit {limit_s}s){extra}"
    )
    _report(capsys, number, title, ok, detail)
    assert report.ok, report.failures[:5]
    assert report.cases >= min_cases
    assert report.seconds < limit_s
    assert extra_ok, extra


def test_01_normal_form(capsys):
    rep = suites.normal_form(seed=0, count=200, max_depth=3, max_branch=3)
    _judge(capsys, 1, "normal form after normalize+refine", rep, 10, min_cases=200)


def test_02_slice_injectivity(capsys):
    rep = suites.slice_injectivity(seed=0)
    _judge(capsys, 2, "slice injectivity", rep, 1)


def test_03_reduction_forward(capsys):
    rep = suites.reduction_forward(seed=0, count=30, max_depth=2, max_branch=2)
    _judge(capsys, 3, "lex witnesses induce ordered embeddings", rep, 60, min_cases=30)


def test_04_reduction_roundtrip(capsys):
    p = TruncationParams(1, 2, 1)
    assert suites.signature_complete(p)
    rep = suites.reduction_roundtrip(seed=0, count=20, p=p)
    _judge(capsys, 4, "embedding search + witness extraction", rep, 300, min_cases=20)


def test_05_separation(capsys):
    rep = suites.separation(seed=0, count=20, p=TruncationParams(2, 2, 1))
    _judge(capsys, 5, "distinct trees give non-isomorphic ordered builds", rep, 120, min_cases=20 * 19)


def test_06_rigidity(capsys):
    builds = suites.small_ordered_builds(8)
    rep = suites.rigidity(max_vertices=8)
    extra = f", {len(builds)} builds"
    _judge(capsys, 6, "relabellings of ordered builds are pairwise distinct", rep, 60,
           extra_ok=len(builds) > 1 and max(len(G) for _, _, G in builds) == 8, extra=extra)


def test_07_homomorphism_injectivity(capsys):
    sources = [A for n in range(1, 10) for A in unlabeled_trees(n) if not leaf_pairs_at_distance_two(A)]
    rep = suites.homo_injectivity(seed=0, max_vertices=9, targets=50)
    _judge(capsys, 7, "homomorphisms of spread trees are injective", rep, 300,
           extra_ok=len(sources) > 10, extra=f", {len(sources)} source trees")


def test_08_weak_collapse(capsys):
    rep = suites.weak_collapse(seed=0, count=10, p=TruncationParams(2, 2, 1))
    _judge(capsys, 8, "weak homs = homs = embeddings on strict builds", rep, 120, min_cases=100)


def test_09_ultrametric(capsys):
    rep = suites.ultrametric(seed=0)
    _judge(capsys, 9, "ultra spaces are ultrametric with dyadic distances", rep, 30, min_cases=20)


def test_10_geodesic(capsys):
    rep = suites.geodesic(max_vertices=8)
    _judge(capsys, 10, "tree embeddings = isometric embeddings", rep, 120, min_cases=1000)


def test_11_monoid(capsys):
    start = time.perf_counter()
    laws = suites.monoid(seed=0, max_size=3, samples=600)
    natural = suites.natural_action_vs_embeddability(max_size=4)
    elapsed = time.perf_counter() - start
    ok = laws.ok and natural.ok and laws.cases >= 500 and natural.cases > 0 and elapsed < 120
    _report(capsys, 11, "monoid laws + natural action is embeddability", ok,
            f"{laws.cases} law cases (need >= 500), {natural.cases} order cases, "
            f"{len(laws.failures) + len(natural.failures)} failures, {elapsed:.1f}s (limit 120s)")
    assert laws.ok, laws.failures[:5]
    assert natural.ok, natural.failures[:5]
    assert laws.cases >= 500
    assert elapsed < 120


def test_12_graph_sequence_trees(capsys):
    rep = suites.graph_sequence_trees(max_vertices=4, depth=2, limit=20)
    _judge(capsys, 12, "lifted isomorphisms, equivalence order, level-preserving isos", rep, 300)


def test_13_h_characterization(capsys):
    p = TruncationParams(1, 2, 1)
    assert suites.signature_complete(p)
    rep = suites.h_characterization(seed=0, count=5, p=p)
    _judge(capsys, 13, "H elements are exactly the automorphisms", rep, 300, min_cases=5 * 50)
