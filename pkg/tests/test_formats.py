import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from biembed.corpus import random_graph, random_normal_tree, random_permutation, random_qo_tree
from biembed.formats import (
    FormatError,
    read_graph_code,
    read_injection,
    read_lipschitz,
    read_metric,
    read_monoid_elem,
    read_morphism,
    read_permutation,
    read_structure,
    read_tree,
    to_dot,
    write_graph_code,
    write_injection,
    write_lipschitz,
    write_metric,
    write_monoid_elem,
    write_morphism,
    write_permutation,
    write_structure,
    write_tree,
)
from biembed.gadgets import build_fs_tree, build_gprime, build_gx, build_ordered_gt, encode_gprime
from biembed.metrics import FinMetricSpace, geodesic_space, ultra_space
from biembed.monoid import GraphCode, all_elems
from biembed.morphisms import find_morphism
from biembed.structures import FinInjection, FinStructure, Permutation
from biembed.trees import LipschitzMap, NormalTree, QoTree, TruncationParams, find_leqmax_witness

seeds = st.integers(0, 10**6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 3), st.integers(1, 3), st.integers(0, 2))
def test_tree_round_trip(seed, depth, branch, tail):
    p = TruncationParams(depth, branch, tail)
    rng = random.Random(seed)
    T = random_normal_tree(p, rng, 0.3)
    assert read_tree(write_tree(T, p)) == (T, p)
    S = random_qo_tree(p, rng, 0.3)
    assert read_tree(write_tree(S)) == (S, None)


def test_empty_trees_round_trip():
    assert read_tree(write_tree(NormalTree())) == (NormalTree(), None)
    assert read_tree(write_tree(QoTree())) == (QoTree(), None)


def test_reader_parses_without_normality_check():
    # normality is enforced by the commands that consume trees
    T, _ = read_tree("0|0\n")
    assert T == NormalTree({((0,), (0,))})


def test_tree_text_form():
    T = NormalTree({((), ()), ((0,), (1,))})
    p = TruncationParams(1, 2, 1)
    assert write_tree(T, p) == "!bounds depth=1 branch=2 tail=1\n-|-\n0|1\n"
    assert read_tree("!bounds depth=1 branch=2\n-|-\n")[1] == TruncationParams(1, 2, 1)


@pytest.mark.parametrize("text", [
    "!bounds depth=x\n",
    "-|-|-|-\n",
    "-|-\n0|0|0\n",
    "2|0\n",
    "0|a\n",
    "!bounds depth=1 branch=0\n",
])
def test_tree_errors(text):
    with pytest.raises(FormatError):
        read_tree(text)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, 2), st.integers(1, 2))
def test_structure_round_trip(seed, depth, branch):
    p = TruncationParams(depth, branch, 1)
    T = random_normal_tree(p, random.Random(seed), 0.3)
    for G in (build_ordered_gt(T, p), build_gprime(T, p), encode_gprime(T, p)):
        assert read_structure(write_structure(G)) == G
    x = random_graph(3, random.Random(seed), 0.5)
    G = build_gx(x, TruncationParams(2, 3))
    assert read_structure(write_structure(G)) == G


def test_structure_empty_order_round_trip():
    A = FinStructure(range(2), [(0, 1)], order=[])
    B = read_structure(write_structure(A))
    assert B == A and B.order == frozenset()
    assert read_structure(write_structure(A.with_order(None))).order is None


@pytest.mark.parametrize("text", [
    "v 0\n",
    "!structure\nv 0\ne 0 1\n",
    "!structure\nv 0\nv 1\ne 0\n",
    "!structure\nv 0\n!root 4\n",
    "!structure\nx 0\n",
])
def test_structure_errors(text):
    with pytest.raises(FormatError):
        read_structure(text)


def test_dot_export():
    G = build_gprime(NormalTree(), TruncationParams(0, 2, 1))
    dot = to_dot(G)
    assert dot.startswith("graph") and dot.count(" -- ") == G.edge_count()
    assert "[0]++" not in dot or "[]++" in dot
    assert "->" not in dot
    ordered = to_dot(build_ordered_gt(NormalTree({((), ())}), TruncationParams(1, 2, 1)), with_order=True)
    assert "dashed" in ordered


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 8))
def test_permutation_and_injection_round_trip(seed, n):
    rng = random.Random(seed)
    p = random_permutation(range(n), rng)
    assert read_permutation(write_permutation(p)) == p
    m = n + rng.randint(0, 3)
    f = FinInjection(tuple(rng.sample(range(m), n)), m)
    assert read_injection(write_injection(f)) == f


@pytest.mark.parametrize("reader,text", [
    (read_permutation, "!perm 2\n0 -> 0\n1 -> 0\n"),
    (read_permutation, "!perm 2\n0 -> 1\n"),
    (read_permutation, "!perm 1\n0 => 0\n"),
    (read_injection, "!inj 2 1\n0 -> 0\n1 -> 0\n"),
    (read_injection, "!inj 1 1\n0 -> 3\n"),
    (read_morphism, "!morphism nothing\n"),
    (read_lipschitz, "!lipschitz\n[0] -> [0,1]\n"),
    (read_graph_code, "!gcode 3\n11\n"),
    (read_graph_code, "!gcode 2\n2\n"),
    (read_metric, "!metric 2\n"),
    (read_metric, "!metric 2\n0 1 1 x\n"),
    (read_monoid_elem, "!melem 1 1\n0 -> 0\nu 0\n!gcode 1\n"),
])
def test_map_errors(reader, text):
    with pytest.raises(FormatError):
        reader(text)


def test_morphism_round_trip():
    p = TruncationParams(1, 2, 1)
    T = NormalTree({((), ()), ((1,), (1,))})
    g = find_morphism(build_gprime(T, p), build_gprime(T, p), "isomorphism")
    assert read_morphism(write_morphism(g)) == g
    x = FinStructure(range(3), [(0, 1)])
    h = find_morphism(x, x, "weak_homomorphism")
    assert read_morphism(write_morphism(h)) == h


def test_lipschitz_round_trip():
    p = TruncationParams(2, 3)
    T = random_normal_tree(p, random.Random(2), 0.4)
    f = find_leqmax_witness(T, T, "plain", p)
    assert read_lipschitz(write_lipschitz(f)) == f
    g = LipschitzMap({(): (), (0,): (2,), (1,): (2,)})
    assert read_lipschitz(write_lipschitz(g)) == g


def test_graph_code_and_elem_round_trip():
    for g in all_elems(2, 3):
        assert read_monoid_elem(write_monoid_elem(g)) == g
        assert read_graph_code(write_graph_code(g.v)) == g.v
    assert read_graph_code(write_graph_code(GraphCode.empty(0))) == GraphCode.empty(0)


def test_graph_code_text_form():
    x = GraphCode(3, frozenset({(0, 2)}))
    assert write_graph_code(x) == "!gcode 3\n01\n0\n"


def test_metric_round_trip():
    p = TruncationParams(1, 2, 1)
    U = ultra_space(NormalTree({((), ())}), p)
    back = read_metric(write_metric(U))
    assert back.dist == U.dist and back.points == list(range(len(U)))
    G = geodesic_space(FinStructure(range(3), [(0, 1), (1, 2)]))
    assert read_metric(write_metric(G)).dist == G.dist


def test_metric_text_form_and_non_dyadic():
    M = FinMetricSpace("ab", [[0, Fraction(3, 8)], [Fraction(3, 8), 0]])
    assert write_metric(M) == "!metric 2\n0 1 3 3\n"
    with pytest.raises(ValueError):
        write_metric(FinMetricSpace("ab", [[0, Fraction(1, 3)], [Fraction(1, 3), 0]]))
