import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from biembed.corpus import random_graph, random_permutation
from biembed.gadgets import build_ordered_gt, encode_gprime, gprime_code_map, build_gt
from biembed.seqs import all_seqs, pair
from biembed.structures import (
    FinInjection,
    FinStructure,
    Permutation,
    ray_rank,
    ray_unrank,
    in_subgroup,
    random_h_element,
    relabel,
    structures_equal,
    transport,
)
from biembed.trees import NormalTree, TruncationParams
from biembed.vertices import vleaf, vseq, vstar

E = ()


def test_structure_validation():
    with pytest.raises(ValueError):
        FinStructure(range(2), [(0, 0)])
    with pytest.raises(ValueError):
        FinStructure(range(2), [(0, 5)])
    A = FinStructure(range(3), [(0, 1)])
    assert A.has_edge(1, 0) and not A.has_edge(1, 2)


def test_relabel_examples():
    A = FinStructure(range(2), [(0, 1)], order=[(0, 1)])
    ident = Permutation.identity(range(2))
    assert relabel(ident, A) == A
    swap = Permutation.swap(range(2), 0, 1)
    B = relabel(swap, A)
    assert B.has_edge(0, 1)
    assert B.q(1, 0) and not B.q(0, 1)


def test_relabel_needs_covering_permutation():
    with pytest.raises(ValueError):
        relabel(Permutation.identity(range(2)), FinStructure(range(3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_relabel_is_a_group_action(seed, n):
    rng = random.Random(seed)
    A = random_graph(n, rng, 0.5)
    A = A.with_order([(a, b) for a in range(n) for b in range(n) if rng.random() < 0.3])
    p, q = random_permutation(range(n), rng), random_permutation(range(n), rng)
    assert relabel(p.compose(q), A) == relabel(p, relabel(q, A))
    assert relabel(p.inverse(), relabel(p, A)) == A


def test_structures_equal_examples():
    p = TruncationParams(1, 2)
    T = NormalTree({(E, E)})
    G = build_ordered_gt(T, p)
    assert structures_equal(G, G)
    assert structures_equal(build_gt(T, p), build_gt(NormalTree({(E, E)}), p))
    swap = Permutation.swap(G.vertices(), vseq((0,)), vseq((1,))).compose(
        Permutation.swap(G.vertices(), vstar((0,)), vstar((1,)))
    )
    assert not structures_equal(G, relabel(swap, G))
    # the same swap fixes the bare graph, so only the order tells them apart
    assert structures_equal(build_gt(T, p), relabel(swap, build_gt(T, p)))


def test_structures_equal_checks_root():
    A = FinStructure(range(2), [(0, 1)])
    assert not structures_equal(A.with_root(0), A.with_root(1))
    assert not structures_equal(A, A.with_root(0))


def test_rigidity_of_small_ordered_build():
    p = TruncationParams(0, 1, 0)
    G = build_ordered_gt(NormalTree({(E, E)}), p)
    assert len(G) == 6
    images = {relabel(Permutation(dict(zip(G.vertices(), perm))), G)
              for perm in permutations(G.vertices())}
    assert len(images) == 720


def test_transport_rejects_collapse():
    with pytest.raises(ValueError):
        transport(FinStructure(range(2)), {0: 5, 1: 5})


# -- injections and permutations ------------------------------------------------


def test_injection_basics():
    f = FinInjection((2, 0), 3)
    g = FinInjection((1, 3, 0), 4)
    assert f.then(g).images == (0, 1)
    assert f.inverse_map() == {2: 0, 0: 1}
    with pytest.raises(ValueError):
        FinInjection((1, 1), 3)
    with pytest.raises(ValueError):
        FinInjection((3,), 3)
    with pytest.raises(ValueError):
        f.then(FinInjection((0,), 1))


def test_permutation_validation_and_laws():
    with pytest.raises(ValueError):
        Permutation({0: 1, 1: 1})
    rng = random.Random(3)
    p = random_permutation(range(7), rng)
    assert p.compose(p.inverse()).is_identity()
    q = random_permutation(range(7), rng)
    assert all(p.compose(q)(x) == p(q(x)) for x in range(7))


# -- subgroup membership -------------------------------------------------------------


def test_ray_rank_matches_enumeration():
    pairs = sorted((c, i) for c in range(30) for i in range(c + 3))
    for rank, (c, i) in enumerate(pairs):
        assert ray_rank(c, i) == rank
        assert ray_unrank(rank) == (c, i)
    with pytest.raises(ValueError):
        ray_rank(0, 3)


def test_h_examples():
    dom = [pair(n, k) for n in range(9) for k in range(2)]
    assert in_subgroup(Permutation.identity(dom), "H", dom)
    col01 = {c: c for c in dom}
    for k in range(2):
        col01[pair(0, k)], col01[pair(1, k)] = pair(1, k), pair(0, k)
    assert not in_subgroup(Permutation(col01), "H", dom)
    col67 = {c: c for c in dom}
    for k in range(2):
        col67[pair(6, k)], col67[pair(7, k)] = pair(7, k), pair(6, k)
    assert in_subgroup(Permutation(col67), "H", dom)


def test_h_rejects_inconsistent_columns():
    dom = [pair(n, k) for n in (6, 7) for k in range(2)]
    mixed = {pair(6, 0): pair(7, 0), pair(7, 0): pair(6, 0), pair(6, 1): pair(6, 1), pair(7, 1): pair(7, 1)}
    assert not in_subgroup(Permutation(mixed), "H", dom)


def test_h_ray_columns_stay_with_their_sequence():
    # ray_rank ranks 0,1,2 belong to the empty sequence, 3 starts code 1
    dom = [pair(3 * e + 5, 0) for e in range(4)]
    same = Permutation({dom[0]: dom[2], dom[2]: dom[0], dom[1]: dom[1], dom[3]: dom[3]})
    other = Permutation({dom[0]: dom[3], dom[3]: dom[0], dom[1]: dom[1], dom[2]: dom[2]})
    assert in_subgroup(same, "H", dom)
    assert not in_subgroup(other, "H", dom)


def test_domain_mismatch():
    with pytest.raises(ValueError):
        in_subgroup(Permutation.identity([0]), "H", [0, 1])
    with pytest.raises(ValueError):
        in_subgroup(Permutation.identity([0]), "H3", [0])


def test_h_members_are_automorphisms_of_coded_build():
    p = TruncationParams(1, 2, 1)
    T = NormalTree({(E, E), ((0,), (1,))})
    G = encode_gprime(T, p)
    rng = random.Random(0)
    moved = 0
    for _ in range(30):
        h = random_h_element(G.vertices(), rng)
        assert in_subgroup(h, "H", G.vertices())
        assert relabel(h, G) == G
        moved += not h.is_identity()
    assert moved > 0


def test_h_closed_under_composition_and_inverse():
    p = TruncationParams(1, 2, 1)
    dom = encode_gprime(NormalTree({(E, E)}), p).vertices()
    rng = random.Random(1)
    elems = [random_h_element(dom, rng) for _ in range(15)]
    for a in elems:
        assert in_subgroup(a.inverse(), "H", dom)
        for b in elems:
            assert in_subgroup(a.compose(b), "H", dom)


def _fs_domain():
    return [vseq(s) for s in all_seqs(2, 2)] + [vleaf(0)]


def _members(which):
    dom = _fs_domain()
    return [
        perm for perm in (Permutation(dict(zip(dom, img))) for img in permutations(dom))
        if in_subgroup(perm, which, dom)
    ]


def test_h1_h2_examples_and_closure():
    dom = _fs_domain()
    ident = Permutation.identity(dom)
    assert in_subgroup(ident, "H1", dom) and in_subgroup(ident, "H2", dom)
    h1 = _members("H1")
    # rp classes: {[]}, {[0,1]}, {[1,0]} singletons, {[0],[0,0]}, {[1],[1,1]} pairs
    assert len(h1) == 3 * 2 * 2 * 2 * 2 * 1
    members = set(h1)
    for a in h1:
        assert a.inverse() in members
        for b in h1:
            assert a.compose(b) in members
    assert _members("H2") == [ident]


def test_h1_rejects_moving_leaves():
    dom = _fs_domain() + [vleaf(1)]
    p = Permutation.swap(dom, vleaf(0), vleaf(1))
    assert not in_subgroup(p, "H1", dom)
    assert in_subgroup(p, "H2", dom)
