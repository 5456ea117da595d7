"""Property suites over seeded corpora.  Each suite returns a
:class:`SuiteReport`; an empty failure list means the property held on
every case."""

from __future__ import annotations

import functools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional

from .corpus import (
    all_labeled_graphs,
    all_normal_trees,
    leaf_pairs_at_distance_two,
    random_graph,
    random_normal_tree,
    random_qo_tree,
    random_tree_graph,
    tree_corpus,
    unlabeled_trees,
)
from .gadgets import (
    build_g0,
    build_gx,
    build_ordered_gt,
    build_strict_gt,
    build_gprime,
    encode_gprime,
    lift_graph_isomorphism,
)
from .metrics import geodesic_space, is_ultrametric, iter_isometric_embeddings, ultra_space
from .monoid import (
    GraphCode,
    act,
    all_elems,
    all_graph_codes,
    check_action_axioms,
    compose,
    identity,
    natural_action_triples,
)
from .morphisms import embed_from_witness, extract_witness, find_morphism, find_morphisms, is_morphism
from .seqs import binary_seqs, zeros
from .structures import FinInjection, FinStructure, Permutation, in_subgroup, random_h_element, relabel
from .trees import (
    NormalTree,
    QoTree,
    TruncationParams,
    check_qo_normal,
    find_leqmax_witness,
    normalize,
    qo_violations,
    refine,
    slice_tree,
    verify_witness,
)
from .vertices import SEQ


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures, {self.seconds:.2f}s"


def signature_complete(p: TruncationParams) -> bool:
    """Bounds at which every valence and distance used to recognise gadget
    vertices is present in the finite build."""
    return p.depth >= 1 and p.branch >= 1 and p.tail >= 1


def _timed(fn: Callable) -> Callable:
    def run(*args, **kwargs) -> SuiteReport:
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report

    return functools.wraps(fn)(run)


@_timed
def normal_form(seed: int = 0, count: int = 200, max_depth: int = 3, max_branch: int = 3) -> SuiteReport:
    """normalize + refine yields reflexivity, additive transitivity, the
    zero-row condition and normality."""
    rep = SuiteReport("normal-form")
    rng = random.Random(seed)
    for case in range(count):
        p = TruncationParams(rng.randint(1, max_depth), rng.randint(1, max_branch))
        S = random_qo_tree(p, rng, density=rng.uniform(0.02, 0.3))
        R = refine(normalize(S, p))
        rep.cases += 1
        bad = {k: v for k, v in qo_violations(R, p).items() if v}
        if bad or not check_qo_normal(R, p):
            rep.fail(f"case {case} seed {seed} {p}: {bad or 'not normal'}")
    return rep


@_timed
def slice_injectivity(seed: int = 0, count: int = 20, max_depth: int = 3, max_branch: int = 2) -> SuiteReport:
    rep = SuiteReport("slice-injectivity")
    rng = random.Random(seed)
    for case in range(count):
        p = TruncationParams(rng.randint(1, max_depth), rng.randint(1, max_branch))
        R = refine(normalize(random_qo_tree(p, rng, density=0.1), p))
        words = list(binary_seqs(p.depth))
        slices = {x: slice_tree(R, x, p) for x in words}
        for x in words:
            for y in words:
                if x == y:
                    continue
                rep.cases += 1
                node = (x, zeros(p.depth))
                if slices[x] == slices[y] or node not in slices[x] or node in slices[y]:
                    rep.fail(f"case {case} {p}: slices at {x} and {y} not separated")
    return rep


@_timed
def reduction_forward(seed: int = 0, count: int = 30, max_depth: int = 2, max_branch: int = 2) -> SuiteReport:
    """Lex-preserving witnesses induce embeddings of the ordered builds."""
    rep = SuiteReport("reduction-forward")
    rng = random.Random(seed)
    attempts = 0
    while rep.cases < count and attempts < 100 * count:
        attempts += 1
        p = TruncationParams(rng.randint(1, max_depth), rng.randint(1, max_branch), rng.randint(0, 1))
        S = random_normal_tree(p, rng, rng.uniform(0.05, 0.5))
        T = random_normal_tree(p, rng, rng.uniform(0.05, 0.5))
        if rng.random() < 0.5:
            T = NormalTree(S.nodes | T.nodes)
        f = find_leqmax_witness(S, T, "lex_preserving", p)
        if f is None:
            continue
        rep.cases += 1
        g = embed_from_witness(f, S, T, "ordered_gt", p)
        if not is_morphism(g, build_ordered_gt(S, p), build_ordered_gt(T, p), "embedding"):
            rep.fail(f"attempt {attempts} {p}: induced map is not an embedding")
    if rep.cases < count:
        rep.fail(f"only {rep.cases} witnessed pairs in {attempts} attempts")
    return rep


def _inclusion_pairs(p: TruncationParams, count: int, rng: random.Random) -> list[tuple]:
    try:
        trees = all_normal_trees(p)
    except ValueError:
        trees = tree_corpus(p, 4 * count, rng.randrange(2**32), density=None)
    proper = [(S, T) for S in trees for T in trees if S.nodes and S.nodes < T.nodes]
    equal = [(S, S) for S in trees if S.nodes]
    rng.shuffle(proper)
    rng.shuffle(equal)
    return (proper + equal)[:count]


@_timed
def reduction_roundtrip(
    seed: int = 0, count: int = 20, p: TruncationParams = TruncationParams(1, 2, 1)
) -> SuiteReport:
    """Embedding search between primed builds of S <= T, then extraction.

    Pairs are distinct, S is nonempty and the inclusion is proper whenever
    the box holds enough such pairs."""
    rep = SuiteReport("reduction-roundtrip")
    if not signature_complete(p):
        rep.fail(f"{p} is not signature-complete")
        return rep
    rng = random.Random(seed)
    for case, (S, T) in enumerate(_inclusion_pairs(p, count, rng)):
        rep.cases += 1
        g = find_morphism(build_gprime(S, p), build_gprime(T, p), "embedding")
        if g is None:
            rep.fail(f"case {case}: no embedding found")
            continue
        try:
            f = extract_witness(g, S, T, "gprime", p)
        except ValueError as exc:
            rep.fail(f"case {case}: {exc}")
            continue
        if f(()) != () or not verify_witness(f, S, T, "plain", p):
            rep.fail(f"case {case}: extracted map is not a witness fixing the root")
    return rep


@_timed
def separation(seed: int = 0, count: int = 20, p: TruncationParams = TruncationParams(2, 2, 1)) -> SuiteReport:
    rep = SuiteReport("separation")
    corpus = tree_corpus(p, count, seed, density=None)
    if len(corpus) < count:
        rep.notes.append(f"box holds only {len(corpus)} distinct sampled trees")
    builds = [build_ordered_gt(T, p) for T in corpus]
    for i in range(len(builds)):
        for j in range(len(builds)):
            if i == j:
                continue
            rep.cases += 1
            if find_morphisms(builds[i], builds[j], "isomorphism", limit=1):
                rep.fail(f"trees {i} and {j} have isomorphic ordered builds")
    return rep


def small_ordered_builds(max_vertices: int = 8) -> list[tuple[NormalTree, TruncationParams, FinStructure]]:
    """Every distinct ordered build with at most ``max_vertices`` vertices.

    A nonempty tree adds at least ``5 + 2 * tail`` gadget vertices to G_0,
    which bounds the boxes worth enumerating."""
    out = []
    seen = set()
    for depth in range(max_vertices):
        for branch in range(1, max_vertices):
            base = len(build_g0(TruncationParams(depth, branch)))
            if base > max_vertices:
                break
            for tail in range(max(0, (max_vertices - base - 5) // 2) + 1):
                p = TruncationParams(depth, branch, tail)
                trees = all_normal_trees(p) if base + 5 <= max_vertices else [NormalTree()]
                for T in trees:
                    G = build_ordered_gt(T, p)
                    if len(G) <= max_vertices and G not in seen:
                        seen.add(G)
                        out.append((T, p, G))
    return out


@_timed
def rigidity(max_vertices: int = 8) -> SuiteReport:
    """Distinct relabellings of an ordered build are distinct structures.

    All relabellings are hashed; no collision among the n! images is the
    same as no equal pair p != q."""
    rep = SuiteReport("rigidity")
    for T, p, G in small_ordered_builds(max_vertices):
        points = G.vertices()
        seen = set()
        for images in permutations(points):
            seen.add(relabel(Permutation(dict(zip(points, images))), G))
        total = 1
        for k in range(2, len(points) + 1):
            total *= k
        rep.cases += total * (total - 1) // 2
        if len(seen) != total:
            rep.fail(f"{p} {T.sorted_nodes()}: {total - len(seen)} coinciding relabellings")
    return rep


def _chains(G: FinStructure, min_len: int = 3) -> list[tuple]:
    out = []

    def grow(path: tuple) -> None:
        if len(path) >= min_len:
            out.append(path)
        for w in G.neighbors(path[-1]):
            if w not in path:
                grow(path + (w,))

    for v in G.vertices():
        grow((v,))
    return out


@_timed
def homo_injectivity(seed: int = 0, max_vertices: int = 9, targets: int = 50) -> SuiteReport:
    rep = SuiteReport("homo-injectivity")
    rng = random.Random(seed)
    sources = [
        A for n in range(1, max_vertices + 1) for A in unlabeled_trees(n) if not leaf_pairs_at_distance_two(A)
    ]
    bs = []
    for i in range(targets):
        n = rng.randint(2, 10)
        bs.append(random_tree_graph(n, rng) if i % 2 else random_graph(n, rng, rng.uniform(0.2, 0.6)))
    for ai, A in enumerate(sources):
        chains = _chains(A)
        for bi, B in enumerate(bs):
            for h in find_morphisms(A, B, "homomorphism"):
                rep.cases += 1
                if not h.is_injective():
                    rep.fail(f"source {ai} target {bi}: non-injective homomorphism {h.mapping}")
                for chain in chains:
                    if len({h(v) for v in chain}) != len(chain):
                        rep.fail(f"source {ai} target {bi}: chain {chain} collapses")
                        break
    rep.notes.append(f"{len(sources)} sources, {len(bs)} targets")
    return rep


@_timed
def weak_collapse(seed: int = 0, count: int = 10, p: TruncationParams = TruncationParams(2, 2, 1)) -> SuiteReport:
    rep = SuiteReport("weak-collapse")
    corpus = tree_corpus(p, count, seed, density=None)
    builds = [build_strict_gt(T, p) for T in corpus]
    for i, A in enumerate(builds):
        for j, B in enumerate(builds):
            sets = [
                {frozenset(h.mapping.items()) for h in find_morphisms(A, B, kind)}
                for kind in ("weak_homomorphism", "homomorphism", "embedding")
            ]
            rep.cases += 1
            if not (sets[0] == sets[1] == sets[2]):
                rep.fail(f"trees {i},{j}: sizes {[len(s) for s in sets]}")
    return rep


def _is_power_of_two_reciprocal(d: Fraction) -> bool:
    return d.numerator == 1 and d.denominator & (d.denominator - 1) == 0


@_timed
def ultrametric(seed: int = 0, count: int = 20, p: TruncationParams = TruncationParams(2, 2, 1)) -> SuiteReport:
    rep = SuiteReport("ultrametric")
    for T in tree_corpus(p, count, seed, density=None) + [NormalTree()]:
        U = ultra_space(T, p)
        rep.cases += 1
        if not is_ultrametric(U):
            rep.fail(f"{T.sorted_nodes()}: strong triangle inequality fails")
        n = len(U)
        for i in range(n):
            if U.dist[i][i] != 0:
                rep.fail(f"nonzero self-distance at point {i}")
            for j in range(i + 1, n):
                if not _is_power_of_two_reciprocal(U.dist[i][j]):
                    rep.fail(f"distance {U.dist[i][j]} is not a power of 2")
    return rep


@_timed
def geodesic(max_vertices: int = 8) -> SuiteReport:
    """Graph embeddings between trees are exactly the isometric embeddings
    of their geodesic spaces."""
    rep = SuiteReport("geodesic")
    trees = [A for n in range(1, max_vertices + 1) for A in unlabeled_trees(n)]
    spaces = [geodesic_space(A) for A in trees]
    for i, A in enumerate(trees):
        for j, B in enumerate(trees):
            if len(A) > len(B):
                continue
            rep.cases += 1
            emb = {frozenset(h.mapping.items()) for h in find_morphisms(A, B, "embedding")}
            iso = {frozenset(h.items()) for h in iter_isometric_embeddings(spaces[i], spaces[j])}
            if emb != iso:
                rep.fail(f"trees {i},{j}: {len(emb)} embeddings vs {len(iso)} isometric embeddings")
    return rep


@_timed
def monoid(seed: int = 0, max_size: int = 3, samples: int = 600) -> SuiteReport:
    rep = SuiteReport("monoid")
    rng = random.Random(seed)
    codes = {n: list(all_graph_codes(n)) for n in range(max_size + 1)}
    elems = {(n, m): list(all_elems(n, m)) for n in range(max_size + 1) for m in range(n, max_size + 1)}
    for n in range(max_size + 1):
        e = identity(n)
        for x in codes[n]:
            rep.cases += 1
            if act(e, x) != x:
                rep.fail(f"identity moves {x}")
        for m in range(n, max_size + 1):
            for g in elems[n, m]:
                if compose(identity(m), g) != g or compose(g, e) != g:
                    rep.fail(f"identity law fails for {g}")
    for _ in range(samples):
        n = rng.randint(0, max_size)
        m = rng.randint(n, max_size)
        k = rng.randint(m, max_size)
        g = rng.choice(elems[n, m])
        h = rng.choice(elems[m, k])
        hg = compose(h, g)  # validated as a MonoidElem on construction
        for x in codes[n]:
            rep.cases += 1
            if act(h, act(g, x)) != act(hg, x):
                rep.fail(f"action law fails for {g}, {h}, {x}")
    return rep


@_timed
def natural_action_vs_embeddability(max_size: int = 4) -> SuiteReport:
    rep = SuiteReport("natural-action")
    triples = natural_action_triples(max_size)
    related = {(x, y) for _, x, y in triples}
    axioms = check_action_axioms(
        triples, lambda g, h: h.then(g), lambda x: FinInjection.identity(x.size)
    )
    if not axioms.ok:
        rep.fail(f"action axioms: {len(axioms.violations)} violations")
    codes = [x for n in range(max_size + 1) for x in all_graph_codes(n)]
    for x in codes:
        for y in codes:
            rep.cases += 1
            embeds = find_morphism(x.to_structure(), y.to_structure(), "embedding") is not None
            if embeds != ((x, y) in related):
                rep.fail(f"{x} vs {y}: embeddable={embeds}")
    return rep


@_timed
def graph_sequence_trees(max_vertices: int = 4, depth: int = 2, limit: int = 20) -> SuiteReport:
    rep = SuiteReport("graph-trees")
    p = TruncationParams(depth, 1)
    for n in range(max_vertices + 1):
        graphs = list(all_labeled_graphs(n))
        for x in graphs:
            gx = build_gx(x, p)
            rep.cases += 1
            if not gx.is_equivalence():
                rep.fail(f"order of G_x is not an equivalence for {x.edge_list()}")
            for images in permutations(range(n)):
                pi = Permutation(dict(zip(range(n), images)))
                y = relabel(pi, x)
                lift = lift_graph_isomorphism(pi, x, p)
                rep.cases += 1
                if not is_morphism(lift.mapping, gx, build_gx(y, p), "isomorphism"):
                    rep.fail(f"lift of {images} on {x.edge_list()} is not an isomorphism")
            for y in graphs:
                gy = build_gx(y, p)
                for h in find_morphisms(gx, gy, "isomorphism", limit=limit):
                    rep.cases += 1
                    for v, w in h.mapping.items():
                        if v[0] == SEQ and (w[0] != SEQ or len(w[1]) != len(v[1])):
                            rep.fail(f"{x.edge_list()} -> {y.edge_list()}: {v} sent to {w}")
                            break
    return rep


@_timed
def h_characterization(
    seed: int = 0, count: int = 5, p: TruncationParams = TruncationParams(1, 2, 1), samples: int = 50
) -> SuiteReport:
    rep = SuiteReport("h-characterization")
    if not signature_complete(p):
        rep.notes.append(f"{p} is not signature-complete; converse skipped")
    rng = random.Random(seed)
    for T in tree_corpus(p, count, seed, density=None):
        E = encode_gprime(T, p)
        for _ in range(samples):
            h = random_h_element(E.domain, rng)
            rep.cases += 1
            if not in_subgroup(h, "H", E.domain) or relabel(h, E) != E:
                rep.fail(f"{T.sorted_nodes()}: sampled H element is not an automorphism")
        if not signature_complete(p):
            continue
        for g in find_morphisms(E, E, "isomorphism"):
            rep.cases += 1
            if not in_subgroup(Permutation(g.mapping), "H", E.domain):
                rep.fail(f"{T.sorted_nodes()}: automorphism outside H")
                break
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "normal-form": normal_form,
    "slice-injectivity": slice_injectivity,
    "reduction-forward": reduction_forward,
    "reduction-roundtrip": reduction_roundtrip,
    "separation": separation,
    "rigidity": rigidity,
    "homo-injectivity": homo_injectivity,
    "weak-collapse": weak_collapse,
    "ultrametric": ultrametric,
    "geodesic": geodesic,
    "monoid": monoid,
    "natural-action": natural_action_vs_embeddability,
    "graph-trees": graph_sequence_trees,
    "h-characterization": h_characterization,
}
