"""Seeded random inputs and exhaustive small families for the suites."""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterator

from .seqs import binary_seqs, pointwise_leq, seqs_of_length
from .structures import FinStructure, Permutation
from .trees import NormalTree, QoTree, TruncationParams


def _prefix_close(nodes: set) -> set:
    out = set()
    for node in nodes:
        for k in range(len(node[0]) + 1):
            out.add(tuple(c[:k] for c in node))
    return out


def _up_close(pairs: set, branch: int) -> set:
    out = set(pairs)
    for u, s in pairs:
        out.update((u, t) for t in seqs_of_length(len(s), branch) if pointwise_leq(s, t))
    return out


def random_normal_tree(p: TruncationParams, rng: random.Random, density: float = 0.3) -> NormalTree:
    """Keep each full-depth candidate node with probability ``density``, then
    close under prefixes and under raising the second coordinate."""
    chosen = {
        (u, s)
        for u in binary_seqs(p.depth)
        for s in seqs_of_length(p.depth, p.branch)
        if rng.random() < density
    }
    return NormalTree(frozenset(_up_close(_prefix_close(chosen), p.branch)))


def random_qo_tree(p: TruncationParams, rng: random.Random, density: float = 0.2) -> QoTree:
    chosen = {
        (u, v, s)
        for u in binary_seqs(p.depth)
        for v in binary_seqs(p.depth)
        for s in seqs_of_length(p.depth, p.branch)
        if rng.random() < density
    }
    return QoTree(frozenset(_prefix_close(chosen)))


def tree_corpus(p: TruncationParams, count: int, seed: int, density: float = 0.3) -> list[NormalTree]:
    """``count`` pairwise distinct random normal trees (fewer if the box is
    too small to hold that many)."""
    rng = random.Random(seed)
    seen: dict = {}
    for _ in range(50 * count):
        T = random_normal_tree(p, rng, density=rng.uniform(0.05, 0.6) if density is None else density)
        seen.setdefault(T.nodes, T)
        if len(seen) == count:
            break
    return list(seen.values())


def all_normal_trees(p: TruncationParams) -> list[NormalTree]:
    """Every normal tree in the box, by closing every set of full-depth nodes.

    Every normal tree whose leaves all sit at full depth arises this way;
    shallower leaves are added by closing subsets of all levels."""
    nodes = [
        (u, s)
        for n in range(p.depth + 1)
        for u in binary_seqs(n)
        for s in seqs_of_length(n, p.branch)
    ]
    if len(nodes) > 16:
        raise ValueError("box too large for exhaustive enumeration")
    out = {}
    for bits in product((0, 1), repeat=len(nodes)):
        chosen = {node for node, b in zip(nodes, bits) if b}
        closed = frozenset(_up_close(_prefix_close(chosen), p.branch))
        out.setdefault(closed, NormalTree(closed))
    return sorted(out.values(), key=lambda T: (len(T), T.sorted_nodes()))


def random_graph(n: int, rng: random.Random, edge_prob: float = 0.5) -> FinStructure:
    return FinStructure(range(n), [e for e in combinations(range(n), 2) if rng.random() < edge_prob])


def random_tree_graph(n: int, rng: random.Random) -> FinStructure:
    return FinStructure(range(n), [(i, rng.randrange(i)) for i in range(1, n)])


def random_permutation(points, rng: random.Random) -> Permutation:
    points = list(points)
    shuffled = list(points)
    rng.shuffle(shuffled)
    return Permutation(dict(zip(points, shuffled)))


def all_labeled_graphs(n: int) -> Iterator[FinStructure]:
    slots = list(combinations(range(n), 2))
    for bits in product((0, 1), repeat=len(slots)):
        yield FinStructure(range(n), [e for e, b in zip(slots, bits) if b])


# -- unlabeled trees -----------------------------------------------------------


def _rooted_form(adj: list[list[int]], v: int, parent: int) -> str:
    return "(" + "".join(sorted(_rooted_form(adj, w, v) for w in adj[v] if w != parent)) + ")"


def _centers(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def tree_form(adj: list[list[int]]) -> str:
    """Canonical string of an unlabeled tree (rooted forms at its centers)."""
    return min(_rooted_form(adj, c, -1) for c in _centers(adj))


def unlabeled_trees(n: int) -> list[FinStructure]:
    """One representative per isomorphism class of trees on ``n`` vertices,
    grown leaf by leaf and deduplicated by canonical form."""
    if n <= 0:
        return []
    level = {"()": [[]]}
    for size in range(1, n):
        nxt: dict[str, list[list[int]]] = {}
        for adj in level.values():
            for v in range(size):
                grown = [list(a) for a in adj] + [[v]]
                grown[v].append(size)
                nxt.setdefault(tree_form(grown), grown)
        level = nxt
    out = []
    for form in sorted(level):
        adj = level[form]
        out.append(FinStructure(range(n), [(v, w) for v in range(n) for w in adj[v] if v < w]))
    return out


def leaf_pairs_at_distance_two(G: FinStructure) -> bool:
    leaves = [v for v in G.domain if G.degree(v) == 1]
    return any(
        G.distances_from(a).get(b) == 2 for i, a in enumerate(leaves) for b in leaves[i + 1 :]
    )
