"""Gadget structures built from truncated normal trees and from graphs.

Truncation of the infinite tails: after the branch point of a stem the
all-zeros continuation keeps ``tail`` vertices, the side branch keeps
``tail + 2`` (its first vertex plus ``tail + 1`` zeros), and every branch ray
at ``s++`` keeps ``tail + 1`` vertices.  The unequal lengths stop the two
continuations from being swapped by an automorphism of the finite build.
"""

from __future__ import annotations

from typing import Optional

from .seqs import (
    EMPTY,
    FinSeq,
    all_seqs,
    lex_leq,
    pair,
    predecessor,
    preceq_key,
    seq_code,
    seqs_of_length,
    theta,
    unpair,
    zeros,
)
from .structures import FinStructure, Permutation, ray_rank, transport
from .trees import BoundsError, NormalTree, TruncationParams
from .vertices import (
    BRANCH,
    GADGET,
    LEAF,
    PLUS,
    PLUSPLUS,
    SEQ,
    STAR,
    vbranch,
    vgadget,
    vleaf,
    vplus,
    vplusplus,
    vseq,
    vstar,
)

VARIANTS = ("ordered_gt", "gprime")


def _check_tree(T: NormalTree, p: TruncationParams) -> None:
    for u, s in T.nodes:
        if not p.within(s):
            raise BoundsError(f"node {(u, s)!r} outside {p}")


def branch_point(u: FinSeq) -> FinSeq:
    """The stem vertex where the side branch leaves: ``0^(2 theta(u) + 2)``."""
    return zeros(2 * theta(u) + 2)


def gadget_tails(u: FinSeq, tail: int) -> list[FinSeq]:
    """All ``x`` for which ``(u, s, x)`` is a vertex of the truncated build."""
    bp = 2 * theta(u) + 2
    stem = [zeros(k) for k in range(bp + tail + 1)]
    side = [zeros(bp) + (1,) + zeros(k) for k in range(tail + 2)]
    return stem + side


def build_g0(p: TruncationParams) -> FinStructure:
    seqs = p.seqs()
    domain = [vseq(s) for s in seqs] + [vstar(s) for s in seqs if s]
    edges = []
    for s in seqs:
        if s:
            edges.append((vstar(s), vseq(s)))
            edges.append((vstar(s), vseq(predecessor(s))))
    return FinStructure(domain, edges)


def _gt_parts(T: NormalTree, p: TruncationParams) -> tuple[list, list]:
    _check_tree(T, p)
    g0 = build_g0(p)
    domain = list(g0.domain)
    edges = g0.edge_list()
    for u, s in T.sorted_nodes():
        for x in gadget_tails(u, p.tail):
            v = vgadget(u, s, x)
            domain.append(v)
            edges.append((v, vgadget(u, s, predecessor(x)) if x else vseq(s)))
    return domain, edges


def build_gt(T: NormalTree, p: TruncationParams) -> FinStructure:
    domain, edges = _gt_parts(T, p)
    return FinStructure(domain, edges)


def order_key(v: tuple) -> tuple:
    """Position of a vertex in the linear order of the ordered build."""
    t = v[0]
    if t == SEQ:
        return (0, preceq_key(v[1]))
    if t == STAR:
        return (1, preceq_key(v[1]))
    if t == GADGET:
        _, u, s, x = v
        return (2, preceq_key(s), preceq_key(u), preceq_key(x))
    raise ValueError(f"vertex {v!r} has no place in the order")


def _linear_order(domain, strict: bool) -> list[tuple]:
    ranked = sorted(domain, key=order_key)
    if strict:
        return [(a, b) for i, a in enumerate(ranked) for b in ranked[i + 1 :]]
    return [(a, b) for i, a in enumerate(ranked) for b in ranked[i:]]


def build_ordered_gt(T: NormalTree, p: TruncationParams) -> FinStructure:
    domain, edges = _gt_parts(T, p)
    return FinStructure(domain, edges, _linear_order(domain, strict=False))


def build_strict_gt(T: NormalTree, p: TruncationParams) -> FinStructure:
    domain, edges = _gt_parts(T, p)
    return FinStructure(domain, edges, _linear_order(domain, strict=True))


def build_gprime(T: NormalTree, p: TruncationParams) -> FinStructure:
    domain, edges = _gt_parts(T, p)
    for s in p.seqs():
        plus, plusplus = vplus(s), vplusplus(s)
        domain += [plus, plusplus]
        edges += [(plus, vseq(s)), (plus, plusplus)]
        for i in range(seq_code(s) + 3):
            for k in range(1, p.tail + 2):
                domain.append(vbranch(s, i, k))
                edges.append((vbranch(s, i, k), vbranch(s, i, k - 1) if k > 1 else plusplus))
    return FinStructure(domain, edges)


# -- coding into the naturals ------------------------------------------------


def node_rank(T: NormalTree) -> dict:
    """Enumeration of the nodes of ``T``: by code of ``s``, then ``u`` lex."""
    nodes = sorted(T.nodes, key=lambda n: (seq_code(n[1]), n[0]))
    return {node: i for i, node in enumerate(nodes)}


def gprime_code_map(T: NormalTree, p: TruncationParams) -> dict:
    """Vertex of ``build_gprime(T, p)`` to its natural-number code."""
    codes: dict = {}
    for s in p.seqs():
        c = seq_code(s)
        codes[vseq(s)] = pair(0, c)
        if s:
            codes[vstar(s)] = pair(1, c)
        codes[vplus(s)] = pair(2, c)
        codes[vplusplus(s)] = pair(3, c)
        for i in range(c + 3):
            for k in range(1, p.tail + 2):
                codes[vbranch(s, i, k)] = pair(3 * ray_rank(c, i) + 5, k - 1)
    ranks = node_rank(T)
    offset = 0
    for (u, s), j in sorted(ranks.items(), key=lambda kv: kv[1]):
        bp = 2 * theta(u) + 2
        for x in gadget_tails(u, p.tail):
            if len(x) <= bp:
                code = pair(4, offset + len(x))
            elif x[bp] == 0:
                code = pair(3 * j + 6, len(x) - bp - 1)
            else:
                code = pair(3 * j + 7, len(x) - bp - 1)
            codes[vgadget(u, s, x)] = code
        offset += bp + 1
    return codes


def encode_gprime(T: NormalTree, p: TruncationParams) -> FinStructure:
    return transport(build_gprime(T, p), gprime_code_map(T, p))


# -- sequence trees of graphs ------------------------------------------------


def rp(s: FinSeq) -> tuple[int, int]:
    """The pair of entries of ``s`` singled out by its length."""
    if not s:
        raise ValueError("rp is undefined on the empty sequence")
    n, m = unpair(len(s) - 1)
    return s[n], s[m]


def _graph_size(x: FinStructure) -> int:
    size = len(x)
    if x.domain != frozenset(range(size)):
        raise ValueError("graph vertices must be 0..n-1")
    return size


def fs_leaf_parents(x: FinStructure, p: TruncationParams) -> list[FinSeq]:
    """Sequences that receive a terminal leaf, in ``seq_code`` order; the
    ``k``-th one carries ``Leaf(k)``."""
    size = _graph_size(x)
    seqs = all_seqs(p.depth, size) if size else [EMPTY]
    parents = [s for s in seqs if s and x.has_edge(*rp(s))]
    return sorted(parents, key=seq_code)


def build_fs_tree(x: FinStructure, p: TruncationParams) -> FinStructure:
    size = _graph_size(x)
    seqs = all_seqs(p.depth, size) if size else [EMPTY]
    domain = [vseq(s) for s in seqs]
    edges = [(vseq(s), vseq(predecessor(s))) for s in seqs if s]
    for k, s in enumerate(fs_leaf_parents(x, p)):
        domain.append(vleaf(k))
        edges.append((vleaf(k), vseq(s)))
    return FinStructure(domain, edges)


def gx_related(a: tuple, b: tuple) -> bool:
    if a[0] == LEAF or b[0] == LEAF:
        return a[0] == b[0] == LEAF
    s, t = a[1], b[1]
    if not s or not t:
        return not s and not t
    return rp(s) == rp(t)


def build_gx(x: FinStructure, p: TruncationParams) -> FinStructure:
    tree = build_fs_tree(x, p)
    dom = tree.vertices()
    order = [(a, b) for a in dom for b in dom if gx_related(a, b)]
    return FinStructure(dom, tree.edge_list(), order, root=vseq(EMPTY))


def lift_graph_isomorphism(pi: Permutation, x: FinStructure, p: TruncationParams) -> Permutation:
    """Vertex map from the sequence tree of ``x`` to that of ``relabel(pi, x)``:
    sequences are relabelled entrywise and leaves follow their parents.

    Both trees have the same vertex set (same sequences, same leaf count),
    so the map is a permutation of it."""
    size = _graph_size(x)
    seqs = all_seqs(p.depth, size) if size else [EMPTY]
    mapping = {vseq(s): vseq(tuple(pi(n) for n in s)) for s in seqs}
    y = FinStructure(range(size), [(pi(a), pi(b)) for a, b in x.edge_list()])
    y_index = {s: k for k, s in enumerate(fs_leaf_parents(y, p))}
    for k, s in enumerate(fs_leaf_parents(x, p)):
        mapping[vleaf(k)] = vleaf(y_index[tuple(pi(n) for n in s)])
    return Permutation(mapping)
