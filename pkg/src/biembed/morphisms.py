"""Embeddings, isomorphisms, strong and weak homomorphisms between finite
structures: verification, exhaustive search, and the constructive maps
between gadget builds."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .gadgets import VARIANTS, build_gprime, build_ordered_gt
from .seqs import EMPTY, seq_code
from .structures import FinStructure
from .trees import LipschitzMap, NormalTree, TruncationParams, verify_witness
from .vertices import (
    BRANCH,
    GADGET,
    PLUS,
    PLUSPLUS,
    SEQ,
    STAR,
    vbranch,
    vgadget,
    vplus,
    vplusplus,
    vseq,
    vstar,
)

KINDS = ("embedding", "isomorphism", "homomorphism", "weak_homomorphism")
INJECTIVE = frozenset({"embedding", "isomorphism"})


@dataclass(frozen=True)
class Morphism:
    kind: str
    mapping: Mapping

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown morphism kind {self.kind!r}")
        object.__setattr__(self, "mapping", dict(self.mapping))

    def __call__(self, v):
        return self.mapping[v]

    def __hash__(self) -> int:
        return hash((self.kind, frozenset(self.mapping.items())))

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown morphism kind {kind!r}")


def is_morphism(h: Mapping, A: FinStructure, B: FinStructure, kind: str) -> bool:
    _check_kind(kind)
    h = h.mapping if isinstance(h, Morphism) else h
    if any(a not in h for a in A.domain):
        raise ValueError("map is not total on the source domain")
    if any(h[a] not in B.domain for a in A.domain):
        return False
    if A.root is not None and B.root is not None and h[A.root] != B.root:
        return False
    images = [h[a] for a in A.domain]
    if kind in INJECTIVE and len(set(images)) != len(images):
        return False
    if kind == "isomorphism" and len(set(images)) != len(B.domain):
        return False
    forward_only = kind == "weak_homomorphism"
    dom = A.vertices()
    for a in dom:
        for c in dom:
            for rel_a, rel_b in ((A.has_edge, B.has_edge), (A.q, B.q)):
                x, y = rel_a(a, c), rel_b(h[a], h[c])
                if (x and not y) if forward_only else (x != y):
                    return False
    return True


# -- search -------------------------------------------------------------------


class _Indexed:
    """Integer-indexed copy of a structure for the inner loops."""

    def __init__(self, S: FinStructure):
        self.verts = S.vertices()
        self.index = {v: i for i, v in enumerate(self.verts)}
        n = len(self.verts)
        self.adj = [frozenset(self.index[w] for w in S.adj[v]) for v in self.verts]
        self.nbrs = [sorted(a) for a in self.adj]
        self.deg = [len(a) for a in self.adj]
        q = S.order or frozenset()
        self.q = frozenset((self.index[a], self.index[b]) for a, b in q)
        self.has_q = bool(self.q)
        self.qout = [0] * n
        self.qin = [0] * n
        for a, b in self.q:
            self.qout[a] += 1
            self.qin[b] += 1
        self.root = None if S.root is None else self.index[S.root]


def _search_order(A: _Indexed, start: Optional[int]) -> tuple[list[int], list[int]]:
    """Vertices of A in BFS order, component by component, with BFS parents."""
    n = len(A.verts)
    parent = [-1] * n
    seen = [False] * n
    order: list[int] = []
    starts = ([start] if start is not None else []) + list(range(n))
    for s in starts:
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in A.nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    queue.append(w)
    return order, parent


class _TreeEmbeddability:
    """``can(a, b, pb)``: the subtree of A below ``a`` (BFS-rooted) maps
    injectively and edge-preservingly into the part of acyclic B hanging off
    ``b`` away from ``pb``.  Necessary for any embedding extending a -> b."""

    def __init__(self, A: _Indexed, B: _Indexed, parent: list[int], exact_degree: bool):
        self.A, self.B = A, B
        self.children = [[] for _ in A.verts]
        for v, p in enumerate(parent):
            if p >= 0:
                self.children[p].append(v)
        self.exact = exact_degree
        self.memo: dict = {}

    def can(self, a: int, b: int, pb: int) -> bool:
        key = (a, b, pb)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        A, B = self.A, self.B
        kids = self.children[a]
        if self.exact and A.deg[a] != B.deg[b]:
            result = False
        else:
            slots = [w for w in B.nbrs[b] if w != pb]
            result = len(kids) <= len(slots) and self._match(kids, slots, b)
        self.memo[key] = result
        return result

    def _match(self, kids: list[int], slots: list[int], b: int) -> bool:
        owner: dict[int, int] = {}
        ok = {c: [w for w in slots if self.can(c, w, b)] for c in kids}

        def augment(c: int, seen: set) -> bool:
            for w in ok[c]:
                if w in seen:
                    continue
                seen.add(w)
                if w not in owner or augment(owner[w], seen):
                    owner[w] = c
                    return True
            return False

        return all(augment(c, set()) for c in kids)


def _is_forest_component_tree(A: _Indexed, order: list[int], parent: list[int]) -> bool:
    edges = sum(A.deg) // 2
    roots = sum(1 for v in order if parent[v] < 0)
    return edges == len(order) - roots


def _iter_morphisms(A: FinStructure, B: FinStructure, kind: str) -> Iterator[dict]:
    IA, IB = _Indexed(A), _Indexed(B)
    n, m = len(IA.verts), len(IB.verts)
    if kind == "isomorphism" and (
        n != m or A.edge_count() != B.edge_count() or len(IA.q) != len(IB.q)
    ):
        return
    if n == 0:
        yield {}
        return
    rooted = IA.root is not None and IB.root is not None
    order, parent = _search_order(IA, IA.root if rooted else None)
    injective = kind in INJECTIVE
    weak = kind == "weak_homomorphism"
    exact = kind == "isomorphism"
    check_q = IA.has_q or IB.has_q

    dp = None
    if injective and _is_forest_component_tree(IA, order, parent) and B.is_acyclic():
        dp = _TreeEmbeddability(IA, IB, parent, exact)

    h = [-1] * n
    used = [0] * m
    assigned: list[int] = []

    def fits(a: int, b: int) -> bool:
        if injective:
            if used[b]:
                return False
            if exact:
                if IA.deg[a] != IB.deg[b] or IA.qout[a] != IB.qout[b] or IA.qin[a] != IB.qin[b]:
                    return False
            elif IA.deg[a] > IB.deg[b] or IA.qout[a] > IB.qout[b] or IA.qin[a] > IB.qin[b]:
                return False
        if dp is not None:
            pa = parent[a]
            if not dp.can(a, b, h[pa] if pa >= 0 else -1):
                return False
        adj_a, adj_b = IA.adj[a], IB.adj[b]
        qa, qb = IA.q, IB.q
        if check_q:
            x, y = (a, a) in qa, (b, b) in qb
            if (x and not y) if weak else (x != y):
                return False
        for c in assigned:
            d = h[c]
            x, y = c in adj_a, d in adj_b
            if (x and not y) if weak else (x != y):
                return False
            if check_q:
                for x, y in (((a, c) in qa, (b, d) in qb), ((c, a) in qa, (d, b) in qb)):
                    if (x and not y) if weak else (x != y):
                        return False
        return True

    def candidates(a: int) -> list[int]:
        pa = parent[a]
        if pa >= 0:
            return IB.nbrs[h[pa]]
        if rooted and a == IA.root:
            return [IB.root]
        return list(range(m))

    iters: list = [None] * n
    pos = 0
    iters[0] = iter(candidates(order[0]))
    while pos >= 0:
        a = order[pos]
        if h[a] >= 0:
            used[h[a]] -= 1
            h[a] = -1
            assigned.pop()
        for b in iters[pos]:
            if fits(a, b):
                h[a] = b
                used[b] += 1
                assigned.append(a)
                break
        else:
            pos -= 1
            continue
        if pos == n - 1:
            yield {IA.verts[i]: IB.verts[h[i]] for i in range(n)}
        else:
            pos += 1
            iters[pos] = iter(candidates(order[pos]))


def find_morphisms(
    A: FinStructure, B: FinStructure, kind: str, limit: Optional[int] = None
) -> list[Morphism]:
    """All morphisms of the given kind from A to B (at most ``limit``), in a
    fixed order: A's vertices breadth-first, candidates in vertex order."""
    _check_kind(kind)
    out = []
    for h in _iter_morphisms(A, B, kind):
        out.append(Morphism(kind, h))
        if limit is not None and len(out) >= limit:
            break
    return out


def find_morphism(A: FinStructure, B: FinStructure, kind: str) -> Optional[Morphism]:
    found = find_morphisms(A, B, kind, limit=1)
    return found[0] if found else None


# -- gadget maps --------------------------------------------------------------

_BUILDERS = {"ordered_gt": build_ordered_gt, "gprime": build_gprime}
_MODES = {"ordered_gt": "lex_preserving", "gprime": "code_monotone"}


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")


def _image(v: tuple, f: LipschitzMap) -> tuple:
    t = v[0]
    if t == SEQ:
        return vseq(f(v[1]))
    if t == STAR:
        return vstar(f(v[1]))
    if t == PLUS:
        return vplus(f(v[1]))
    if t == PLUSPLUS:
        return vplusplus(f(v[1]))
    if t == GADGET:
        _, u, s, x = v
        return vgadget(u, f(s), x)
    if t == BRANCH:
        _, s, i, k = v
        fs = f(s)
        if i > seq_code(fs) + 2:
            raise ValueError(f"branch {i} at {s!r} has no counterpart at {fs!r}")
        return vbranch(fs, i, k)
    raise ValueError(f"no image rule for {v!r}")


def embed_from_witness(
    f: LipschitzMap, S: NormalTree, T: NormalTree, variant: str, p: TruncationParams
) -> Morphism:
    """The embedding between builds of S and T induced by a witness f."""
    _check_variant(variant)
    if not verify_witness(f, S, T, _MODES[variant], p):
        raise ValueError(f"map is not a {_MODES[variant]} witness")
    build = _BUILDERS[variant]
    A, B = build(S, p), build(T, p)
    g = Morphism("embedding", {v: _image(v, f) for v in A.domain})
    if not is_morphism(g, A, B, "embedding"):
        raise RuntimeError("induced map failed verification")
    return g


def extract_witness(
    g: Morphism, S: NormalTree, T: NormalTree, variant: str, p: TruncationParams
) -> LipschitzMap:
    """Restrict an embedding between builds to the sequence vertices."""
    _check_variant(variant)
    f = {}
    for v, w in g.mapping.items():
        if v[0] == SEQ:
            if w[0] != SEQ:
                raise ValueError(f"sequence vertex {v!r} sent to {w!r}")
            f[v[1]] = w[1]
    witness = LipschitzMap(f)
    if variant == "gprime" and f.get(EMPTY) != EMPTY:
        raise ValueError("the empty sequence is not fixed")
    if not verify_witness(witness, S, T, "plain", p):
        raise ValueError("restriction is not a witness")
    return witness


# -- maps to and from paths -----------------------------------------------------


def path_graph(n: int) -> FinStructure:
    return FinStructure(range(n), [(i, i + 1) for i in range(n - 1)])


def distance_weak_homo(G: FinStructure, g0) -> Morphism:
    """Vertex to distance from ``g0``; lands in ``path_graph(eccentricity + 1)``."""
    if not G.is_tree():
        raise ValueError("expected a connected acyclic graph")
    return Morphism("weak_homomorphism", G.distances_from(g0))


def fold_weak_homo(path_len: int, G: FinStructure, edge: tuple) -> Morphism:
    """Fold ``path_graph(path_len)`` onto an edge of G, alternating ends."""
    g0, g1 = edge
    if not G.has_edge(g0, g1):
        raise ValueError(f"{edge!r} is not an edge")
    return Morphism("weak_homomorphism", {n: (g0, g1)[n % 2] for n in range(path_len)})
