"""Finite relational structures with an edge relation P and an optional
binary relation Q, plus permutation actions and the subgroup tests."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Optional

from .seqs import pair, unpair
from .vertices import LEAF, SEQ, vertex_key


class FinStructure:
    """Domain, symmetric irreflexive edges, optional relation ``order`` (Q)
    and optional root.  ``order=None`` and an empty order are treated alike
    by the morphism code but are kept apart for equality."""

    __slots__ = ("domain", "adj", "order", "root", "_sorted", "_edges")

    def __init__(
        self,
        domain: Iterable[Hashable],
        edges: Iterable[tuple] = (),
        order: Optional[Iterable[tuple]] = None,
        root: Optional[Hashable] = None,
    ):
        self.domain = frozenset(domain)
        adj: dict = {v: set() for v in self.domain}
        for a, b in edges:
            if a == b:
                raise ValueError(f"edge relation must be irreflexive: {a!r}")
            if a not in adj or b not in adj:
                raise ValueError(f"edge {(a, b)!r} leaves the domain")
            adj[a].add(b)
            adj[b].add(a)
        self.adj = {v: frozenset(ns) for v, ns in adj.items()}
        self.order = None if order is None else frozenset((a, b) for a, b in order)
        if self.order is not None:
            for a, b in self.order:
                if a not in self.domain or b not in self.domain:
                    raise ValueError(f"order pair {(a, b)!r} leaves the domain")
        if root is not None and root not in self.domain:
            raise ValueError(f"root {root!r} not in the domain")
        self.root = root
        self._sorted = None
        self._edges = None

    def __len__(self) -> int:
        return len(self.domain)

    def __iter__(self) -> Iterator:
        return iter(self.vertices())

    def __repr__(self) -> str:
        q = "-" if self.order is None else len(self.order)
        return f"FinStructure(|V|={len(self)}, |E|={self.edge_count()}, |Q|={q}, root={self.root!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinStructure):
            return NotImplemented
        return structures_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.domain, self.edges, self.order, self.root))

    def vertices(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self.domain, key=vertex_key)
        return self._sorted

    @property
    def edges(self) -> frozenset:
        if self._edges is None:
            self._edges = frozenset(frozenset((a, b)) for a in self.adj for b in self.adj[a])
        return self._edges

    def edge_list(self) -> list[tuple]:
        out = []
        for a in self.vertices():
            out.extend((a, b) for b in sorted(self.adj[a], key=vertex_key) if vertex_key(a) < vertex_key(b))
        return out

    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.adj.values()) // 2

    def has_edge(self, a, b) -> bool:
        return b in self.adj.get(a, ())

    def q(self, a, b) -> bool:
        return self.order is not None and (a, b) in self.order

    def degree(self, v) -> int:
        return len(self.adj[v])

    def neighbors(self, v) -> list:
        return sorted(self.adj[v], key=vertex_key)

    def with_order(self, order: Optional[Iterable[tuple]]) -> "FinStructure":
        return FinStructure(self.domain, self.edge_list(), order, self.root)

    def with_root(self, root) -> "FinStructure":
        return FinStructure(self.domain, self.edge_list(), self.order, root)

    # -- graph shape ---------------------------------------------------------

    def distances_from(self, source) -> dict:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in self.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        if not self.domain:
            return False
        return len(self.distances_from(next(iter(self.domain)))) == len(self.domain)

    def is_acyclic(self) -> bool:
        seen: set = set()
        components = 0
        for v in self.domain:
            if v not in seen:
                components += 1
                seen.update(self.distances_from(v))
        return self.edge_count() == len(self.domain) - components

    def is_tree(self) -> bool:
        return self.is_connected() and self.edge_count() == len(self.domain) - 1

    # -- order shape ---------------------------------------------------------

    def _order(self) -> frozenset:
        return self.order or frozenset()

    def order_is_transitive(self) -> bool:
        q = self._order()
        succ: dict = {}
        for a, b in q:
            succ.setdefault(a, set()).add(b)
        return all((a, c) in q for a, b in q for c in succ.get(b, ()))

    def is_linear_order(self) -> bool:
        q = self._order()
        dom = self.vertices()
        if any((a, a) not in q for a in dom):
            return False
        if any((b, a) in q for a, b in q if a != b):
            return False
        total = all((a, b) in q or (b, a) in q for i, a in enumerate(dom) for b in dom[i + 1 :])
        return total and self.order_is_transitive()

    def is_strict_linear_order(self) -> bool:
        q = self._order()
        dom = self.vertices()
        if any((a, a) in q for a in dom):
            return False
        if any((b, a) in q for a, b in q):
            return False
        total = all((a, b) in q or (b, a) in q for i, a in enumerate(dom) for b in dom[i + 1 :])
        return total and self.order_is_transitive()

    def is_equivalence(self) -> bool:
        q = self._order()
        return (
            all((a, a) in q for a in self.domain)
            and all((b, a) in q for a, b in q)
            and self.order_is_transitive()
        )


def structures_equal(A: FinStructure, B: FinStructure) -> bool:
    """Literal equality of labelled structures (not isomorphism)."""
    return (
        A.domain == B.domain
        and A.adj == B.adj
        and A.order == B.order
        and A.root == B.root
    )


def canonical_coding(A: FinStructure) -> dict:
    """Number the vertices 0..n-1 in vertex order."""
    return {v: i for i, v in enumerate(A.vertices())}


def transport(A: FinStructure, mapping: Mapping) -> FinStructure:
    """Image of ``A`` under an injective relabelling of its vertices."""
    if len(set(mapping[v] for v in A.domain)) != len(A.domain):
        raise ValueError("relabelling is not injective on the domain")
    order = None if A.order is None else ((mapping[a], mapping[b]) for a, b in A.order)
    root = None if A.root is None else mapping[A.root]
    return FinStructure(
        (mapping[v] for v in A.domain),
        ((mapping[a], mapping[b]) for a, b in A.edge_list()),
        order,
        root,
    )


# -- permutations and injections ----------------------------------------------


@dataclass(frozen=True)
class FinInjection:
    """Injective map from ``range(len(images))`` into ``range(codomain_size)``."""

    images: tuple[int, ...]
    codomain_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if len(set(self.images)) != len(self.images):
            raise ValueError(f"not injective: {self.images}")
        if any(not 0 <= j < self.codomain_size for j in self.images):
            raise ValueError(f"image outside range({self.codomain_size}): {self.images}")

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def range(self) -> frozenset[int]:
        return frozenset(self.images)

    def inverse_map(self) -> dict[int, int]:
        return {j: i for i, j in enumerate(self.images)}

    def then(self, other: "FinInjection") -> "FinInjection":
        """``other after self``."""
        if other.domain_size != self.codomain_size:
            raise ValueError(
                f"size mismatch: codomain {self.codomain_size} vs domain {other.domain_size}"
            )
        return FinInjection(tuple(other(j) for j in self.images), other.codomain_size)

    @classmethod
    def identity(cls, n: int) -> "FinInjection":
        return cls(tuple(range(n)), n)


class Permutation:
    """A bijection of a finite set of hashable points onto itself."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping):
        mapping = dict(mapping)
        if set(mapping) != set(mapping.values()):
            raise ValueError("not a permutation of its domain")
        self.mapping = mapping

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(frozenset(self.mapping.items()))

    def __repr__(self) -> str:
        moved = {k: v for k, v in self.mapping.items() if k != v}
        return f"Permutation(n={len(self.mapping)}, moved={moved})"

    @property
    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self after other``."""
        if self.domain != other.domain:
            raise ValueError("domain mismatch")
        return Permutation({x: self.mapping[y] for x, y in other.mapping.items()})

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self.mapping.items()})

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.mapping.items())

    @classmethod
    def identity(cls, points: Iterable) -> "Permutation":
        return cls({x: x for x in points})

    @classmethod
    def swap(cls, points: Iterable, a, b) -> "Permutation":
        m = {x: x for x in points}
        m[a], m[b] = b, a
        return cls(m)


def relabel(p: Permutation, A: FinStructure) -> FinStructure:
    """The usual action: vertex ``v`` becomes ``p(v)``; relations follow."""
    missing = A.domain - p.domain
    if missing:
        raise ValueError(f"permutation does not cover {len(missing)} domain points")
    return transport(A, p.mapping)


# -- subgroup membership ------------------------------------------------------


def ray_rank(code: int, i: int) -> int:
    """Rank of ``(s, i)`` (with ``code = seq_code(s)``) among all pairs
    ``(t, j)``, ``j <= seq_code(t) + 2``, ordered by code of t, then j."""
    if not 0 <= i <= code + 2:
        raise ValueError(f"branch index {i} out of range for code {code}")
    return code * (code + 5) // 2 + i


def ray_unrank(n: int) -> tuple[int, int]:
    """``(seq_code, i)`` with ``ray_rank(seq_code, i) == n``."""
    c = 0
    while (c + 1) * (c + 6) // 2 <= n:
        c += 1
    return c, n - c * (c + 5) // 2


def _columns(p: Permutation, domain: frozenset) -> Optional[dict[int, int]]:
    cols: dict[int, int] = {}
    for code in domain:
        n, k = unpair(code)
        m, k2 = unpair(p(code))
        if k2 != k or cols.setdefault(n, m) != m:
            return None
    return cols


def _h_column_ok(n: int, m: int) -> bool:
    if n <= 4:
        return m == n
    j, r = divmod(n - 5, 3)
    if r == 0:
        if m < 5 or (m - 5) % 3:
            return False
        return ray_unrank(j)[0] == ray_unrank((m - 5) // 3)[0]
    if r == 1:
        return m in (n, n + 1)
    return m in (n, n - 1)


def _rp_class(v):
    from .gadgets import rp  # local import: gadgets depends on this module

    return None if not v[1] else rp(v[1])


def in_subgroup(p: Permutation, which: str, ctx: Iterable) -> bool:
    """Membership of ``p`` in H, H1 or H2 over the finite domain ``ctx``.

    For ``"H"`` the domain is a set of pair codes; for ``"H1"``/``"H2"`` it
    is a set of SEQ and LEAF vertices.
    """
    domain = frozenset(ctx)
    if p.domain != domain:
        raise ValueError("permutation domain does not match the context")
    if which == "H":
        cols = _columns(p, domain)
        return cols is not None and all(_h_column_ok(n, m) for n, m in cols.items())
    if which == "H1":
        seqs = [v for v in domain if v[0] == SEQ]
        if any(p(v) != v for v in domain if v[0] == LEAF):
            return False
        if any(p(v)[0] != SEQ for v in seqs):
            return False
        before: dict = {}
        after: dict = {}
        for v in seqs:
            a, b = _rp_class(v), _rp_class(p(v))
            # rp classes must correspond one-to-one
            if before.setdefault(a, b) != b or after.setdefault(b, a) != a:
                return False
        return True
    if which == "H2":
        return all(p(v) == v for v in domain if v[0] == SEQ)
    raise ValueError(f"unknown subgroup {which!r}")


def random_h_element(domain: Iterable[int], rng) -> Permutation:
    """A random permutation in H over a finite code domain: branch-ray columns
    of the same sequence are shuffled among themselves, and a tail column pair
    (3j+6, 3j+7) is swapped when both columns have the same height."""
    domain = frozenset(domain)
    heights: dict[int, set[int]] = {}
    for code in domain:
        n, k = unpair(code)
        heights.setdefault(n, set()).add(k)
    cols = {n: n for n in heights}
    groups: dict[int, list[int]] = {}
    for n in sorted(heights):
        if n >= 5 and (n - 5) % 3 == 0:
            groups.setdefault(ray_unrank((n - 5) // 3)[0], []).append(n)
    for members in groups.values():
        by_height: dict = {}
        for n in members:
            by_height.setdefault(frozenset(heights[n]), []).append(n)
        for same in by_height.values():
            shuffled = list(same)
            rng.shuffle(shuffled)
            cols.update(zip(same, shuffled))
    for n in sorted(heights):
        if n >= 6 and (n - 6) % 3 == 0 and heights.get(n + 1) == heights[n] and rng.random() < 0.5:
            cols[n], cols[n + 1] = n + 1, n

    return Permutation({code: pair(cols[unpair(code)[0]], unpair(code)[1]) for code in domain})
