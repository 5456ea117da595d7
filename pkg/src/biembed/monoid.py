"""Graph codes, the natural action of finite injections on them, and the
functional monoid of triples ``(p, u, v)`` acting by copy-or-overwrite."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Iterator

from .seqs import pair, unpair
from .structures import FinInjection, FinStructure


@dataclass(frozen=True)
class GraphCode:
    """A graph on ``range(size)`` read as a symmetric irreflexive bit table."""

    size: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        norm = set()
        for n, m in self.edges:
            if n == m or not (0 <= n < self.size and 0 <= m < self.size):
                raise ValueError(f"bad edge {(n, m)} for size {self.size}")
            norm.add((min(n, m), max(n, m)))
        object.__setattr__(self, "edges", frozenset(norm))

    def bit(self, n: int, m: int) -> int:
        return int((min(n, m), max(n, m)) in self.edges)

    def bit_at(self, code: int) -> int:
        """Bit at the pair code ``pair(n, m)``."""
        n, m = unpair(code)
        if n >= self.size or m >= self.size:
            raise ValueError(f"code {code} outside size {self.size}")
        return self.bit(n, m)

    def codes(self) -> list[int]:
        return sorted(pair(n, m) for n in range(self.size) for m in range(self.size))

    def to_structure(self) -> FinStructure:
        return FinStructure(range(self.size), self.edges)

    @classmethod
    def empty(cls, size: int) -> "GraphCode":
        return cls(size, frozenset())


def all_graph_codes(size: int) -> Iterator[GraphCode]:
    slots = list(combinations(range(size), 2))
    for bits in product((0, 1), repeat=len(slots)):
        yield GraphCode(size, frozenset(e for e, b in zip(slots, bits) if b))


def all_injections(n: int, m: int) -> Iterator[FinInjection]:
    for images in permutations(range(m), n):
        yield FinInjection(images, m)


def natural_action_holds(p: FinInjection, x: GraphCode, y: GraphCode) -> bool:
    if p.domain_size != x.size or p.codomain_size != y.size:
        raise ValueError("injection sizes do not match the codes")
    return all(
        x.bit(n, m) == y.bit(p(n), p(m)) for n in range(x.size) for m in range(n + 1, x.size)
    )


@dataclass(frozen=True)
class MonoidElem:
    """``u`` marks the range of ``p``; ``v`` supplies bits off that range
    and must vanish on pairs inside it."""

    p: FinInjection
    u: tuple
    v: GraphCode

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", tuple(self.u))
        M = self.p.codomain_size
        if len(self.u) != M or self.v.size != M:
            raise ValueError("u and v must have the codomain size")
        rng = self.p.range()
        if any(bool(b) != (n in rng) for n, b in enumerate(self.u)):
            raise ValueError("u is not the range indicator of p")
        if any(self.u[n] and self.u[m] for n, m in self.v.edges):
            raise ValueError("v has an edge inside the range of p")

    @property
    def domain_size(self) -> int:
        return self.p.domain_size

    @property
    def codomain_size(self) -> int:
        return self.p.codomain_size


def identity(size: int) -> MonoidElem:
    return MonoidElem(FinInjection.identity(size), (1,) * size, GraphCode.empty(size))


def make_elem(p: FinInjection, v_edges: Iterable = ()) -> MonoidElem:
    """Element with range indicator derived from ``p``; edges of ``v`` inside
    the range are dropped."""
    rng = p.range()
    u = tuple(int(n in rng) for n in range(p.codomain_size))
    keep = [(n, m) for n, m in v_edges if not (n in rng and m in rng)]
    return MonoidElem(p, u, GraphCode(p.codomain_size, frozenset(keep)))


def act(g: MonoidElem, x: GraphCode) -> GraphCode:
    if x.size != g.domain_size:
        raise ValueError("code size does not match the element")
    edges = set(g.v.edges)
    for n, m in x.edges:
        edges.add((g.p(n), g.p(m)))
    # v has no edges inside the range, so the union is the case split
    return GraphCode(g.codomain_size, frozenset(edges))


def compose(h: MonoidElem, g: MonoidElem) -> MonoidElem:
    """Product ``hg``: act by ``g`` first, then ``h``."""
    if g.codomain_size != h.domain_size:
        raise ValueError("size mismatch in composition")
    q = g.p.then(h.p)
    K = h.codomain_size
    t = tuple(int(n in q.range()) for n in range(K))
    back = h.p.inverse_map()
    edges = set()
    for n in range(K):
        for m in range(n + 1, K):
            if t[n] and t[m]:
                continue
            if not h.u[n] or not h.u[m]:
                bit = h.v.bit(n, m)
            else:
                bit = g.v.bit(back[n], back[m])
            if bit:
                edges.add((n, m))
    return MonoidElem(q, t, GraphCode(K, frozenset(edges)))


def all_elems(n: int, m: int) -> Iterator[MonoidElem]:
    for p in all_injections(n, m):
        rng = p.range()
        free = [(a, b) for a, b in combinations(range(m), 2) if not (a in rng and b in rng)]
        for bits in product((0, 1), repeat=len(free)):
            yield make_elem(p, [e for e, b in zip(free, bits) if b])


# -- action axioms -------------------------------------------------------------


@dataclass
class AxiomReport:
    checked: int = 0
    violations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_action_axioms(
    triples: Iterable[tuple],
    compose_op: Callable,
    identity_op: Callable,
) -> AxiomReport:
    """Check that a set of triples ``(g, x, y)`` is a monoid action.

    ``compose_op(g, h)`` must return ``gh`` (``h`` acts first) and
    ``identity_op(x)`` the unit acting on ``x``.  Violations are keyed by
    the missing triple, so one absent triple is reported once.
    """
    A = set(triples)
    report = AxiomReport()
    by_source: dict = {}
    for g, x, y in A:
        by_source.setdefault(x, []).append((g, y))
    objects = {x for _, x, _ in A} | {y for _, _, y in A}
    for x in sorted(objects, key=_code_key):
        report.checked += 1
        need = (identity_op(x), x, x)
        if need not in A:
            report.violations.setdefault(need, "identity")
    for h, x, y in sorted(A, key=_triple_key):
        for g, z in by_source.get(y, ()):
            report.checked += 1
            need = (compose_op(g, h), x, z)
            if need not in A:
                report.violations.setdefault(need, "composition")
    return report


def _code_key(x: GraphCode) -> tuple:
    return (x.size, sorted(x.edges))


def _triple_key(t: tuple) -> tuple:
    return (_code_key(t[1]), _code_key(t[2]), repr(t[0]))


def natural_action_triples(max_size: int) -> set:
    out = set()
    for n in range(max_size + 1):
        for m in range(n, max_size + 1):
            ys = list(all_graph_codes(m))
            for x in all_graph_codes(n):
                for p in all_injections(n, m):
                    out.update((p, x, y) for y in ys if natural_action_holds(p, x, y))
    return out


def act_graph_triples(max_size: int) -> set:
    out = set()
    for n in range(max_size + 1):
        xs = list(all_graph_codes(n))
        for m in range(n, max_size + 1):
            for g in all_elems(n, m):
                out.update((g, x, act(g, x)) for x in xs)
    return out
