"""Normal trees on 2 x omega and quasi-order trees on 2 x 2 x omega, truncated.

A :class:`NormalTree` is a set of pairs ``(u, s)`` and a :class:`QoTree` a set
of triples ``(u, v, s)``; ``u`` and ``v`` are binary tuples, ``s`` a tuple of
naturals, all three of equal length.  Everything lives inside the box given by
:class:`TruncationParams`: lengths at most ``depth``, entries of ``s`` below
``branch``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

from .seqs import (
    FinSeq,
    all_seqs,
    binary_seqs,
    is_binary,
    preceq_key,
    seq_code,
    seqs_of_length,
)

MODES = ("plain", "lex_preserving", "code_monotone")

Pair = tuple[FinSeq, FinSeq]
Triple = tuple[FinSeq, FinSeq, FinSeq]


class BoundsError(ValueError):
    """A node or sequence falls outside the truncation box."""


@dataclass(frozen=True)
class TruncationParams:
    depth: int
    branch: int
    tail: int = 1

    def __post_init__(self) -> None:
        if self.depth < 0 or self.branch < 1 or self.tail < 0:
            raise BoundsError(
                f"invalid bounds depth={self.depth} branch={self.branch} tail={self.tail}"
            )

    def seqs(self) -> list[FinSeq]:
        return all_seqs(self.depth, self.branch)

    def within(self, s: FinSeq) -> bool:
        return len(s) <= self.depth and all(0 <= n < self.branch for n in s)


@dataclass(frozen=True)
class NormalTree:
    nodes: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset((tuple(u), tuple(s)) for u, s in self.nodes))
        for u, s in self.nodes:
            if len(u) != len(s) or not is_binary(u):
                raise ValueError(f"malformed node {(u, s)!r}")

    def __contains__(self, node: object) -> bool:
        return node in self.nodes

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.sorted_nodes())

    def __len__(self) -> int:
        return len(self.nodes)

    def sorted_nodes(self) -> list[Pair]:
        return sorted(self.nodes, key=lambda n: (len(n[0]), preceq_key(n[1]), n[0]))

    def issubset(self, other: "NormalTree") -> bool:
        return self.nodes <= other.nodes


@dataclass(frozen=True)
class QoTree:
    nodes: frozenset[Triple] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "nodes", frozenset((tuple(u), tuple(v), tuple(s)) for u, v, s in self.nodes)
        )
        for u, v, s in self.nodes:
            if not (len(u) == len(v) == len(s)) or not (is_binary(u) and is_binary(v)):
                raise ValueError(f"malformed node {(u, v, s)!r}")

    def __contains__(self, node: object) -> bool:
        return node in self.nodes

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.sorted_nodes())

    def __len__(self) -> int:
        return len(self.nodes)

    def sorted_nodes(self) -> list[Triple]:
        return sorted(self.nodes, key=lambda n: (len(n[0]), n[0], n[1], n[2]))


@dataclass(frozen=True)
class LipschitzMap:
    """A finite map on sequences; see :func:`verify_witness` for the shape checks."""

    assignments: Mapping[FinSeq, FinSeq]

    def __call__(self, s: FinSeq) -> FinSeq:
        return self.assignments[tuple(s)]

    def __contains__(self, s: object) -> bool:
        return s in self.assignments

    def items(self) -> list[tuple[FinSeq, FinSeq]]:
        return sorted(self.assignments.items(), key=lambda kv: preceq_key(kv[0]))

    @classmethod
    def identity(cls, params: TruncationParams) -> "LipschitzMap":
        return cls({s: s for s in params.seqs()})


def _check_pair_bounds(tree: NormalTree, params: TruncationParams) -> None:
    for u, s in tree.nodes:
        if not params.within(s):
            raise BoundsError(f"node {(u, s)!r} outside {params}")


def _check_triple_bounds(tree: QoTree, params: TruncationParams) -> None:
    for u, v, s in tree.nodes:
        if not params.within(s):
            raise BoundsError(f"node {(u, v, s)!r} outside {params}")


def is_prefix_closed(nodes: Iterable[tuple[FinSeq, ...]]) -> bool:
    nodes = set(nodes)
    return all(tuple(c[:-1] for c in node) in nodes for node in nodes if len(node[0]) > 0)


def _unit_steps(s: FinSeq, branch: int) -> Iterator[FinSeq]:
    for i, n in enumerate(s):
        if n + 1 < branch:
            yield s[:i] + (n + 1,) + s[i + 1 :]


def check_normal(tree: NormalTree, params: TruncationParams) -> bool:
    """Prefix-closed and upward closed in the second coordinate, within the box."""
    _check_pair_bounds(tree, params)
    if not is_prefix_closed(tree.nodes):
        return False
    return all((u, t) in tree.nodes for u, s in tree.nodes for t in _unit_steps(s, params.branch))


def check_qo_normal(tree: QoTree, params: TruncationParams) -> bool:
    _check_triple_bounds(tree, params)
    if not is_prefix_closed(tree.nodes):
        return False
    return all(
        (u, v, t) in tree.nodes for u, v, s in tree.nodes for t in _unit_steps(s, params.branch)
    )


def reflexive_skeleton(params: TruncationParams) -> QoTree:
    return QoTree(
        frozenset(
            (u, u, s)
            for n in range(params.depth + 1)
            for u in binary_seqs(n)
            for s in seqs_of_length(n, params.branch)
        )
    )


# Up-sets of a level grid [0, branch)^n are stored as int bitmasks over the
# lex-ordered grid points.


@lru_cache(maxsize=None)
def _grid(n: int, branch: int) -> tuple[tuple[FinSeq, ...], dict, tuple[int, ...]]:
    points = tuple(seqs_of_length(n, branch))
    index = {s: i for i, s in enumerate(points)}
    up = []
    for s in points:
        mask = 0
        for j, t in enumerate(points):
            if all(a <= b for a, b in zip(s, t)):
                mask |= 1 << j
        up.append(mask)
    return points, index, tuple(up)


def _minimal(mask: int, n: int, branch: int) -> list[FinSeq]:
    points, index, _ = _grid(n, branch)
    out = []
    for j, s in enumerate(points):
        if not mask >> j & 1:
            continue
        below = (s[:i] + (a - 1,) + s[i + 1 :] for i, a in enumerate(s) if a > 0)
        if not any(mask >> index[t] & 1 for t in below):
            out.append(s)
    return out


def _compose_upsets(a: int, b: int, n: int, branch: int) -> int:
    _, index, up = _grid(n, branch)
    out = 0
    for s in _minimal(a, n, branch):
        for t in _minimal(b, n, branch):
            total = tuple(x + y for x, y in zip(s, t))
            if all(x < branch for x in total):
                out |= up[index[total]]
    return out


def normalize(tree: QoTree, params: TruncationParams) -> QoTree:
    """Least superset of ``tree`` inside the box that is normal, contains the
    reflexive skeleton, and is closed under ``(u,v,s),(v,w,t) -> (u,w,s+t)``.

    Sums with an entry reaching ``branch`` are dropped.
    """
    _check_triple_bounds(tree, params)
    if not is_prefix_closed(tree.nodes):
        raise ValueError("normalize expects a prefix-closed tree")
    branch = params.branch
    out: set[Triple] = set()
    for n in range(params.depth + 1):
        points, index, up = _grid(n, branch)
        full = (1 << len(points)) - 1
        words = list(binary_seqs(n))
        masks = {(u, v): 0 for u in words for v in words}
        for u in words:
            masks[u, u] = full
        for u, v, s in tree.nodes:
            if len(u) == n:
                masks[u, v] |= up[index[s]]
        changed = True
        while changed:
            changed = False
            for v in words:
                for u in words:
                    left = masks[u, v]
                    if not left or u == v:
                        continue
                    for w in words:
                        right = masks[v, w]
                        if not right or v == w:
                            continue
                        extra = _compose_upsets(left, right, n, branch) & ~masks[u, w]
                        if extra:
                            masks[u, w] |= extra
                            changed = True
        for (u, v), mask in masks.items():
            out.update((u, v, points[j]) for j in range(len(points)) if mask >> j & 1)
    return QoTree(frozenset(out))


def _first_divergence(u: FinSeq, v: FinSeq) -> Optional[int]:
    for i, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return i
    return None


def refine(tree: QoTree) -> QoTree:
    """Drop every ``(u, v, 0^k)`` with ``u != v`` together with its extensions."""

    def keep(node: Triple) -> bool:
        u, v, s = node
        d = _first_divergence(u, v)
        return d is None or any(s[: d + 1])

    return QoTree(frozenset(filter(keep, tree.nodes)))


def slice_tree(tree: QoTree, x: FinSeq, params: Optional[TruncationParams] = None) -> NormalTree:
    """The section ``{(u, s) : (u, x|len(u), s) in tree}``."""
    x = tuple(x)
    needed = params.depth if params is not None else max((len(n[0]) for n in tree.nodes), default=0)
    if len(x) < needed:
        raise BoundsError(f"slice point of length {len(x)} shorter than depth {needed}")
    return NormalTree(frozenset((u, s) for u, v, s in tree.nodes if v == x[: len(u)]))


def proj_member(
    tree: QoTree, x: FinSeq, y: FinSeq, params: Optional[TruncationParams] = None
) -> bool:
    """Bounded membership of ``(x, y)`` in the projection of ``tree``."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if params is not None and len(x) != params.depth:
        raise BoundsError(f"projection points must have length {params.depth}")
    children: dict[Triple, list[FinSeq]] = {}
    for u, v, s in tree.nodes:
        n = len(u)
        if n and u == x[:n] and v == y[:n]:
            children.setdefault((u[:-1], v[:-1], s[:-1]), []).append(s)
    if ((), (), ()) not in tree.nodes:
        return False
    stack: list[FinSeq] = [()]
    while stack:
        s = stack.pop()
        n = len(s)
        if n == len(x):
            return True
        stack.extend(children.get((x[:n], y[:n], s), ()))
    return False


# -- witnesses for the max quasi-order ---------------------------------------


class _WitnessSearch:
    def __init__(self, S: NormalTree, T: NormalTree, mode: str, params: TruncationParams):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
        self.T = T.nodes
        self.mode = mode
        self.params = params
        self.words: dict[FinSeq, list[FinSeq]] = {}
        for u, s in S.nodes:
            self.words.setdefault(s, []).append(u)
        self.memo: dict[tuple[FinSeq, FinSeq], Optional[tuple[int, ...]]] = {}

    def transfers(self, s: FinSeq, t: FinSeq) -> bool:
        if self.mode == "code_monotone" and seq_code(s) > seq_code(t):
            return False
        return all((u, t) in self.T for u in self.words.get(s, ()))

    def feasible(self, s: FinSeq, t: FinSeq) -> bool:
        if not self.transfers(s, t):
            return False
        return len(s) == self.params.depth or self.children(s, t) is not None

    def children(self, s: FinSeq, t: FinSeq) -> Optional[tuple[int, ...]]:
        """First (in candidate order) assignment of child images, or None."""
        key = (s, t)
        if key not in self.memo:
            self.memo[key] = self._assign(s, t, 0, ())
        return self.memo[key]

    def _assign(self, s: FinSeq, t: FinSeq, a: int, chosen: tuple[int, ...]):
        branch = self.params.branch
        if a == branch:
            return chosen
        start = chosen[-1] + 1 if (self.mode == "lex_preserving" and chosen) else 0
        for b in range(start, branch):
            if self.mode != "plain" and b in chosen:
                continue
            if self.feasible(s + (a,), t + (b,)):
                found = self._assign(s, t, a + 1, chosen + (b,))
                if found is not None:
                    return found
        return None

    def build(self) -> Optional[LipschitzMap]:
        if not self.feasible((), ()):
            return None
        out: dict[FinSeq, FinSeq] = {}
        stack = [((), ())]
        while stack:
            s, t = stack.pop()
            out[s] = t
            if len(s) < self.params.depth:
                for a, b in enumerate(self.children(s, t)):
                    stack.append((s + (a,), t + (b,)))
        return LipschitzMap(out)


def find_leqmax_witness(
    S: NormalTree, T: NormalTree, mode: str, params: TruncationParams
) -> Optional[LipschitzMap]:
    """Search for a Lipschitz map f with ``(u,s) in S => (u,f(s)) in T``.

    ``lex_preserving`` additionally asks f to preserve the length-then-lex
    order in both directions; ``code_monotone`` asks f to be injective with
    ``seq_code(s) <= seq_code(f(s))``.  The search runs over the whole
    truncated universe and returns the first map in candidate order, except
    that the identity is preferred whenever it already witnesses S into T.
    """
    _check_pair_bounds(S, params)
    _check_pair_bounds(T, params)
    if S.issubset(T):
        return LipschitzMap.identity(params)
    return _WitnessSearch(S, T, mode, params).build()


def verify_witness(
    f: LipschitzMap,
    S: NormalTree,
    T: NormalTree,
    mode: str,
    params: Optional[TruncationParams] = None,
) -> bool:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    table = dict(f.assignments)
    domain = set(table)
    if () not in domain:
        return False
    for s, t in table.items():
        if len(s) != len(t):
            return False
        if s and (s[:-1] not in domain or table[s[:-1]] != t[:-1]):
            return False
        if params is not None and not (params.within(s) and params.within(t)):
            return False
    if any(s not in domain for _, s in S.nodes):
        return False
    if mode == "lex_preserving":
        keys = sorted(domain, key=preceq_key)
        images = [preceq_key(table[s]) for s in keys]
        if any(x >= y for x, y in zip(images, images[1:])):
            return False
    elif mode == "code_monotone":
        if len(set(table.values())) != len(table):
            return False
        if any(seq_code(s) > seq_code(t) for s, t in table.items()):
            return False
    return all((u, table[s]) in T.nodes for u, s in S.nodes)


def compose_witnesses(g: LipschitzMap, f: LipschitzMap) -> LipschitzMap:
    """``g after f`` on the domain of ``f``."""
    return LipschitzMap({s: g(t) for s, t in f.assignments.items()})


# -- exhaustive property checks (numpy, per level) ----------------------------


def _level_tensor(tree: QoTree, n: int, branch: int) -> np.ndarray:
    points, index, _ = _grid(n, branch)
    words = {u: i for i, u in enumerate(binary_seqs(n))}
    out = np.zeros((len(words), len(words), len(points)), dtype=bool)
    for u, v, s in tree.nodes:
        if len(u) == n:
            out[words[u], words[v], index[s]] = True
    return out


def qo_violations(tree: QoTree, params: TruncationParams) -> dict[str, int]:
    """Count violations of reflexivity, additive transitivity and the
    zero-row condition over the whole box (brute force over all pairs)."""
    counts = {"reflexive": 0, "transitive": 0, "zero_row": 0}
    for n in range(params.depth + 1):
        points, index, _ = _grid(n, params.branch)
        m = _level_tensor(tree, n, params.branch)
        w = m.shape[0]
        diag = m[np.arange(w), np.arange(w)]
        counts["reflexive"] += int((~diag).sum())
        zero = index[(0,) * n]
        off = ~np.eye(w, dtype=bool)
        counts["zero_row"] += int((m[:, :, zero] & off).sum())
        sums = np.full((len(points), len(points)), -1, dtype=np.int64)
        for i, s in enumerate(points):
            for j, t in enumerate(points):
                total = tuple(a + b for a, b in zip(s, t))
                if all(a < params.branch for a in total):
                    sums[i, j] = index[total]
        valid = sums >= 0
        for u in range(w):
            for v in range(w):
                if not m[u, v].any():
                    continue
                for x in range(w):
                    need = m[u, v][:, None] & m[v, x][None, :] & valid
                    if need.any():
                        counts["transitive"] += int((~m[u, x][sums[need]]).sum())
    return counts
