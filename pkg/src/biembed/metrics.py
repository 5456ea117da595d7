"""Finite metric spaces with exact dyadic distances: geodesic spaces of
graphs, the ultrametric space of maximal root paths of a build, and
isometric-embedding search."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .gadgets import build_gprime
from .morphisms import Morphism
from .seqs import EMPTY
from .structures import FinStructure
from .trees import NormalTree, TruncationParams
from .vertices import vertex_key, vseq


class FinMetricSpace:
    """Points plus a symmetric matrix of :class:`Fraction` distances."""

    __slots__ = ("points", "dist", "_index")

    def __init__(self, points: Sequence, dist: Sequence[Sequence[Fraction]]):
        self.points = list(points)
        n = len(self.points)
        self.dist = [[Fraction(d) for d in row] for row in dist]
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError("distance matrix has the wrong shape")
        for i in range(n):
            if self.dist[i][i] != 0:
                raise ValueError(f"nonzero self-distance at {i}")
            for j in range(i + 1, n):
                if self.dist[i][j] != self.dist[j][i]:
                    raise ValueError(f"asymmetric distance at {(i, j)}")
                if self.dist[i][j] <= 0:
                    raise ValueError(f"nonpositive distance at {(i, j)}")
        self._index = None

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinMetricSpace):
            return NotImplemented
        return self.points == other.points and self.dist == other.dist

    def index(self, point) -> int:
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.points)}
        return self._index[point]

    def d(self, x, y) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def rank_matrix(self) -> np.ndarray:
        """Distances replaced by their rank among the distinct values."""
        values = sorted({d for row in self.dist for d in row})
        rank = {v: i for i, v in enumerate(values)}
        return np.array([[rank[d] for d in row] for row in self.dist], dtype=np.int64).reshape(
            len(self), len(self)
        )

    def satisfies_triangle(self) -> bool:
        n = len(self)
        D = self.dist
        return all(D[x][y] <= D[x][z] + D[z][y] for x in range(n) for y in range(n) for z in range(n))

    def profile(self, i: int) -> Counter:
        return Counter(self.dist[i])


def geodesic_space(G: FinStructure) -> FinMetricSpace:
    """Shortest-path distances of a connected graph."""
    points = G.vertices()
    if not points or not G.is_connected():
        raise ValueError("geodesic distance needs a connected nonempty graph")
    rows = []
    for v in points:
        dist = G.distances_from(v)
        rows.append([Fraction(dist[w]) for w in points])
    return FinMetricSpace(points, rows)


def maximal_paths(G: FinStructure, start) -> list[tuple]:
    """All maximal simple paths from ``start`` in a combinatorial tree."""
    if not G.is_tree():
        raise ValueError("expected a combinatorial tree")
    out = []
    stack = [(start,)]
    while stack:
        path = stack.pop()
        nxt = [w for w in G.neighbors(path[-1]) if len(path) < 2 or w != path[-2]]
        if not nxt:
            out.append(path)
        stack.extend(path + (w,) for w in reversed(nxt))
    return sorted(out, key=lambda path: [vertex_key(v) for v in path])


def _shared(a: tuple, b: tuple) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def path_distance(a: tuple, b: tuple) -> Fraction:
    # root paths in a tree share exactly a common prefix
    return Fraction(0) if a == b else Fraction(1, 2 ** _shared(a, b))


def ultra_space(T: NormalTree, p: TruncationParams) -> FinMetricSpace:
    paths = maximal_paths(build_gprime(T, p), vseq(EMPTY))
    return FinMetricSpace(paths, [[path_distance(a, b) for b in paths] for a in paths])


def is_ultrametric(M: FinMetricSpace) -> bool:
    """Strong triangle inequality over all triples."""
    n = len(M)
    if n == 0:
        return True
    D = M.rank_matrix()
    for x in range(n):
        # bound[y] = min over z of max(D[x, z], D[z, y])
        bound = np.maximum(D[x][:, None], D).min(axis=0)
        if np.any(D[x] > bound):
            return False
    return True


def _profile_fits(small: Counter, big: Counter, exact: bool) -> bool:
    if exact:
        return small == big
    return all(big[d] >= c for d, c in small.items())


def iter_isometric_embeddings(
    M: FinMetricSpace, N: FinMetricSpace, bijective: bool = False
) -> Iterator[dict]:
    """Injective distance-preserving maps M -> N by backtracking; each point's
    distance multiset must fit inside its image's."""
    n, m = len(M), len(N)
    if n > m or (bijective and n != m):
        return
    if n == 0:
        yield {}
        return
    prof_m = [M.profile(i) for i in range(n)]
    prof_n = [N.profile(j) for j in range(m)]
    allowed = [[j for j in range(m) if _profile_fits(prof_m[i], prof_n[j], bijective)] for i in range(n)]
    h = [-1] * n
    used = [False] * m

    def extend(i: int) -> Iterator[dict]:
        if i == n:
            yield {M.points[a]: N.points[h[a]] for a in range(n)}
            return
        row = M.dist[i]
        for j in allowed[i]:
            if used[j]:
                continue
            col = N.dist[j]
            if all(row[a] == col[h[a]] for a in range(i)):
                h[i] = j
                used[j] = True
                yield from extend(i + 1)
                used[j] = False
                h[i] = -1

    yield from extend(0)


def find_isometric_embedding(M: FinMetricSpace, N: FinMetricSpace) -> Optional[dict]:
    return next(iter_isometric_embeddings(M, N), None)


def find_isometry(M: FinMetricSpace, N: FinMetricSpace) -> Optional[dict]:
    return next(iter_isometric_embeddings(M, N, bijective=True), None)


def is_isometric_embedding(h: Mapping, M: FinMetricSpace, N: FinMetricSpace) -> bool:
    images = [h[x] for x in M.points]
    if len(set(images)) != len(images):
        return False
    return all(M.d(x, y) == N.d(h[x], h[y]) for x in M.points for y in M.points)


def complete_path(G: FinStructure, path: tuple) -> tuple:
    """Extend a root path to a maximal one, always taking the least vertex."""
    path = tuple(path)
    while True:
        nxt = [w for w in G.neighbors(path[-1]) if len(path) < 2 or w != path[-2]]
        if not nxt:
            return path
        path += (nxt[0],)


def induced_path_map(g: Morphism, B: FinStructure, U_S: FinMetricSpace) -> dict:
    """Map on maximal root paths induced by an embedding ``g`` into ``B``:
    push each path forward and complete it in B."""
    return {a: complete_path(B, tuple(g(v) for v in a)) for a in U_S.points}


def ultrametric_signature(M: FinMetricSpace) -> tuple:
    """Isometry invariant of a finite ultrametric space: the nested ball
    structure as a sorted tuple tree.  Equal signatures iff isometric."""
    if not is_ultrametric(M):
        raise ValueError("not an ultrametric space")

    def canon(block: list[int]) -> tuple:
        if len(block) == 1:
            return ()
        top = max(M.dist[i][j] for i in block for j in block)
        balls: list[list[int]] = []
        for i in block:
            for ball in balls:
                if M.dist[i][ball[0]] < top:
                    ball.append(i)
                    break
            else:
                balls.append([i])
        return (top, tuple(sorted(canon(b) for b in balls)))

    return canon(list(range(len(M)))) if len(M) else None
