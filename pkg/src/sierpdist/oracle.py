"""Explicit construction of S(G, t) and brute-force BFS answers.

This is the ground truth the recursive formulas are checked against, so it
is kept deliberately plain: vertices are dense mixed-radix indices, the
graph is a CSR adjacency, and every query is an ordinary single-source BFS.
The BFS kernels are compiled with numba because sweeps run tens of
thousands of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numba
import numpy as np

from .base_graph import BaseGraph
from .errors import ApplicabilityError, BudgetExceededError
from .words import Word, check_level, check_word, extreme_index, format_word, index_to_word, word_to_index

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True, eq=False)
class ExplicitSierpinski:
    """Materialised S(G, t) as a CSR adjacency over dense word indices."""

    base: BaseGraph
    t: int
    indptr: np.ndarray
    indices: np.ndarray
    _ecc: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def order(self) -> int:
        return self.indptr.size - 1

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    def index(self, w: Sequence[int]) -> int:
        return word_to_index(check_word(w, self.base.n, self.t), self.base.n)

    def word(self, idx: int) -> Word:
        return index_to_word(idx, self.base.n, self.t)

    def neighbors(self, idx: int) -> np.ndarray:
        return self.indices[self.indptr[idx] : self.indptr[idx + 1]]

    def degree(self, idx: int) -> int:
        return int(self.indptr[idx + 1] - self.indptr[idx])

    def bfs(self, source: int) -> np.ndarray:
        """Distances (int32) from the vertex with dense index ``source``."""
        out = np.empty((1, self.order), dtype=np.int32)
        _bfs_rows(self.indptr, self.indices, np.array([source], dtype=np.int64), out)
        return out[0]

    def bfs_rows(self, sources: np.ndarray) -> np.ndarray:
        """One BFS row per source index, shape ``(len(sources), order)``."""
        sources = np.asarray(sources, dtype=np.int64)
        out = np.empty((sources.size, self.order), dtype=np.int32)
        _bfs_rows(self.indptr, self.indices, sources, out)
        return out

    def bfs_tree(self, source: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(dist, parent, visit_order)`` of the BFS tree rooted at ``source``."""
        return _bfs_tree(self.indptr, self.indices, source)

    def eccentricities(self) -> np.ndarray:
        """Eccentricity of every vertex (one BFS per vertex, cached)."""
        if "all" not in self._ecc:
            self._ecc["all"] = _eccentricities(
                self.indptr, self.indices, np.arange(self.order, dtype=np.int64)
            )
        return self._ecc["all"]


def build_sierpinski(g: BaseGraph, t: int, guard: int = DEFAULT_BUDGET) -> ExplicitSierpinski:
    """Materialise S(g, t) from ``n`` shifted copies of level ``t - 1``.

    Each level adds, for every base edge ``{x, y}``, the single linking edge
    between ``x y^(t-1)`` and ``y x^(t-1)``.
    """
    check_level(t)
    n = g.n
    if n < 2:
        raise ApplicabilityError("the base graph must have at least two vertices")
    if not g.is_connected():
        raise ApplicabilityError("the base graph must be connected")
    if n**t > guard:
        raise BudgetExceededError(f"S(G,{t}) has {n}^{t} = {n**t} vertices, budget is {guard}")

    base_edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    src, dst = base_edges[:, 0], base_edges[:, 1]
    for k in range(2, t + 1):
        block = n ** (k - 1)
        offsets = np.repeat(np.arange(n, dtype=np.int64) * block, src.size)
        links_src = base_edges[:, 0] * block + base_edges[:, 1] * ((block - 1) // (n - 1))
        links_dst = base_edges[:, 1] * block + base_edges[:, 0] * ((block - 1) // (n - 1))
        src = np.concatenate([np.tile(src, n) + offsets, links_src])
        dst = np.concatenate([np.tile(dst, n) + offsets, links_dst])

    order = n**t
    heads = np.concatenate([src, dst])
    tails = np.concatenate([dst, src])
    perm = np.lexsort((tails, heads))
    heads, tails = heads[perm], tails[perm]
    indptr = np.zeros(order + 1, dtype=np.int64)
    np.cumsum(np.bincount(heads, minlength=order), out=indptr[1:])
    return ExplicitSierpinski(g, t, indptr, tails.astype(np.int32))


# -- queries -----------------------------------------------------------------


def oracle_dist(S: ExplicitSierpinski, w: Sequence[int], w2: Sequence[int]) -> int:
    return int(S.bfs(S.index(w))[S.index(w2)])


def oracle_shortest_path(S: ExplicitSierpinski, w: Sequence[int], w2: Sequence[int]) -> list[Word]:
    """One BFS shortest path from ``w`` to ``w2``, both endpoints included."""
    a, b = S.index(w), S.index(w2)
    _, parent, _ = S.bfs_tree(a)
    path = [b]
    while path[-1] != a:
        path.append(int(parent[path[-1]]))
    return [S.word(i) for i in reversed(path)]


def sierpinski_adjacent(w: Sequence[int], w2: Sequence[int], g: BaseGraph | None = None) -> bool:
    """Whether ``w`` and ``w2`` have the shape ``p a b^k`` / ``p b a^k`` of an edge.

    When ``g`` is given the letters ``a, b`` must also be adjacent in ``g``.
    """
    if len(w) != len(w2):
        return False
    i = 0
    while i < len(w) and w[i] == w2[i]:
        i += 1
    if i == len(w):
        return False
    a, b = w[i], w2[i]
    if any(w[k] != b or w2[k] != a for k in range(i + 1, len(w))):
        return False
    return g is None or g.has_edge(a, b)


def g_path(path: Sequence[Sequence[int]], g: BaseGraph | None = None) -> list[int]:
    """Collapse the first letters along a path of S(G, t) into its G-path.

    Raises ``ValueError`` if consecutive words are not adjacent.
    """
    if not path:
        raise ValueError("empty path")
    for a, b in zip(path, path[1:]):
        if not sierpinski_adjacent(a, b, g):
            raise ValueError(f"{format_word(a)} and {format_word(b)} are not adjacent")
    letters = [path[0][0]]
    for w in path[1:]:
        if w[0] != letters[-1]:
            letters.append(w[0])
    return letters


def oracle_eccentricity(S: ExplicitSierpinski, w: Sequence[int]) -> int:
    return int(S.bfs(S.index(w)).max())


def oracle_diameter(S: ExplicitSierpinski) -> int:
    return int(S.eccentricities().max())


def oracle_radius(S: ExplicitSierpinski) -> int:
    return int(S.eccentricities().min())


def extreme_vertex_index(S: ExplicitSierpinski, x: int) -> int:
    return extreme_index(x, S.base.n, S.t)


def export_dot(S: ExplicitSierpinski, name: str = "S") -> str:
    """Deterministic DOT text: nodes then edges, both in index order."""
    lines = [f"graph {name} {{"]
    for i in range(S.order):
        lines.append(f'  {i} [label="{format_word(S.word(i))}"];')
    for i in range(S.order):
        for j in S.neighbors(i):
            if i < j:
                lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- compiled BFS kernels ----------------------------------------------------


@numba.njit(cache=True)
def _bfs_rows(indptr, indices, sources, out):
    queue = np.empty(out.shape[1], dtype=np.int64)
    for r in range(sources.size):
        dist = out[r]
        dist[:] = -1
        s = sources[r]
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            v = queue[head]
            head += 1
            nd = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if dist[u] < 0:
                    dist[u] = nd
                    queue[tail] = u
                    tail += 1


@numba.njit(cache=True)
def _eccentricities(indptr, indices, sources):
    n = indptr.size - 1
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    ecc = np.empty(sources.size, dtype=np.int64)
    for r in range(sources.size):
        dist[:] = -1
        s = sources[r]
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            v = queue[head]
            head += 1
            nd = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if dist[u] < 0:
                    dist[u] = nd
                    queue[tail] = u
                    tail += 1
        ecc[r] = dist[queue[tail - 1]]
    return ecc


@numba.njit(cache=True)
def _bfs_tree(indptr, indices, source):
    n = indptr.size - 1
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                parent[u] = v
                queue[tail] = u
                tail += 1
    return dist, parent, queue[:tail]
