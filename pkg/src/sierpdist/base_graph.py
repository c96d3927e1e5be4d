"""Base graphs G: loading, BFS distances and shortest-path metadata.

A :class:`BaseGraph` is an immutable simple undirected graph on the dense
vertex ids ``0..n-1``.  Besides plain distances it exposes the neighbour
sets the Sierpinski recursions branch over:

* ``nu(x, y)``: neighbours of ``y`` lying on some shortest ``x``-``y`` path;
* ``phi(x, y)``: pairs ``(x', y')`` of endpoint neighbours on shortest paths;
* ``phi_prime(x, y)``: the same pairs over simple paths one edge longer.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    BudgetExceededError,
    GraphParseError,
    GraphValidationError,
    UnreachableError,
)

#: default node-expansion cap for the exact-length simple path search
PHI_PRIME_EXPANSION_CAP = 10**7


@dataclass(frozen=True)
class PathMeta:
    """Distance between two base vertices plus the neighbour sets on their paths."""

    d: int
    nu: frozenset[int] | None = None
    phi: frozenset[tuple[int, int]] | None = None
    phi_prime: frozenset[tuple[int, int]] | None = None


@dataclass(frozen=True)
class BaseGraph:
    """Immutable simple graph with vertices ``0..n-1``.

    Build instances with :meth:`from_edges` or :func:`load_graph`; both
    validate.  Derived data (distances, bridges, path metadata) is computed
    lazily and cached on the instance.  Cache fills are idempotent, so
    concurrent readers at worst compute the same value twice.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    _meta_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> BaseGraph:
        if n < 1:
            raise GraphValidationError(f"vertex count must be >= 1, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            for z in (u, v):
                if not 0 <= z < n:
                    raise GraphValidationError(f"vertex id {z} out of range 0..{n - 1}")
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphValidationError(f"duplicate edge {{{u}, {v}}}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    # -- basic structure ---------------------------------------------------

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.adjacency[x]

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def has_edge(self, x: int, y: int) -> bool:
        return y in self._adjacency_sets[x]

    @cached_property
    def _adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    # -- distances ---------------------------------------------------------

    def bfs(self, source: int) -> list[int]:
        """Distances from ``source``; ``-1`` marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u in self.adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs BFS distance table (``-1`` when unreachable)."""
        return tuple(tuple(self.bfs(s)) for s in range(self.n))

    @cached_property
    def distance_array(self) -> np.ndarray:
        return np.array(self.distances, dtype=np.int64).reshape(self.n, self.n)

    def dist(self, x: int, y: int) -> int:
        d = self.distances[x][y]
        if d < 0:
            raise UnreachableError(f"vertices {x} and {y} are unreachable from each other")
        return d

    def eccentricity(self, x: int) -> int:
        row = self.distances[x]
        if min(row) < 0:
            raise UnreachableError("eccentricity undefined on a disconnected graph")
        return max(row)

    @cached_property
    def diameter(self) -> int:
        return max(self.eccentricity(x) for x in range(self.n))

    def dist_star(self, x: int, y: int) -> PathMeta:
        """Distance plus ``nu``: neighbours of ``y`` on shortest ``x``-``y`` paths."""
        key = ("nu", x, y)
        meta = self._meta_cache.get(key)
        if meta is None:
            if x == y:
                raise ValueError("nu(x, y) is undefined for x == y")
            d = self.dist(x, y)
            row = self.distances[x]
            nu = frozenset(v for v in self.adjacency[y] if row[v] == d - 1)
            meta = self._meta_cache[key] = PathMeta(d, nu=nu)
        return meta

    def phi(self, x: int, y: int) -> frozenset[tuple[int, int]]:
        """Pairs ``(x', y')`` of endpoint neighbours over shortest ``x``-``y`` paths.

        For adjacent ``x, y`` the only pair is ``(y, x)``.
        """
        key = ("phi", x, y)
        pairs = self._meta_cache.get(key)
        if pairs is None:
            if x == y:
                raise ValueError("phi(x, y) is undefined for x == y")
            d = self.dist(x, y)
            if d == 1:
                pairs = frozenset({(y, x)})
            else:
                dx = self.distances[x]
                dy = self.distances[y]
                pairs = frozenset(
                    (a, b)
                    for a in self.adjacency[x]
                    if dy[a] == d - 1
                    for b in self.adjacency[y]
                    if dx[b] == d - 1 and self.distances[a][b] == d - 2
                )
            self._meta_cache[key] = pairs
        return pairs

    def phi_prime(
        self, x: int, y: int, max_expansions: int = PHI_PRIME_EXPANSION_CAP
    ) -> frozenset[tuple[int, int]]:
        """Endpoint-neighbour pairs over simple paths of length ``d(x, y) + 1``.

        Found by a depth-bounded DFS on G; raises :class:`BudgetExceededError`
        after ``max_expansions`` search nodes.
        """
        key = ("phi'", x, y)
        pairs = self._meta_cache.get(key)
        if pairs is None:
            if x == y:
                raise ValueError("phi'(x, y) is undefined for x == y")
            pairs = self._exact_length_pairs(x, y, self.dist(x, y) + 1, max_expansions)
            self._meta_cache[key] = pairs
        return pairs

    def dist_double_star(
        self, x: int, y: int, max_expansions: int = PHI_PRIME_EXPANSION_CAP
    ) -> PathMeta:
        """Distance plus ``phi`` and ``phi_prime`` (see :meth:`phi`, :meth:`phi_prime`)."""
        return PathMeta(
            self.dist(x, y),
            phi=self.phi(x, y),
            phi_prime=self.phi_prime(x, y, max_expansions),
        )

    def _exact_length_pairs(self, x, y, length, max_expansions):
        # (first step, last step) over simple x-y paths with exactly `length` edges
        adj = self.adjacency
        to_y = self.distances[y]
        on_path = [False] * self.n
        on_path[x] = True
        path = [x]
        pairs = set()
        expansions = 0

        def extend(v):
            nonlocal expansions
            left = length - len(path)  # edges still to place after stepping to u
            for u in adj[v]:
                if on_path[u]:
                    continue
                if u == y:
                    if left == 0:
                        pairs.add((path[1] if len(path) > 1 else y, v))
                    continue
                if to_y[u] > left or left == 0:
                    continue
                expansions += 1
                if expansions > max_expansions:
                    raise BudgetExceededError(
                        f"simple-path search between {x} and {y} exceeded "
                        f"{max_expansions} expansions"
                    )
                on_path[u] = True
                path.append(u)
                extend(u)
                path.pop()
                on_path[u] = False

        extend(x)
        return frozenset(pairs)

    # -- predicates --------------------------------------------------------

    def is_connected(self) -> bool:
        return min(self.distances[0]) >= 0

    def is_tree(self) -> bool:
        return self.edge_count == self.n - 1 and self.is_connected()

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def is_bipartite(self) -> bool:
        return self._bipartite

    def is_triangle_free(self) -> bool:
        return self._triangle_free

    @cached_property
    def _bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adjacency[v]:
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        queue.append(u)
                    elif color[u] == color[v]:
                        return False
        return True

    @cached_property
    def _triangle_free(self) -> bool:
        sets = self._adjacency_sets
        return all(not (sets[u] & sets[v]) for u, v in self.edges())

    @cached_property
    def bridges(self) -> frozenset[tuple[int, int]]:
        """Bridges as ``(u, v)`` pairs with ``u < v`` (iterative low-link DFS)."""
        order = [-1] * self.n
        low = [0] * self.n
        found = set()
        counter = 0
        for root in range(self.n):
            if order[root] >= 0:
                continue
            order[root] = low[root] = counter
            counter += 1
            # frames: (vertex, parent, neighbour iterator)
            stack = [(root, -1, iter(self.adjacency[root]))]
            while stack:
                v, parent, it = stack[-1]
                advanced = False
                for u in it:
                    if u == parent:
                        continue
                    if order[u] < 0:
                        order[u] = low[u] = counter
                        counter += 1
                        stack.append((u, v, iter(self.adjacency[u])))
                        advanced = True
                        break
                    low[v] = min(low[v], order[u])
                if advanced:
                    continue
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > order[parent]:
                        found.add((min(v, parent), max(v, parent)))
        return frozenset(found)

    def lies_on_no_cycle(self, x: int) -> bool:
        """True iff every edge at ``x`` is a bridge."""
        return all((min(x, u), max(x, u)) in self.bridges for u in self.adjacency[x])

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """All adjacency-preserving permutations, identity first.

        Plain backtracking: vertex ``v`` may only go to an unused image of equal
        degree whose adjacencies to the already placed vertices match.
        """
        sets = self._adjacency_sets
        image = [-1] * self.n
        used = [False] * self.n
        found = []

        def place(v: int) -> None:
            if v == self.n:
                found.append(tuple(image))
                return
            for c in range(self.n):
                if used[c] or self.degree(c) != self.degree(v):
                    continue
                if all((u in sets[v]) == (image[u] in sets[c]) for u in range(v)):
                    image[v], used[c] = c, True
                    place(v + 1)
                    image[v], used[c] = -1, False

        place(0)
        return tuple(found)


# -- edge-list I/O -----------------------------------------------------------


def load_graph(text: str) -> BaseGraph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``u v``.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise GraphParseError("empty edge list: missing 'n m' header")
    _, n, m = rows[0]
    if n < 1 or m < 0:
        raise GraphParseError(f"invalid header: n={n}, m={m}")
    body = rows[1:]
    if len(body) != m:
        raise GraphParseError(f"header announces {m} edges but {len(body)} were given")
    return BaseGraph.from_edges(n, [(u, v) for _, u, v in body])


def read_graph(path: str | Path) -> BaseGraph:
    return load_graph(Path(path).read_text())


def dump_graph(g: BaseGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.edge_count}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- generators --------------------------------------------------------------


def path_graph(n: int) -> BaseGraph:
    return BaseGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> BaseGraph:
    if n < 3:
        raise GraphValidationError("a cycle needs at least 3 vertices")
    return BaseGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> BaseGraph:
    """The star K_{1,leaves}; vertex 0 is the centre."""
    return BaseGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> BaseGraph:
    return BaseGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def random_tree(n: int, rng: random.Random) -> BaseGraph:
    """Uniform random labelled tree via a random Pruefer sequence."""
    if n <= 2:
        return path_graph(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (z for z in range(n) if degree[z] == 1)
    edges.append((u, w))
    return BaseGraph.from_edges(n, edges)


def random_connected(n: int, rng: random.Random, extra_edges: int, triangle_free: bool = False) -> BaseGraph:
    """Random spanning tree plus up to ``extra_edges`` random chords.

    With ``triangle_free`` set, chords closing a triangle are rejected.
    """
    edges = set(random_tree(n, rng).edges())
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(candidates)
    added = 0
    for u, v in candidates:
        if added == extra_edges:
            break
        if triangle_free and nbrs[u] & nbrs[v]:
            continue
        edges.add((u, v))
        nbrs[u].add(v)
        nbrs[v].add(u)
        added += 1
    return BaseGraph.from_edges(n, sorted(edges))
