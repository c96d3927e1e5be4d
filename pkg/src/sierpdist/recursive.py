"""Distances in S(G, t) computed from the base graph alone.

Nothing here materialises S(G, t).  Every routine works on words and the
cached BFS metadata of ``G``, so levels far beyond anything the oracle can
build (``t`` up to :data:`~sierpdist.words.MAX_LEVEL`) stay cheap.

Scalar entry points:

* :func:`extreme_extreme_dist`  distance between two extreme vertices;
* :func:`extreme_to_word`       extreme vertex to any word (recursive, memoised);
* :func:`complete_extreme_to_word`  closed form for complete bases;
* :func:`triangle_free_dist`, :func:`bipartite_dist`, :func:`conditional_dist`
  arbitrary pairs for the graph classes where a formula is known;
* :func:`best_dist`             dispatcher picking the strongest applicable route.

:func:`extreme_tables` and :func:`distance_rows` evaluate the same
recursions for whole blocks of words at once with numpy; the exhaustive
verification sweeps rely on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .base_graph import BaseGraph
from .errors import ApplicabilityError, BudgetExceededError
from .words import Word, check_level, check_word, is_extreme, split_common_prefix

EXTREME_EXTREME = "extreme-extreme"
ALGORITHM_1 = "algorithm-1"
COMPLETE_CLOSED_FORM = "complete-closed-form"
ALGORITHM_2 = "algorithm-2"
BIPARTITE = "bipartite"
CONDITIONAL = "conditional"
TREE = "tree"
PREFIX_REDUCTION = "lemma-1-reduction"
ORACLE_FALLBACK = "oracle-fallback"


@dataclass(frozen=True)
class QueryResult:
    """A distance and the route that produced it.

    ``lam``/``lam_prime`` and ``theta``/``theta_prime`` are the pair-formula
    intermediates: suffix-distance minima over shortest paths and over paths
    one edge longer, and the two candidate totals.  A missing longer path is
    recorded as ``math.inf``.
    """

    distance: int
    method: str
    theta: int | None = None
    theta_prime: int | float | None = None
    lam: int | None = None
    lam_prime: int | float | None = None


def _mersenne(k: int) -> int:
    return (1 << k) - 1


def _require_connected(g: BaseGraph) -> None:
    if g.n < 2:
        raise ApplicabilityError("the base graph must have at least two vertices")
    if not g.is_connected():
        raise ApplicabilityError("the base graph must be connected")


def _check_pair(g: BaseGraph, w: Sequence[int], w2: Sequence[int]) -> tuple[Word, Word]:
    _require_connected(g)
    w = check_word(w, g.n)
    w2 = check_word(w2, g.n, len(w))
    check_level(len(w))
    return w, w2


# -- extreme vertices ----------------------------------------------------------


def extreme_extreme_dist(g: BaseGraph, x: int, y: int, t: int) -> int:
    """``(2^t - 1) d_G(x, y)``."""
    check_level(t)
    _require_connected(g)
    return _mersenne(t) * g.dist(x, y)


def _extreme_solver(g: BaseGraph, w: Word) -> Callable[[int], int]:
    """Return ``v -> d(v^t, w)`` for the fixed word ``w`` of length ``t``.

    Sub-results are memoised on (base vertex, suffix start), which bounds a
    query by ``n * t`` sub-calls however much the neighbour sets branch.
    """
    t = len(w)
    dist = g.distances
    memo: dict[tuple[int, int], int] = {}

    def solve(v: int, start: int) -> int:
        key = (v, start)
        hit = memo.get(key)
        if hit is not None:
            return hit
        j = start
        while j < t - 1 and w[j] == v:
            j += 1
        if j == t - 1:
            res = dist[v][w[j]]
        else:
            meta = g.dist_star(v, w[j])
            k = t - j
            best = min(solve(u, j + 1) for u in meta.nu)
            res = best + _mersenne(k) * meta.d - _mersenne(k - 1)
        memo[key] = res
        return res

    return lambda v: solve(v, 0)


def extreme_to_word(g: BaseGraph, x: int, w: Sequence[int]) -> int:
    """Distance from the extreme vertex ``x^t`` to ``w`` in S(g, t)."""
    _require_connected(g)
    w = check_word(w, g.n)
    check_level(len(w))
    return _extreme_solver(g, w)(x)


def complete_extreme_to_word(n: int, x: int, w: Sequence[int]) -> int:
    """Closed form on complete bases: sum of ``2^(t-i)`` over positions with ``z_i != x``."""
    if n < 2:
        raise ApplicabilityError("complete base needs n >= 2")
    w = check_word(w, n)
    t = len(w)
    return sum(1 << (t - 1 - i) for i, z in enumerate(w) if z != x)


# -- arbitrary pairs -----------------------------------------------------------


def _reduced_base_dist(g: BaseGraph, w: Word, w2: Word) -> QueryResult | None:
    j0 = split_common_prefix(w, w2).j - 1
    if j0 >= len(w) - 1:
        d = 0 if j0 == len(w) else g.dist(w[-1], w2[-1])
        return QueryResult(d, PREFIX_REDUCTION)
    return None


def _pair_formula(g: BaseGraph, w: Word, w2: Word, longer_paths: bool, method: str) -> QueryResult:
    """Shortest-path candidate (and optionally the one-longer candidate) for a split pair."""
    j0 = split_common_prefix(w, w2).j - 1
    t = len(w)
    x, y = w[j0], w2[j0]
    k = t - j0
    d = g.dist(x, y)
    fx = _extreme_solver(g, w[j0 + 1 :])
    fy = _extreme_solver(g, w2[j0 + 1 :])
    lam = min(fx(a) + fy(b) for a, b in g.phi(x, y))
    theta = lam + _mersenne(k) * d - 2 * _mersenne(k - 1)
    if not longer_paths:
        return QueryResult(theta, method, theta=theta, lam=lam)
    lam_prime = min((fx(a) + fy(b) for a, b in g.phi_prime(x, y)), default=math.inf)
    theta_prime = lam_prime + _mersenne(k) * d + 1
    return QueryResult(
        min(theta, theta_prime), method,
        theta=theta, theta_prime=theta_prime, lam=lam, lam_prime=lam_prime,
    )


def triangle_free_dist(g: BaseGraph, w: Sequence[int], w2: Sequence[int]) -> QueryResult:
    """Exact distance for triangle-free bases: ``min(theta, theta')``."""
    w, w2 = _check_pair(g, w, w2)
    if not g.is_triangle_free():
        raise ApplicabilityError("the base graph contains a triangle")
    return _reduced_base_dist(g, w, w2) or _pair_formula(g, w, w2, True, ALGORITHM_2)


def bipartite_dist(g: BaseGraph, w: Sequence[int], w2: Sequence[int]) -> QueryResult:
    """Exact distance for bipartite bases, where only shortest G-paths matter."""
    w, w2 = _check_pair(g, w, w2)
    if not g.is_bipartite():
        raise ApplicabilityError("the base graph is not bipartite")
    return _reduced_base_dist(g, w, w2) or _pair_formula(g, w, w2, False, BIPARTITE)


def conditional_dist(
    g: BaseGraph, w: Sequence[int], w2: Sequence[int], assert_premiss_b: bool = False
) -> QueryResult:
    """Shortest-G-path formula on general bases under a structural premiss.

    The formula holds when the first differing letter of either word lies on
    no cycle of ``g`` (checked here), or when every longer path between those
    letters leaves no shortcut at its second step.  The latter quantifies over
    unboundedly long paths, so callers vouch for it with ``assert_premiss_b``.
    """
    w, w2 = _check_pair(g, w, w2)
    reduced = _reduced_base_dist(g, w, w2)
    if reduced is not None:
        return reduced
    j0 = split_common_prefix(w, w2).j - 1
    x, y = w[j0], w2[j0]
    if not (assert_premiss_b or g.lies_on_no_cycle(x) or g.lies_on_no_cycle(y)):
        raise ApplicabilityError(
            f"letters {x} and {y} both lie on cycles; pass assert_premiss_b to vouch "
            "for the longer-path condition"
        )
    return _pair_formula(g, w, w2, False, CONDITIONAL)


def best_dist(
    g: BaseGraph,
    w: Sequence[int],
    w2: Sequence[int],
    allow_oracle_fallback: bool = False,
    budget: int | None = None,
    assert_premiss_b: bool = False,
) -> QueryResult:
    """Route a query to the strongest applicable method.

    Order: common-prefix reduction, extreme endpoints, trees, bipartite,
    triangle-free, the no-cycle premiss, and finally (if allowed) BFS on an
    explicit S(G, t') where ``t'`` is the length left after the common prefix.
    """
    from . import oracle, trees

    w, w2 = _check_pair(g, w, w2)
    reduced = _reduced_base_dist(g, w, w2)
    if reduced is not None:
        return reduced
    j0 = split_common_prefix(w, w2).j - 1
    a, b = w[j0:], w2[j0:]
    if is_extreme(a) and is_extreme(b):
        return QueryResult(extreme_extreme_dist(g, a[0], b[0], len(a)), EXTREME_EXTREME)
    if is_extreme(b):
        a, b = b, a
    if is_extreme(a):
        if g.is_complete():
            return QueryResult(complete_extreme_to_word(g.n, a[0], b), COMPLETE_CLOSED_FORM)
        return QueryResult(_extreme_solver(g, b)(a[0]), ALGORITHM_1)
    if g.is_tree():
        return QueryResult(trees.tree_dist(trees.TreeBase(g), a, b), TREE)
    if g.is_bipartite():
        return _pair_formula(g, a, b, False, BIPARTITE)
    if g.is_triangle_free():
        return _pair_formula(g, a, b, True, ALGORITHM_2)
    if assert_premiss_b or g.lies_on_no_cycle(a[0]) or g.lies_on_no_cycle(b[0]):
        return _pair_formula(g, a, b, False, CONDITIONAL)
    if not allow_oracle_fallback:
        raise ApplicabilityError(
            "no distance formula applies (base has triangles and both letters lie on cycles); "
            "enable the oracle fallback"
        )
    budget = oracle.DEFAULT_BUDGET if budget is None else budget
    if g.n ** len(a) > budget:
        raise BudgetExceededError(
            f"oracle fallback needs {g.n}^{len(a)} vertices, budget is {budget}"
        )
    S = oracle.build_sierpinski(g, len(a), guard=budget)
    return QueryResult(oracle.oracle_dist(S, a, b), ORACLE_FALLBACK)


# -- batch evaluation ------------------------------------------------------------


def extreme_tables(g: BaseGraph, t: int) -> list[np.ndarray]:
    """Tables ``E[k-1][v, i] = d(v^k, word_i)`` for every level ``k = 1..t``.

    ``word_i`` is the word of length ``k`` with dense index ``i``.  Built level
    by level from the same recursion as :func:`extreme_to_word`.
    """
    check_level(t)
    _require_connected(g)
    n = g.n
    D = g.distance_array
    tables = [D.copy()]
    for k in range(2, t + 1):
        prev = tables[-1]
        block = n ** (k - 1)
        cur = np.empty((n, n * block), dtype=np.int64)
        shift = _mersenne(k - 1)
        for v in range(n):
            for z in range(n):
                cols = slice(z * block, (z + 1) * block)
                if z == v:
                    cur[v, cols] = prev[v]
                else:
                    meta = g.dist_star(v, z)
                    nu = sorted(meta.nu)
                    cur[v, cols] = prev[nu].min(axis=0) + (_mersenne(k) * meta.d - shift)
        tables.append(cur)
    return tables


def distance_rows(
    g: BaseGraph,
    t: int,
    sources: np.ndarray,
    longer_paths: bool,
    tables: list[np.ndarray] | None = None,
) -> np.ndarray:
    """Pair-formula distances from each source word to every word of length ``t``.

    Returns an int64 array of shape ``(len(sources), n**t)``.  With
    ``longer_paths`` the result is ``min(theta, theta')`` as for triangle-free
    bases, otherwise ``theta`` alone.  The caller is responsible for the
    formula applying to the pairs it reads back.
    """
    check_level(t)
    _require_connected(g)
    n = g.n
    D = g.distance_array
    if tables is None:
        tables = extreme_tables(g, max(t - 1, 1))
    pair_lists = {}
    for x in range(n):
        for y in range(n):
            if x != y:
                phi = sorted(g.phi(x, y))
                longer = sorted(g.phi_prime(x, y)) if longer_paths else []
                pair_lists[x, y] = (phi, longer)

    def rows(k: int, src: np.ndarray) -> np.ndarray:
        if k == 1:
            return D[src]
        block = n ** (k - 1)
        E = tables[k - 2]
        out = np.empty((src.size, n * block), dtype=np.int64)
        first, rest = np.divmod(src, block)
        short_shift = -2 * _mersenne(k - 1)
        for x in np.unique(first):
            sel = np.flatnonzero(first == x)
            r = rest[sel]
            for y in range(n):
                cols = slice(y * block, (y + 1) * block)
                if y == x:
                    out[sel, cols] = rows(k - 1, r)
                    continue
                d = int(D[x, y])
                phi, longer = pair_lists[x, y]
                best = _pair_min(E, r, phi) + (_mersenne(k) * d + short_shift)
                if longer:
                    alt = _pair_min(E, r, longer) + (_mersenne(k) * d + 1)
                    np.minimum(best, alt, out=best)
                out[sel, cols] = best
        return out

    return rows(t, np.asarray(sources, dtype=np.int64))


def _pair_min(E: np.ndarray, rest: np.ndarray, pairs: list[tuple[int, int]]) -> np.ndarray:
    best = None
    for a, b in pairs:
        cand = E[a, rest][:, None] + E[b][None, :]
        best = cand if best is None else np.minimum(best, cand, out=best)
    return best
