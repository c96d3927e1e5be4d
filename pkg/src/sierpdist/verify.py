"""Oracle-equivalence sweeps: every applicable formula against explicit BFS.

For one base graph and one level ``t`` :func:`sweep_level` materialises
S(G, t), runs BFS from every source that is in scope and compares the
result with

* the batch recursions (:func:`~sierpdist.recursive.extreme_tables`,
  :func:`~sierpdist.recursive.distance_rows`) over *all* pairs in scope;
* the scalar entry points over all pairs when that is cheap, otherwise over
  a seeded random sample;
* the common-prefix reduction (level ``t`` against level ``t - 1``) and the
  shape of G-paths of BFS shortest paths leaving extreme vertices;
* the tree closed forms for eccentricity, diameter and radius.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import _sweepkernel as kernel
from . import recursive as rec
from . import trees
from .base_graph import (
    BaseGraph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected,
    random_tree,
    star_graph,
)
from .oracle import ExplicitSierpinski, build_sierpinski
from .words import extreme_index

SWEEP_ORDER_CAP = 50_000
SCALAR_EXHAUSTIVE = 1_024
SCALAR_SAMPLES = 300


@dataclass
class Check:
    compared: int = 0
    mismatches: int = 0
    examples: list = field(default_factory=list)

    def record(self, ok: np.ndarray | bool, describe=None) -> None:
        ok = np.asarray(ok, dtype=bool)
        self.compared += int(ok.size)
        bad = int(ok.size - np.count_nonzero(ok))
        if bad:
            self.mismatches += bad
            if describe is not None and len(self.examples) < 5:
                self.examples.append(describe())


@dataclass
class LevelReport:
    level: int
    order: int
    checks: dict[str, Check] = field(default_factory=dict)
    values: dict[str, int] = field(default_factory=dict)

    def check(self, name: str) -> Check:
        return self.checks.setdefault(name, Check())

    @property
    def pairs(self) -> int:
        return sum(c.compared for c in self.checks.values())

    @property
    def mismatches(self) -> int:
        return sum(c.mismatches for c in self.checks.values())


@dataclass(frozen=True)
class Scope:
    """Which formulas apply to a base graph."""

    complete: bool
    tree: bool
    bipartite: bool
    triangle_free: bool
    no_cycle: tuple[bool, ...]

    @classmethod
    def of(cls, g: BaseGraph) -> Scope:
        return cls(
            complete=g.is_complete(),
            tree=g.is_tree(),
            bipartite=g.is_bipartite(),
            triangle_free=g.is_triangle_free(),
            no_cycle=tuple(g.lies_on_no_cycle(v) for v in range(g.n)),
        )

    @property
    def conditional(self) -> bool:
        return any(self.no_cycle)

    @property
    def all_pairs(self) -> bool:
        return self.triangle_free


def levels_within(n: int, cap: int = SWEEP_ORDER_CAP) -> list[int]:
    levels = []
    t = 1
    while n**t <= cap:
        levels.append(t)
        t += 1
    return levels


def sweep_level(
    g: BaseGraph,
    t: int,
    rng: random.Random | None = None,
    previous: ExplicitSierpinski | None = None,
    scalar_exhaustive: int = SCALAR_EXHAUSTIVE,
    scalar_samples: int = SCALAR_SAMPLES,
    guard: int = SWEEP_ORDER_CAP,
) -> tuple[LevelReport, ExplicitSierpinski]:
    """Check every applicable method on S(g, t); returns the report and S."""
    rng = rng or random.Random(0)
    scope = Scope.of(g)
    S = build_sierpinski(g, t, guard=guard)
    n, N = g.n, S.order
    report = LevelReport(t, N)

    ext_idx = np.array([extreme_index(x, n, t) for x in range(n)], dtype=np.int64)
    ext_rows = S.bfs_rows(ext_idx)

    _check_structure(g, t, S, ext_idx, ext_rows, scope, report)
    _check_extremes(g, t, S, ext_idx, ext_rows, scope, report, rng, scalar_exhaustive, scalar_samples)
    _check_g_paths(g, S, ext_idx, report)

    ecc = None
    if scope.all_pairs or scope.conditional or t >= 2:
        ecc = _check_pair_rows(g, t, S, previous, scope, report)
    if scope.all_pairs or scope.conditional:
        _check_scalar_pairs(g, t, S, scope, report, rng, scalar_exhaustive, scalar_samples)

    if ecc is not None:
        report.values["oracle_diameter"] = int(ecc.max())
        report.values["oracle_radius"] = int(ecc.min())
    if scope.tree:
        _check_tree_forms(g, t, ext_rows, ecc, report)
    return report, S


def sweep(
    g: BaseGraph,
    t_max: int | None = None,
    cap: int = SWEEP_ORDER_CAP,
    seed: int = 0,
    **kwargs,
) -> list[LevelReport]:
    rng = random.Random(seed)
    reports = []
    previous = None
    for t in levels_within(g.n, cap):
        if t_max is not None and t > t_max:
            break
        report, previous = sweep_level(g, t, rng=rng, previous=previous, guard=cap, **kwargs)
        reports.append(report)
    return reports


# -- individual checks -----------------------------------------------------------


def _check_structure(g, t, S, ext_idx, ext_rows, scope, report):
    """Order, size, degree facts, connectivity, and the shape for tree bases."""
    n, N = g.n, S.order
    check = report.check("structure")
    check.record(N == n**t, lambda: ("order", N))
    check.record(S.edge_count * (n - 1) == g.edge_count * (N - 1), lambda: ("edges", S.edge_count))
    check.record(bool((ext_rows[0] >= 0).all()), lambda: "disconnected")
    for x in range(n):
        check.record(S.degree(int(ext_idx[x])) == g.degree(x), lambda: ("extreme degree", x))
    if t >= 2:
        for x, y in g.edges():
            for a, b in ((x, y), (y, x)):
                link = S.index((a,) + (b,) * (t - 1))
                check.record(S.degree(link) == g.degree(b) + 1, lambda: ("link degree", a, b))
    if scope.tree:
        check.record(S.edge_count == N - 1, lambda: "S(T, t) is not a tree")
    if scope.tree and n == 2:
        check.record(int(ext_rows[0].max()) == (1 << t) - 1, lambda: "S(K2, t) is not a path")


def _check_extremes(g, t, S, ext_idx, ext_rows, scope, report, rng, scalar_exhaustive, scalar_samples):
    n, N = g.n, S.order
    table = rec.extreme_tables(g, t)[-1]
    check = report.check("algorithm-1/batch")
    ok = table == ext_rows
    check.record(ok, lambda: _first_bad(ok, S, ext_idx, table, ext_rows))

    check = report.check("extreme-extreme")
    for x in range(n):
        for y in range(n):
            got = rec.extreme_extreme_dist(g, x, y, t)
            check.record(got == ext_rows[x, ext_idx[y]], lambda: (x, y, got, int(ext_rows[x, ext_idx[y]])))

    if n * N <= scalar_exhaustive:
        pairs = [(x, i) for x in range(n) for i in range(N)]
    else:
        pairs = [(rng.randrange(n), rng.randrange(N)) for _ in range(scalar_samples)]
    check = report.check("algorithm-1")
    for x, i in pairs:
        w = S.word(i)
        got = rec.extreme_to_word(g, x, w)
        want = int(ext_rows[x, i])
        check.record(got == want, lambda: ((x,) * t, w, got, want))

    if scope.complete:
        check = report.check("complete-closed-form")
        for x, i in pairs:
            w = S.word(i)
            got = rec.complete_extreme_to_word(n, x, w)
            want = int(ext_rows[x, i])
            check.record(got == want, lambda: ((x,) * t, w, got, want))


def _check_g_paths(g, S, ext_idx, report):
    """G-paths of BFS shortest paths from extreme vertices are triangle-free paths of G."""
    n = g.n
    adjacent = np.zeros((n, n), dtype=bool)
    for u, v in g.edges():
        adjacent[u, v] = adjacent[v, u] = True
    first = np.arange(S.order, dtype=np.int64) // (n ** (S.t - 1))
    check = report.check("g-path/triangle-free")
    for src in ext_idx:
        dist, parent, order = S.bfs_tree(int(src))
        last = np.full(S.order, -1, dtype=np.int64)
        prev = np.full(S.order, -1, dtype=np.int64)
        last[src] = first[src]
        layer_bounds = np.searchsorted(dist[order], np.arange(1, dist[order[-1]] + 2))
        for lo, hi in zip(layer_bounds[:-1], layer_bounds[1:]):
            layer = order[lo:hi]
            p = parent[layer]
            f = first[layer]
            stays = f == last[p]
            moves = ~stays
            last[layer] = f
            prev[layer] = np.where(stays, prev[p], last[p])
            ok = np.ones(layer.size, dtype=bool)
            step_ok = adjacent[last[p], f]
            pp = prev[p]
            shape_ok = (pp < 0) | ((pp != f) & ~adjacent[np.maximum(pp, 0), f])
            ok[moves] = step_ok[moves] & shape_ok[moves]
            check.record(ok, lambda: ("from", S.word(int(src)), "to", S.word(int(layer[~ok][0]))))


def _check_pair_rows(g, t, S, previous, scope, report):
    """Exhaustive pair checks against one oracle BFS per source; returns eccentricities."""
    n = g.n
    longer = scope.all_pairs and not scope.bipartite
    tables = rec.extreme_tables(g, t - 1) if t >= 2 else []
    E, off = kernel.stacked_tables(tables, n)
    has_prev = t >= 2 and previous is not None
    prev = previous if has_prev else S
    perms = kernel.letter_permutations(g, t)
    compared, bad = kernel.automorphism_mismatches(S.indptr, S.indices, perms)
    check = report.check("automorphism")
    check.compared += compared
    check.mismatches += bad
    if bad:
        # never move rows along a map that is not an automorphism
        perms = perms[:1]
    stats, ecc = kernel.fused_sweep(
        S.indptr, S.indices, prev.indptr, prev.indices, has_prev, n, t, perms,
        g.distance_array, E, off, *kernel.pair_arrays(g, longer),
        np.array(scope.no_cycle, dtype=np.bool_),
        scope.all_pairs, longer, scope.conditional,
    )

    def tally(name, cmp_slot, mis_slot, bad_slot):
        check = report.check(name)
        check.compared += int(stats[cmp_slot])
        check.mismatches += int(stats[mis_slot])
        if stats[mis_slot]:
            check.examples.append((S.word(int(stats[bad_slot])), S.word(int(stats[bad_slot + 1]))))

    if scope.all_pairs:
        name = "tree/batch" if scope.tree else ("bipartite/batch" if scope.bipartite else "algorithm-2/batch")
        tally(name, kernel.FULL_CMP, kernel.FULL_MIS, kernel.BAD_FULL)
    if scope.conditional:
        tally("conditional/batch", kernel.COND_CMP, kernel.COND_MIS, kernel.BAD_COND)
    if has_prev:
        tally("prefix-reduction", kernel.PRE_CMP, kernel.PRE_MIS, kernel.BAD_PRE)
    return ecc


def _check_scalar_pairs(g, t, S, scope, report, rng, scalar_exhaustive, scalar_samples):
    N = S.order
    if N * N <= scalar_exhaustive:
        pairs = [(i, j) for i in range(N) for j in range(N)]
    else:
        pairs = [(rng.randrange(N), rng.randrange(N)) for _ in range(scalar_samples)]
    sources = sorted({i for i, _ in pairs})
    rows = dict(zip(sources, S.bfs_rows(np.array(sources, dtype=np.int64))))
    T = trees.TreeBase(g) if scope.tree else None

    def compare(name, fn, w, w2, want):
        got = fn()
        report.check(name).record(got == want, lambda: (w, w2, got, want))

    for i, j in pairs:
        w, w2 = S.word(i), S.word(j)
        want = int(rows[i][j])
        if scope.tree:
            compare("tree", lambda: trees.tree_dist(T, w, w2), w, w2, want)
        if scope.bipartite:
            compare("bipartite", lambda: rec.bipartite_dist(g, w, w2).distance, w, w2, want)
        if scope.triangle_free:
            compare("algorithm-2", lambda: rec.triangle_free_dist(g, w, w2).distance, w, w2, want)
        if _premiss_holds(g, w, w2):
            compare("conditional", lambda: rec.conditional_dist(g, w, w2).distance, w, w2, want)
        compare(
            "best-dist",
            lambda: rec.best_dist(g, w, w2, allow_oracle_fallback=True).distance,
            w, w2, want,
        )


def _premiss_holds(g, w, w2):
    for a, b in zip(w, w2):
        if a != b:
            return g.lies_on_no_cycle(a) or g.lies_on_no_cycle(b)
    return True


def _check_tree_forms(g, t, ext_rows, ecc, report):
    T = trees.TreeBase(g)
    if g.n < 3:
        diameter, radius = trees.path_sierpinski_values(t)
        report.check("path-closed-form").record(
            [diameter == int(ecc.max()), radius == int(ecc.min())]
        )
        return
    check = report.check("tree-extreme-ecc")
    for u in range(g.n):
        got = trees.tree_extreme_ecc(T, u, t)
        want = int(ext_rows[u].max())
        check.record(got == want, lambda: (u, got, want))
    got_d = trees.tree_sierpinski_diameter(T, t)
    got_r = trees.tree_sierpinski_radius(T, t)
    report.values["formula_diameter"] = got_d
    report.values["formula_radius"] = got_r
    report.check("tree-diameter").record(got_d == int(ecc.max()), lambda: (got_d, int(ecc.max())))
    report.check("tree-radius").record(got_r == int(ecc.min()), lambda: (got_r, int(ecc.min())))


def _first_bad(ok, S, src, got, want):
    r, c = np.argwhere(~ok)[0]
    return (S.word(int(src[r])), S.word(int(c)), int(got[r, c]), int(want[r, c]))


# -- test corpus -------------------------------------------------------------------


def worked_examples() -> dict[str, BaseGraph]:
    """Two small bases with hand-checked distances (see the test fixtures)."""
    return {
        # K4 minus one edge
        "diamond": BaseGraph.from_edges(4, [(0, 1), (0, 3), (1, 3), (1, 2), (2, 3)]),
        # 5-cycle 0..4 with a pendant at 1 and one at 2
        "c5-pendants": BaseGraph.from_edges(
            7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (2, 6)]
        ),
    }


def corpus(seed: int = 2017, random_count: int = 20) -> list[tuple[str, BaseGraph]]:
    """Base graphs for the equivalence sweep.

    Paths P2-P6, cycles C4-C7, stars K_{1,3} and K_{1,4}, complete graphs
    K2-K5, the two worked-example bases, and seeded random trees and random
    connected triangle-free graphs on 3 to 8 vertices.
    """
    rng = random.Random(seed)
    graphs = [(f"P{k}", path_graph(k)) for k in range(2, 7)]
    graphs += [(f"C{k}", cycle_graph(k)) for k in range(4, 8)]
    graphs += [(f"K1,{k}", star_graph(k)) for k in (3, 4)]
    graphs += [(f"K{k}", complete_graph(k)) for k in range(2, 6)]
    graphs += list(worked_examples().items())
    for i in range(random_count):
        n = rng.randint(3, 8)
        graphs.append((f"tree-{i}-n{n}", random_tree(n, rng)))
    for i in range(random_count):
        n = rng.randint(4, 8)
        g = random_connected(n, rng, extra_edges=rng.randint(1, n), triangle_free=True)
        graphs.append((f"trianglefree-{i}-n{n}", g))
    return graphs
