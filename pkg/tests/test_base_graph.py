import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sierpdist import BaseGraph, GraphParseError, GraphValidationError, UnreachableError, load_graph
from sierpdist.base_graph import (
    complete_graph,
    cycle_graph,
    dump_graph,
    path_graph,
    random_connected,
    random_tree,
    star_graph,
)
from sierpdist.errors import BudgetExceededError


def to_nx(g: BaseGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


@st.composite
def connected_graphs(draw, max_n=8, triangle_free=False):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    extra = draw(st.integers(0, n))
    return random_connected(n, random.Random(seed), extra, triangle_free=triangle_free)


# -- parsing ---------------------------------------------------------------------


def test_load_skips_comments_and_blank_lines():
    g = load_graph("# c4\n\n4 4\n0 1\n1 2\n\n# more\n2 3\n3 0\n")
    assert g.n == 4 and g.edge_count == 4
    assert g.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]


@pytest.mark.parametrize(
    "text",
    ["", "# only a comment\n", "4\n", "4 1\n0 x\n", "4 2\n0 1\n", "4 1\n0 1 2\n", "0 0\n"],
)
def test_load_rejects_malformed(text):
    with pytest.raises(GraphParseError):
        load_graph(text)


@pytest.mark.parametrize("text", ["3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 3\n", "3 1\n-1 2\n"])
def test_load_rejects_invalid_simple_graph(text):
    with pytest.raises(GraphValidationError):
        load_graph(text)


def test_dump_round_trip():
    g = cycle_graph(5)
    assert load_graph(dump_graph(g, ["a comment"])) == g


def test_fixtures_load(load):
    assert load("c4") == cycle_graph(4)
    assert load("k3") == complete_graph(3)
    assert load("p4") == path_graph(4)
    assert load("diamond").edge_count == 5
    assert load("c5_pendants").n == 7


# -- distances and path metadata ---------------------------------------------------


def test_dist_examples():
    assert cycle_graph(4).dist(0, 2) == 2
    assert path_graph(4).dist(0, 3) == 3
    assert all(complete_graph(5).dist(x, x) == 0 for x in range(5))


def test_dist_unreachable():
    g = BaseGraph.from_edges(4, [(0, 1), (2, 3)])
    assert not g.is_connected()
    with pytest.raises(UnreachableError):
        g.dist(0, 2)


def test_dist_star_examples():
    meta = cycle_graph(4).dist_star(0, 2)
    assert (meta.d, meta.nu) == (2, frozenset({1, 3}))
    assert path_graph(4).dist_star(0, 3).nu == frozenset({2})
    assert complete_graph(3).dist_star(0, 1).nu == frozenset({0})
    with pytest.raises(ValueError):
        cycle_graph(4).dist_star(1, 1)


def test_phi_examples():
    c4 = cycle_graph(4)
    assert c4.phi(3, 1) == frozenset({(0, 0), (2, 2)})
    c5 = cycle_graph(5)
    assert c5.phi(0, 2) == frozenset({(1, 1)})
    assert (4, 3) in c5.phi_prime(0, 2)
    # adjacent pair: the edge itself is the shortest path
    assert c5.phi(0, 1) == frozenset({(1, 0)})
    meta = c4.dist_double_star(3, 1)
    assert meta.d == 2 and meta.phi == c4.phi(3, 1) and meta.phi_prime == frozenset()


def test_phi_prime_budget():
    with pytest.raises(BudgetExceededError):
        complete_graph(8).phi_prime(0, 1, max_expansions=5)


def _simple_paths_of_length(G, x, y, length):
    return [p for p in nx.all_simple_paths(G, x, y, cutoff=length) if len(p) == length + 1]


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=7))
def test_path_metadata_matches_enumeration(g):
    G = to_nx(g)
    for x, y in itertools.permutations(range(g.n), 2):
        d = nx.shortest_path_length(G, x, y)
        assert g.dist(x, y) == d
        nu = {v for v in G[y] if nx.shortest_path_length(G, x, v) == d - 1}
        assert g.dist_star(x, y).nu == nu
        shortest = {(p[1], p[-2]) for p in nx.all_shortest_paths(G, x, y)}
        assert g.phi(x, y) == shortest
        longer = {(p[1], p[-2]) for p in _simple_paths_of_length(G, x, y, d + 1)}
        assert g.phi_prime(x, y) == longer


@settings(max_examples=60, deadline=None)
@given(connected_graphs(), st.data())
def test_distance_axioms(g, data):
    x, y, z = (data.draw(st.integers(0, g.n - 1)) for _ in range(3))
    assert g.dist(x, y) == g.dist(y, x)
    assert g.dist(x, z) <= g.dist(x, y) + g.dist(y, z)


def test_phi_prime_empty_on_trees():
    rng = random.Random(5)
    for _ in range(20):
        T = random_tree(rng.randint(2, 9), rng)
        assert all(not T.phi_prime(x, y) for x, y in itertools.permutations(range(T.n), 2))


# -- predicates ---------------------------------------------------------------------


def test_predicates():
    c4, k3, p4 = cycle_graph(4), complete_graph(3), path_graph(4)
    assert c4.is_bipartite() and c4.is_triangle_free() and not c4.is_tree()
    assert not k3.is_triangle_free() and not k3.is_bipartite() and k3.is_complete()
    assert p4.is_tree() and p4.is_bipartite()
    assert cycle_graph(5).is_triangle_free() and not cycle_graph(5).is_bipartite()
    assert star_graph(3).is_tree() and star_graph(3).degree(0) == 3


def test_lies_on_no_cycle_examples(load):
    g = load("c5_pendants")
    assert g.lies_on_no_cycle(5) and g.lies_on_no_cycle(6)
    assert not any(g.lies_on_no_cycle(v) for v in range(5))
    assert not any(cycle_graph(4).lies_on_no_cycle(v) for v in range(4))
    assert all(path_graph(5).lies_on_no_cycle(v) for v in range(5))


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_no_cycle_matches_cycle_enumeration(g):
    on_cycle = set()
    for cycle in nx.simple_cycles(to_nx(g)):
        if len(cycle) >= 3:
            on_cycle.update(cycle)
    assert {v for v in range(g.n) if not g.lies_on_no_cycle(v)} == on_cycle


@settings(max_examples=40, deadline=None)
@given(connected_graphs())
def test_predicates_match_networkx(g):
    G = to_nx(g)
    assert g.is_bipartite() == nx.is_bipartite(G)
    assert g.is_tree() == nx.is_tree(G)
    assert g.is_triangle_free() == (sum(nx.triangles(G).values()) == 0)
    assert g.bridges == {tuple(sorted(e)) for e in nx.bridges(G)}


@pytest.mark.parametrize("name,g,size", [("P4", path_graph(4), 2), ("C5", cycle_graph(5), 10), ("K4", complete_graph(4), 24)])
def test_automorphism_counts(name, g, size):
    autos = g.automorphisms
    assert len(autos) == size
    assert autos[0] == tuple(range(g.n))
    edges = set(g.edges())
    for sigma in autos:
        assert {tuple(sorted((sigma[u], sigma[v]))) for u, v in edges} == edges


def test_generators_are_connected_and_triangle_free():
    rng = random.Random(11)
    for _ in range(30):
        g = random_connected(rng.randint(2, 8), rng, rng.randint(0, 6), triangle_free=True)
        assert g.is_connected() and g.is_triangle_free()
