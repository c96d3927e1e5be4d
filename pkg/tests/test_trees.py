import itertools
import random

import pytest

from sierpdist import ApplicabilityError, TreeBase, build_sierpinski, oracle_dist
from sierpdist.base_graph import complete_graph, cycle_graph, path_graph, random_tree, star_graph
from sierpdist.oracle import oracle_diameter, oracle_eccentricity, oracle_radius
from sierpdist.recursive import bipartite_dist
from sierpdist.trees import (
    path_sierpinski_values,
    tree_dist,
    tree_extreme_ecc,
    tree_sierpinski_diameter,
    tree_sierpinski_radius,
)


def test_small_paths():
    P3, P4 = TreeBase(path_graph(3)), TreeBase(path_graph(4))
    assert tree_extreme_ecc(P3, 0, 2) == 6
    assert tree_extreme_ecc(P4, 1, 2) == 7
    assert tree_sierpinski_diameter(P3, 2) == 6
    assert tree_sierpinski_diameter(P4, 2) == 11
    assert tree_sierpinski_radius(P3, 2) == 3
    assert tree_sierpinski_radius(P4, 2) == 6


def test_p3_pair():
    T = TreeBase(path_graph(3))
    # the oracle settles this pair at 4
    assert tree_dist(T, (0, 1), (2, 1)) == 4
    assert oracle_dist(build_sierpinski(T.graph, 2), (0, 1), (2, 1)) == 4


def test_rejects_non_trees_and_k2():
    with pytest.raises(ApplicabilityError):
        TreeBase(cycle_graph(4))
    K2 = TreeBase(complete_graph(2))
    with pytest.raises(ApplicabilityError):
        tree_sierpinski_diameter(K2, 3)
    assert path_sierpinski_values(4) == (15, 8)


def test_path_neighbor():
    T = TreeBase(star_graph(3))
    assert T.path_neighbor(1, 2) == 0
    assert T.path_neighbor(0, 3) == 0


@pytest.mark.parametrize("seed", range(8))
def test_closed_forms_against_oracle(seed):
    rng = random.Random(seed)
    T = TreeBase(random_tree(rng.randint(3, 7), rng))
    for t in range(1, 4):
        S = build_sierpinski(T.graph, t)
        assert tree_sierpinski_diameter(T, t) == oracle_diameter(S)
        assert tree_sierpinski_radius(T, t) == oracle_radius(S)
        for u in range(T.n):
            assert tree_extreme_ecc(T, u, t) == oracle_eccentricity(S, (u,) * t)


@pytest.mark.parametrize("seed", range(5))
def test_tree_dist_agrees_with_bipartite_and_oracle(seed):
    rng = random.Random(100 + seed)
    g = random_tree(rng.randint(3, 6), rng)
    T = TreeBase(g)
    S = build_sierpinski(g, 3)
    for w, w2 in itertools.combinations(itertools.product(range(g.n), repeat=3), 2):
        d = tree_dist(T, w, w2)
        assert d == bipartite_dist(g, w, w2).distance == oracle_dist(S, w, w2)


def test_radius_numerators_are_even():
    rng = random.Random(9)
    for _ in range(50):
        T = TreeBase(random_tree(rng.randint(3, 12), rng))
        for t in range(1, 30):
            tree_sierpinski_radius(T, t)  # raises ArithmeticError on an odd numerator


def test_extreme_ecc_is_monotone():
    # a larger base eccentricity never gives a smaller extreme eccentricity
    rng = random.Random(4)
    for _ in range(20):
        T = TreeBase(random_tree(rng.randint(3, 9), rng))
        for t in range(1, 6):
            for u, v in itertools.permutations(range(T.n), 2):
                if T.eccentricities[u] >= T.eccentricities[v]:
                    assert tree_extreme_ecc(T, u, t) >= tree_extreme_ecc(T, v, t)
