"""Closed forms for S(T, t) when the base T is a tree.

S(T, t) is itself a tree, so pair distances follow a single G-path, and the
eccentricity of extreme vertices, the diameter and the radius have explicit
formulas in ``t``, the vertex eccentricities of T and D(T).
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .base_graph import BaseGraph
from .errors import ApplicabilityError
from .recursive import _extreme_solver, _mersenne
from .words import check_level, check_word, split_common_prefix


class TreeBase:
    """A base graph validated as a tree, with cached eccentricities."""

    def __init__(self, g: BaseGraph):
        if not g.is_tree():
            raise ApplicabilityError("the base graph is not a tree")
        self.graph = g

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def eccentricities(self) -> tuple[int, ...]:
        return tuple(self.graph.eccentricity(v) for v in range(self.n))

    @cached_property
    def diameter(self) -> int:
        return max(self.eccentricities)

    @cached_property
    def radius(self) -> int:
        return min(self.eccentricities)

    def path_neighbor(self, x: int, y: int) -> int:
        """The neighbour of ``y`` on the unique ``x``-``y`` path."""
        (v,) = self.graph.dist_star(x, y).nu
        return v


def _require_order_3(T: TreeBase) -> None:
    if T.n < 3:
        raise ApplicabilityError(
            "closed forms need a tree of order >= 3; S(K2, t) is the path on 2^t vertices"
        )


def tree_dist(T: TreeBase, w: Sequence[int], w2: Sequence[int]) -> int:
    if T.n < 2:
        raise ApplicabilityError("tree distances need order >= 2")
    g = T.graph
    w = check_word(w, g.n)
    w2 = check_word(w2, g.n, len(w))
    check_level(len(w))
    t = len(w)
    j0 = split_common_prefix(w, w2).j - 1
    if j0 == t:
        return 0
    if j0 == t - 1:
        return g.dist(w[-1], w2[-1])
    x, y = w[j0], w2[j0]
    k = t - j0
    x_next = T.path_neighbor(y, x)
    y_next = T.path_neighbor(x, y)
    suffix_x = _extreme_solver(g, w[j0 + 1 :])(x_next)
    suffix_y = _extreme_solver(g, w2[j0 + 1 :])(y_next)
    return suffix_x + suffix_y + _mersenne(k) * g.dist(x, y) - 2 * _mersenne(k - 1)


def tree_extreme_ecc(T: TreeBase, u: int, t: int) -> int:
    """Eccentricity of the extreme vertex ``u^t`` in S(T, t)."""
    _require_order_3(T)
    check_level(t)
    return _mersenne(t) * T.eccentricities[u] + ((1 << t) - t - 1) * (T.diameter - 2)


def tree_sierpinski_diameter(T: TreeBase, t: int) -> int:
    _require_order_3(T)
    check_level(t)
    return (3 * (1 << t) - 2 * t - 3) * T.diameter - 4 * ((1 << t) - t - 1)


def tree_sierpinski_radius(T: TreeBase, t: int) -> int:
    _require_order_3(T)
    check_level(t)
    D = T.diameter
    scaled = (3 * (1 << t) - 2 * t - 3) * D
    if D % 2 == 0:
        twice = scaled - 4 * ((1 << t) - t - 1)
    else:
        twice = scaled - (1 << (t + 2)) + 4 * t + 5
    if twice % 2:
        raise ArithmeticError(f"radius numerator {twice} is odd (D(T)={D}, t={t})")
    return twice // 2


def path_sierpinski_values(t: int) -> tuple[int, int]:
    """``(diameter, radius)`` of S(K2, t), the path on ``2^t`` vertices."""
    check_level(t)
    return (1 << t) - 1, 1 << (t - 1)
