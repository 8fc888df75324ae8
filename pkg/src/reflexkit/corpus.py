"""Standard reflexive polytopes and constructions used throughout the tests."""

from __future__ import annotations

from .polytope import Polytope, hull

__all__ = [
    "unit_vector",
    "smooth_simplex",
    "reflexive_triangle_dual",
    "hexagon",
    "cross_polytope",
    "free_sum",
]


def unit_vector(n: int, i: int, sign: int = 1) -> tuple[int, ...]:
    return tuple(sign if j == i else 0 for j in range(n))


def smooth_simplex(n: int) -> Polytope:
    """Conv(e_1, ..., e_n, -e_1-...-e_n), the fan polytope of projective n-space."""
    pts = [unit_vector(n, i) for i in range(n)]
    pts.append((-1,) * n)
    return hull(pts)


def reflexive_triangle_dual() -> Polytope:
    """Conv((2,-1), (-1,2), (-1,-1)), dual of the projective-plane triangle."""
    return hull([(2, -1), (-1, 2), (-1, -1)])


def hexagon() -> Polytope:
    """Conv(+-e_1, +-e_2, +-(e_1+e_2)); the toric del Pezzo surface of degree 6."""
    return hull([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)])


def cross_polytope(n: int) -> Polytope:
    return hull([unit_vector(n, i, s) for i in range(n) for s in (1, -1)])


def free_sum(*polytopes: Polytope) -> Polytope:
    """Conv of the polytopes placed in complementary coordinate subspaces."""
    total = sum(P.dim for P in polytopes)
    pts = []
    offset = 0
    for P in polytopes:
        for v in P.vertices:
            pts.append((0,) * offset + tuple(v) + (0,) * (total - offset - P.dim))
        offset += P.dim
    return hull(pts)
