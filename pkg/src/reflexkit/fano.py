"""Invariants of reflexive polytopes: delta, smoothness, Picard number,
facet volumes, the Minkowski relation, adjacency and level counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .errors import PreconditionError
from .exact_core import determinant, rank
from .polytope import Polytope
from .reflexive import dual, is_reflexive, require_reflexive

__all__ = [
    "Delta",
    "FanoReport",
    "delta",
    "delta_pairs",
    "is_smooth",
    "picard_number",
    "facet_determinants",
    "facet_lattice_volume",
    "minkowski_relation",
    "is_adjacent",
    "level_counts",
    "fano_report",
]


class Delta(NamedTuple):
    value: int
    vertex: int
    facet: int


def delta_pairs(P: Polytope):
    """All (vertex, facet) index pairs with ``v`` off ``F_u`` and ``<v, u> = delta``."""
    require_reflexive(P)
    best = None
    pairs = []
    for f, F in enumerate(P.facets):
        on = set(F.incident)
        for i, v in enumerate(P.vertices):
            if i in on:
                continue
            val = F.value(v)
            if best is None or val < best:
                best, pairs = val, []
            if val == best:
                pairs.append((i, f))
    return best, pairs


def delta(P: Polytope) -> Delta:
    """Minimum pairing ``<v, u>`` over vertices v not on the facet ``F_u``.

    Returns the value together with the first minimizing (vertex, facet) pair.
    """
    value, pairs = delta_pairs(P)
    return Delta(value, *pairs[0])


def facet_determinants(P: Polytope) -> list[int]:
    """Determinant of each facet's vertex matrix (simplicial P only)."""
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "facet determinants need a simplicial polytope")
    return [determinant([list(v) for v in P.facet_vertices(f)]) for f in range(len(P.facets))]


def is_smooth(P: Polytope) -> bool:
    """True iff P is simplicial and every facet's vertices form a lattice basis."""
    if not P.is_simplicial():
        return False
    return all(abs(d) == 1 for d in facet_determinants(P))


def picard_number(P: Polytope) -> int:
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "the Picard number is |V| - n only for simplicial P")
    return P.n_vertices - P.dim


def _face_facets(P: Polytope, face: frozenset, d: int):
    """Facets (as vertex-index sets) of a d-dimensional face of P."""
    cands = set()
    for F in P.facets:
        sub = face & frozenset(F.incident)
        if len(sub) >= d and sub != face:
            cands.add(frozenset(sub))
    out = []
    for sub in cands:
        pts = [P.vertices[i] for i in sorted(sub)]
        p0 = pts[0]
        if rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]]) == d - 1:
            out.append(sub)
    return out


def _pulling_triangulation(P: Polytope, face: frozenset, d: int, pick):
    if len(face) == d + 1:
        return [tuple(sorted(face))]
    apex = pick(face)
    simplices = []
    for sub in _face_facets(P, face, d):
        if apex in sub:
            continue
        for s in _pulling_triangulation(P, sub, d - 1, pick):
            simplices.append(tuple(sorted(s + (apex,))))
    return simplices


def facet_lattice_volume(P: Polytope, f: int, pull: str = "lowest") -> int:
    """Normalized volume of facet ``f`` of a reflexive polytope.

    The facet sits at lattice distance one, so the volume of each simplex of a
    pulling triangulation is the absolute determinant of its vertices.
    ``pull`` picks the apex at every level: ``"lowest"`` or ``"highest"`` index.
    """
    require_reflexive(P)
    pick = min if pull == "lowest" else max
    face = frozenset(P.facets[f].incident)
    total = 0
    for s in _pulling_triangulation(P, face, P.dim - 1, pick):
        total += abs(determinant([list(P.vertices[i]) for i in s]))
    return total


def minkowski_relation(P: Polytope):
    """Coefficients ``Vol(F_u)`` for every vertex u of P and the residual sum.

    ``F_u`` is the facet of the dual polytope with normal ``u``. The residual
    ``sum Vol(F_u) u`` vanishes for reflexive P.
    """
    require_reflexive(P)
    D = dual(P)
    coeffs = []
    for u in P.vertices:
        coeffs.append(facet_lattice_volume(D, D.facet_index(u)))
    residual = tuple(sum(c * u[i] for c, u in zip(coeffs, P.vertices)) for i in range(P.dim))
    return tuple(coeffs), residual


def is_adjacent(P: Polytope, v: int, f: int) -> bool:
    """Whether vertex ``v`` replaces one vertex of facet ``f`` in some other facet."""
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "adjacency is defined for simplicial P")
    F = P.facets[f].incident
    if v in F:
        raise PreconditionError("vertex_on_facet", f"vertex {v} lies on facet {f}")
    facet_sets = {frozenset(G.incident) for G in P.facets}
    for i in F:
        if frozenset(j for j in F if j != i) | {v} in facet_sets:
            return True
    return False


def level_counts(P: Polytope, f: int) -> Counter:
    """Histogram of ``<v, u>`` over the vertices of P, u the normal of facet ``f``."""
    F = P.facets[f]
    return Counter(F.value(v) for v in P.vertices)


@dataclass
class FanoReport:
    n: int
    vertex_count: int
    is_reflexive: bool
    is_simplicial: bool
    is_smooth: bool
    delta: int | None = None
    picard: int | None = None
    volume_per_facet: dict | None = None
    minkowski_coefficients: tuple | None = None
    minkowski_residual: tuple | None = None


def fano_report(P: Polytope) -> FanoReport:
    refl = is_reflexive(P)
    simp = P.is_simplicial()
    rep = FanoReport(P.dim, P.n_vertices, refl, simp, is_smooth(P))
    if simp:
        rep.picard = picard_number(P)
    if refl:
        rep.delta = delta(P).value
        rep.volume_per_facet = {F.normal: facet_lattice_volume(P, f) for f, F in enumerate(P.facets)}
        rep.minkowski_coefficients, rep.minkowski_residual = minkowski_relation(P)
    return rep
