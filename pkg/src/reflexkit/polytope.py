"""Lattice polytopes in vertex representation.

Facets are found by scanning every n-subset of the input points: a subset
spanning an affine hyperplane with all points weakly on one side supports a
facet. This is quadratic-ish in the number of points but the polytopes we care
about have at most 3n vertices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import PreconditionError
from .exact_core import determinant, hyperplane_normal, inverse, primitive, rank

__all__ = [
    "FacetData",
    "Polytope",
    "Wall",
    "Location",
    "Containment",
    "hull",
    "ridges",
    "contains",
    "interior_lattice_points",
]


@dataclass(frozen=True)
class FacetData:
    """A facet ``{x : <x, normal> = -offset}`` with ``<x, normal> >= -offset`` on P.

    ``incident`` holds the indices (into ``Polytope.vertices``) of the vertices
    on the facet, sorted.
    """

    normal: tuple[int, ...]
    offset: int
    incident: tuple[int, ...]

    def value(self, x):
        return sum(a * b for a, b in zip(x, self.normal))


@dataclass(frozen=True)
class Wall:
    """A ridge of a simplicial polytope, shared by facets A and B."""

    facetA: int
    facetB: int
    common: tuple[int, ...]
    oppA: int
    oppB: int

    def swapped(self) -> "Wall":
        return Wall(self.facetB, self.facetA, self.common, self.oppB, self.oppA)


@dataclass(frozen=True, eq=False)
class Polytope:
    """Full-dimensional lattice polytope.

    Build instances with :func:`hull`; the constructor trusts its input.
    ``ambient`` is ``"N"`` for polytopes in the lattice and ``"M"`` for duals.
    """

    vertices: tuple[tuple[int, ...], ...]
    facets: tuple[FacetData, ...]
    ambient: str = "N"
    dim: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", len(self.vertices[0]))

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices and self.ambient == other.ambient

    def __hash__(self):
        return hash((self.vertices, self.ambient))

    def __repr__(self):
        return f"Polytope({list(self.vertices)!r}, ambient={self.ambient!r})"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def facet_vertices(self, f: int):
        return [self.vertices[i] for i in self.facets[f].incident]

    def is_simplicial(self) -> bool:
        return all(len(F.incident) == self.dim for F in self.facets)

    def facet_index(self, normal) -> int:
        normal = tuple(normal)
        for i, F in enumerate(self.facets):
            if F.normal == normal:
                return i
        raise KeyError(normal)

    def transform(self, T) -> "Polytope":
        """Image under the linear map ``x -> T x``.

        For unimodular ``T`` facet data is carried over (normals map by the
        inverse transpose); other maps go through :func:`hull`.
        """
        images = [tuple(sum(t * x for t, x in zip(row, v)) for row in T) for v in self.vertices]
        if abs(determinant([list(r) for r in T])) != 1:
            return hull(images, ambient=self.ambient)
        Tinv = [[int(x) for x in row] for row in inverse(T)]
        facets = []
        for F in self.facets:
            u = tuple(sum(F.normal[i] * Tinv[i][j] for i in range(self.dim)) for j in range(self.dim))
            facets.append((u, F.offset, [images[i] for i in F.incident]))
        return _assemble(images, facets, self.ambient)


def _affine_rank(points) -> int:
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def _supporting_hyperplanes(points, n):
    """All (primitive inward normal, offset) pairs of facets of Conv(points)."""
    found = {}
    for subset in combinations(range(len(points)), n):
        p0 = points[subset[0]]
        diffs = [[a - b for a, b in zip(points[i], p0)] for i in subset[1:]]
        normal = hyperplane_normal(diffs)
        if not any(normal):
            continue
        normal = primitive(normal)
        level = sum(a * b for a, b in zip(p0, normal))
        vals = [sum(a * b for a, b in zip(p, normal)) for p in points]
        lo, hi = min(vals), max(vals)
        if lo == level:
            pass
        elif hi == level:
            normal = tuple(-a for a in normal)
            level = -level
        else:
            continue
        found[normal] = -level
    return found


def hull(points: Iterable[Sequence[int]], ambient: str = "N") -> Polytope:
    """Convex hull of lattice points.

    Non-vertices are dropped, vertices are sorted lexicographically and facet
    data is computed eagerly. Raises :class:`PreconditionError` when the
    points do not affinely span the ambient space.
    """
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise PreconditionError("empty", "no points given")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise PreconditionError("dimension_mismatch", "points have different lengths")
    d = _affine_rank(pts)
    if d < n:
        raise PreconditionError(
            "not_full_dimensional",
            f"points span an affine subspace of dimension {d} in dimension {n}",
        )
    planes = _supporting_hyperplanes(pts, n)
    normals = list(planes)
    verts = []
    for p in pts:
        tight = [u for u in normals if sum(a * b for a, b in zip(p, u)) == -planes[u]]
        if len(tight) >= n and rank(tight) == n:
            verts.append(p)
    facets = []
    for u in sorted(normals):
        c = planes[u]
        inc = tuple(i for i, v in enumerate(verts) if sum(a * b for a, b in zip(v, u)) == -c)
        facets.append(FacetData(u, c, inc))
    return Polytope(tuple(verts), tuple(facets), ambient)


def _assemble(vertices, facets, ambient):
    """Polytope from known vertices and (normal, offset, incident points) triples."""
    verts = sorted(vertices)
    index = {v: i for i, v in enumerate(verts)}
    data = sorted(
        (FacetData(tuple(u), c, tuple(sorted(index[p] for p in pts))) for u, c, pts in facets),
        key=lambda F: F.normal,
    )
    return Polytope(tuple(verts), tuple(data), ambient)


def ridges(P: Polytope) -> list[Wall]:
    """Walls of a simplicial polytope, each listed once with ``facetA < facetB``."""
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "ridges() needs a simplicial polytope")
    by_ridge = {}
    for f, F in enumerate(P.facets):
        for i in F.incident:
            common = tuple(j for j in F.incident if j != i)
            by_ridge.setdefault(common, []).append((f, i))
    walls = []
    for common, pair in by_ridge.items():
        if len(pair) != 2:
            raise PreconditionError("bad_ridge", f"ridge {common} lies on {len(pair)} facets")
        (fa, oa), (fb, ob) = sorted(pair)
        walls.append(Wall(fa, fb, common, oa, ob))
    walls.sort(key=lambda w: (w.facetA, w.facetB))
    return walls


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Containment:
    location: Location
    facets: tuple[int, ...] = ()


def contains(P: Polytope, x) -> Containment:
    """Locate a rational point relative to P; boundary results list tight facets."""
    x = tuple(Fraction(c) for c in x)
    if len(x) != P.dim:
        raise ValueError("dimension mismatch")
    tight = []
    for f, F in enumerate(P.facets):
        val = F.value(x)
        if val < -F.offset:
            return Containment(Location.OUTSIDE)
        if val == -F.offset:
            tight.append(f)
    if tight:
        return Containment(Location.BOUNDARY, tuple(tight))
    return Containment(Location.INTERIOR)


def interior_lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    lo = [min(v[i] for v in P.vertices) for i in range(P.dim)]
    hi = [max(v[i] for v in P.vertices) for i in range(P.dim)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(F.value(x) > -F.offset for F in P.facets):
            out.append(x)
    return out
