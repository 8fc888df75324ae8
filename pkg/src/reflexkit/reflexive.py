"""Reflexivity, duality and GL(n, Z) normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

from .errors import PreconditionError
from .exact_core import hermite_normal_form, matmul, transpose
from .polytope import FacetData, Location, Polytope, _assemble, contains, hull

__all__ = [
    "CanonicalForm",
    "is_reflexive",
    "nonreflexive_facets",
    "require_reflexive",
    "dual",
    "facet_of",
    "vertex_of",
    "vertex_facet_table",
    "canonical_form",
    "are_isomorphic",
]


def _require_origin_interior(P: Polytope):
    if contains(P, (0,) * P.dim).location is not Location.INTERIOR:
        raise PreconditionError("origin_not_interior", "the origin is not an interior point")


def nonreflexive_facets(P: Polytope) -> list[int]:
    """Indices of facets not at lattice distance one from the origin."""
    _require_origin_interior(P)
    return [f for f, F in enumerate(P.facets) if F.offset != 1]


def is_reflexive(P: Polytope) -> bool:
    """True iff every facet lies on a hyperplane ``<x, u> = -1`` with u integral.

    Use :func:`nonreflexive_facets` for the offending facets.
    """
    return not nonreflexive_facets(P)


def require_reflexive(P: Polytope):
    bad = nonreflexive_facets(P)
    if bad:
        offs = sorted({P.facets[f].offset for f in bad})
        raise PreconditionError(
            "not_reflexive", f"{len(bad)} facet(s) not at distance 1 (offsets {offs})"
        )


def dual(P: Polytope) -> Polytope:
    """The dual polytope, whose vertices are the facet normals of P."""
    require_reflexive(P)
    # facet normals are the dual vertices; each vertex v of P cuts out the
    # dual facet {<v, y> = -1} through the normals of the facets containing v
    facets = []
    for i, v in enumerate(P.vertices):
        facets.append((v, 1, [F.normal for F in P.facets if i in F.incident]))
    return _assemble([F.normal for F in P.facets], facets, "M" if P.ambient == "N" else "N")


def facet_of(P: Polytope, u) -> FacetData:
    """The facet ``F_u`` of P corresponding to a vertex ``u`` of the dual."""
    require_reflexive(P)
    u = tuple(u)
    for F in P.facets:
        if F.normal == u:
            return F
    raise PreconditionError("not_dual_vertex", f"{u} is not a vertex of the dual polytope")


def vertex_of(P: Polytope, F: FacetData):
    """Inverse of :func:`facet_of`."""
    require_reflexive(P)
    if F not in P.facets:
        raise PreconditionError("not_a_facet", "facet does not belong to this polytope")
    return F.normal


def vertex_facet_table(P: Polytope) -> list[list[int]]:
    """``table[f][v] = <vertex v, normal of facet f>``."""
    return [[F.value(v) for v in P.vertices] for F in P.facets]


# --------------------------------------------------------------------------
# Normal form


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Hermite-normalized vertex matrix (vertices as columns) plus witness.

    ``transform @ [vertices[i] for i in order] (as columns) == matrix``.
    Equality and hashing only look at ``matrix``.
    """

    matrix: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __lt__(self, other):
        return self.key < other.key

    @property
    def key(self):
        return (len(self.matrix), len(self.matrix[0]), self.matrix)

    def vertices(self):
        return [tuple(col) for col in zip(*self.matrix)]

    def check(self, P: Polytope) -> bool:
        cols = transpose([P.vertices[i] for i in self.order])
        return tuple(map(tuple, matmul([list(r) for r in self.transform], cols))) == self.matrix


def _best_column_orders(table):
    """Column orders realizing the lexicographically largest row-major matrix.

    Rows and columns may both be permuted. Branches are explored in full;
    states with the same used rows and column partition are merged.
    """
    nrows = len(table)
    ncols = len(table[0])
    states = {(frozenset(), (tuple(range(ncols)),))}
    for _ in range(nrows):
        if all(len(b) == 1 for b in next(iter(states))[1]):
            break
        best = None
        winners = []
        for used, blocks in states:
            for r in range(nrows):
                if r in used:
                    continue
                row = table[r]
                key = tuple(chain.from_iterable(
                    sorted([row[c] for c in block], reverse=True) for block in blocks))
                if best is None or key > best:
                    best, winners = key, []
                if key == best:
                    winners.append((used, blocks, r))
        states = set()
        for used, blocks, r in winners:
            row = table[r]
            refined = []
            for block in blocks:
                for val in sorted({row[c] for c in block}, reverse=True):
                    refined.append(tuple(c for c in block if row[c] == val))
            states.add((used | {r}, tuple(refined)))
    # columns are now fixed per state; finish by sorting the leftover rows
    best_tail = None
    orders = set()
    for used, blocks in states:
        order = tuple(b[0] for b in blocks) if all(len(b) == 1 for b in blocks) else None
        if order is None:
            # identical columns; any order inside a block is equivalent
            order = tuple(c for b in blocks for c in b)
        tail = tuple(sorted((tuple(table[r][c] for c in order) for r in range(nrows) if r not in used),
                            reverse=True))
        if best_tail is None or tail > best_tail:
            best_tail = tail
            orders = set()
        if tail == best_tail:
            orders.add(order)
    return sorted(orders)


def canonical_form(P: Polytope) -> CanonicalForm:
    """Representative of P's orbit under GL(n, Z) and vertex relabeling."""
    table = vertex_facet_table(P)
    best = None
    for order in _best_column_orders(table):
        cols = transpose([P.vertices[i] for i in order])
        H, U = hermite_normal_form(cols)
        cand = CanonicalForm(
            tuple(map(tuple, H)), tuple(order), tuple(map(tuple, U))
        )
        if best is None or cand.matrix < best.matrix:
            best = cand
    return best


def are_isomorphic(P: Polytope, Q: Polytope) -> bool:
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    if P.n_vertices != Q.n_vertices or len(P.facets) != len(Q.facets):
        return False
    return canonical_form(P) == canonical_form(Q)


def from_canonical(form: CanonicalForm, ambient: str = "N") -> Polytope:
    return hull(form.vertices(), ambient=ambient)
