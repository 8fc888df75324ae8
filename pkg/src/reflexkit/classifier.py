"""Vertex-count bounds for simplicial reflexive polytopes and their
equality cases.

The two bounds are ``|V| <= 3n`` and, when ``delta > 0``,
``|V| <= n + n/delta``. In the second equality case the polytope splits as a
free sum of ``n/delta`` reflexive simplices of dimension ``delta``;
:func:`decompose_equality` rebuilds that splitting from one facet and checks
every structural claim about it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .corpus import hexagon, smooth_simplex
from .errors import PreconditionError, TheoremViolation
from .exact_core import dual_basis, lattice_coordinates, rank, saturation_basis, solve, transpose
from .fano import delta, is_smooth
from .polytope import Polytope, hull
from .reflexive import canonical_form, is_reflexive, require_reflexive

__all__ = [
    "BoundsVerdict",
    "Decomposition",
    "Factor",
    "FactorKind",
    "EqualityVariety",
    "verify_bounds",
    "decompose_equality",
    "free_sum_decompose",
    "restrict_to_span",
    "identify_factor",
    "classify_equality_variety",
]


def _require_simplicial_reflexive(P: Polytope):
    require_reflexive(P)
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "a simplicial reflexive polytope is required")


@dataclass(frozen=True)
class BoundsVerdict:
    n: int
    vertex_count: int
    delta: int
    bound_3n: bool
    bound_delta: bool | None
    equality_i: bool
    equality_ii: bool


def verify_bounds(P: Polytope) -> BoundsVerdict:
    """Check ``|V| <= 3n`` and, for ``delta > 0``, ``|V| <= n + n/delta``."""
    _require_simplicial_reflexive(P)
    n, v = P.dim, P.n_vertices
    d = delta(P).value
    ok_ii = None
    eq_ii = False
    if d > 0:
        limit = n + Fraction(n, d)
        ok_ii = v <= limit
        eq_ii = v == limit
    return BoundsVerdict(n, v, d, v <= 3 * n, ok_ii, v == 3 * n, eq_ii)


# --------------------------------------------------------------------------
# Free sums and factors


@dataclass(frozen=True)
class Factor:
    vertices: tuple[int, ...]
    span_basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self):
        return len(self.span_basis)


def free_sum_decompose(P: Polytope) -> list[Factor]:
    """Finest splitting of the vertex set into parts with independent spans.

    These are the connected components of the linear matroid on the
    vertices: with a basis B picked greedily, every other vertex is joined to
    the basis vectors appearing in its expansion.
    """
    verts = P.vertices
    parent = list(range(len(verts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    basis = []
    for i, v in enumerate(verts):
        if rank([verts[j] for j in basis] + [v]) > len(basis):
            basis.append(i)
    if len(basis) != P.dim:
        raise PreconditionError("not_full_dimensional", "vertices do not span the space")
    E = transpose([verts[j] for j in basis])
    for i, v in enumerate(verts):
        if i in basis:
            continue
        coeffs = solve(E, v)
        for j, c in zip(basis, coeffs):
            if c:
                parent[find(j)] = find(i)
    groups = {}
    for i in range(len(verts)):
        groups.setdefault(find(i), []).append(i)
    parts = sorted(tuple(g) for g in groups.values())
    out = []
    for part in parts:
        span, _ = saturation_basis([verts[i] for i in part])
        out.append(Factor(part, tuple(span)))
    if sum(f.dim for f in out) != P.dim:
        raise TheoremViolation("free_sum_direct", [f.vertices for f in out])
    return out


def restrict_to_span(P: Polytope, indices) -> Polytope:
    """The polytope Conv(vertices[indices]) in coordinates of ``N`` meet its span."""
    pts = [P.vertices[i] for i in indices]
    basis, V = saturation_basis(pts)
    r = len(basis)
    return hull([lattice_coordinates(p, V, r) for p in pts])


class FactorKind(enum.Enum):
    SIMPLEX = "simplex_P"
    HEXAGON = "hexagon"
    SEGMENT = "segment"
    OTHER = "other"


def identify_factor(Q: Polytope) -> tuple[FactorKind, int]:
    """Recognize the smooth reflexive simplex and the hexagon up to GL(n, Z).

    ``Q`` must already be expressed in its own lattice (see
    :func:`restrict_to_span`). A 1-dimensional Q other than [-1, 1] is a
    plain segment; [-1, 1] is the smooth 1-simplex.
    """
    d = Q.dim
    form = canonical_form(Q)
    if Q.n_vertices == d + 1 and form == canonical_form(smooth_simplex(d)):
        return FactorKind.SIMPLEX, d
    if d == 1:
        return FactorKind.SEGMENT, 1
    if d == 2 and Q.n_vertices == 6 and form == canonical_form(hexagon()):
        return FactorKind.HEXAGON, 2
    return FactorKind.OTHER, d


# --------------------------------------------------------------------------
# Equality in the delta bound


@dataclass
class Decomposition:
    """Structure of P in the equality case ``|V| = n + n/delta``.

    ``basis`` lists the vertices e_1..e_n of the base facet, ``remaining``
    the other vertices f_1..f_r, and ``phi[k] = j`` when
    Conv(f_j, e's without e_k) is a facet. ``blocks[j]`` is the vertex set of
    Q_j = Conv(f_j, e_k for phi(k) = j), and ``spans[j]`` a basis of the
    lattice N meet span(Q_j).
    """

    delta: int
    base_facet: int
    basis: tuple[int, ...]
    remaining: tuple[int, ...]
    phi: dict = field(default_factory=dict)
    blocks: list = field(default_factory=list)
    spans: list = field(default_factory=list)
    block_polytopes: list = field(default_factory=list)

    @property
    def r(self):
        return len(self.remaining)


def decompose_equality(P: Polytope, base_facet: int = 0) -> Decomposition:
    """Rebuild the free-sum decomposition from facet ``base_facet``.

    Raises :class:`PreconditionError` if the equality hypothesis fails and
    :class:`TheoremViolation` if any consequence of it does not hold.
    """
    verdict = verify_bounds(P)
    if not verdict.equality_ii:
        raise PreconditionError(
            "not_equality_case",
            f"|V| = {verdict.vertex_count} is not n + n/delta (n={verdict.n}, delta={verdict.delta})",
        )
    d = verdict.delta
    n = P.dim
    V = P.vertices

    for f, F in enumerate(P.facets):
        for i, v in enumerate(V):
            if F.value(v) not in (-1, d):
                raise TheoremViolation("pairing_values", {"vertex": i, "facet": f, "value": F.value(v)})

    base = P.facets[base_facet]
    e = base.incident
    rest = tuple(i for i in range(len(V)) if i not in e)
    r = n // d
    if len(rest) != r or r * d != n:
        raise TheoremViolation("remaining_count", {"remaining": rest, "r": n / d})

    u = base.normal
    e_dual = dual_basis([V[i] for i in e])
    if tuple(-sum(col) for col in zip(*e_dual)) != u:
        raise TheoremViolation("base_normal", {"normal": u})

    facet_sets = {frozenset(F.incident): k for k, F in enumerate(P.facets)}
    phi = {}
    for k, ek in enumerate(e):
        others = frozenset(x for x in e if x != ek)
        hits = [j for j, fj in enumerate(rest) if others | {fj} in facet_sets]
        if len(hits) != 1:
            raise TheoremViolation("phi_unique", {"k": k, "candidates": hits})
        phi[k] = hits[0]
        uk = P.facets[facet_sets[others | {rest[hits[0]]}]].normal
        expect = tuple(a + (d + 1) * b for a, b in zip(u, e_dual[k]))
        if uk != expect:
            raise TheoremViolation("neighbor_normal", {"k": k, "normal": uk, "expected": expect})

    dec = Decomposition(d, base_facet, tuple(e), rest, phi)
    for j, fj in enumerate(rest):
        members = [k for k in range(n) if phi[k] == j]
        if len(members) != d:
            raise TheoremViolation("partition_sizes", {"j": j, "size": len(members)})
        s = tuple(V[fj][c] + sum(V[e[k]][c] for k in members) for c in range(n))
        if any(s):
            raise TheoremViolation("block_relation", {"j": j, "sum": s})
        block = tuple(sorted([fj] + [e[k] for k in members]))
        span, _ = saturation_basis([V[i] for i in block])
        if len(span) != d:
            raise TheoremViolation("block_dimension", {"j": j, "dim": len(span)})
        Q = restrict_to_span(P, block)
        if not is_reflexive(Q) or Q.n_vertices != d + 1:
            raise TheoremViolation("block_reflexive_simplex", {"j": j, "block": block})
        dec.blocks.append(block)
        dec.spans.append(tuple(span))
        dec.block_polytopes.append(Q)

    all_span = [v for sp in dec.spans for v in sp]
    if rank(all_span) != n:
        raise TheoremViolation("direct_sum", {"spans": dec.spans})
    return dec


# --------------------------------------------------------------------------
# Equality varieties


@dataclass(frozen=True)
class EqualityVariety:
    kind: str
    delta: int | None = None
    r: int | None = None

    def __str__(self):
        if self.kind == "projective_power":
            return f"projective_power({self.delta},{self.r})"
        if self.kind == "S3_power":
            return f"S3_power({self.r})"
        return self.kind


def classify_equality_variety(P: Polytope) -> EqualityVariety:
    """Detect the products of hexagon surfaces and of projective spaces.

    The hexagon case is recognized from the free-sum factors; the projective
    case needs equality in the delta bound, smooth simplex blocks and a
    smooth P, each of which is checked.
    """
    verdict = verify_bounds(P)
    n = P.dim
    if verdict.equality_i and n % 2 == 0:
        factors = free_sum_decompose(P)
        kinds = [identify_factor(restrict_to_span(P, f.vertices))[0] for f in factors]
        if len(factors) == n // 2 and all(k is FactorKind.HEXAGON for k in kinds):
            return EqualityVariety("S3_power", r=n // 2)
    if verdict.equality_ii:
        dec = decompose_equality(P)
        kinds = [identify_factor(Q) for Q in dec.block_polytopes]
        if all(k == (FactorKind.SIMPLEX, dec.delta) for k in kinds) and is_smooth(P):
            return EqualityVariety("projective_power", delta=dec.delta, r=dec.r)
    return EqualityVariety("other")
