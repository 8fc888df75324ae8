"""Wall relations, invariant curve classes and pseudo-index bounds.

A 1-cycle class on the toric variety of a simplicial reflexive polytope is a
rational linear relation among the vertices; its anticanonical degree is the
sum of the coefficients. Each wall (ridge) of P gives an invariant curve whose
class is ``b * gamma`` where ``gamma`` is the wall relation normalized to have
coefficient 1 on the vertex across the wall.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import PreconditionError, TheoremViolation
from .exact_core import cone_multiplicity, solve, transpose
from .fano import delta, is_smooth
from .polytope import Polytope, Wall, ridges
from .reflexive import require_reflexive

__all__ = [
    "Relation",
    "CurveClass",
    "PseudoIndexReport",
    "wall_relation",
    "curve_class",
    "curve_classes",
    "pseudo_index_report",
]


@dataclass(frozen=True)
class Relation:
    """``sum coefficients[i] * vertices[i] = 0``; degree is the coefficient sum."""

    coefficients: dict

    @property
    def degree(self) -> Fraction:
        return sum(self.coefficients.values(), Fraction(0))

    def residual(self, P: Polytope):
        return tuple(
            sum(c * P.vertices[i][k] for i, c in self.coefficients.items())
            for k in range(P.dim)
        )

    def is_relation(self, P: Polytope) -> bool:
        return not any(self.residual(P))

    def primitive_integral(self) -> dict:
        """Smallest positive multiple with integer coefficients."""
        den = 1
        for c in self.coefficients.values():
            den = lcm(den, c.denominator)
        ints = {i: int(c * den) for i, c in self.coefficients.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        return {i: c // g for i, c in ints.items()}


@dataclass(frozen=True)
class CurveClass:
    wall: Wall
    gamma: Relation
    b: Fraction
    exact_degree: Fraction


def _check_wall(P: Polytope, w: Wall):
    A, B = P.facets[w.facetA].incident, P.facets[w.facetB].incident
    if (set(w.common) != set(A) & set(B) or len(w.common) != P.dim - 1
            or w.oppA == w.oppB or set(A) != set(w.common) | {w.oppA}
            or set(B) != set(w.common) | {w.oppB}):
        raise PreconditionError("invalid_wall", f"{w} is not a wall of this polytope")


def wall_relation(P: Polytope, w: Wall) -> Relation:
    """Relation ``f0 + sum a_i e_i = 0`` with ``e_i`` the vertices of facet A
    and ``f0`` the vertex of facet B across the wall."""
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "wall relations need a simplicial polytope")
    _check_wall(P, w)
    basis = P.facets[w.facetA].incident
    E = transpose([P.vertices[i] for i in basis])
    coords = solve(E, P.vertices[w.oppB])
    coeffs = {w.oppB: Fraction(1)}
    for i, c in zip(basis, coords):
        if c:
            coeffs[i] = -c
    return Relation(coeffs)


def curve_class(P: Polytope, w: Wall) -> CurveClass:
    """Class of the invariant curve of wall ``w``.

    ``b = mult(tau) / mult(sigma')`` with ``tau`` the cone over the common
    vertices and ``sigma'`` the cone over facet B. The symmetric identity
    ``alpha mult(sigma') = beta mult(sigma)`` for the primitive wall relation is
    checked on every call.
    """
    gamma = wall_relation(P, w)
    V = P.vertices
    m_tau = cone_multiplicity([V[i] for i in w.common])
    m_sigma = cone_multiplicity([V[i] for i in P.facets[w.facetA].incident])
    m_sigma2 = cone_multiplicity([V[i] for i in P.facets[w.facetB].incident])
    prim = gamma.primitive_integral()
    alpha, beta = prim[w.oppB], prim.get(w.oppA, 0)
    if alpha <= 0 or beta <= 0 or alpha * m_sigma2 != beta * m_sigma:
        raise TheoremViolation("wall_multiplicity_identity",
                               {"wall": w, "alpha": alpha, "beta": beta,
                                "mult_sigma": m_sigma, "mult_sigma_prime": m_sigma2})
    b = Fraction(m_tau, m_sigma2)
    if not 0 < b <= 1:
        raise TheoremViolation("b_range", {"wall": w, "b": b})
    return CurveClass(w, gamma, b, b * gamma.degree)


def curve_classes(P: Polytope) -> list[CurveClass]:
    return [curve_class(P, w) for w in ridges(P)]


@dataclass(frozen=True)
class PseudoIndexReport:
    upper_bound_delta: int
    min_invariant_degree: Fraction
    exact: bool

    @property
    def iota_upper(self) -> Fraction:
        """Best proven upper bound for the pseudo-index."""
        return min(Fraction(self.upper_bound_delta), self.min_invariant_degree)


def pseudo_index_report(P: Polytope) -> PseudoIndexReport:
    """Compare ``delta + 1`` with the minimal degree of an invariant curve.

    For smooth P both coincide with the pseudo-index and this is asserted.
    Otherwise the minimum is only an upper bound.
    """
    require_reflexive(P)
    if not P.is_simplicial():
        raise PreconditionError("not_simplicial", "pseudo-index report needs a simplicial polytope")
    bound = delta(P).value + 1
    low = min(c.exact_degree for c in curve_classes(P))
    smooth = is_smooth(P)
    if smooth and low != bound:
        raise TheoremViolation("smooth_pseudo_index", {"delta_plus_one": bound, "min_degree": low})
    if low > bound:
        raise TheoremViolation("pseudo_index_bound", {"delta_plus_one": bound, "min_degree": low})
    return PseudoIndexReport(bound, low, smooth)
