"""Exhaustive search for reflexive polygons and a corpus checker.

The search walks vertex subsets of the primitive lattice points in a box in
angular order around the origin. A subset is extended only while it stays a
strictly convex chain turning around the origin whose edges all lie on lines
at lattice distance one; every reflexive polygon passes these tests, so the
pruning loses nothing. Survivors are rebuilt with :func:`hull`, re-checked for
reflexivity and deduplicated by canonical form.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .classifier import (
    classify_equality_variety,
    decompose_equality,
    verify_bounds,
)
from .errors import PreconditionError, TheoremViolation
from .exact_core import random_unimodular
from .fano import (
    delta,
    delta_pairs,
    fano_report,
    facet_lattice_volume,
    is_adjacent,
    is_smooth,
    level_counts,
    minkowski_relation,
)
from .mori import curve_class, pseudo_index_report
from .polytope import Location, Polytope, contains, hull, ridges
from .reflexive import canonical_form, dual, is_reflexive, vertex_facet_table

log = logging.getLogger(__name__)

__all__ = [
    "PolytopeClass",
    "Violation",
    "CorpusSummary",
    "search_reflexive_polygons",
    "enumerate_reflexive_2d",
    "falsification_probe",
    "check_polytope",
    "verify_corpus",
]


def _det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _half(p):
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if p[1] > 0 or (p[1] == 0 and p[0] > 0) else 1


def _angle_cmp(p, q):
    hp, hq = _half(p), _half(q)
    if hp != hq:
        return hp - hq
    d = _det(p, q)
    return -1 if d > 0 else (1 if d < 0 else 0)


def _candidate_points(box_radius):
    pts = [
        (x, y)
        for x in range(-box_radius, box_radius + 1)
        for y in range(-box_radius, box_radius + 1)
        if gcd(x, y) == 1
    ]
    return sorted(pts, key=cmp_to_key(_angle_cmp))


def _edge_ok(a, b):
    """Edge a -> b turns counterclockwise around 0 and lies at lattice distance one."""
    d = _det(a, b)
    return d > 0 and d == gcd(b[0] - a[0], b[1] - a[1])


def _turn_ok(a, b, c):
    return _det((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) > 0


def _search_cell(args):
    """All admissible chains starting at candidate ``start``."""
    pts, start, min_size, max_size = args
    found = []
    first = pts[start]
    chain = [first]

    def extend(last_index):
        k = len(chain)
        if k >= 3 and k >= min_size:
            a, b = chain[-1], chain[0]
            if _edge_ok(a, b) and _turn_ok(chain[-2], a, b) and _turn_ok(a, b, chain[1]):
                found.append(tuple(chain))
        if max_size is not None and k == max_size:
            return
        prev = chain[-1]
        for j in range(last_index + 1, len(pts)):
            p = pts[j]
            if not _edge_ok(prev, p):
                continue
            if k >= 2 and not _turn_ok(chain[-2], prev, p):
                continue
            chain.append(p)
            extend(j)
            chain.pop()

    extend(start)
    return found


def search_reflexive_polygons(box_radius: int, min_size: int = 3, max_size: int | None = 6,
                              jobs: int = 1) -> list[tuple]:
    """Vertex tuples (counterclockwise) of reflexive polygons inside the box.

    Cells are indexed by the first vertex in angular order and may run in
    parallel; results come back in cell order either way.
    """
    pts = _candidate_points(box_radius)
    cells = [(pts, s, min_size, max_size) for s in range(len(pts))]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_search_cell, cells))
    else:
        results = [_search_cell(c) for c in cells]
    return [poly for cell in results for poly in cell]


@dataclass
class PolytopeClass:
    canonical: object
    representative: Polytope
    provenance: str
    report: object = None
    verdicts: object = None


def enumerate_reflexive_2d(box_radius: int = 3, jobs: int = 1) -> list[PolytopeClass]:
    """Reflexive polygons with vertices in ``[-r, r]^2`` up to GL(2, Z).

    At most six vertices are searched; see :func:`falsification_probe` for the
    check that nothing larger exists in the box.
    """
    if box_radius < 2:
        raise PreconditionError("box_too_small", "box_radius must be at least 2")
    classes = {}
    for poly in search_reflexive_polygons(box_radius, 3, 6, jobs):
        P = hull(poly)
        if P.n_vertices != len(poly) or contains(P, (0, 0)).location is not Location.INTERIOR:
            raise TheoremViolation("search_filter", poly)
        if not is_reflexive(P):
            raise TheoremViolation("search_reflexive", poly)
        form = canonical_form(P)
        if form not in classes:
            classes[form] = f"box={box_radius} start={poly[0]}"
    out = []
    for form in sorted(classes, key=lambda f: f.key):
        rep = hull(form.vertices())
        out.append(PolytopeClass(form, rep, classes[form], fano_report(rep), verify_bounds(rep)))
    log.info("box %d: %d classes", box_radius, len(out))
    return out


def falsification_probe(box_radius: int = 3, size: int = 7, jobs: int = 1) -> list[tuple]:
    """Reflexive polygons with at least ``size`` vertices in the box (expected: none)."""
    return search_reflexive_polygons(box_radius, size, None, jobs)


# --------------------------------------------------------------------------
# Corpus verification


@dataclass(frozen=True)
class Violation:
    index: int
    check: str
    witness: object


@dataclass
class CorpusSummary:
    checked: int = 0
    class_count: int = 0
    skipped: list = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)
    equality_inventory: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _centrally_symmetric(points) -> bool:
    s = set(points)
    return all(tuple(-x for x in p) in s for p in s)


def check_polytope(P: Polytope, images: int = 0, seed: int = 0):
    """Run every invariant on one polytope.

    Returns ``(record, violations)`` where ``violations`` is a list of
    ``(check, witness)`` pairs and ``record`` is ``None`` when P is filtered
    out (non-reflexive), otherwise a dict of computed values.
    """
    problems = []

    def fail(check, witness):
        problems.append((check, witness))

    if contains(P, (0,) * P.dim).location is not Location.INTERIOR or not is_reflexive(P):
        return None, []
    n = P.dim
    record = {"n": n, "vertex_count": P.n_vertices, "simplicial": P.is_simplicial()}

    try:
        D = dual(P)
        if dual(D) != P:
            fail("dual_involution", P.vertices)
        coeffs, residual = minkowski_relation(P)
        if any(residual):
            fail("minkowski_residual", residual)
        record["minkowski"] = coeffs
    except TheoremViolation as exc:
        fail(exc.check, exc.witness)

    if not P.is_simplicial():
        record["form"] = canonical_form(P)
        return record, problems

    try:
        verdict = verify_bounds(P)
        d = verdict.delta
        record["delta"] = d
        record["picard"] = P.n_vertices - n
        record["verdict"] = verdict
        smooth = is_smooth(P)
        record["smooth"] = smooth
        if not verdict.bound_3n:
            fail("bound_3n", P.n_vertices)
        if verdict.bound_delta is False:
            fail("bound_delta", {"vertices": P.n_vertices, "delta": d})

        for f in range(len(P.facets)):
            counts = level_counts(P, f)
            if counts[-1] != n or counts[0] > n:
                fail("level_counts", {"facet": f, "counts": dict(counts)})
        _, pairs = delta_pairs(P)
        for v, f in pairs:
            if not is_adjacent(P, v, f):
                fail("lemma_zero_adjacency", {"vertex": v, "facet": f})

        if smooth:
            vols = [facet_lattice_volume(P, f) for f in range(len(P.facets))]
            if any(x != 1 for x in vols):
                fail("smooth_unit_volumes", vols)
            if any(sum(u[i] for u in D.vertices) for i in range(n)):
                fail("smooth_dual_vertex_sum", D.vertices)
        for f in range(len(P.facets)):
            if facet_lattice_volume(P, f, "lowest") != facet_lattice_volume(P, f, "highest"):
                fail("volume_triangulation", f)

        for w in ridges(P):
            cc = curve_class(P, w)
            if not cc.gamma.is_relation(P):
                fail("wall_relation", w)
            A = P.facets[w.facetA]
            if cc.gamma.degree != 1 + A.value(P.vertices[w.oppB]):
                fail("degree_two_ways", w)
            if smooth and cc.b != 1:
                fail("smooth_b", {"wall": w, "b": cc.b})
            if cc.exact_degree.denominator != 1:
                fail("integral_degree", {"wall": w, "degree": cc.exact_degree})
            other = curve_class(P, w.swapped())
            ratio = None
            for i, c in cc.gamma.coefficients.items():
                c2 = other.gamma.coefficients.get(i, 0)
                if c2:
                    ratio = Fraction(c2) / c
                    break
            if (ratio is None or ratio <= 0 or set(cc.gamma.coefficients) != set(other.gamma.coefficients)
                    or any(other.gamma.coefficients[i] != ratio * c for i, c in cc.gamma.coefficients.items())):
                fail("wall_swap_ray", w)

        pir = pseudo_index_report(P)
        record["min_degree"] = pir.min_invariant_degree
        record["pseudo_index"] = pir

        if verdict.equality_ii:
            dec = decompose_equality(P)
            forms = sorted(canonical_form(Q).key for Q in dec.block_polytopes)
            for base in range(1, len(P.facets)):
                other = decompose_equality(P, base)
                if sorted(canonical_form(Q).key for Q in other.block_polytopes) != forms:
                    fail("decomposition_base_independent", base)
            cls = classify_equality_variety(P)
            if (cls.kind == "projective_power") != smooth:
                fail("equality_ii_smoothness", {"class": str(cls), "smooth": smooth})
            record["class"] = str(cls)
            record["decomposition"] = dec
        if verdict.equality_i:
            table = vertex_facet_table(P)
            if any(x not in (-1, 0, 1) for row in table for x in row):
                fail("equality_i_pairings", table)
            if not (_centrally_symmetric(P.vertices) and _centrally_symmetric(D.vertices)):
                fail("equality_i_symmetry", P.vertices)
            cls = classify_equality_variety(P)
            if cls.kind != "S3_power":
                fail("equality_i_class", str(cls))
            record["class"] = str(cls)

        if images:
            rng = random.Random(seed)
            form = canonical_form(P)
            for _ in range(images):
                T = random_unimodular(n, rng)
                Q = P.transform(T)
                if any(minkowski_relation(Q)[1]):
                    fail("minkowski_image", T)
                if delta(Q).value != d:
                    fail("delta_image", T)
                if canonical_form(Q) != form:
                    fail("canonical_image", T)
        record["form"] = canonical_form(P)
    except (TheoremViolation, PreconditionError) as exc:
        fail(getattr(exc, "check", getattr(exc, "code", "error")), getattr(exc, "witness", str(exc)))
    return record, problems


def _check_job(args):
    return check_polytope(*args)


def verify_corpus(polytopes, images: int = 0, seed: int = 0, jobs: int = 1) -> CorpusSummary:
    """Check every invariant on each polytope; violations are collected, not raised."""
    polytopes = list(polytopes)
    args = [(P, images, seed + i) for i, P in enumerate(polytopes)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_check_job, args))
    else:
        results = [_check_job(a) for a in args]
    summary = CorpusSummary()
    forms = set()
    for i, (P, (record, problems)) in enumerate(zip(polytopes, results)):
        for check, witness in problems:
            summary.violations.append(Violation(i, check, witness))
        if record is None:
            summary.skipped.append((i, "not_reflexive"))
            continue
        summary.checked += 1
        if "form" in record:
            forms.add(record["form"])
        if not record["simplicial"]:
            summary.skipped.append((i, "not_simplicial"))
            continue
        if "min_degree" in record:
            summary.histogram[(record["vertex_count"], record["delta"], record["picard"],
                               record["min_degree"])] += 1
        verdict = record.get("verdict")
        if verdict is not None and (verdict.equality_i or verdict.equality_ii):
            summary.equality_inventory.append({
                "index": i,
                "n": record["n"],
                "vertex_count": record["vertex_count"],
                "delta": record["delta"],
                "equality": "i" if verdict.equality_i else "ii",
                "class": record.get("class"),
                "smooth": record["smooth"],
            })
    summary.class_count = len(forms)
    return summary
