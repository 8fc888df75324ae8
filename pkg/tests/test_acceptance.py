"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (printed in the terminal summary) and then
asserts, so a failing criterion both shows up in the summary and fails the run.
"""

import io
import json
import random
import time
from contextlib import redirect_stdout

import pytest

from reflexkit import cli
from reflexkit.classifier import (
    FactorKind,
    classify_equality_variety,
    decompose_equality,
    identify_factor,
    verify_bounds,
)
from reflexkit.corpus import cross_polytope, free_sum, hexagon, reflexive_triangle_dual, smooth_simplex
from reflexkit.enumerator import enumerate_reflexive_2d, falsification_probe, verify_corpus
from reflexkit.exact_core import random_unimodular
from reflexkit.fano import delta, delta_pairs, is_adjacent, is_smooth, minkowski_relation, picard_number
from reflexkit.fileio import emit, parse
from reflexkit.mori import curve_classes, pseudo_index_report
from reflexkit.polytope import hull
from reflexkit.reflexive import canonical_form, dual, is_reflexive

from conftest import brute_force_classes, gl2z_equivalent, record_criterion


class Checks:
    """Collects named boolean checks and the first few failure details."""

    def __init__(self):
        self.failed = []
        self.count = 0

    def __call__(self, ok, what):
        self.count += 1
        if not ok:
            self.failed.append(what)
        return ok

    def detail(self, elapsed, limit):
        msg = f"{self.count} checks, {elapsed:.2f}s of {limit}s"
        if self.failed:
            msg += "; failed: " + "; ".join(map(str, self.failed[:3]))
        return msg


def finish(number, title, checks, start, limit):
    elapsed = time.perf_counter() - start
    passed = not checks.failed and elapsed < limit
    record_criterion(number, title, passed, checks.detail(elapsed, limit))
    assert not checks.failed, checks.failed
    assert elapsed < limit, f"{elapsed:.1f}s exceeds {limit}s"


@pytest.fixture(scope="module")
def classes():
    return [c.representative for c in enumerate_reflexive_2d(3)]


def free_sums_of_simplices():
    S = smooth_simplex
    return [S(2), S(3), S(4), S(5), free_sum(S(1), S(2)), free_sum(S(1), S(3)),
            free_sum(S(2), S(2)), free_sum(S(2), S(3)), free_sum(S(1), S(1), S(2))]


def higher_corpus():
    return ([cross_polytope(n) for n in range(2, 6)]
            + [free_sum(hexagon(), hexagon())] + free_sums_of_simplices())


def test_criterion_1_worked_example():
    start = time.perf_counter()
    ok = Checks()
    rep = cli.analyze_report(smooth_simplex(2))
    ok(rep["flags"] == {"reflexive": True, "simplicial": True, "smooth": True}, "P2 flags")
    ok(rep["delta"] == 2, "P2 delta")
    ok(rep["picard"] == 1, "P2 picard")
    ok(rep["pseudo_index"] == {"upper_bound": 3, "min_invariant_degree": 3, "exact": True}, "P2 pseudo-index")
    rep = cli.analyze_report(reflexive_triangle_dual())
    ok(rep["flags"] == {"reflexive": True, "simplicial": True, "smooth": False}, "dual flags")
    ok(rep["delta"] == 2, "dual delta")
    ok(rep["pseudo_index"]["min_invariant_degree"] == 1, "dual min degree")
    ok(rep["pseudo_index"]["upper_bound"] == 3, "dual upper bound")
    ok(sorted(map(abs, rep["facet_determinants"])) == [3, 3, 3], "dual determinants")
    finish(1, "worked example fidelity", ok, start, 1)


def test_criterion_2_sixteen_polygons():
    start = time.perf_counter()
    ok = Checks()
    r3 = enumerate_reflexive_2d(3)
    r4 = enumerate_reflexive_2d(4)
    ok(len(r3) == 16, f"radius 3 gives {len(r3)} classes")
    ok([c.canonical for c in r3] == [c.canonical for c in r4], "radius 3 vs 4")
    oracle = brute_force_classes(2)
    ok(len(oracle) == 16, f"oracle gives {len(oracle)}")
    for c in r3:
        hits = sum(gl2z_equivalent(c.representative.vertices, q) for q in oracle)
        ok(hits == 1, f"{c.representative.vertices} matches {hits} oracle classes")
    largest = max(c.representative.n_vertices for c in r3)
    top = [c for c in r3 if c.representative.n_vertices == largest]
    ok(largest == 6 and len(top) == 1, "unique 6-vertex class")
    ok(identify_factor(top[0].representative) == (FactorKind.HEXAGON, 2), "6-vertex class is the hexagon")
    ok(falsification_probe(3) == [] and falsification_probe(4) == [], "7-vertex probe")
    finish(2, "sixteen reflexive polygons", ok, start, 600)


def test_criterion_3_delta_bound_equality(classes):
    start = time.perf_counter()
    ok = Checks()
    equality = {1: [], 2: []}
    for P in classes:
        v = verify_bounds(P)
        if v.delta > 0:
            ok(v.bound_delta, f"{P.vertices} violates |V| <= 2 + 2/delta")
        if v.equality_ii:
            equality.setdefault(v.delta, []).append(P)
            dec = decompose_equality(P)
            ok(dec.r * dec.delta == 2, f"decomposition of {P.vertices}")
    want1 = [canonical_form(cross_polytope(2))]
    want2 = sorted([canonical_form(smooth_simplex(2)), canonical_form(reflexive_triangle_dual())])
    got1 = sorted(canonical_form(P) for P in equality[1])
    got2 = sorted(canonical_form(P) for P in equality[2])
    ok(got1 == want1, f"delta=1 equality cases are {[P.vertices for P in equality[1]]}, "
                      "expected only the cross-polytope")
    ok(got2 == want2, f"delta=2 equality cases are {[P.vertices for P in equality[2]]}")
    for P in equality[1]:
        if canonical_form(P) in want1:
            dec = decompose_equality(P)
            ok(len(dec.blocks) == 2 and all(len(b) == 2 for b in dec.blocks), "square: two segments")
    for P in equality[2]:
        ok(len(decompose_equality(P).blocks) == 1, f"{P.vertices}: single block")
    finish(3, "delta-bound equality cases at n = 2", ok, start, 60)


def test_criterion_4_minkowski(classes):
    start = time.perf_counter()
    ok = Checks()
    corpus = classes + [dual(P) for P in classes] + [cross_polytope(n) for n in range(2, 6)] + [
        free_sum(hexagon(), hexagon()), free_sum(smooth_simplex(2), smooth_simplex(2))]
    rng = random.Random(2024)
    for P in corpus:
        ok(not any(minkowski_relation(P)[1]), f"{P.vertices}")
        for _ in range(50):
            Q = P.transform(random_unimodular(P.dim, rng))
            ok(not any(minkowski_relation(Q)[1]), f"image of {P.vertices}")
    finish(4, "Minkowski relation", ok, start, 60)


def test_criterion_5_pseudo_index(classes):
    start = time.perf_counter()
    ok = Checks()
    smooth = [hexagon()] + [cross_polytope(n) for n in range(2, 6)] + free_sums_of_simplices()
    for P in smooth:
        ok(is_smooth(P), f"{P.vertices} smooth")
        rep = pseudo_index_report(P)
        ok(rep.min_invariant_degree == delta(P).value + 1, f"{P.vertices}: min degree")
    for P in classes + higher_corpus():
        if not P.is_simplicial():
            continue
        rep = pseudo_index_report(P)
        ok(rep.min_invariant_degree <= delta(P).value + 1, f"{P.vertices}: upper bound")
        sm = is_smooth(P)
        for cc in curve_classes(P):
            ok(0 < cc.b <= 1, f"b = {cc.b}")
            if sm:
                ok(cc.b == 1, f"smooth b = {cc.b}")
    finish(5, "pseudo-index on smooth members", ok, start, 60)


def test_criterion_6_levels_and_adjacency(classes):
    start = time.perf_counter()
    ok = Checks()
    for P in classes + higher_corpus():
        if not P.is_simplicial():
            continue
        n = P.dim
        for f, F in enumerate(P.facets):
            values = [F.value(v) for v in P.vertices]
            ok(values.count(-1) == n, f"{P.vertices} facet {f}: -1 count")
            ok(values.count(0) <= n, f"{P.vertices} facet {f}: 0 count")
        _, pairs = delta_pairs(P)
        for v, f in pairs:
            ok(is_adjacent(P, v, f), f"{P.vertices}: pair {(v, f)} not adjacent")
    finish(6, "level counts and adjacency", ok, start, 60)


def test_criterion_7_dimension_four():
    start = time.perf_counter()
    ok = Checks()
    hh = free_sum(hexagon(), hexagon())
    ok(hh.n_vertices == 12 == 3 * hh.dim, "hexagon sum has 3n vertices")
    ok(verify_bounds(hh).equality_i, "equality in |V| <= 3n")
    ok(str(classify_equality_variety(hh)) == "S3_power(2)", "hexagon sum class")
    pp = free_sum(smooth_simplex(2), smooth_simplex(2))
    iota = pseudo_index_report(pp).min_invariant_degree
    rho = picard_number(pp)
    ok(rho * (iota - 1) == 4 == pp.dim, f"rho (iota - 1) = {rho * (iota - 1)}")
    ok(is_smooth(pp), "P2+P2 smooth")
    ok(str(classify_equality_variety(pp)) == "projective_power(2,2)", "P2+P2 class")
    ok(str(classify_equality_variety(cross_polytope(4))) == "projective_power(1,4)", "cross4 class")
    finish(7, "equality structure in dimension four", ok, start, 60)


def test_criterion_8_infrastructure(classes):
    start = time.perf_counter()
    ok = Checks()
    corpus = classes + higher_corpus()
    rng = random.Random(8)
    for P in corpus:
        form = canonical_form(P)
        for _ in range(100):
            T = random_unimodular(P.dim, rng)
            pts = [tuple(sum(t * x for t, x in zip(row, v)) for row in T) for v in P.vertices]
            rng.shuffle(pts)
            ok(canonical_form(hull(pts)) == form, f"canonical form of {P.vertices}")
        ok(not is_reflexive(P) or dual(dual(P)) == P, f"dual involution {P.vertices}")
    text = emit(corpus)
    ok([hull(v) for v in parse(text)] == corpus, "parse/emit round-trip")
    ok(emit([hull(v) for v in parse(text)]) == text, "emit is stable")

    s1 = verify_corpus(corpus, images=2, seed=3, jobs=1)
    s2 = verify_corpus(corpus, images=2, seed=3, jobs=2)
    ok(json.dumps(cli.summary_json(s1), sort_keys=True) == json.dumps(cli.summary_json(s2), sort_keys=True),
       "verify output depends on jobs")
    ok([c.canonical for c in enumerate_reflexive_2d(3, jobs=1)]
       == [c.canonical for c in enumerate_reflexive_2d(3, jobs=2)], "enumeration depends on jobs")
    outputs = []
    for jobs in ("1", "2"):
        buf = io.StringIO()
        with redirect_stdout(buf):
            cli.main(["enumerate2d", "--box", "2", "--jobs", jobs])
        outputs.append(buf.getvalue())
    ok(outputs[0] == outputs[1], "CLI output depends on jobs")
    finish(8, "infrastructure properties", ok, start, 300)
