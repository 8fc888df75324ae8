"""Command-line front end.

Exit codes: 0 success, 1 a verified statement failed, 2 unreadable input,
3 an input violates an operation's preconditions.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import fileio
from .classifier import (
    classify_equality_variety,
    decompose_equality,
    free_sum_decompose,
    verify_bounds,
)
from .enumerator import enumerate_reflexive_2d, falsification_probe, verify_corpus
from .errors import PreconditionError, TheoremViolation
from .fano import facet_determinants, fano_report
from .fileio import SCHEMA, ParseError, exact
from .mori import curve_classes, pseudo_index_report
from .polytope import Location, contains, hull
from .reflexive import canonical_form, dual, is_reflexive

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


def _reflexive(P) -> bool:
    if contains(P, (0,) * P.dim).location is not Location.INTERIOR:
        return False
    return is_reflexive(P)


def _form_json(form):
    return {
        "matrix": [list(r) for r in form.matrix],
        "vertex_order": list(form.order),
        "transform": [list(r) for r in form.transform],
    }


def decomposition_json(dec) -> dict:
    return {
        "delta": dec.delta,
        "base_facet": dec.base_facet,
        "basis": list(dec.basis),
        "remaining": list(dec.remaining),
        "phi": {str(k): j for k, j in sorted(dec.phi.items())},
        "blocks": [list(b) for b in dec.blocks],
        "spans": [[list(v) for v in sp] for sp in dec.spans],
    }


def analyze_report(P) -> dict:
    """ReportJSON (schema 1) for one polytope."""
    refl = _reflexive(P)
    simp = P.is_simplicial()
    rep = fano_report(P) if refl else None
    out = {
        "schema": SCHEMA,
        "dimension": P.dim,
        "vertices": [list(v) for v in P.vertices],
        "flags": {
            "reflexive": refl,
            "simplicial": simp,
            "smooth": simp and all(abs(d) == 1 for d in facet_determinants(P)),
        },
        "facet_determinants": facet_determinants(P) if simp else None,
        "delta": rep.delta if rep else None,
        "picard": P.n_vertices - P.dim if simp else None,
        "pseudo_index": None,
        "minkowski": None,
        "theorems": None,
        "decomposition": None,
        "classification": None,
        "canonical_form": _form_json(canonical_form(P)),
    }
    if refl:
        out["minkowski"] = {
            "coefficients": list(rep.minkowski_coefficients),
            "residual": list(rep.minkowski_residual),
        }
    if refl and simp:
        pir = pseudo_index_report(P)
        out["pseudo_index"] = {
            "upper_bound": pir.upper_bound_delta,
            "min_invariant_degree": exact(pir.min_invariant_degree),
            "exact": pir.exact,
        }
        v = verify_bounds(P)
        out["theorems"] = {
            "bound_3n": v.bound_3n,
            "bound_delta": v.bound_delta,
            "equality_i": v.equality_i,
            "equality_ii": v.equality_ii,
        }
        if v.equality_ii:
            out["decomposition"] = decomposition_json(decompose_equality(P))
        out["classification"] = str(classify_equality_variety(P))
    return out


def mori_table(P) -> list[dict]:
    rows = []
    for cc in curve_classes(P):
        w = cc.wall
        rows.append({
            "facets": [w.facetA, w.facetB],
            "common": list(w.common),
            "opposite": [w.oppA, w.oppB],
            "gamma": {str(i): exact(c) for i, c in sorted(cc.gamma.coefficients.items())},
            "degree": exact(cc.gamma.degree),
            "b": exact(cc.b),
            "exact_degree": exact(cc.exact_degree),
        })
    return rows


def summary_json(summary) -> dict:
    return {
        "schema": SCHEMA,
        "checked": summary.checked,
        "class_count": summary.class_count,
        "skipped": [{"index": i, "reason": r} for i, r in summary.skipped],
        "histogram": [
            {"vertices": k[0], "delta": k[1], "picard": k[2], "min_degree": exact(k[3]), "count": c}
            for k, c in sorted(summary.histogram.items())
        ],
        "violations": [
            {"index": v.index, "check": v.check, "witness": repr(v.witness)} for v in summary.violations
        ],
        "equality_inventory": summary.equality_inventory,
    }


# --------------------------------------------------------------------------


def _load(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return [hull(vs) for vs in fileio.import_polytopes(text)]


def _map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _dump(obj, args):
    if not args.quiet:
        json.dump(obj, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _require_reflexive_simplicial(P, need_simplicial=True):
    if not _reflexive(P):
        raise PreconditionError("not_reflexive", f"polytope {list(P.vertices)} is not reflexive")
    if need_simplicial and not P.is_simplicial():
        raise PreconditionError("not_simplicial", f"polytope {list(P.vertices)} is not simplicial")


def cmd_analyze(args):
    _dump(_map(analyze_report, _load(args.file), args.jobs), args)
    return EXIT_OK


def cmd_dual(args):
    polys = _load(args.file)
    for P in polys:
        _require_reflexive_simplicial(P, need_simplicial=False)
    if not args.quiet:
        sys.stdout.write(fileio.emit([dual(P) for P in polys]))
    return EXIT_OK


def _mori_one(P):
    _require_reflexive_simplicial(P)
    return {"vertices": [list(v) for v in P.vertices], "walls": mori_table(P)}


def cmd_mori(args):
    polys = _load(args.file)
    for P in polys:
        _require_reflexive_simplicial(P)
    tables = _map(_mori_one, polys, args.jobs)
    if args.text:
        if not args.quiet:
            for t in tables:
                print(f"# polytope {t['vertices']}")
                print("facetA facetB  common     opposite  degree  b      exact")
                for r in t["walls"]:
                    print(f"{r['facets'][0]:>6} {r['facets'][1]:>6}  {str(r['common']):<10} "
                          f"{str(r['opposite']):<9} {str(r['degree']):<7} {str(r['b']):<6} {r['exact_degree']}")
        return EXIT_OK
    _dump({"schema": SCHEMA, "polytopes": tables}, args)
    return EXIT_OK


def cmd_decompose(args):
    out = []
    for P in _load(args.file):
        _require_reflexive_simplicial(P)
        v = verify_bounds(P)
        factors = [{"vertices": list(f.vertices), "span": [list(x) for x in f.span_basis]}
                   for f in free_sum_decompose(P)]
        if v.equality_ii:
            entry = {"decomposition": decomposition_json(decompose_equality(P))}
        else:
            entry = {
                "decomposition": None,
                "explanation": (f"no equality in |V| <= n + n/delta: |V| = {v.vertex_count}, "
                                f"n = {v.n}, delta = {v.delta}"),
            }
        entry["free_sum_factors"] = factors
        entry["classification"] = str(classify_equality_variety(P))
        out.append(entry)
    _dump(out, args)
    return EXIT_OK


def cmd_canon(args):
    _dump([_form_json(f) for f in _map(canonical_form, _load(args.file), args.jobs)], args)
    return EXIT_OK


def cmd_verify(args):
    summary = verify_corpus(_load(args.file), images=args.images, seed=args.seed, jobs=args.jobs)
    _dump(summary_json(summary), args)
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_enumerate2d(args):
    classes = enumerate_reflexive_2d(args.box, jobs=args.jobs)
    probe = falsification_probe(args.box, jobs=args.jobs)
    polys = [c.representative for c in classes]
    summary = verify_corpus(polys, images=args.images, seed=args.seed, jobs=args.jobs)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, c in enumerate(classes):
            (out / f"class_{k:02d}.txt").write_text(fileio.emit([c.representative], comment=c.provenance))
        (out / "summary.json").write_text(json.dumps(summary_json(summary), indent=2, sort_keys=True) + "\n")
    doc = summary_json(summary)
    doc["box"] = args.box
    doc["seven_vertex_probe"] = [list(map(list, p)) for p in probe]
    _dump(doc, args)
    return EXIT_OK if summary.ok and not probe else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=True, help="JSON output (default)")
    common.add_argument("--quiet", action="store_true", help="suppress standard output")
    common.add_argument("--seed", type=int, default=0, help="seed for random unimodular test transforms")
    common.add_argument("--jobs", type=int, default=int(os.environ.get("REFLEXKIT_JOBS", "1")),
                        help="worker processes (default: $REFLEXKIT_JOBS or 1)")

    parser = argparse.ArgumentParser(prog="reflexkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, helptext in [
        ("analyze", cmd_analyze, "invariants and theorem verdicts per polytope"),
        ("dual", cmd_dual, "dual polytopes in the polytope file format"),
        ("mori", cmd_mori, "wall-by-wall invariant curve classes"),
        ("decompose", cmd_decompose, "equality-case decomposition"),
        ("canon", cmd_canon, "GL(n,Z) canonical forms"),
        ("verify", cmd_verify, "check every invariant on a corpus"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help="polytope file, or - for stdin")
        p.set_defaults(func=fn)
        if name == "mori":
            p.add_argument("--text", action="store_true", help="plain-text table")
        if name == "verify":
            p.add_argument("--images", type=int, default=0, help="random unimodular images per polytope")
    p = sub.add_parser("enumerate2d", parents=[common], help="enumerate reflexive polygons")
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--out", default=None)
    p.add_argument("--images", type=int, default=0)
    p.set_defaults(func=cmd_enumerate2d)
    return parser


def _error(kind, **fields):
    json.dump({"error": kind, **fields}, sys.stderr, sort_keys=True)
    sys.stderr.write("\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _error("parse", line=exc.line, message=exc.message)
        return EXIT_PARSE
    except PreconditionError as exc:
        _error("precondition", reason=exc.code, message=exc.message)
        return EXIT_PRECONDITION
    except TheoremViolation as exc:
        _error("violation", check=exc.check, witness=repr(exc.witness))
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
