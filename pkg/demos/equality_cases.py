"""Equality in the vertex bounds, in dimensions 2 and 4.

|V| = 3n singles out powers of the hexagon; |V| = n + n/delta splits P into
n/delta reflexive simplices, rebuilt here from a single facet.
"""

from reflexkit.classifier import classify_equality_variety, decompose_equality, verify_bounds
from reflexkit.corpus import cross_polytope, free_sum, hexagon, smooth_simplex
from reflexkit.polytope import hull

examples = {
    "P2 + P2": free_sum(smooth_simplex(2), smooth_simplex(2)),
    "cross-polytope, n = 4": cross_polytope(4),
    "hexagon + hexagon": free_sum(hexagon(), hexagon()),
    # not smooth, so not a product of projective spaces, yet it still
    # splits along its two diagonals
    "square [-1,1]^2": hull([(1, 1), (1, -1), (-1, 1), (-1, -1)]),
}

for name, P in examples.items():
    v = verify_bounds(P)
    print(f"== {name}: n = {v.n}, |V| = {v.vertex_count}, delta = {v.delta}")
    print(f"   |V| = 3n: {v.equality_i}   |V| = n + n/delta: {v.equality_ii}")
    if v.equality_ii:
        dec = decompose_equality(P)
        for j, block in enumerate(dec.blocks):
            print(f"   block {j}: {[P.vertices[i] for i in block]}  lattice basis {list(dec.spans[j])}")
    print("   class:", classify_equality_variety(P))
