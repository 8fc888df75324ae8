"""The projective plane and its dual triangle, side by side.

Both polygons are reflexive with delta = 2. The plane is smooth and its
invariant curves all have degree 3 = delta + 1. The dual triangle carries
three A2 singularities (facet determinants 3), which scales every wall's
curve class by b = 1/3 and brings the minimal degree down to 1.
"""

from reflexkit.corpus import reflexive_triangle_dual, smooth_simplex
from reflexkit.fano import delta, facet_determinants, is_smooth, minkowski_relation
from reflexkit.mori import curve_classes, pseudo_index_report

for name, P in [("P2", smooth_simplex(2)), ("dual triangle", reflexive_triangle_dual())]:
    print(f"== {name}: vertices {list(P.vertices)}")
    print("  smooth:", is_smooth(P), " delta:", delta(P).value)
    print("  facet determinants:", facet_determinants(P))
    coeffs, residual = minkowski_relation(P)
    print("  Minkowski coefficients:", coeffs, "residual:", residual)
    for cc in curve_classes(P):
        w = cc.wall
        print(f"  wall {w.facetA}|{w.facetB}: gamma degree {cc.gamma.degree}, b = {cc.b}, "
              f"curve degree {cc.exact_degree}")
    rep = pseudo_index_report(P)
    print(f"  pseudo-index: <= {rep.upper_bound_delta}, min curve degree {rep.min_invariant_degree}, "
          f"exact: {rep.exact}")
