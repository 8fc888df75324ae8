"""Wall relations and curve degrees on a product, before and after a change of basis.

Curve degrees are lattice invariants, so a random unimodular map leaves the
sorted list unchanged even though every coordinate moves.
"""

import random

from reflexkit.corpus import free_sum, smooth_simplex
from reflexkit.exact_core import random_unimodular
from reflexkit.mori import curve_classes

P = free_sum(smooth_simplex(1), smooth_simplex(2))
T = random_unimodular(3, random.Random(7))
Q = P.transform(T)

for label, X in [("P1 x P2", P), ("image", Q)]:
    print(f"== {label}: {list(X.vertices)}")
    for cc in curve_classes(X):
        coeffs = {X.vertices[i]: str(c) for i, c in sorted(cc.gamma.coefficients.items())}
        print(f"   {coeffs}  degree {cc.exact_degree}")
    print("   sorted degrees:", [str(d) for d in sorted(cc.exact_degree for cc in curve_classes(X))])
