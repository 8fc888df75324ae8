"""Enumerate the reflexive polygons and tabulate their invariants."""

from reflexkit.enumerator import enumerate_reflexive_2d, falsification_probe
from reflexkit.mori import pseudo_index_report

classes = enumerate_reflexive_2d(box_radius=3)
print(f"{len(classes)} classes")
print(" #  |V|  delta  smooth  min degree  vertices")
for k, c in enumerate(classes):
    P = c.representative
    rep = pseudo_index_report(P)
    print(f"{k:2d}  {P.n_vertices:3d}  {c.report.delta:5d}  {str(c.report.is_smooth):6s}  "
          f"{str(rep.min_invariant_degree):>10s}  {list(P.vertices)}")

# anything with seven or more vertices would break |V| <= 3n
print("7-vertex probe:", falsification_probe(3) or "nothing found")
