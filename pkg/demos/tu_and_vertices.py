"""Total unimodularity, the row criterion and vertices of box-constrained polyhedra.

Coboundary maps of graphs are TU, so every polyhedron {l <= u <= h, a <= M u <= b}
with integer data has integral vertices. The triangulated projective plane is the
smallest example in the library where this breaks.
"""

import random

from coexpand import BoundsBox, Matrix, coboundary_matrix, hk_vertex_integrality, is_totally_unimodular
from coexpand.complexes import boundary_matrix
from coexpand.library import NAMED, cycle_graph
from coexpand.tu import random_bounds, row_criterion, search_fractional_vertex

C = coboundary_matrix(cycle_graph(6), 0)
print("coboundary of a 6-cycle:", C.shape, "row criterion:", row_criterion(C),
      "TU:", is_totally_unimodular(C).is_tu)

rng = random.Random(0)
for _ in range(3):
    box = random_bounds(C, rng)
    rep = hk_vertex_integrality(C, box)
    print(f"  random box: {len(rep.vertices)} vertices, all integral = {rep.all_integral}")

D = boundary_matrix(NAMED["rp2"](), 2)
rep = is_totally_unimodular(D)
rows, cols, det = rep.witness
print("\nboundary of RP^2 in degree 2:", D.shape, "TU:", rep.is_tu)
print(f"  minor on rows {rows} and columns {cols} has determinant {det}")

A = Matrix.from_rows([[1, 2]])
box = BoundsBox((0, 0), (2, 2), (1,), (1,))
rep = hk_vertex_integrality(A, box)
print("\n(1 2) with 0 <= u <= 2 and u1 + 2 u2 = 1: vertices",
      [[str(x) for x in v] for v in rep.vertices])

found = search_fractional_vertex(Matrix.from_rows([[1, 1], [-1, 1]]), random.Random(1))
if found:
    box, v = found
    print("[[1,1],[-1,1]] has a fractional vertex", [str(x) for x in v], "in box", box.to_json())
