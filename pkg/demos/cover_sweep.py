"""Expansion of cyclic covers of a triangle boundary and of the torus.

A degree-d cyclic cover of a 3-cycle is a 3d-cycle, whose boundary constant grows
linearly in d. Covers of the torus come from an integer 1-cocycle.
"""

from coexpand import build_cover, cover_expansion_sweep, homology
from coexpand.covers import cocycle_voltages, cyclic_voltages
from coexpand.library import NAMED, cycle_graph

C = cycle_graph(3)
print("degree  connected  Xi(boundary)")
for row in cover_expansion_sweep(C, [cyclic_voltages(C, d) for d in range(1, 6)]):
    print(f"{row.degree:6}  {str(row.connected):9}  {row.xi_top}")

T = NAMED["torus"]()
for d in (2, 3):
    Y = build_cover(T, cocycle_voltages(T, d))
    betti = [homology(Y, k).betti for k in range(3)]
    print(f"\ndegree {d} torus cover: f-vector {Y.f_vector}, betti {betti}")
