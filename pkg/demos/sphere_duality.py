"""Expansion constants of closed oriented surfaces read off their dual graphs.

On a closed oriented triangulated surface the top boundary map is, up to the
orientation signs, the incidence matrix of the dual graph. So the codimension
constants of the surface are graph constants, and the integer ones match the
real ones because graph incidence matrices are TU.
"""

from coexpand import boundary_matrix, codim_expansion_constants, manifold_check, xi_int_global
from coexpand.complexes import dual_graph_incidence
from coexpand.library import NAMED

for name in ("delta3", "delta4"):
    X = NAMED[name]()
    rep = manifold_check(X)
    print(f"{name}: f-vector {X.f_vector}, closed {rep.is_closed}, orientable {rep.is_orientable}")
    top, nxt = codim_expansion_constants(X).values
    print(f"  codimension constants: top {top}, next {nxt}")
    D = dual_graph_incidence(X)
    print(f"  dual graph incidence {D.shape}, equals oriented boundary up to row signs")
    z = xi_int_global(boundary_matrix(X, X.dim))
    print(f"  integer top constant {z.value} ({z.certificate['equality']})")
    assert z.value == top
