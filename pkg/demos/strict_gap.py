"""A 1x2 integer matrix whose real and integer expansion constants differ.

For A = (1 2) every integer v is in the image over both rings, but the cheapest
real preimage of v = 1 is u = (0, 1/2) while the cheapest integer one has norm 1.
"""

from coexpand import L1Problem, Matrix, l1_min_int, l1_min_real, xi_int_probe, xi_real_global

A = Matrix.from_rows([[1, 2]])

real = l1_min_real(L1Problem(A, (1,)))
print("real minimizer of ||u|| with A u = 1:", [str(x) for x in real.minimizer], "norm", real.value)
print("  dual certificate y =", [str(y) for y in real.certificate["dual"]])

integer = l1_min_int(L1Problem(A, (1,)))
print("integer minimizer:", list(integer.minimizer), "norm", integer.value,
      f"({integer.certificate['nodes']} branch-and-bound nodes)")

glob = xi_real_global(A)
print("\nglobal real constant:", glob.value, "attained at v =", [str(x) for x in glob.witness])

# no exact integer routine applies (A is not TU), so probe a box of lattice points
probe = xi_int_probe(A, 4)
print(f"integer probe over {probe.certificate['points']} lattice points:", probe.value,
      "(a lower bound for the integer constant)")
assert glob.value < probe.value
