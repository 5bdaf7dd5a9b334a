"""From a cellular expansion constant to an explicit waist constant.

combine_constants turns (xi, D, E, m) into C = (xi D^(2m) + E) E and
waist_constant returns 1 / (1 + 3C + 12C^2).
"""

from fractions import Fraction

from coexpand import combine_constants, waist_constant

print("   xi    D    E  m        C   waist")
for xi, D, E, m in [(0, 1, 1, 2), (1, 1, 1, 2), (Fraction(1, 2), 1, 2, 3), (Fraction(1, 3), 2, 1, 1)]:
    C = combine_constants(xi, D, E, m)
    print(f"{str(xi):>5} {D:4} {E:4} {m:2} {str(C):>8}   {waist_constant(C)}")
