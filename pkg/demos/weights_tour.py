"""
Weights on 2x2 matrices over a prime field
==========================================

Walks through the Bachoc, homogeneous and Lee weights for p = 2 and
prints the full tables.
"""

from fractions import Fraction

from m2codes.matring import all_matrices, char_sum_over_units, gl_order
from m2codes.exactalg import cyc_as_rational_integer
from m2codes.weights import bachoc_weight, hom_weight, hom_weight_via_character, table_to_text, weight_table

p = 2

# The unit group has (p^2-1)(p^2-p) elements.
print("units in M_2(F_2):", gl_order(p))

# Character sums over the units take three values: |GL| at zero,
# p on units and p - p^2 on nonzero non-units.
sums = sorted({cyc_as_rational_integer(char_sum_over_units(A)) for A in all_matrices(p)})
print("distinct unit character sums:", sums)

# The homogeneous weight has a closed form and a character formula.
agree = all(hom_weight(A) == hom_weight_via_character(A) for A in all_matrices(p))
print("closed form equals character formula:", agree)

# Scaling the average value scales every weight.
A = next(A for A in all_matrices(p) if A and not A.det())
print("w_hom of a non-unit with gamma = 1/2:", hom_weight(A, Fraction(1, 2)), "bachoc:", bachoc_weight(A))

print()
print(table_to_text(weight_table(p, "matrix")))
print(table_to_text(weight_table(p, "chain")))
