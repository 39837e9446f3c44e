"""Symmetric-function bases, dominance order, and term normalization.

Walks through the objects the certification pipeline is built on: the five
classical bases expanded into monomials, the dominance (majorization) order
on partitions, and term-normalized differences G_mu - G_lambda.
"""

from fractions import Fraction

from symsos import (
    BasisKind,
    Partition,
    dominance_compare,
    eval_at_ones,
    expand,
    normalized_difference,
    partitions_of,
)

# --- partitions and dominance ------------------------------------------------

mu = Partition.parse("44")
lam = Partition.parse("521")
print(f"partitions: mu = {mu} (weight {mu.weight}), lambda = {lam} (weight {lam.weight})")
print(f"dominance_compare(mu, lambda) = {dominance_compare(mu, lam).value}")
print(f"prefix sums: {mu.prefix_sums(3)} vs {lam.prefix_sums(3)}")
print()

print("all partitions of 6, reverse-lex:", ", ".join(str(p) for p in partitions_of(6)))
print()

# --- basis expansions ---------------------------------------------------------

h21 = expand(BasisKind.HOMOGENEOUS, Partition([2, 1]), 3)
print("h_21 in three variables (sum of all degree-2 monomials times e1):")
print(" ", h21)
print("  value at (1,1,1):", h21.eval([1, 1, 1]), "= C(4,2) * C(3,1) =", eval_at_ones(BasisKind.HOMOGENEOUS, Partition([2, 1]), 3))
print()

s21 = expand(BasisKind.SCHUR, Partition([2, 1]), 3)
print("s_21 in three variables (Jacobi-Trudi determinant over the h basis):")
print(" ", s21)
print()

# --- term-normalized differences ----------------------------------------------

diff = normalized_difference(BasisKind.HOMOGENEOUS, Partition([2, 1]), Partition([1, 1, 1]), 3)
print("H_21 - H_111 (each H is h divided by its value at the all-ones point):")
print(" ", diff)
print("  value at all-ones (must vanish):", diff.eval([1, 1, 1]))
print()

# The flagship difference: incomparable partitions 44 and 521 whose
# normalized difference is nonetheless nonnegative on the orthant.
flagship = normalized_difference(BasisKind.HOMOGENEOUS, mu, lam, 3)
squared = flagship.substitute_squares()
print("(H_44 - H_521)(x1^2, x2^2, x3^2): degree", squared.degree(),
      "with", squared.num_terms(), "terms")
print("  leading coefficient on x1^16:", squared.coefficient((16, 0, 0)),
      "(= 1/225 - 1/378 =", Fraction(1, 225) - Fraction(1, 378), ")")
print("  sample values on the orthant:",
      [round(flagship.eval_float([x, 1.0, 0.5]), 6) for x in (0.0, 0.5, 1.0, 2.0)])
