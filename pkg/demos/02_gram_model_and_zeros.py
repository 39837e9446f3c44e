"""The symmetry-reduced Gram model with kernel conditions from real zeros.

Writing a degree-2d polynomial as m^T A m turns SOS certification into a
semidefinite feasibility problem.  This demo shows the three exact linear
condition families (coefficient matching, permutation invariance via entry
orbits, kernel conditions at real zeros) folded into one affine
parametrization of the candidate matrices.
"""

from fractions import Fraction

from symsos import (
    BasisKind,
    Partition,
    build_basis,
    build_model,
    default_sign_zeros,
    kernel_vectors_from_zeros,
    normalized_difference,
    symmetry_orbits,
)
from symsos.certify import gram_to_poly

target = normalized_difference(
    BasisKind.HOMOGENEOUS, Partition([2, 1]), Partition([1, 1, 1]), 3
).substitute_squares()
print("target:", target)
print()

basis = build_basis(3, 3)
print("monomial basis of degree 3 (graded lex, x1 > x2 > x3):")
print(" ", [".".join(map(str, m)) for m in basis.monomials])
print()

orbits = symmetry_orbits(basis)
print(f"entry orbits under simultaneous permutation: {len(orbits)} orbits "
      f"covering {sum(len(o.members) for o in orbits)} upper-triangle positions")
print("  first three:", [o.members for o in orbits[:3]])
print()

# Term normalization forces G(1, ..., 1) = 1, so after substituting squares
# every sign pattern (+-1, +-1, +-1) is a real zero of the target.  At each
# zero x*, any PSD Gram matrix must annihilate the monomial vector m(x*).
zeros = default_sign_zeros(3)
print("sign-pattern zeros:", [tuple(int(v) for v in z) for z in zeros])
vectors = kernel_vectors_from_zeros(basis, target, zeros)
print(f"kernel vectors m(x*): {len(vectors)} linearly independent vectors")
print("  m(1,1,1) =", [int(v) for v in vectors[0]])
print()

model = build_model(target, use_symmetry=True, zeros=zeros)
print("model:", model.debug_dump()["free_parameter_count"], "free parameters after exact elimination")

# Any instantiation reproduces the target exactly; PSD-ness is the only
# remaining question.
for value in (Fraction(0), Fraction(1, 3), Fraction(-2)):
    a = model.instantiate([value] * len(model.free_params))
    assert gram_to_poly(a, basis) == target
    assert all(all(x == 0 for x in a.matvec(vec)) for vec in vectors)
    print(f"  free value {value}: m^T A m == target exactly; A m(x*) = 0 at every zero")
print()

# The flagship model: 45x45 with 129 free parameters.
flagship = normalized_difference(
    BasisKind.HOMOGENEOUS, Partition([4, 4]), Partition([5, 2, 1]), 3
).substitute_squares()
big = build_model(flagship, use_symmetry=True, zeros=default_sign_zeros(3))
dump = big.debug_dump()
print("flagship model: basis", dump["basis_size"], "| orbits",
      len(dump["orbit_representatives"]), "| free parameters",
      dump["free_parameter_count"], "| kernel vectors", dump["kernel_vector_count"])
