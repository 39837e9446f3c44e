"""Full pipeline walkthrough on H_21 - H_111, the classical warm-up case.

The numeric SDP solution is rounded by continued fractions at denominator
bound 150 and lands exactly on the classical 10x10 Gram matrix; exact
LDL^T factorization then yields six rational squares.  Two other published
decompositions of the same sextic are verified for comparison.
"""

from symsos import (
    BasisKind,
    Partition,
    build_model,
    default_sign_zeros,
    extract_certificate,
    normalized_difference,
    round_solution,
    solve,
    verify_certificate,
)
from symsos.fixtures import (
    agm_sextic_binomial_certificate,
    agm_sextic_trinomial_certificate,
    h21_h111_gram,
)
from symsos.rationalize import RoundingConfig

target = normalized_difference(
    BasisKind.HOMOGENEOUS, Partition([2, 1]), Partition([1, 1, 1]), 3
).substitute_squares()
print("target:", target)
print()

model = build_model(target, use_symmetry=True, zeros=default_sign_zeros(3))
numeric = solve(model)
print(f"numeric solve: status {numeric.status.value}, "
      f"deflated min eigenvalue {numeric.min_eigenvalue_deflated:.6f}")
print("free parameter values:", [f"{v:.3e}" for v in numeric.free_values])
print()

matrix = round_solution(model, numeric, RoundingConfig(denominator_bound=150))
print("rounded at denominator bound 150; first row:")
print(" ", [str(v) for v in matrix.row(0)])
print("matches the classical reference matrix exactly:", matrix == h21_h111_gram())
print()

cert = extract_certificate(matrix, model.basis)
print(f"exact LDL^T factorization gives {len(cert.squares)} squares:")
for coeff, poly in cert.squares:
    print(f"  {coeff} * ({poly})^2")
print("independent re-verification:", verify_certificate(cert).passed)
print()

print("other published decompositions of 54 * target (all verify exactly):")
for cert in (agm_sextic_binomial_certificate(), agm_sextic_trinomial_certificate()):
    report = verify_certificate(cert)
    print(f"  {cert.meta['name']}: {len(cert.squares)} squares ->",
          "pass" if report.passed else "FAIL")
