"""The flagship run: an exact rational SOS certificate for H_44 - H_521.

The partitions 44 and 521 are incomparable in dominance order, yet
(H_44 - H_521)(x1^2, x2^2, x3^2) is a sum of squares, so H_44 >= H_521 on
the nonnegative orthant.  This breaks the pattern that holds for the
monomial, elementary, power-sum, and Schur bases, where the inequality is
equivalent to dominance.

The run below builds the 45x45 symmetry-reduced Gram model with four
kernel vectors, solves the deflated eigenvalue SDP, escalates the rounding
denominator bound until the rational matrix is PSD, and factors it exactly.
"""

import time

from symsos import Partition, certify_difference, dominance_compare, save_certificate, verify_certificate

mu, lam = Partition([4, 4]), Partition([5, 2, 1])
print(f"dominance_compare({mu}, {lam}) = {dominance_compare(mu, lam).value}")
print()

start = time.monotonic()
outcome = certify_difference(mu, lam, 3)
elapsed = time.monotonic() - start

print(f"status: {outcome.status.value}  ({elapsed:.1f}s)")
print(f"deflated min eigenvalue of the numeric solution: {outcome.margin:.6e}")
cert = outcome.certificate
print(f"certificate: {len(cert.squares)} squares, Gram rank {len(cert.squares)}, "
      f"max denominator {cert.max_denominator_digits()} digits")
print()

report = verify_certificate(cert)
print("independent exact re-verification:", "pass" if report.passed else "FAIL")

coeff, poly = cert.squares[0]
terms = list(poly.items())
print()
print(f"first square (coefficient {coeff}):")
for exps, c in terms[:3]:
    print(f"  {c} * x^{exps}")
print(f"  ... ({len(terms)} terms)")

save_certificate(cert, "h44_h521_certificate.json")
print()
print("certificate written to h44_h521_certificate.json")
print("re-check it anytime with: symsos verify h44_h521_certificate.json")
