"""Frozen reference data: the degree-16 flagship target, the classical
sextic x1^6 + x2^6 + x3^6 - 3 x1^2 x2^2 x3^2 with three published square
decompositions, and the small 10x10 reference Gram matrix.

These values are literal data, independent of the expansion code, so they
double as golden fixtures for it.
"""

from __future__ import annotations

from fractions import Fraction

from .certify import SosCertificate, certificate_from_squares
from .polyring import SparsePoly
from .symmat import SymMatrix

# Coefficients (over the common denominator 9450) of the degree-16 polynomial
# (H44 - H521)(x1^2, x2^2, x3^2), the flagship certification target.  Note
# the value -48 on x1^10 x2^4 x3^2: symmetry in x1 <-> x2 forces it to equal
# the -48 on x1^4 x2^10 x3^2, and the coefficients must sum to zero because
# the normalized difference vanishes at the all-ones point.
H44_H521_SQUARED_NUMERATORS: dict[tuple[int, int, int], int] = {
    (16, 0, 0): 17, (14, 2, 0): 9, (12, 4, 0): 1, (10, 6, 0): 18, (8, 8, 0): 60,
    (6, 10, 0): 18, (4, 12, 0): 1, (2, 14, 0): 9, (0, 16, 0): 17,
    (14, 0, 2): 9, (12, 2, 2): -32, (10, 4, 2): -48, (8, 6, 2): 11, (6, 8, 2): 11,
    (4, 10, 2): -48, (2, 12, 2): -32, (0, 14, 2): 9,
    (12, 0, 4): 1, (10, 2, 4): -48, (8, 4, 4): -22, (6, 6, 4): -5, (4, 8, 4): -22,
    (2, 10, 4): -48, (0, 12, 4): 1,
    (10, 0, 6): 18, (8, 2, 6): 11, (6, 4, 6): -5, (4, 6, 6): -5, (2, 8, 6): 11,
    (0, 10, 6): 18,
    (8, 0, 8): 60, (6, 2, 8): 11, (4, 4, 8): -22, (2, 6, 8): 11, (0, 8, 8): 60,
    (6, 0, 10): 18, (4, 2, 10): -48, (2, 4, 10): -48, (0, 6, 10): 18,
    (4, 0, 12): 1, (2, 2, 12): -32, (0, 4, 12): 1,
    (2, 0, 14): 9, (0, 2, 14): 9,
    (0, 0, 16): 17,
}


def h44_h521_squared() -> SparsePoly:
    """(H44 - H521)(x1^2, x2^2, x3^2) assembled from the frozen table."""
    return SparsePoly(3, {e: Fraction(n, 9450) for e, n in H44_H521_SQUARED_NUMERATORS.items()})


def h21_h111_squared() -> SparsePoly:
    """(H21 - H111)(x1^2, x2^2, x3^2) = (1/54)(x1^6 + x2^6 - 3 x1^2x2^2x3^2 + x3^6)."""
    return SparsePoly(3, {
        (6, 0, 0): Fraction(1, 54),
        (0, 6, 0): Fraction(1, 54),
        (0, 0, 6): Fraction(1, 54),
        (2, 2, 2): Fraction(-1, 18),
    })


# The 10x10 Gram matrix (1/108) * M for h21_h111_squared over the degree-3
# monomial basis (x1^3, x1^2 x2, x1^2 x3, x1 x2^2, x1 x2 x3, x1 x3^2,
# x2^3, x2^2 x3, x2 x3^2, x3^3).
_H21_H111_GRAM_ROWS = [
    [2, 0, 0, -1, 0, -1, 0, 0, 0, 0],
    [0, 2, 0, 0, 0, 0, -1, 0, -1, 0],
    [0, 0, 2, 0, 0, 0, 0, -1, 0, -1],
    [-1, 0, 0, 2, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, -1, 0, 2, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 2, 0, -1, 0],
    [0, 0, -1, 0, 0, 0, 0, 2, 0, -1],
    [0, -1, 0, 0, 0, 0, -1, 0, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, -1, 0, 2],
]


def h21_h111_gram() -> SymMatrix:
    rows = [[Fraction(v, 108) for v in row] for row in _H21_H111_GRAM_ROWS]
    return SymMatrix.from_rows(rows)


def agm_sextic() -> SparsePoly:
    """x1^6 + x2^6 + x3^6 - 3 x1^2 x2^2 x3^2 (54 times h21_h111_squared)."""
    return h21_h111_squared().scale(54)


def _p(terms: dict[tuple[int, int, int], int | Fraction]) -> SparsePoly:
    return SparsePoly(3, terms)


def agm_sextic_ldl_certificate() -> SosCertificate:
    """Six squares obtained by exact LDL^T of the reference Gram, scaled by 54."""
    squares = [
        (Fraction(1, 4), _p({(3, 0, 0): 2, (1, 2, 0): -1, (1, 0, 2): -1})),
        (Fraction(1, 4), _p({(2, 1, 0): 2, (0, 3, 0): -1, (0, 1, 2): -1})),
        (Fraction(3, 4), _p({(1, 2, 0): 1, (1, 0, 2): -1})),
        (Fraction(3, 4), _p({(0, 3, 0): 1, (0, 1, 2): -1})),
        (Fraction(1, 4), _p({(2, 0, 1): 2, (0, 2, 1): -1, (0, 0, 3): -1})),
        (Fraction(3, 4), _p({(0, 2, 1): 1, (0, 0, 3): -1})),
    ]
    return certificate_from_squares(agm_sextic(), squares, {"name": "ldl-six-squares"})


def agm_sextic_binomial_certificate() -> SosCertificate:
    """The classical five-square binomial decomposition."""
    squares = [
        (Fraction(1), _p({(3, 0, 0): 1, (1, 2, 0): -1})),
        (Fraction(1), _p({(0, 0, 3): 1, (0, 2, 1): -1})),
        (Fraction(1, 2), _p({(2, 1, 0): 1, (0, 3, 0): -1})),
        (Fraction(1, 2), _p({(0, 1, 2): 1, (0, 3, 0): -1})),
        (Fraction(3, 2), _p({(2, 1, 0): 1, (0, 1, 2): -1})),
    ]
    return certificate_from_squares(agm_sextic(), squares, {"name": "binomial-five-squares"})


def agm_sextic_trinomial_certificate() -> SosCertificate:
    """Four squares: three binomials and one trinomial."""
    squares = [
        (Fraction(1), _p({(2, 1, 0): 1, (0, 3, 0): -1})),
        (Fraction(1), _p({(2, 0, 1): 1, (0, 0, 3): -1})),
        (Fraction(7, 4), _p({(1, 2, 0): 1, (1, 0, 2): -1})),
        (Fraction(1, 4), _p({(1, 2, 0): 1, (1, 0, 2): 1, (3, 0, 0): -2})),
    ]
    return certificate_from_squares(agm_sextic(), squares, {"name": "trinomial-four-squares"})
