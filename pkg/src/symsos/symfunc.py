"""Partitions, dominance order, and monomial expansions of the classical
symmetric-function bases in a fixed number of variables.

The five bases are monomial (m), elementary (e), power-sum (p), homogeneous
(h) and Schur (s).  Expansions are exact SparsePoly values; the
term-normalized difference G_mu - G_lambda (each basis element divided by
its value at the all-ones point) is the object the certification pipeline
consumes.
"""

from __future__ import annotations

import itertools
import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering

from .polyring import SparsePoly


@total_ordering
class Partition:
    """A weakly decreasing sequence of positive integers."""

    __slots__ = ("parts", "weight")

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        self.parts = parts
        self.weight = sum(parts)

    @staticmethod
    def parse(text: str) -> Partition:
        """Parse '521' (digits, all parts <= 9) or '10,3,1' (comma separated)."""
        text = text.strip()
        if not text:
            raise ValueError("empty partition string")
        if "," in text:
            parts = [int(t) for t in text.split(",")]
        else:
            parts = [int(ch) for ch in text]
        return Partition(parts)

    def __str__(self) -> str:
        if all(p <= 9 for p in self.parts):
            return "".join(str(p) for p in self.parts)
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __lt__(self, other) -> bool:
        # Lexicographic on parts; used only for deterministic sorting.
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts < other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def prefix_sums(self, length: int) -> tuple[int, ...]:
        """Cumulative sums padded with zeros out to the given length."""
        sums = []
        acc = 0
        for i in range(length):
            acc += self.parts[i] if i < len(self.parts) else 0
            sums.append(acc)
        return tuple(sums)


class BasisKind(Enum):
    MONOMIAL = "m"
    ELEMENTARY = "e"
    POWER_SUM = "p"
    HOMOGENEOUS = "h"
    SCHUR = "s"

    @staticmethod
    def parse(text: str) -> BasisKind:
        key = text.strip().lower()
        aliases = {
            "m": BasisKind.MONOMIAL, "monomial": BasisKind.MONOMIAL,
            "e": BasisKind.ELEMENTARY, "elementary": BasisKind.ELEMENTARY,
            "p": BasisKind.POWER_SUM, "power-sum": BasisKind.POWER_SUM,
            "powersum": BasisKind.POWER_SUM, "power_sum": BasisKind.POWER_SUM,
            "h": BasisKind.HOMOGENEOUS, "homogeneous": BasisKind.HOMOGENEOUS,
            "s": BasisKind.SCHUR, "schur": BasisKind.SCHUR,
        }
        if key not in aliases:
            raise ValueError(f"unknown basis {text!r}; expected one of m, e, p, h, s")
        return aliases[key]


class Dominance(Enum):
    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominance_compare(mu: Partition, lam: Partition) -> Dominance:
    """Compare mu against lam in dominance (majorization) order.

    DOMINATES means every prefix sum of mu is >= the matching prefix sum of
    lam (zero padded).  Requires equal weights.
    """
    if mu.weight != lam.weight:
        raise ValueError(f"partitions have different weights: {mu.weight} vs {lam.weight}")
    length = max(len(mu), len(lam))
    a = mu.prefix_sums(length)
    b = lam.prefix_sums(length)
    ge = all(x >= y for x, y in zip(a, b))
    le = all(x <= y for x, y in zip(a, b))
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.DOMINATES
    if le:
        return Dominance.DOMINATED_BY
    return Dominance.INCOMPARABLE


def partitions_of(d: int) -> list[Partition]:
    """All partitions of d, in reverse lexicographic order ((d) first)."""
    if d < 1:
        raise ValueError("d must be positive")

    def gen(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield Partition(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from gen(remaining - part, part, prefix + (part,))

    return list(gen(d, d, ()))


# ------------------------------------------------------------------ expansions

@lru_cache(maxsize=None)
def _homogeneous_part(d: int, nvars: int) -> SparsePoly:
    """h_d: the sum of all monomials of total degree d (h_0 = 1)."""
    terms = {}
    for exps in _compositions(d, nvars):
        terms[exps] = Fraction(1)
    return SparsePoly(nvars, terms)


def _compositions(d: int, nvars: int):
    """All length-nvars tuples of nonnegative integers summing to d."""
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, nvars - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _elementary_part(d: int, nvars: int) -> SparsePoly:
    """e_d: sum of all products of d distinct variables (zero if d > nvars)."""
    if d > nvars:
        return SparsePoly.zero(nvars)
    terms = {}
    for combo in itertools.combinations(range(nvars), d):
        exps = tuple(1 if i in combo else 0 for i in range(nvars))
        terms[exps] = Fraction(1)
    return SparsePoly(nvars, terms)


@lru_cache(maxsize=None)
def _power_sum_part(d: int, nvars: int) -> SparsePoly:
    terms = {}
    for i in range(nvars):
        exps = tuple(d if j == i else 0 for j in range(nvars))
        terms[exps] = Fraction(1)
    return SparsePoly(nvars, terms)


def _monomial_sym(lam: Partition, nvars: int) -> SparsePoly:
    """m_lambda: sum of x^alpha over distinct rearrangements of lambda."""
    if len(lam) > nvars:
        return SparsePoly.zero(nvars)
    padded = lam.parts + (0,) * (nvars - len(lam))
    terms = {}
    for exps in set(itertools.permutations(padded)):
        terms[exps] = Fraction(1)
    return SparsePoly(nvars, terms)


def _product_basis(part_fn, lam: Partition, nvars: int) -> SparsePoly:
    result = SparsePoly.constant(nvars, 1)
    for p in lam.parts:
        result = result * part_fn(p, nvars)
    return result


def _schur(lam: Partition, nvars: int) -> SparsePoly:
    """Schur polynomial via the Jacobi-Trudi determinant det(h_{lam_i - i + j})."""
    ell = len(lam)

    def entry(i: int, j: int) -> SparsePoly:
        d = lam.parts[i] - (i + 1) + (j + 1)
        if d < 0:
            return SparsePoly.zero(nvars)
        return _homogeneous_part(d, nvars)

    # Laplace expansion along the first remaining row, memoized on the free
    # column set; ell <= ~6 at the scales this library targets.
    memo: dict[frozenset[int], SparsePoly] = {}

    def minor(cols: frozenset[int]) -> SparsePoly:
        if not cols:
            return SparsePoly.constant(nvars, 1)
        if cols in memo:
            return memo[cols]
        row = ell - len(cols)
        total = SparsePoly.zero(nvars)
        for sign_idx, j in enumerate(sorted(cols)):
            e = entry(row, j)
            if e.is_zero():
                continue
            sub = minor(cols - {j})
            term = e * sub
            total = total + (term if sign_idx % 2 == 0 else -term)
        memo[cols] = total
        return total

    return minor(frozenset(range(ell)))


def expand(basis: BasisKind, lam: Partition, nvars: int) -> SparsePoly:
    """Exact monomial expansion of the basis element in nvars variables.

    Elementary, monomial and Schur elements may be identically zero when
    nvars is too small; that is a mathematical fact, not an error.
    """
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    if basis is BasisKind.HOMOGENEOUS:
        return _product_basis(_homogeneous_part, lam, nvars)
    if basis is BasisKind.ELEMENTARY:
        return _product_basis(_elementary_part, lam, nvars)
    if basis is BasisKind.POWER_SUM:
        return _product_basis(_power_sum_part, lam, nvars)
    if basis is BasisKind.MONOMIAL:
        return _monomial_sym(lam, nvars)
    if basis is BasisKind.SCHUR:
        return _schur(lam, nvars)
    raise ValueError(f"unknown basis {basis}")


def eval_at_ones(basis: BasisKind, lam: Partition, nvars: int) -> Fraction:
    """The exact value of the basis element at (1, 1, ..., 1).

    Closed forms for h and p; expansion plus evaluation otherwise.
    """
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    if basis is BasisKind.HOMOGENEOUS:
        value = 1
        for p in lam.parts:
            value *= math.comb(nvars + p - 1, p)
        return Fraction(value)
    if basis is BasisKind.POWER_SUM:
        return Fraction(nvars ** len(lam))
    ones = [Fraction(1)] * nvars
    return expand(basis, lam, nvars).eval(ones)


def normalized(basis: BasisKind, lam: Partition, nvars: int) -> SparsePoly:
    """Term-normalized basis element: the expansion divided by its value at 1."""
    denom = eval_at_ones(basis, lam, nvars)
    if denom == 0:
        raise ZeroDivisionError(
            f"{basis.value}_{lam} vanishes at the all-ones point in {nvars} variables; "
            "term normalization is undefined"
        )
    return expand(basis, lam, nvars).scale(Fraction(1, 1) / denom)


def normalized_difference(basis: BasisKind, mu: Partition, lam: Partition, nvars: int) -> SparsePoly:
    """G_mu - G_lambda where G = g / g(1, ..., 1)."""
    if mu.weight != lam.weight:
        raise ValueError(f"partitions have different weights: {mu.weight} vs {lam.weight}")
    return normalized(basis, mu, nvars) - normalized(basis, lam, nvars)
