"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial lives in Q[x_1, ..., x_n] and is stored as a dict mapping
exponent tuples to nonzero Fraction coefficients.  All arithmetic is exact;
no floating point is ever involved except in eval_float.

The canonical monomial order is graded lexicographic with x_1 > x_2 > ... >
x_n (higher total degree first, then lexicographically larger exponent
vector first).  All iteration, printing and basis indexing use it, so every
output of the library is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

# Exact rational scalar used throughout the library.  Fraction is always in
# lowest terms with a positive denominator, which is exactly the invariant
# the rest of the code relies on.
Rational = Fraction

# One exponent per variable; total degree is the sum of the entries.
ExponentVector = tuple[int, ...]


def grlex_key(exps: ExponentVector) -> tuple[int, ExponentVector]:
    """Sort key realizing graded lex order (use reverse=True for descending)."""
    return (sum(exps), exps)


class SparsePoly:
    """Immutable sparse polynomial with exact rational coefficients.

    Construction normalizes the term map: zero coefficients are dropped and
    every exponent vector must have length ``nvars``.  Instances are values;
    every operation returns a new polynomial.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[ExponentVector, Fraction | int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[ExponentVector, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = Fraction(coeff)
                if c != 0:
                    clean[exps] = c
        self._terms = clean

    # ---------------------------------------------------------------- constructors

    @staticmethod
    def zero(nvars: int) -> SparsePoly:
        return SparsePoly(nvars, {})

    @staticmethod
    def constant(nvars: int, value: Fraction | int) -> SparsePoly:
        return SparsePoly(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(nvars: int, index: int) -> SparsePoly:
        """The polynomial x_{index+1} (zero-based index)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return SparsePoly(nvars, {exps: Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps: Sequence[int], coeff: Fraction | int = 1) -> SparsePoly:
        return SparsePoly(nvars, {tuple(exps): Fraction(coeff)})

    # ---------------------------------------------------------------- inspection

    def items(self) -> Iterator[tuple[ExponentVector, Fraction]]:
        """Terms in descending canonical (graded lex) order."""
        for exps in sorted(self._terms, key=grlex_key, reverse=True):
            yield exps, self._terms[exps]

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def support(self) -> set[ExponentVector]:
        return set(self._terms)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms, or None if inhomogeneous/zero."""
        degs = {sum(e) for e in self._terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ---------------------------------------------------------------- arithmetic

    def _check_compatible(self, other: SparsePoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: SparsePoly) -> SparsePoly:
        self._check_compatible(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = terms.get(exps, Fraction(0)) + coeff
            if acc == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = acc
        return SparsePoly(self.nvars, terms)

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        self._check_compatible(other)
        terms: dict[ExponentVector, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                prod = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(prod, Fraction(0)) + c1 * c2
                if acc == 0:
                    terms.pop(prod, None)
                else:
                    terms[prod] = acc
        return SparsePoly(self.nvars, terms)

    def scale(self, factor: Fraction | int) -> SparsePoly:
        f = Fraction(factor)
        if f == 0:
            return SparsePoly.zero(self.nvars)
        return SparsePoly(self.nvars, {e: c * f for e, c in self._terms.items()})

    def __pow__(self, exponent: int) -> SparsePoly:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.constant(self.nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    # ---------------------------------------------------------------- evaluation

    def eval(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for value, e in zip(pt, exps):
                if e:
                    term *= value**e
            total += term
        return total

    def eval_float(self, point: Sequence[float]) -> float:
        """Floating evaluation (plain sum of monomials, no Horner)."""
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0.0
        for exps, coeff in self._terms.items():
            term = float(coeff)
            for value, e in zip(point, exps):
                if e:
                    term *= float(value) ** e
            total += term
        return total

    def substitute_squares(self) -> SparsePoly:
        """Replace every variable x_i by x_i^2 (all exponents double)."""
        return SparsePoly(self.nvars, {tuple(2 * e for e in exps): c for exps, c in self._terms.items()})

    # ---------------------------------------------------------------- serialization

    def to_lines(self) -> str:
        """One term per line: ``num/den e1 e2 ... en``, canonical order."""
        out = []
        for exps, coeff in self.items():
            out.append(f"{coeff.numerator}/{coeff.denominator} " + " ".join(str(e) for e in exps))
        return "\n".join(out)

    @staticmethod
    def from_lines(text: str, nvars: int | None = None) -> SparsePoly:
        terms: dict[ExponentVector, Fraction] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            coeff = Fraction(tokens[0])
            exps = tuple(int(t) for t in tokens[1:])
            if nvars is None:
                nvars = len(exps)
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        if nvars is None:
            raise ValueError("empty polynomial text and no nvars given")
        return SparsePoly(nvars, terms)

    def to_json_obj(self) -> list[dict]:
        return [
            {"coeff": f"{c.numerator}/{c.denominator}", "exps": list(e)}
            for e, c in self.items()
        ]

    @staticmethod
    def from_json_obj(obj: Iterable[dict], nvars: int | None = None) -> SparsePoly:
        terms: dict[ExponentVector, Fraction] = {}
        for item in obj:
            exps = tuple(int(e) for e in item["exps"])
            if nvars is None:
                nvars = len(exps)
            terms[exps] = terms.get(exps, Fraction(0)) + Fraction(item["coeff"])
        if nvars is None:
            raise ValueError("empty polynomial object and no nvars given")
        return SparsePoly(nvars, terms)

    # ---------------------------------------------------------------- display

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in self.items():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            mono = "*".join(factors) if factors else "1"
            if coeff == 1 and factors:
                parts.append(mono)
            elif coeff == -1 and factors:
                parts.append(f"-{mono}")
            elif factors:
                parts.append(f"{coeff}*{mono}")
            else:
                parts.append(str(coeff))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self) -> str:
        return f"SparsePoly({self.nvars}, {self._terms!r})"
