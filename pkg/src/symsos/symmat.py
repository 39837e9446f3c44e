"""Dense symmetric matrices with upper-triangle storage.

Entries are exact Fractions (verification path) or floats (solver path);
the two never mix inside one matrix.  Only positions with i <= j are
stored, so symmetry holds by construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def upper_index(i: int, j: int, n: int) -> int:
    """Row-major index of position (i, j), i <= j, in the packed upper triangle."""
    if i > j:
        i, j = j, i
    return i * n - (i * (i - 1)) // 2 + (j - i)


class SymMatrix:
    """Symmetric n x n matrix storing the packed upper triangle."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Sequence):
        expected = n * (n + 1) // 2
        if len(entries) != expected:
            raise ValueError(f"expected {expected} upper-triangle entries, got {len(entries)}")
        self.n = n
        self.entries = tuple(entries)

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> SymMatrix:
        n = len(rows)
        entries = []
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("rows must form a square matrix")
            for j in range(i, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
                entries.append(rows[i][j])
        return SymMatrix(n, entries)

    @staticmethod
    def zero(n: int) -> SymMatrix:
        return SymMatrix(n, [Fraction(0)] * (n * (n + 1) // 2))

    def entry(self, i: int, j: int):
        return self.entries[upper_index(i, j, self.n)]

    def row(self, i: int) -> list:
        return [self.entry(i, j) for j in range(self.n)]

    def matvec(self, vec: Sequence) -> list:
        """Exact matrix-vector product (vector entries are left untouched)."""
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        return [sum(self.entry(i, j) * vec[j] for j in range(self.n)) for i in range(self.n)]

    def to_dense_float(self) -> np.ndarray:
        a = np.empty((self.n, self.n), dtype=float)
        for i in range(self.n):
            for j in range(i, self.n):
                a[i, j] = a[j, i] = float(self.entry(i, j))
        return a

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.n)]

    def is_rational(self) -> bool:
        return all(isinstance(e, (Fraction, int)) for e in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SymMatrix(n={self.n})"

    # ------------------------------------------------------------------ file IO
    #
    # Matrix file format: first line is N, followed by the N(N+1)/2 packed
    # upper-triangle entries as `p/q` tokens in row-major order.

    def to_text(self) -> str:
        if not self.is_rational():
            raise ValueError("only rational matrices are serialized")
        lines = [str(self.n)]
        pos = 0
        for i in range(self.n):
            row_len = self.n - i
            row = self.entries[pos:pos + row_len]
            lines.append(" ".join(f"{Fraction(e).numerator}/{Fraction(e).denominator}" for e in row))
            pos += row_len
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> SymMatrix:
        tokens = text.split()
        if not tokens:
            raise ValueError("empty matrix file")
        try:
            n = int(tokens[0])
        except ValueError as exc:
            raise ValueError(f"first token must be the dimension, got {tokens[0]!r}") from exc
        expected = n * (n + 1) // 2
        body = tokens[1:]
        if len(body) != expected:
            raise ValueError(f"expected {expected} entries for dimension {n}, got {len(body)}")
        return SymMatrix(n, [Fraction(t) for t in body])
