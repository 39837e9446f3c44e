"""Gram-matrix feasibility model for writing a polynomial as m^T A m.

For a homogeneous target of degree 2d in n variables, the Gram matrix A is
indexed by the N = C(n+d-1, d) monomials of degree d.  Three families of
linear conditions pin A down:

  * coefficient matching: m^T A m must reproduce the target exactly,
  * symmetry: A constant on the orbits of matrix positions under the
    simultaneous permutation action of S_n on the monomial basis (such a
    matrix commutes with every permutation representation matrix),
  * kernel conditions: A v = 0 for each v = m(x*) at a known real zero x*
    of the target.

All three are folded into one exact rational elimination, producing an
affine parametrization: every instantiation of the free parameters yields a
matrix satisfying every condition exactly, so the downstream rounding step
can only break positive semidefiniteness, never the linear structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .polyring import ExponentVector, SparsePoly, grlex_key
from .symmat import SymMatrix, upper_index


class InfeasibleModelError(Exception):
    """The linear conditions are inconsistent: no Gram matrix exists."""


@dataclass(frozen=True)
class MonomialBasis:
    """All monomials of one total degree, in descending graded-lex order."""

    nvars: int
    degree: int
    monomials: tuple[ExponentVector, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def index_of(self, exps: ExponentVector) -> int:
        return _basis_index_map(self.nvars, self.degree)[tuple(exps)]

    def evaluate(self, point: Sequence[Fraction]) -> list[Fraction]:
        """The vector m(x) at an exact rational point."""
        pt = [Fraction(v) for v in point]
        out = []
        for exps in self.monomials:
            value = Fraction(1)
            for v, e in zip(pt, exps):
                if e:
                    value *= v**e
            out.append(value)
        return out


def build_basis(nvars: int, d: int) -> MonomialBasis:
    if nvars < 1 or d < 0:
        raise ValueError("need nvars >= 1 and d >= 0")
    monomials = sorted(_degree_monomials(nvars, d), key=grlex_key, reverse=True)
    return MonomialBasis(nvars, d, tuple(monomials))


def _degree_monomials(nvars: int, d: int) -> list[ExponentVector]:
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _degree_monomials(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _basis_index_map(nvars: int, d: int) -> dict[ExponentVector, int]:
    basis = build_basis(nvars, d)
    return {m: i for i, m in enumerate(basis.monomials)}


def basis_permutation(basis: MonomialBasis, var_perm: Sequence[int]) -> list[int]:
    """Index permutation sigma with m_{sigma(k)} = m_k after permuting variables.

    var_perm maps variable i to variable var_perm[i].
    """
    index = _basis_index_map(basis.nvars, basis.degree)
    sigma = []
    for exps in basis.monomials:
        moved = [0] * basis.nvars
        for i, e in enumerate(exps):
            moved[var_perm[i]] = e
        sigma.append(index[tuple(moved)])
    return sigma


@dataclass(frozen=True)
class EntryOrbit:
    """One orbit of matrix positions (i <= j) under simultaneous permutation."""

    representative: tuple[int, int]
    members: tuple[tuple[int, int], ...]


def symmetry_orbits(basis: MonomialBasis) -> list[EntryOrbit]:
    """Orbits of upper-triangle positions under all variable permutations.

    A symmetric matrix constant on these orbits commutes with every
    permutation representation matrix, i.e. lies in the fixed-point
    subspace of the conjugation action.
    """
    n = len(basis)
    perms = [basis_permutation(basis, p) for p in itertools.permutations(range(basis.nvars))]
    seen = [[False] * n for _ in range(n)]
    orbits = []
    for i in range(n):
        for j in range(i, n):
            if seen[i][j]:
                continue
            members = set()
            for sigma in perms:
                a, b = sigma[i], sigma[j]
                if a > b:
                    a, b = b, a
                members.add((a, b))
            for (a, b) in members:
                seen[a][b] = True
            members = tuple(sorted(members))
            orbits.append(EntryOrbit(members[0], members))
    orbits.sort(key=lambda orb: upper_index(*orb.representative, n))
    return orbits


def is_symmetric_poly(p: SparsePoly) -> bool:
    """True if p is invariant under every permutation of its variables."""
    for perm in itertools.permutations(range(p.nvars)):
        for exps, coeff in p.items():
            moved = [0] * p.nvars
            for i, e in enumerate(exps):
                moved[perm[i]] = e
            if p.coefficient(tuple(moved)) != coeff:
                return False
    return True


def default_sign_zeros(nvars: int) -> list[tuple[Fraction, ...]]:
    """The 2^(n-1) sign patterns (+1, ±1, ..., ±1), up to global sign.

    Any term-normalized homogeneous difference vanishes at the all-ones
    point after normalization, and after the square substitution the whole
    sign family consists of zeros.
    """
    out = []
    for signs in itertools.product((1, -1), repeat=nvars - 1):
        out.append(tuple(Fraction(s) for s in (1,) + signs))
    return out


def kernel_vectors_from_zeros(
    basis: MonomialBasis,
    target: SparsePoly,
    zeros: Sequence[Sequence[Fraction]],
) -> list[list[Fraction]]:
    """Monomial vectors m(x*) at verified real zeros, reduced to a basis.

    Each point is checked exactly: it must be nonzero and the target must
    vanish there.  Duplicate and linearly dependent vectors are removed by
    exact elimination, preserving input order.
    """
    vectors: list[list[Fraction]] = []
    reduced: list[list[Fraction]] = []
    for point in zeros:
        pt = tuple(Fraction(v) for v in point)
        if len(pt) != basis.nvars:
            raise ValueError(f"zero {pt} has wrong dimension")
        if all(v == 0 for v in pt):
            raise ValueError("the origin is not a usable zero")
        value = target.eval(pt)
        if value != 0:
            raise ValueError(f"point {tuple(map(str, pt))} is not a zero of the target (value {value})")
        vec = basis.evaluate(pt)
        # Exact rank test: reduce a copy against the accepted row echelon.
        work = list(vec)
        for pivot_row in reduced:
            lead = next(k for k, v in enumerate(pivot_row) if v != 0)
            if work[lead] != 0:
                factor = work[lead] / pivot_row[lead]
                work = [a - factor * b for a, b in zip(work, pivot_row)]
        if any(v != 0 for v in work):
            reduced.append(work)
            vectors.append(vec)
    return vectors


# ------------------------------------------------------------------ linear rows

class _Row:
    """Sparse linear row sum(coeffs[v] * x_v) = rhs over exact rationals."""

    __slots__ = ("coeffs", "rhs")

    def __init__(self, coeffs: dict[int, Fraction], rhs: Fraction):
        self.coeffs = {v: c for v, c in coeffs.items() if c != 0}
        self.rhs = rhs

    def subtract(self, factor: Fraction, other: _Row) -> None:
        if factor == 0:
            return
        for v, c in other.coeffs.items():
            acc = self.coeffs.get(v, Fraction(0)) - factor * c
            if acc == 0:
                self.coeffs.pop(v, None)
            else:
                self.coeffs[v] = acc
        self.rhs -= factor * other.rhs


def _eliminate(rows: list[_Row]) -> tuple[dict[int, _Row], list[int]]:
    """Exact Gauss-Jordan elimination on sparse rational rows.

    Returns the pivot rows (pivot variable -> normalized row whose other
    variables are all free) and raises InfeasibleModelError on an
    inconsistent system.  The pivot in each row is its lexicographically
    first variable, which makes the parametrization deterministic.
    """
    pivots: dict[int, _Row] = {}
    for row in rows:
        while True:
            hit = None
            for v in sorted(row.coeffs):
                if v in pivots:
                    hit = v
                    break
            if hit is None:
                break
            row.subtract(row.coeffs[hit], pivots[hit])
        if not row.coeffs:
            if row.rhs != 0:
                raise InfeasibleModelError("linear conditions are inconsistent; no Gram matrix exists")
            continue
        pivot_var = min(row.coeffs)
        lead = row.coeffs[pivot_var]
        row.coeffs = {v: c / lead for v, c in row.coeffs.items()}
        row.rhs /= lead
        for other in pivots.values():
            if pivot_var in other.coeffs:
                other.subtract(other.coeffs[pivot_var], row)
        pivots[pivot_var] = row
    return pivots, sorted(pivots)


# ------------------------------------------------------------------ the model

class GramModel:
    """Exact affine parametrization of the feasible Gram matrices.

    free_params lists the surviving variable ids; instantiate() maps any
    rational assignment of them to a symmetric matrix satisfying every
    linear condition exactly.
    """

    def __init__(
        self,
        basis: MonomialBasis,
        target: SparsePoly,
        use_symmetry: bool,
        orbits: list[EntryOrbit] | None,
        kernel_vectors: list[list[Fraction]],
        pivots: dict[int, _Row],
        num_vars: int,
    ):
        self.basis = basis
        self.target = target
        self.use_symmetry = use_symmetry
        self.orbits = orbits
        self.kernel_vectors = kernel_vectors
        self._pivots = pivots
        self._num_vars = num_vars
        self.free_params: tuple[int, ...] = tuple(
            v for v in range(num_vars) if v not in pivots
        )
        self._entry_var = self._build_entry_var_map()
        self._float_family: tuple[np.ndarray, list[np.ndarray]] | None = None

    def _build_entry_var_map(self) -> list[int]:
        """Packed upper-triangle position -> variable id."""
        n = len(self.basis)
        total = n * (n + 1) // 2
        if not self.use_symmetry:
            return list(range(total))
        entry_var = [0] * total
        assert self.orbits is not None
        for var_id, orbit in enumerate(self.orbits):
            for (i, j) in orbit.members:
                entry_var[upper_index(i, j, n)] = var_id
        return entry_var

    @property
    def num_kernel_vectors(self) -> int:
        return len(self.kernel_vectors)

    def instantiate(self, free_values: Sequence[Fraction]) -> SymMatrix:
        """Exact symmetric matrix for the given free-parameter values."""
        if len(free_values) != len(self.free_params):
            raise ValueError(
                f"expected {len(self.free_params)} free values, got {len(free_values)}"
            )
        values: dict[int, Fraction] = {
            v: Fraction(x) for v, x in zip(self.free_params, free_values)
        }
        for pivot_var, row in self._pivots.items():
            acc = row.rhs
            for v, c in row.coeffs.items():
                if v != pivot_var:
                    acc -= c * values[v]
            values[pivot_var] = acc
        n = len(self.basis)
        entries = [values[self._entry_var[k]] for k in range(n * (n + 1) // 2)]
        return SymMatrix(n, entries)

    def float_family(self) -> tuple[np.ndarray, list[np.ndarray]]:
        """A(theta) = A0 + sum(theta_k * B_k) as dense float matrices."""
        if self._float_family is None:
            k = len(self.free_params)
            zero = [Fraction(0)] * k
            a0 = self.instantiate(zero).to_dense_float()
            bs = []
            for idx in range(k):
                unit = list(zero)
                unit[idx] = Fraction(1)
                bs.append(self.instantiate(unit).to_dense_float() - a0)
            self._float_family = (a0, bs)
        return self._float_family

    def kernel_matrix_float(self) -> np.ndarray:
        """Kernel vectors as rows of a float matrix (possibly empty)."""
        if not self.kernel_vectors:
            return np.zeros((0, len(self.basis)))
        return np.array([[float(v) for v in vec] for vec in self.kernel_vectors])

    def debug_dump(self) -> dict:
        """JSON-ready summary of the model structure."""
        return {
            "basis_size": len(self.basis),
            "basis_monomials": [list(m) for m in self.basis.monomials],
            "use_symmetry": self.use_symmetry,
            "orbit_representatives": (
                [list(o.representative) for o in self.orbits] if self.orbits else None
            ),
            "free_parameter_count": len(self.free_params),
            "kernel_vector_count": len(self.kernel_vectors),
        }


def build_model(
    target: SparsePoly,
    use_symmetry: bool = True,
    zeros: Sequence[Sequence[Fraction]] = (),
) -> GramModel:
    """Build the exact affine parametrization for the target polynomial.

    The target must be homogeneous of even degree (and symmetric when
    use_symmetry is set).  Raises InfeasibleModelError when the combined
    conditions admit no solution, which proves the target is not a sum of
    squares vanishing at the given zeros.
    """
    if target.is_zero():
        raise ValueError("target polynomial is zero; nothing to model")
    deg = target.homogeneous_degree()
    if deg is None:
        raise ValueError("target polynomial is not homogeneous")
    if deg % 2 != 0:
        raise ValueError(f"target has odd degree {deg}; it cannot be a sum of squares")
    if use_symmetry and not is_symmetric_poly(target):
        raise ValueError("symmetry reduction requested but target is not symmetric")

    d = deg // 2
    basis = build_basis(target.nvars, d)
    n = len(basis)

    orbits = symmetry_orbits(basis) if use_symmetry else None
    if use_symmetry:
        assert orbits is not None
        num_vars = len(orbits)
        entry_var = [0] * (n * (n + 1) // 2)
        for var_id, orbit in enumerate(orbits):
            for (i, j) in orbit.members:
                entry_var[upper_index(i, j, n)] = var_id
    else:
        num_vars = n * (n + 1) // 2
        entry_var = list(range(num_vars))

    kernel = kernel_vectors_from_zeros(basis, target, zeros) if zeros else []

    rows: list[_Row] = []

    # Coefficient matching: one equation per degree-2d monomial.
    pair_groups: dict[ExponentVector, dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i, n):
            prod = tuple(a + b for a, b in zip(basis.monomials[i], basis.monomials[j]))
            var = entry_var[upper_index(i, j, n)]
            group = pair_groups.setdefault(prod, {})
            mult = Fraction(1 if i == j else 2)
            group[var] = group.get(var, Fraction(0)) + mult
    for mono in sorted(_degree_monomials(target.nvars, deg), key=grlex_key, reverse=True):
        coeffs = pair_groups.get(mono, {})
        rows.append(_Row(dict(coeffs), target.coefficient(mono)))

    # Kernel conditions: A v = 0, one equation per matrix row per vector.
    for vec in kernel:
        for i in range(n):
            coeffs: dict[int, Fraction] = {}
            for j in range(n):
                if vec[j] == 0:
                    continue
                var = entry_var[upper_index(i, j, n)]
                coeffs[var] = coeffs.get(var, Fraction(0)) + vec[j]
            rows.append(_Row(coeffs, Fraction(0)))

    pivots, _ = _eliminate(rows)
    return GramModel(basis, target, use_symmetry, orbits, kernel, pivots, num_vars)
