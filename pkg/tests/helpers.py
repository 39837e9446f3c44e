"""Shared oracles for the test suite, independent of the library internals."""

import random
from fractions import Fraction

from symsos.polyring import SparsePoly
from symsos.symfunc import (
    BasisKind,
    Dominance,
    Partition,
    dominance_compare,
    eval_at_ones,
    normalized,
    partitions_of,
)

ALL_BASES = list(BasisKind)


def dominance_oracle(mu, lam):
    """Independent prefix-sum comparison."""
    if sum(mu) != sum(lam):
        raise ValueError("weights differ")
    n = max(len(mu), len(lam))
    a = [sum(mu[: i + 1]) for i in range(len(mu))] + [sum(mu)] * (n - len(mu))
    b = [sum(lam[: i + 1]) for i in range(len(lam))] + [sum(lam)] * (n - len(lam))
    ge = all(x >= y for x, y in zip(a, b))
    le = all(x <= y for x, y in zip(a, b))
    if ge and le:
        return "equal"
    if ge:
        return "dominates"
    if le:
        return "dominated_by"
    return "incomparable"


def count_partitions_oracle(d, max_part=None):
    """Independent recursive partition counter."""
    if d == 0:
        return 1
    if max_part is None:
        max_part = d
    return sum(count_partitions_oracle(d - p, p) for p in range(min(max_part, d), 0, -1))


def ssyt_polynomial(lam: Partition, nvars: int) -> SparsePoly:
    """Schur polynomial via direct semistandard-tableau enumeration."""
    shape = lam.parts
    cells = [(r, c) for r in range(len(shape)) for c in range(shape[r])]
    terms = {}

    def rec(idx, assignment):
        if idx == len(cells):
            exps = [0] * nvars
            for v in assignment.values():
                exps[v - 1] += 1
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + 1
            return
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, assignment[(r, c - 1)])
        if r > 0:
            lo = max(lo, assignment[(r - 1, c)] + 1)
        for value in range(lo, nvars + 1):
            assignment[(r, c)] = value
            rec(idx + 1, assignment)
            del assignment[(r, c)]

    rec(0, {})
    return SparsePoly(nvars, terms)


def comparable_pairs(weight: int):
    """Ordered pairs (mu, lam) with mu strictly dominating lam."""
    parts = partitions_of(weight)
    return [
        (mu, lam)
        for mu in parts
        for lam in parts
        if mu != lam and dominance_compare(mu, lam) is Dominance.DOMINATES
    ]


def muirhead_sampling_violations(max_weight=6, nvars=3, npoints=200, seed=0, tol=1e-9):
    """Check the Muirhead-type inequality directions on random nonneg points.

    For mu dominating lam the normalized m, p, s, h differences must
    satisfy G_lam <= G_mu, while the elementary direction is reversed.
    Pairs whose all-ones value vanishes (undefined normalization) are
    skipped.  Returns the list of violations (empty means pass).
    """
    rng = random.Random(seed)
    points = [[rng.uniform(0.0, 10.0) for _ in range(nvars)] for _ in range(npoints)]
    violations = []
    for weight in range(1, max_weight + 1):
        for mu, lam in comparable_pairs(weight):
            for basis in ALL_BASES:
                if eval_at_ones(basis, mu, nvars) == 0 or eval_at_ones(basis, lam, nvars) == 0:
                    continue
                g_mu = normalized(basis, mu, nvars)
                g_lam = normalized(basis, lam, nvars)
                for pt in points:
                    a = g_mu.eval_float(pt)
                    b = g_lam.eval_float(pt)
                    scale = max(1.0, abs(a), abs(b))
                    if basis is BasisKind.ELEMENTARY:
                        gap = b - a  # E_mu <= E_lam
                    else:
                        gap = a - b  # G_lam <= G_mu
                    if gap < -tol * scale:
                        violations.append((basis.value, str(mu), str(lam), pt, gap))
    return violations


def exact_rank(rows) -> int:
    """Rank of a rational matrix by plain Gaussian elimination."""
    m = [list(map(Fraction, row)) for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    col = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        m[rank] = [v / lead for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def charpoly_psd_oracle(matrix) -> bool:
    """PSD test via the characteristic polynomial (Descartes sign rule).

    For a real symmetric matrix all eigenvalues are real, and the matrix is
    PSD iff det(tI + A) = t^n + s_1 t^(n-1) + ... + s_n has all s_k >= 0
    (the s_k are the sums of principal k-minors).  The s_k are computed
    exactly with the Faddeev-LeVerrier recurrence.
    """
    n = matrix.n
    a = [[Fraction(matrix.entry(i, j)) for j in range(n)] for i in range(n)]

    def matmul(x, y):
        return [
            [sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    # char poly of A: t^n + c1 t^(n-1) + ... + cn via Faddeev-LeVerrier
    m = [row[:] for row in ident]
    coeffs = []
    prod = None
    for k in range(1, n + 1):
        prod = matmul(a, m)
        trace = sum(prod[i][i] for i in range(n))
        ck = -trace / k
        coeffs.append(ck)
        m = [[prod[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    # det(tI - A) = t^n + c1 t^(n-1) + ...; det(tI + A) flips odd-degree signs:
    # s_k = (-1)^k c_k.
    s = [(-1) ** (k + 1) * coeffs[k] for k in range(n)]
    return all(v >= 0 for v in s)


def random_rational_symmatrix(rng, n, lo=-6, hi=6, den=4):
    from symsos.symmat import SymMatrix

    entries = []
    for i in range(n):
        for j in range(i, n):
            entries.append(Fraction(rng.randint(lo, hi), rng.randint(1, den)))
    return SymMatrix(n, entries)
