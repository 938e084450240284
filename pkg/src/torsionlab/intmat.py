"""Exact integer matrix algorithms: Smith normal form, rank, determinant.

Everything here runs on plain Python integers, so there is no overflow;
pivoting always selects a nonzero entry of least absolute value and rows
and columns are reduced modulo the pivot each round, which keeps entry
growth manageable at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["SmithResult", "smith_normal_form", "integer_rank", "bareiss_det", "solve_left"]


@dataclass(frozen=True)
class SmithResult:
    divisors: tuple  # nonzero invariant factors d1 | d2 | ...
    rank: int
    left: tuple | None = None   # U with U * B * V = diag(divisors, 0...)
    right: tuple | None = None  # V

    @property
    def torsion_order(self):
        t = 1
        for d in self.divisors:
            t *= d
        return t


def _as_rows(B):
    rows = [list(map(int, row)) for row in B]
    if rows and len({len(r) for r in rows}) > 1:
        raise ValueError("ragged matrix")
    return rows


def smith_normal_form(B, want_transforms=False):
    """Smith normal form of an integer matrix.

    Returns nonzero invariant factors with the divisibility chain
    d1 | d2 | ..., the rank (number of nonzero factors), and, when
    requested, unimodular transforms U, V with U*B*V diagonal.
    """
    A = _as_rows(B)
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_transforms else None

    def row_addmul(dst, src, q):
        Ad, As = A[dst], A[src]
        for j in range(n):
            if As[j]:
                Ad[j] -= q * As[j]
        if U is not None:
            Ud, Us = U[dst], U[src]
            for j in range(m):
                if Us[j]:
                    Ud[j] -= q * Us[j]

    def col_addmul(dst, src, q):
        for i in range(m):
            Ai = A[i]
            if Ai[src]:
                Ai[dst] -= q * Ai[src]
        if V is not None:
            for i in range(n):
                Vi = V[i]
                if Vi[src]:
                    Vi[dst] -= q * Vi[src]

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        if U is not None:
            U[a], U[b] = U[b], U[a]

    def col_swap(a, b):
        for i in range(m):
            Ai = A[i]
            Ai[a], Ai[b] = Ai[b], Ai[a]
        if V is not None:
            for i in range(n):
                Vi = V[i]
                Vi[a], Vi[b] = Vi[b], Vi[a]

    def row_negate(a):
        A[a] = [-x for x in A[a]]
        if U is not None:
            U[a] = [-x for x in U[a]]

    def find_pivot(k):
        # Least absolute value nonzero entry in the trailing submatrix;
        # bail out as soon as a unit is seen.
        best = None
        bi = bj = -1
        for i in range(k, m):
            Ai = A[i]
            for j in range(k, n):
                v = Ai[j]
                if v:
                    a = -v if v < 0 else v
                    if a == 1:
                        return i, j
                    if best is None or a < best:
                        best, bi, bj = a, i, j
        return (bi, bj) if best is not None else None

    k = 0
    limit = min(m, n)
    while k < limit:
        piv = find_pivot(k)
        if piv is None:
            break
        pi, pj = piv
        if pi != k:
            row_swap(pi, k)
        if pj != k:
            col_swap(pj, k)
        while True:
            p = A[k][k]
            # Reduce the pivot column, then the pivot row, modulo the pivot.
            dirty = False
            for i in range(k + 1, m):
                v = A[i][k]
                if v:
                    q = v // p
                    if q:
                        row_addmul(i, k, q)
                    if A[i][k]:
                        row_swap(i, k)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(k + 1, n):
                v = A[k][j]
                if v:
                    q = v // p
                    if q:
                        col_addmul(j, k, q)
                    if A[k][j]:
                        col_swap(j, k)
                        dirty = True
                        break
            if not dirty:
                break
        if A[k][k] < 0:
            row_negate(k)
        k += 1

    diag = [A[i][i] for i in range(k)]
    # Enforce the divisibility chain by folding each later factor into
    # earlier ones with explicit unimodular moves.
    i = 0
    while i < k:
        changed = False
        for j in range(i + 1, k):
            if diag[j] % diag[i]:
                # Bring column j next to pivot i and re-eliminate the 2x2.
                col_addmul(i, j, -1)  # col_i += col_j
                while True:
                    p = A[i][i]
                    v = A[j][i]
                    if not v:
                        break
                    q = v // p
                    if q:
                        row_addmul(j, i, q)
                    if A[j][i]:
                        row_swap(i, j)
                while True:
                    v = A[i][j]
                    if not v:
                        break
                    p = A[i][i]
                    q = v // p
                    if q:
                        col_addmul(j, i, q)
                    if A[i][j]:
                        col_swap(i, j)
                if A[i][i] < 0:
                    row_negate(i)
                if A[j][j] < 0:
                    row_negate(j)
                diag[i] = A[i][i]
                diag[j] = A[j][j]
                changed = True
        if not changed:
            i += 1

    return SmithResult(
        divisors=tuple(diag),
        rank=len(diag),
        left=tuple(tuple(r) for r in U) if want_transforms else None,
        right=tuple(tuple(r) for r in V) if want_transforms else None,
    )


def integer_rank(B):
    """Exact rank over Q via fraction-free (Bareiss) elimination."""
    A = _as_rows(B)
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, m):
            Ai = A[i]
            v = Ai[col]
            Ar = A[rank]
            for j in range(col, n):
                Ai[j] = (p * Ai[j] - v * Ar[j]) // prev
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def bareiss_det(B):
    """Exact determinant of a square integer matrix (fraction-free)."""
    A = _as_rows(B)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            Ai = A[i]
            v = Ai[k]
            Ak = A[k]
            for j in range(k + 1, n):
                Ai[j] = (p * Ai[j] - v * Ak[j]) // prev
            Ai[k] = 0
        prev = p
    return sign * A[n - 1][n - 1]


def solve_left(B, v):
    """Integer solution x of x * B = v, or None when none exists.

    B must have full row rank (rows are a lattice basis).
    """
    m = len(B)
    snf = smith_normal_form(B, want_transforms=True)
    if snf.rank != m:
        raise ValueError("basis matrix is rank deficient")
    # x B = v  <=>  (x U^-1) (U B V) = v V  <=>  y D = w with y = x U^-1.
    U, V = snf.left, snf.right
    w = [sum(int(v[i]) * V[i][j] for i in range(len(v))) for j in range(len(V[0]))]
    d = snf.divisors
    y = []
    for j, dj in enumerate(d):
        if w[j] % dj:
            return None
        y.append(w[j] // dj)
    if any(w[j] for j in range(len(d), len(w))):
        return None
    # x = y U
    return [sum(y[i] * U[i][j] for i in range(m)) for j in range(m)]
