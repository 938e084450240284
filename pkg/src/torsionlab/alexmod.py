"""Finitely presented modules over the Laurent ring.

A presentation with g generators and r relations is the cokernel of a
g x r matrix A over the Laurent ring.  The l-th order polynomial is the
gcd of the (g - l)-minors of A; the first nonzero one sits at the rank
of the module over the rational function field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .laurent import (
    DimensionMismatchError,
    LaurentMat,
    LaurentPoly,
    canonical_unit_normal_form,
    div_exact,
    gcd,
    parse_poly,
    poly_to_string,
)

__all__ = [
    "Presentation",
    "ChainComplex",
    "alexander_polynomial",
    "first_nonzero_alexander",
    "presentation_rank",
    "surface_gluing_presentation",
    "validate_chain_complex",
    "laurent_matrix_rank",
]

_RANK_PRIME = 2305843009213693951  # 2^61 - 1


@dataclass(frozen=True)
class Presentation:
    """Module Z[G]^gens / A * Z[G]^rels with A of shape gens x rels."""

    gens: int
    rels: int
    matrix: LaurentMat

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.gens, self.rels):
            raise ValueError("presentation matrix shape disagrees with (gens, rels)")

    @property
    def num_vars(self):
        return self.matrix.num_vars

    def to_json(self):
        return {
            "gens": self.gens,
            "rels": self.rels,
            "matrix": [[poly_to_string(x) for x in row] for row in self.matrix.entries],
        }

    @classmethod
    def from_json(cls, obj, num_vars=None):
        rows = [
            [parse_poly(s, num_vars) for s in row] for row in obj["matrix"]
        ]
        if num_vars is None:
            num_vars = max(p.num_vars for row in rows for p in row)
            rows = [
                [
                    LaurentPoly(num_vars, {e + (0,) * (num_vars - p.num_vars): c for e, c in p.items()})
                    for p in row
                ]
                for row in rows
            ]
        mat = LaurentMat(rows, num_vars, cols=obj["rels"])
        return cls(gens=obj["gens"], rels=obj["rels"], matrix=mat)


class ChainComplex:
    """Finite complex of free modules given by differentials d_1, ..., d_k.

    d_i maps C_i to C_(i-1); consecutive differentials compose to zero.
    """

    __slots__ = ("differentials", "module_ranks", "num_vars")

    def __init__(self, differentials, check=True):
        diffs = list(differentials)
        if not diffs:
            raise ValueError("a complex needs at least one differential")
        num_vars = diffs[0].num_vars
        ranks = [diffs[0].rows]
        for i, d in enumerate(diffs):
            if d.num_vars != num_vars:
                raise DimensionMismatchError("differentials disagree on num_vars")
            if i and d.rows != ranks[-1]:
                raise DimensionMismatchError("chain module ranks do not line up")
            ranks.append(d.cols)
        self.differentials = tuple(diffs)
        self.module_ranks = tuple(ranks)
        self.num_vars = num_vars
        if check and not validate_chain_complex(self):
            raise ValueError("differentials do not compose to zero")

    @property
    def length(self):
        return len(self.differentials)

    def differential(self, i):
        """d_i for 1 <= i <= length; None outside that range (zero map)."""
        if 1 <= i <= len(self.differentials):
            return self.differentials[i - 1]
        return None

    def rank_of_module(self, i):
        if 0 <= i <= self.length:
            return self.module_ranks[i]
        return 0

    @classmethod
    def from_presentation(cls, pres):
        """Two-term complex 0 -> Z[G]^rels -> Z[G]^gens -> 0 with H_0 the module."""
        return cls([pres.matrix], check=False)


def validate_chain_complex(C):
    """True iff every composite d_i d_(i+1) is exactly zero."""
    for a, b in zip(C.differentials, C.differentials[1:]):
        if a.cols != b.rows:
            raise DimensionMismatchError("chain module ranks do not line up")
        if b.cols == 0 or a.cols == 0:
            continue
        if not (a * b).is_zero():
            return False
    return True


def _minor_gcd(matrix, size):
    """Gcd of all size x size minors, with an early exit at a unit gcd."""
    if size <= 0:
        return LaurentPoly.one(matrix.num_vars)
    if size > matrix.rows or size > matrix.cols:
        return LaurentPoly.zero(matrix.num_vars)
    running = LaurentPoly.zero(matrix.num_vars)
    cache = {}
    for rows in combinations(range(matrix.rows), size):
        for cols in combinations(range(matrix.cols), size):
            minor = _det_subset(matrix.entries, rows, cols, cache)
            if minor.is_zero():
                continue
            running = gcd(running, minor)
            if running.is_one():
                return running
    return canonical_unit_normal_form(running)


def _det_subset(entries, rows, cols, cache):
    n = len(rows)
    if n == 1:
        return entries[rows[0]][cols[0]]
    key = (rows, cols)
    got = cache.get(key)
    if got is not None:
        return got
    num_vars = entries[0][0].num_vars
    acc = LaurentPoly.zero(num_vars)
    r0, rest = rows[0], rows[1:]
    for idx, c in enumerate(cols):
        a = entries[r0][c]
        if a.is_zero():
            continue
        sub = _det_subset(entries, rest, cols[:idx] + cols[idx + 1 :], cache)
        if sub.is_zero():
            continue
        term = a * sub
        acc = acc + (term if idx % 2 == 0 else -term)
    cache[key] = acc
    return acc


def alexander_polynomial(P, l):
    """Gcd of the (gens - l)-minors of the presentation matrix.

    Returns 1 when gens - l <= 0 (the whole ring) and 0 when no minor of
    the requested size exists or all of them vanish.  Output is in
    canonical unit form.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    size = P.gens - l
    return _minor_gcd(P.matrix, size)


def first_nonzero_alexander(P):
    """Least index j with a nonzero order polynomial, and that polynomial."""
    for j in range(P.gens + 1):
        d = alexander_polynomial(P, j)
        if not d.is_zero():
            return j, d
    raise AssertionError("unreachable: the gens-th polynomial is 1")


def _eval_mod(poly, point, p):
    acc = 0
    for e, c in poly.items():
        term = c % p
        for a, k in zip(point, e):
            if k:
                term = term * pow(a, k, p) % p
        acc = (acc + term) % p
    return acc


def _rank_mod(rows, p):
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for i in range(rank + 1, m):
            f = rows[i][col] * inv % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def _rank_fraction_free(mat):
    """Deterministic rank over the rational function field (Bareiss)."""
    A = [list(row) for row in mat.entries]
    m, n = mat.rows, mat.cols
    num_vars = mat.num_vars
    rank = 0
    prev = LaurentPoly.one(num_vars)
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if not A[i][col].is_zero():
                if piv is None or len(A[i][col]._terms) < len(A[piv][col]._terms):
                    piv = i
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, m):
            v = A[i][col]
            for j in range(col, n):
                num = p * A[i][j] - v * A[rank][j]
                A[i][j] = div_exact(num, prev) if not num.is_zero() else num
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def laurent_matrix_rank(mat, seed=0):
    """Exact rank of a Laurent matrix over the rational function field.

    Two independent random evaluations modulo a 61-bit prime are compared;
    any disagreement falls back to a deterministic fraction-free
    elimination over the polynomial ring itself.
    """
    if mat.cols == 0:
        return 0
    if all(x.is_zero() for row in mat.entries for x in row):
        return 0
    rng = random.Random(seed ^ 0x5EED)
    p = _RANK_PRIME
    trials = []
    for _ in range(2):
        point = [rng.randrange(2, p - 2) for _ in range(mat.num_vars)]
        rows = [[_eval_mod(x, point, p) for x in row] for row in mat.entries]
        trials.append(_rank_mod(rows, p))
    if trials[0] == trials[1]:
        return trials[0]
    return _rank_fraction_free(mat)


def presentation_rank(P, seed=0):
    """Rank of the module over the rational function field."""
    return P.gens - laurent_matrix_rank(P.matrix, seed=seed)


def surface_gluing_presentation(i_star, alpha_star):
    """One-variable presentation with matrix (I - t*alpha) * i.

    ``i_star`` is the integer matrix of the surface inclusion on first
    homology and ``alpha_star`` the square integer matrix of the gluing
    map; the result presents the first homology of the associated
    infinite cyclic cover.
    """
    i_rows = [list(map(int, r)) for r in i_star]
    a_rows = [list(map(int, r)) for r in alpha_star]
    n = len(a_rows)
    if any(len(r) != n for r in a_rows):
        raise DimensionMismatchError("gluing matrix must be square")
    if len(i_rows) != n:
        raise DimensionMismatchError(
            "inclusion matrix rows must match the gluing matrix size"
        )
    k = len(i_rows[0]) if i_rows else 0
    t = LaurentPoly.var(0, 1)
    one = LaurentPoly.one(1)
    front = LaurentMat(
        [
            [
                (one if i == j else LaurentPoly.zero(1)) - t * a_rows[i][j]
                for j in range(n)
            ]
            for i in range(n)
        ],
        1,
    )
    inc = LaurentMat(
        [[LaurentPoly.constant(i_rows[i][j], 1) for j in range(k)] for i in range(n)],
        1,
        cols=k,
    )
    mat = front * inc
    return Presentation(gens=n, rels=k, matrix=mat)
