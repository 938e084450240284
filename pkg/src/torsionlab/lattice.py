"""Finite-index subgroups of Z^m, their quotients and dual character sets.

A sublattice is represented by a full-rank square generator matrix whose
rows span the subgroup.  The Smith decomposition of that matrix is
computed once and cached: it yields the index, the elementary divisors of
the quotient, a coordinate map onto the quotient group and the dual set
of torus torsion points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import sympy

from .intmat import bareiss_det, smith_normal_form
from .laurent import CharacterPoint

__all__ = [
    "Sublattice",
    "GpmSpec",
    "InfiniteIndexError",
    "UnsupportedRankError",
    "subgroup_from_generators",
    "cyclic_subgroup",
    "dual_characters",
    "alpha_min_norm",
    "next_primes",
    "construct_gpm",
]


class InfiniteIndexError(ValueError):
    """The generator matrix is singular, so the subgroup has infinite index."""


class UnsupportedRankError(ValueError):
    """Operation only implemented for small ambient rank."""


class Sublattice:
    """Finite-index subgroup of Z^m spanned by the rows of ``generators``."""

    __slots__ = ("ambient_rank", "generators", "index", "divisors", "_V", "_quot_coords")

    def __init__(self, generators):
        rows = [tuple(int(x) for x in row) for row in generators]
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("generators must form a square matrix")
        det = bareiss_det(rows)
        if det == 0:
            raise InfiniteIndexError("generator matrix is singular")
        snf = smith_normal_form(rows, want_transforms=True)
        self.ambient_rank = m
        self.generators = tuple(rows)
        self.index = abs(det)
        self.divisors = snf.divisors
        self._V = snf.right
        # Quotient coordinate of the j-th ambient basis vector: row j of V
        # reduced modulo the elementary divisors.
        self._quot_coords = tuple(
            tuple(self._V[j][i] % self.divisors[i] for i in range(m)) for j in range(m)
        )

    def quotient_coordinates(self, v):
        """Class of the ambient vector v in the quotient, as divisor-wise residues."""
        m = self.ambient_rank
        return tuple(
            sum(int(v[j]) * self._V[j][i] for j in range(m)) % self.divisors[i]
            for i in range(m)
        )

    def contains(self, v):
        return all(c == 0 for c in self.quotient_coordinates(v))

    def quotient_elements(self):
        """All quotient classes in deterministic lexicographic order."""
        return list(product(*(range(d) for d in self.divisors)))

    def is_cyclic_quotient(self):
        return sum(1 for d in self.divisors if d > 1) <= 1

    def cyclic_weights(self):
        """Weight vector w with t_j acting as rotation by w_j on Z/index.

        Only defined when the quotient is cyclic; returns None otherwise.
        """
        if not self.is_cyclic_quotient():
            return None
        if self.index == 1:
            return tuple(0 for _ in range(self.ambient_rank))
        pos = max(range(len(self.divisors)), key=lambda i: self.divisors[i])
        return tuple(coords[pos] for coords in self._quot_coords)

    def to_json(self):
        return {"rank": self.ambient_rank, "rows": [list(r) for r in self.generators]}

    @classmethod
    def from_json(cls, obj):
        if obj.get("rank") != len(obj["rows"]):
            raise ValueError("rank field disagrees with the generator rows")
        return cls(obj["rows"])

    def __repr__(self):
        return f"Sublattice(rank={self.ambient_rank}, index={self.index})"

    def __eq__(self, other):
        return isinstance(other, Sublattice) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)


def subgroup_from_generators(rows):
    """Sublattice from a square integer generator matrix."""
    return Sublattice(rows)


def cyclic_subgroup(N):
    """The subgroup N*Z of Z (covers of degree N in one variable)."""
    return Sublattice([[N]])


def dual_characters(H):
    """All characters of Z^m/H as exact torus torsion points.

    Exactly index-many distinct points, enumerated lexicographically in
    quotient coordinates; each is integral on every generator row.
    """
    m = H.ambient_rank
    d = H.divisors
    coords = H._quot_coords
    out = []
    for c in product(*(range(di) for di in d)):
        angles = []
        for j in range(m):
            a = Fraction(0)
            for i in range(m):
                if c[i]:
                    a += Fraction(coords[j][i] * c[i], d[i])
            angles.append(a % 1)
        out.append(CharacterPoint(angles))
    return out


def _size_reduce(rows):
    """A few sweeps of pairwise integer size reduction (Euclidean norm)."""
    rows = [list(r) for r in rows]
    changed = True
    sweeps = 0
    while changed and sweeps < 32:
        changed = False
        sweeps += 1
        rows.sort(key=lambda r: sum(x * x for x in r))
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j:
                    continue
                denom = sum(x * x for x in rows[j])
                if denom == 0:
                    continue
                num = sum(a * b for a, b in zip(rows[i], rows[j]))
                q = (2 * num + denom) // (2 * denom)
                if q:
                    new = [a - q * b for a, b in zip(rows[i], rows[j])]
                    if sum(x * x for x in new) < sum(x * x for x in rows[i]):
                        rows[i] = new
                        changed = True
    return rows


def alpha_min_norm(H):
    """Exact minimum sup-norm of a nonzero vector of H.

    Size-reduced generators give an upper bound R; the minimum over the
    full box of radius R is then found by exhaustive membership testing.
    Restricted to ambient rank <= 4.
    """
    m = H.ambient_rank
    if m > 4:
        raise UnsupportedRankError("alpha_min_norm supports ambient rank <= 4")
    reduced = _size_reduce(H.generators)
    best = min(max(abs(x) for x in row) for row in reduced if any(row))
    if best == 1:
        return 1
    r = best
    for v in product(range(-r, r + 1), repeat=m):
        if not any(v):
            continue
        s = max(abs(x) for x in v)
        if s >= best:
            continue
        if H.contains(v):
            best = s
            if best == 1:
                break
    return best


def next_primes(p, m):
    """The m consecutive primes p = p_1 < ... < p_m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    primes = [p]
    while len(primes) < m:
        primes.append(int(sympy.nextprime(primes[-1])))
    return primes


@dataclass(frozen=True)
class GpmSpec:
    """Data of the engineered subgroup built from m consecutive primes."""

    m: int
    p: int
    M: int
    primes: tuple
    weights: tuple  # r_i = product of the other primes
    unit_vector: tuple  # v with <weights, v> = 1

    @property
    def weight_bound(self):
        """m * p_1 * ... * p_m; the index threshold guaranteeing alpha >= p."""
        prod = 1
        for q in self.primes:
            prod *= q
        return self.m * prod

    def to_json(self):
        return {
            "m": self.m,
            "p": self.p,
            "M": self.M,
            "primes": list(self.primes),
            "weights": list(self.weights),
        }


def _bezout_vector(r):
    """Integer v with <r, v> = gcd(r) (= 1 for coprime weights)."""
    v = [0] * len(r)
    g = r[0]
    v[0] = 1
    for i in range(1, len(r)):
        if g == 0:
            g, v = r[i], [0] * len(r)
            v[i] = 1
            continue
        a, b, gg = sympy.gcdex(g, r[i])
        a, b, gg = int(a), int(b), int(gg)
        v = [a * x for x in v]
        v[i] += b
        g = gg
    if g < 0:
        v = [-x for x in v]
        g = -g
    return g, v


def construct_gpm(m, p, M):
    """The subgroup {v in Z^m : sum_i v_i r_i = 0 mod M} of index M.

    Generator rows are a basis of the orthogonal of the weight vector
    extended by M times a vector of weight-pairing one.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    primes = next_primes(p, m)
    weights = []
    for i in range(m):
        r = 1
        for j, q in enumerate(primes):
            if j != i:
                r *= q
        weights.append(r)
    g, v = _bezout_vector(weights)
    if g != 1:
        raise ArithmeticError("weight vector should be coprime")
    if m == 1:
        rows = [[M]]
    else:
        # Kernel basis of the weight functional from the Smith transform of
        # the 1 x m weight matrix: columns of V beyond the first pair to 0.
        snf = smith_normal_form([weights], want_transforms=True)
        V = snf.right
        rows = [[V[j][k] for j in range(m)] for k in range(1, m)]
        rows.append([M * x for x in v])
    lattice = Sublattice(rows)
    spec = GpmSpec(
        m=m, p=p, M=M, primes=tuple(primes), weights=tuple(weights), unit_vector=tuple(v)
    )
    if lattice.index != M:
        raise ArithmeticError("constructed lattice has wrong index")
    return lattice, spec
