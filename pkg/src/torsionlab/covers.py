"""Finite abelian quotients of Laurent-matrix complexes.

Specializing a matrix over the group ring along a finite-index subgroup
produces an integer matrix built from the regular representation of the
quotient group.  Smith normal form of the specialized differentials
yields exact Betti numbers and torsion; torsion over cyclic quotients of
square complexes is also available through an exact resultant identity
when the specialized matrix would be too large to diagonalize.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .alexmod import ChainComplex, laurent_matrix_rank
from .intmat import SmithResult, smith_normal_form
from .laurent import (
    LaurentMat,
    count_torsion_zeros,
    cyclic_resultant,
    evaluate_at_character,
    is_zero_at_character,
    specialize_along_vector,
)
from .lattice import Sublattice, alpha_min_norm, construct_gpm, dual_characters

__all__ = [
    "QuotientMatrix",
    "CoverHomologyReport",
    "CoverComputationError",
    "CyclicSchedule",
    "GpmSchedule",
    "specialize_to_quotient",
    "smith_normal_form",
    "SmithResult",
    "cover_homology",
    "torsion_growth_sequence",
    "det_prime_via_characters",
    "betti_deviation_report",
    "SNF_CELL_LIMIT",
]

# Above this many matrix cells the diagonalization path is not attempted
# and the resultant identity over cyclic quotients takes over.
SNF_CELL_LIMIT = 300_000

_MOD_PRIMES = (94906247, 94906249)  # primes < 2^26.5 so float64 products stay exact


class CoverComputationError(RuntimeError):
    """The requested cover invariant is out of reach of the exact paths."""


@dataclass(frozen=True)
class QuotientMatrix:
    """Integer block matrix of a Laurent matrix over a finite quotient."""

    source: LaurentMat
    lattice: Sublattice
    blocks: tuple

    @property
    def rows(self):
        return len(self.blocks)

    @property
    def cols(self):
        return len(self.blocks[0]) if self.blocks else 0


def specialize_to_quotient(A, H):
    """Blocks of the regular representation of the quotient applied to A.

    Each Laurent term c * t^e acts on the free module over the quotient
    group as c times the permutation translating by the class of e; the
    result is an integer matrix of shape (rows*index) x (cols*index).
    """
    if A.num_vars != H.ambient_rank:
        raise ValueError("matrix variables do not match the ambient rank")
    n = H.index
    elems = H.quotient_elements()
    pos = {q: k for k, q in enumerate(elems)}
    d = H.divisors
    m = H.ambient_rank
    out = [[0] * (A.cols * n) for _ in range(A.rows * n)]
    for i in range(A.rows):
        for j in range(A.cols):
            entry = A.entries[i][j]
            if entry.is_zero():
                continue
            base_r, base_c = i * n, j * n
            for e, c in entry.items():
                g = H.quotient_coordinates(e)
                for k, q in enumerate(elems):
                    target = tuple((q[t] + g[t]) % d[t] for t in range(m))
                    out[base_r + pos[target]][base_c + k] += c
    return QuotientMatrix(
        source=A, lattice=H, blocks=tuple(tuple(r) for r in out)
    )


@dataclass(frozen=True)
class CoverHomologyReport:
    """Betti number and exact torsion data of one homology degree."""

    degree: int
    index: int
    betti: int
    torsion_order: int
    log_torsion_normalized: float
    divisors: tuple | None = None  # elementary divisors > 1 when computed
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "degree": self.degree,
            "index": self.index,
            "betti": self.betti,
            "torsion_order": str(self.torsion_order),
            "log_torsion_normalized": self.log_torsion_normalized,
        }
        out["divisors"] = [str(d) for d in self.divisors] if self.divisors is not None else None
        if self.detail:
            out["detail"] = {k: v for k, v in self.detail.items()}
        return out


def _compress_source(A):
    """Drop identically zero rows and columns of a Laurent matrix.

    Zero columns do not change the image and zero rows only contribute
    free summands, so rank and torsion of the specialized cokernel are
    unaffected.  Returns None when the matrix is entirely zero.
    """
    if A is None:
        return None
    live_rows = [i for i in range(A.rows) if not all(x.is_zero() for x in A.entries[i])]
    if not live_rows:
        return None
    live_cols = [
        j for j in range(A.cols) if not all(A.entries[i][j].is_zero() for i in live_rows)
    ]
    if len(live_rows) == A.rows and len(live_cols) == A.cols:
        return A
    return LaurentMat(
        [[A.entries[i][j] for j in live_cols] for i in live_rows],
        A.num_vars,
        cols=len(live_cols),
    )


def _drop_zero_rows_cols(blocks):
    rows = [r for r in blocks if any(r)]
    if not rows:
        return []
    keep_cols = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
    return [[r[j] for j in keep_cols] for r in rows]


def _rank_mod_numpy(blocks, p):
    A = np.array([[int(x) % p for x in row] for row in blocks], dtype=np.float64)
    m, n = A.shape
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if A[i, col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank, col:] = (A[rank, col:] * inv) % p
        below = A[rank + 1 :, col].copy()
        if below.any():
            A[rank + 1 :, col:] = (A[rank + 1 :, col:] - np.outer(below, A[rank, col:])) % p
        rank += 1
        if rank == m:
            break
    return rank


def _specialized_rank_exact(blocks):
    """Rank of an integer matrix: two modular eliminations, SNF fallback."""
    if not blocks or not blocks[0]:
        return 0
    got = {_rank_mod_numpy(blocks, p) for p in _MOD_PRIMES}
    if len(got) == 1:
        return got.pop()
    return smith_normal_form(blocks).rank


def _count_character_zeros_cyclic(entry, H):
    """Exact number of dual characters at which a single entry vanishes."""
    w = H.cyclic_weights()
    q = specialize_along_vector(entry, w)
    return count_torsion_zeros(q, H.index)


def _rank_of_specialized(A, H, blocks=None):
    """Exact rank of the specialization of A along H.

    Small matrices go through modular elimination on the explicit
    blocks; a single-entry matrix over a cyclic quotient is counted
    exactly through vanishing orders of its one-variable reduction.
    """
    if A is None or A.cols == 0:
        return 0
    A = _compress_source(A)
    if A is None:
        return 0
    n = H.index
    cells = (A.rows * n) * (A.cols * n)
    if blocks is not None or cells <= SNF_CELL_LIMIT:
        if blocks is None:
            blocks = specialize_to_quotient(A, H).blocks
        return _specialized_rank_exact([list(r) for r in blocks])
    if A.rows == 1 and A.cols == 1 and H.is_cyclic_quotient():
        return n - _count_character_zeros_cyclic(A.entries[0][0], H)
    raise CoverComputationError(
        f"rank of a {A.rows * n} x {A.cols * n} specialization is beyond the exact paths"
    )


def _torsion_via_cyclic_det(A, H):
    """|det| of the specialization of a square A over a cyclic quotient.

    The block matrix is conjugate to the direct sum of A(zeta) over the
    dual characters, so its determinant is the resultant of the
    one-variable reduction of det A with X^index - 1.
    """
    det = A.det()
    if det.is_zero():
        return None
    w = H.cyclic_weights()
    q = specialize_along_vector(det, w)
    if q.is_zero():
        return None
    r = cyclic_resultant(q, H.index)
    return abs(r) if r else None


def cover_homology(C, H, i, *, snf_limit=SNF_CELL_LIMIT, want_divisors=True):
    """Betti number and exact torsion of degree ``i`` homology of the cover.

    Torsion divisors are the elementary divisors > 1 of the specialized
    (i+1)-st differential: its image lies in the kernel of the i-th one,
    which is a pure submodule of the ambient free module (the quotient
    by the kernel embeds in a free module, hence is torsion free), so
    the ambient divisors are the divisors of the homology torsion.
    Above the diagonalization size limit over a cyclic quotient the
    torsion order comes from the exact resultant identity and the
    divisor list is omitted.
    """
    if not 0 <= i <= C.length:
        raise ValueError(f"degree {i} out of range for a length-{C.length} complex")
    n = H.index
    d_next = C.differential(i + 1)
    d_here = C.differential(i)

    divisors = None
    detail = {}
    d_eff = _compress_source(d_next) if d_next is not None and d_next.cols else None
    if d_eff is None:
        torsion = 1
        divisors = ()
        rank_next = 0
    else:
        d_next = d_eff
        cells = (d_next.rows * n) * (d_next.cols * n)
        if cells <= snf_limit:
            qm = specialize_to_quotient(d_next, H)
            eff = _drop_zero_rows_cols(qm.blocks)
            if eff:
                snf = smith_normal_form(eff)
                rank_next = snf.rank
                divisors = tuple(d for d in snf.divisors if d > 1)
                torsion = 1
                for d in divisors:
                    torsion *= d
            else:
                rank_next = 0
                divisors = ()
                torsion = 1
            detail["torsion_path"] = "snf"
        else:
            if not (d_next.rows == d_next.cols and H.is_cyclic_quotient()):
                raise CoverComputationError(
                    "specialized differential too large; exact torsion needs a "
                    "square matrix over a cyclic quotient"
                )
            torsion = _torsion_via_cyclic_det(d_next, H)
            if torsion is None:
                raise CoverComputationError(
                    "specialized differential is singular; shrink the index "
                    "below the diagonalization limit"
                )
            rank_next = d_next.cols * n
            detail["torsion_path"] = "cyclic_resultant"
    if not want_divisors:
        divisors = None

    rank_here = _rank_of_specialized(d_here, H)
    betti = C.rank_of_module(i) * n - rank_here - rank_next
    log_norm = float(_log_big(torsion)) / n
    return CoverHomologyReport(
        degree=i,
        index=n,
        betti=betti,
        torsion_order=torsion,
        log_torsion_normalized=log_norm,
        divisors=divisors,
        detail=detail,
    )


def _log_big(n):
    """log of a positive integer of arbitrary size without overflow."""
    if n <= 0:
        raise ValueError("log of a nonpositive integer")
    if n.bit_length() <= 512:
        return math.log(n)
    k = n.bit_length() - 512
    return math.log(n >> k) + k * math.log(2)


@dataclass(frozen=True)
class CyclicSchedule:
    """Covers of degree N for each N in the list (one-variable complexes)."""

    Ns: tuple

    def __post_init__(self):
        object.__setattr__(self, "Ns", tuple(int(N) for N in self.Ns))

    def lattices(self, num_vars):
        if num_vars != 1:
            raise ValueError("cyclic schedules need a one-variable complex")
        for N in self.Ns:
            yield {"schedule_param": N}, Sublattice([[N]])


@dataclass(frozen=True)
class GpmSchedule:
    """Pairs (p, M) of the consecutive-prime subgroup construction."""

    pairs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((int(p), int(M)) for p, M in self.pairs)
        )

    def lattices(self, num_vars):
        for p, M in self.pairs:
            lattice, spec = construct_gpm(num_vars, p, M)
            descriptor = {"schedule_param": f"p{p}M{M}", "p": p, "M": M}
            if M <= spec.weight_bound:
                warnings.warn(
                    f"M={M} does not exceed {spec.weight_bound}; the shortest "
                    "vector guarantee does not apply",
                    stacklevel=3,
                )
                descriptor["alpha_guarantee"] = False
            yield descriptor, lattice


def torsion_growth_sequence(C, i, schedule, *, snf_limit=SNF_CELL_LIMIT):
    """Per-cover homology reports along a cyclic or engineered schedule.

    Returns a list of (descriptor, report) pairs ordered as scheduled;
    the normalized log torsion column is the experimental growth rate.
    """
    out = []
    for descriptor, lattice in schedule.lattices(C.num_vars):
        descriptor = dict(descriptor)
        descriptor["index"] = lattice.index
        descriptor["alpha"] = alpha_min_norm(lattice)
        report = cover_homology(C, lattice, i, snf_limit=snf_limit)
        out.append((descriptor, report))
    return out


def det_prime_via_characters(A, H):
    """log of the product over dual characters of det'(A(zeta)).

    det' is the product of nonzero singular values; values below
    max(dim) * eps * sigma_max count as zero, and the exact vanishing
    test overrides the cutoff for 1 x 1 matrices.
    """
    if A.is_zero():
        raise ValueError("det' of the zero matrix")
    total = []
    eps = np.finfo(float).eps
    one_by_one = A.rows == 1 and A.cols == 1
    for z in dual_characters(H):
        if one_by_one:
            if is_zero_at_character(A.entries[0][0], z):
                continue
            v = abs(evaluate_at_character(A.entries[0][0], z))
            total.append(math.log(v))
            continue
        mat = np.array(A.evaluate(z), dtype=complex)
        sig = np.linalg.svd(mat, compute_uv=False)
        if not sig.size or sig[0] == 0.0:
            continue
        cutoff = max(A.rows, A.cols) * eps * sig[0]
        nz = sig[sig > cutoff]
        total.extend(np.log(nz).tolist())
    return math.fsum(total)


def betti_deviation_report(C, H, *, bound_constant=8.0, seed=0):
    """Per-degree gap between cover Betti numbers and their scaled limits.

    For each degree the report carries the exact cover Betti number, the
    limit rank times the index, their difference, the bound candidate
    index/alpha, and whether the difference stays below
    bound_constant * index / alpha.
    """
    n = H.index
    alpha = alpha_min_norm(H)
    ranks_qg = [
        laurent_matrix_rank(d, seed=seed) if d.cols else 0 for d in C.differentials
    ]
    spec_ranks = []
    for d in C.differentials:
        spec_ranks.append(_rank_of_specialized(d if d.cols else None, H))
    rows = []
    for i in range(C.length + 1):
        r_here = spec_ranks[i - 1] if i >= 1 else 0
        r_next = spec_ranks[i] if i < C.length else 0
        betti = C.rank_of_module(i) * n - r_here - r_next
        rk_here = ranks_qg[i - 1] if i >= 1 else 0
        rk_next = ranks_qg[i] if i < C.length else 0
        b2 = C.rank_of_module(i) - rk_here - rk_next
        deviation = abs(betti - n * b2)
        bound = n / alpha
        rows.append(
            {
                "degree": i,
                "index": n,
                "alpha": alpha,
                "betti": betti,
                "l2_betti": b2,
                "deviation": deviation,
                "bound_candidate": bound,
                "within_bound": deviation <= bound_constant * bound,
            }
        )
    return rows
