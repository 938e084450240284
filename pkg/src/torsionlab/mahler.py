"""Mahler measures, operator determinants and related torsion invariants.

The logarithmic measure of a one-variable integer polynomial comes from
its roots (Jensen form) or from averages over roots of unity; several
variables are handled by torus grids, by specialization along a
direction vector, or by averages over the dual of an engineered
subgroup.  Exact zero tests keep torsion points of the torus out of the
logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .alexmod import ChainComplex, laurent_matrix_rank
from .laurent import (
    CharacterPoint,
    LaurentMat,
    LaurentPoly,
    is_zero_at_character,
    one_var_dense,
    specialize_along_vector,
    vanishing_orders,
)
from .lattice import construct_gpm, next_primes

__all__ = [
    "MahlerEstimate",
    "SingularMatrixError",
    "ZeroPolynomialError",
    "ColumnRankError",
    "mahler_one_var",
    "mahler_multivariate",
    "best_mahler",
    "fk_det_exact",
    "fk_det_numeric",
    "l2_torsion",
    "l2_volume",
]

METHODS = ("jensen_roots", "riemann_cyclic", "torus_grid", "boyd_lawton", "gpm_sequence")


class ZeroPolynomialError(ValueError):
    """The measure of the zero polynomial is undefined."""


class SingularMatrixError(ValueError):
    """Square matrix with zero determinant; use the numeric estimator."""


class ColumnRankError(ValueError):
    """Columns are not a free family; pick a maximal free subfamily."""


@dataclass(frozen=True)
class MahlerEstimate:
    """A logarithmic measure value with its provenance and error budget."""

    value: float
    method: str
    error_budget: float
    samples_used: int = 0
    zeros_skipped: int = 0
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "value": self.value,
            "method": self.method,
            "error_budget": self.error_budget,
            "samples_used": self.samples_used,
            "zeros_skipped": self.zeros_skipped,
        }
        if self.detail:
            out["detail"] = dict(self.detail)
        return out


def _collapse_to_one_var(p):
    """Rewrite a polynomial that uses at most one variable over one variable."""
    used = p.effective_vars()
    if len(used) > 1:
        raise ValueError("polynomial uses more than one variable")
    if not used:
        return LaurentPoly(1, {(0,): c for e, c in p.items()})
    j = used[0]
    v = [0] * p.num_vars
    v[j] = 1
    return specialize_along_vector(p, v)


def _jensen_roots_estimate(p):
    dense = one_var_dense(p)
    deg = len(dense) - 1
    lead = dense[-1]
    if deg == 0:
        return MahlerEstimate(
            value=math.log(abs(lead)), method="jensen_roots", error_budget=0.0, samples_used=0
        )
    coeffs = np.array(dense[::-1], dtype=float)
    roots = np.roots(coeffs)
    dcoeffs = np.polyder(coeffs)
    # One Newton polish step per root.
    vals = np.polyval(coeffs, roots)
    derivs = np.polyval(dcoeffs, roots)
    safe = np.abs(derivs) > 1e-30
    roots = np.where(safe, roots - vals / np.where(safe, derivs, 1.0), roots)
    residuals = np.abs(np.polyval(coeffs, roots))
    derivs = np.abs(np.polyval(dcoeffs, roots))
    root_err = residuals / np.maximum(derivs, 1e-300)
    mags = np.abs(roots)
    value = math.log(abs(lead)) + float(np.sum(np.log(np.maximum(mags, 1.0))))
    # First order error of log max(1, |r|) in the root, plus float noise.
    budget = float(np.sum(np.minimum(root_err / np.maximum(mags, 1e-300), 1.0)))
    budget += 1e-14 * (deg + 1)
    return MahlerEstimate(
        value=value,
        method="jensen_roots",
        error_budget=budget,
        samples_used=deg,
    )


def _riemann_cyclic_sum(p_one_var, N):
    """(1/N) sum of log |p| over N-th roots of unity, exact zeros skipped."""
    zero_orders = vanishing_orders(p_one_var, N)
    dense = one_var_dense(p_one_var)
    ks = np.arange(N)
    if zero_orders:
        orders = N // np.gcd(ks, N)
        keep = ~np.isin(orders, sorted(zero_orders))
    else:
        keep = np.ones(N, dtype=bool)
    zs = np.exp(2j * np.pi * ks[keep] / N)
    vals = np.polyval(np.array(dense[::-1], dtype=complex), zs)
    logs = np.log(np.abs(vals))
    total = math.fsum(logs.tolist())
    return total / N, int(N - keep.sum()), int(keep.sum())


def mahler_one_var(p, method="jensen_roots", n_points=2048):
    """Logarithmic measure of a nonzero one-variable polynomial.

    ``jensen_roots`` sums log of the root magnitudes outside the unit
    circle plus log of the leading coefficient; ``riemann_cyclic``
    averages log |p| over the ``n_points``-th roots of unity, skipping
    exact zeros.
    """
    if p.is_zero():
        raise ZeroPolynomialError("measure of the zero polynomial")
    q = _collapse_to_one_var(p) if p.num_vars != 1 else p
    if method == "jensen_roots":
        return _jensen_roots_estimate(q)
    if method == "riemann_cyclic":
        value, skipped, used = _riemann_cyclic_sum(q, n_points)
        half, _, _ = _riemann_cyclic_sum(q, max(2, n_points // 2))
        budget = abs(value - half) + 4.0 * math.log(max(n_points, 2)) / n_points
        return MahlerEstimate(
            value=value,
            method="riemann_cyclic",
            error_budget=budget,
            samples_used=used,
            zeros_skipped=skipped,
        )
    raise ValueError(f"unknown one-variable method {method!r}")


def _torus_grid_sum(p, grid):
    """Mean of log |p| over the grid^m torus lattice with exact zero skipping."""
    m = p.num_vars
    roots = np.exp(2j * np.pi * np.arange(grid) / grid)
    shape = [grid] * m
    vals = np.zeros(shape, dtype=complex)
    ks = np.arange(grid)
    for e, c in p.items():
        term = np.array(c, dtype=complex)
        for axis, exp in enumerate(e):
            idx = (ks * exp) % grid
            axis_vals = roots[idx]
            reshape = [1] * m
            reshape[axis] = grid
            term = term * axis_vals.reshape(reshape)
        vals = vals + term
    mags = np.abs(vals)
    scale = max(p.coeff_one_norm(), 1)
    suspicious = np.argwhere(mags < 1e-9 * scale)
    skipped = np.zeros(shape, dtype=bool)
    for pt in suspicious:
        z = CharacterPoint([Fraction(int(k), grid) for k in pt])
        if is_zero_at_character(p, z):
            skipped[tuple(pt)] = True
    keep = ~skipped
    logs = np.log(mags[keep])
    total = math.fsum(logs.tolist())
    used = int(keep.sum())
    return total / (grid**m), int(skipped.sum()), used


def _default_grid(m):
    return {1: 4096, 2: 512, 3: 96}.get(m, 40)


def mahler_multivariate(p, strategy="torus_grid", *, grid=None, prime=23, M=None):
    """Logarithmic measure of a nonzero polynomial in several variables.

    ``torus_grid`` averages over a full product grid; ``boyd_lawton``
    measures the one-variable specialization along the weight vector of
    the consecutive-prime construction for ``prime``; ``gpm_sequence``
    averages over the dual of the engineered index-M subgroup.
    """
    if p.is_zero():
        raise ZeroPolynomialError("measure of the zero polynomial")
    m = p.num_vars
    if strategy == "torus_grid":
        g = grid or _default_grid(m)
        value, skipped, used = _torus_grid_sum(p, g)
        half, _, _ = _torus_grid_sum(p, max(2, g // 2))
        budget = abs(value - half) + 8.0 * math.log(max(g, 2)) / g
        return MahlerEstimate(
            value=value,
            method="torus_grid",
            error_budget=budget,
            samples_used=used,
            zeros_skipped=skipped,
            detail={"grid": g},
        )
    if strategy == "boyd_lawton":
        weights = _gpm_weights(m, prime)
        q = specialize_along_vector(p, weights)
        if q.is_zero():
            raise ZeroPolynomialError("specialization vanished; choose another direction")
        est = mahler_one_var(q, "jensen_roots")
        return MahlerEstimate(
            value=est.value,
            method="boyd_lawton",
            error_budget=est.error_budget,
            samples_used=est.samples_used,
            detail={"prime": prime, "weights": list(weights)},
        )
    if strategy == "gpm_sequence":
        primes = next_primes(prime, m)
        bound = m
        for q_ in primes:
            bound *= q_
        chosen_M = M or int(_next_prime_at_least(max(4 * bound, 1999)))
        lattice, spec = construct_gpm(m, prime, chosen_M)
        q = specialize_along_vector(p, spec.weights)
        if q.is_zero():
            raise ZeroPolynomialError("specialization vanished; choose another direction")
        value, skipped, used = _riemann_cyclic_sum(q, chosen_M)
        half, _, _ = _riemann_cyclic_sum(q, max(2, chosen_M // 2))
        budget = abs(value - half) + 8.0 * math.log(chosen_M) / chosen_M
        return MahlerEstimate(
            value=value,
            method="gpm_sequence",
            error_budget=budget,
            samples_used=used,
            zeros_skipped=skipped,
            detail={"prime": prime, "M": chosen_M, "index": lattice.index},
        )
    raise ValueError(f"unknown multivariate strategy {strategy!r}")


def _next_prime_at_least(n):
    import sympy

    k = int(n)
    return k if sympy.isprime(k) else int(sympy.nextprime(k))


def _gpm_weights(m, prime):
    primes = next_primes(prime, m)
    weights = []
    for i in range(m):
        r = 1
        for j, q in enumerate(primes):
            if j != i:
                r *= q
        weights.append(r)
    return tuple(weights)


def best_mahler(p, *, grid=None):
    """Most accurate available estimate for the given polynomial."""
    if p.is_zero():
        raise ZeroPolynomialError("measure of the zero polynomial")
    if len(p.effective_vars()) <= 1:
        return mahler_one_var(p, "jensen_roots")
    return mahler_multivariate(p, "torus_grid", grid=grid)


def fk_det_exact(A, *, grid=None):
    """Operator determinant of a square matrix with nonzero determinant.

    Equals the multiplicative measure of the polynomial determinant; the
    determinant itself is computed exactly and only its measure involves
    floating point.
    """
    if A.rows != A.cols:
        raise SingularMatrixError("fk_det_exact needs a square matrix")
    det = A.det()
    if det.is_zero():
        raise SingularMatrixError("zero determinant; use fk_det_numeric")
    return math.exp(best_mahler(det, grid=grid).value)


def _grid_points(m, grid):
    """All grid^m torus points as arrays of angles k/grid."""
    ks = np.indices([grid] * m).reshape(m, -1).T
    return ks


def evaluate_matrix_on_grid(A, grid):
    """Stack of complex matrices A(zeta) over all grid^m torus points."""
    m = A.num_vars
    ks = _grid_points(m, grid)
    roots = np.exp(2j * np.pi * np.arange(grid) / grid)
    n_pts = ks.shape[0]
    mats = np.zeros((n_pts, A.rows, A.cols), dtype=complex)
    for i in range(A.rows):
        for j in range(A.cols):
            entry = A.entries[i][j]
            if entry.is_zero():
                continue
            acc = np.zeros(n_pts, dtype=complex)
            for e, c in entry.items():
                idx = np.zeros(n_pts, dtype=np.int64)
                for axis, exp in enumerate(e):
                    idx = (idx + ks[:, axis] * exp) % grid
                acc = acc + c * roots[idx]
            mats[:, i, j] = acc
    return mats


def _fk_numeric_stats(A, grid, generic_rank):
    mats = evaluate_matrix_on_grid(A, grid)
    n_pts = mats.shape[0]
    sigmas = np.linalg.svd(mats, compute_uv=False)
    cutoff = max(A.rows, A.cols) * np.finfo(float).eps * np.maximum(sigmas[:, 0], 1e-300)
    numeric_ranks = (sigmas > cutoff[:, None]).sum(axis=1)
    keep = numeric_ranks >= generic_rank
    kept = sigmas[keep][:, :generic_rank]
    logs = np.log(np.maximum(kept, 1e-300)).sum(axis=1)
    mean = math.fsum(logs.tolist()) / n_pts
    return mean, int(keep.sum()), int((~keep).sum())


def fk_det_numeric(A, grid=64):
    """Quadrature estimate of the operator determinant of any matrix.

    Averages log of the product of nonzero singular values over a torus
    grid, skipping points where the numeric rank of the evaluated matrix
    drops below the generic rank.  Singular values below
    max(dim) * eps * sigma_max are treated as zero.
    """
    if A.is_zero():
        raise ValueError("fk determinant of the zero matrix")
    generic_rank = laurent_matrix_rank(A)
    mean, used, dropped = _fk_numeric_stats(A, grid, generic_rank)
    if grid >= 8:
        half, _, _ = _fk_numeric_stats(A, grid // 2, generic_rank)
        budget = abs(mean - half) + 8.0 * math.log(grid) / grid
    else:
        budget = 0.5
    return math.exp(mean), MahlerEstimate(
        value=mean,
        method="torus_grid",
        error_budget=budget,
        samples_used=used,
        zeros_skipped=dropped,
        detail={"grid": grid, "generic_rank": generic_rank},
    )


def l2_torsion(C, *, grid=64):
    """Alternating product of operator determinants of the differentials.

    The i-th differential contributes with exponent (-1)^i, so a
    two-term complex whose single differential presents a torsion module
    yields the reciprocal of the measure of its order polynomial.
    Square differentials with nonzero determinant use the exact route;
    everything else falls back to the grid estimator.
    """
    log_tau = 0.0
    for i, d in enumerate(C.differentials, start=1):
        if d.cols == 0:
            continue
        if d.is_zero():
            raise SingularMatrixError(
                f"differential {i} is identically zero; determinant undefined"
            )
        if d.rows == d.cols:
            det = d.det()
            if not det.is_zero():
                contrib = best_mahler(det).value
            else:
                _, est = fk_det_numeric(d, grid=grid)
                contrib = est.value
        else:
            _, est = fk_det_numeric(d, grid=grid)
            contrib = est.value
        log_tau += contrib if i % 2 == 0 else -contrib
    return math.exp(log_tau)


def l2_volume(A, *, grid=None):
    """Volume of the free submodule spanned by the columns of A.

    Requires full column rank over the fraction field; the value is the
    square root of the measure of the Gram determinant det(A* A).
    """
    from .laurent import adjoint_matrix

    rank = laurent_matrix_rank(A)
    if rank != A.cols:
        raise ColumnRankError(
            f"columns have rank {rank} < {A.cols}; choose a maximal free subfamily"
        )
    gram = adjoint_matrix(A) * A
    det = gram.det()
    if det.is_zero():
        raise ColumnRankError("Gram determinant vanished despite full rank")
    return math.exp(0.5 * best_mahler(det, grid=grid).value)
