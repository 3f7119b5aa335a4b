"""Dense and sparse numerical kernels shared by the solvers.

The factorization solvers need only a handful of linear-algebra
primitives: products of the sparse symmetric affinity matrix with dense
factor blocks, small K x K Cholesky factorizations with triangular
solves, a dominant-eigenvalue estimate for Lipschitz step sizes, and the
positive-part projection.  They are collected here behind shape- and
symmetry-validating wrappers so the solver code can stay terse.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from .exceptions import (
    DimensionMismatchError,
    NonFiniteError,
    NotPositiveDefiniteError,
)


class SparseSymMatrix:
    """Symmetric nonnegative matrix in compressed sparse row form.

    Parameters
    ----------
    matrix : array_like or scipy sparse matrix
        Square matrix to wrap.  Entries must be finite, nonnegative and
        exactly symmetric (``A[i, j] == A[j, i]`` bitwise); duplicates in
        sparse input are summed before validation.

    Notes
    -----
    Instances are immutable by convention -- no method mutates the
    stored CSR arrays -- so they are safe to share across concurrent
    solver restarts.
    """

    def __init__(self, matrix):
        csr = scipy.sparse.csr_array(matrix, dtype=np.float64)
        if csr.ndim != 2 or csr.shape[0] != csr.shape[1]:
            raise DimensionMismatchError(
                f"expected a square matrix, got shape {csr.shape}"
            )
        csr.sum_duplicates()
        csr.sort_indices()
        if csr.nnz:
            if not np.all(np.isfinite(csr.data)):
                raise NonFiniteError("matrix entries must be finite")
            if np.any(csr.data < 0.0):
                raise ValueError("matrix entries must be nonnegative")
        residual = (csr - csr.T).tocsr()
        if residual.nnz and np.max(np.abs(residual.data)) != 0.0:
            raise ValueError("matrix must be exactly symmetric")
        self._csr = csr

    @classmethod
    def from_dense(cls, arr):
        """Wrap a dense array, dropping zeros from storage."""
        return cls(scipy.sparse.csr_array(np.asarray(arr, dtype=np.float64)))

    @classmethod
    def from_triplets(cls, n, rows, cols, values):
        """Assemble from coordinate triplets; duplicate positions are summed."""
        coo = scipy.sparse.coo_array(
            (np.asarray(values, dtype=np.float64), (rows, cols)), shape=(n, n)
        )
        return cls(coo)

    @property
    def n(self):
        return self._csr.shape[0]

    @property
    def shape(self):
        return self._csr.shape

    @property
    def nnz(self):
        return self._csr.nnz

    def to_dense(self):
        return self._csr.toarray()

    def triplets(self):
        """Stored entries as parallel (rows, cols, values) arrays."""
        coo = self._csr.tocoo()
        return coo.row, coo.col, coo.data

    def diagonal(self):
        return self._csr.diagonal()

    def degrees(self):
        """Row sums (weighted vertex degrees)."""
        return np.asarray(self._csr.sum(axis=1)).ravel()

    def frobenius_norm(self):
        return float(np.sqrt(np.sum(self._csr.data ** 2)))

    def mean(self):
        """Mean entry over the full n*n grid, zeros included."""
        return float(self._csr.data.sum()) / (self.n * self.n)

    def __matmul__(self, other):
        return sparse_dense_mul(self, other)

    def __repr__(self):
        return f"SparseSymMatrix(n={self.n}, nnz={self.nnz})"


def sparse_dense_mul(a, d):
    """Product of a :class:`SparseSymMatrix` with a dense matrix or vector.

    Parameters
    ----------
    a : SparseSymMatrix
    d : ndarray, shape (n,) or (n, k)

    Returns
    -------
    ndarray of matching trailing shape.
    """
    d = np.asarray(d, dtype=np.float64)
    if d.ndim not in (1, 2) or d.shape[0] != a.n:
        raise DimensionMismatchError(
            f"cannot multiply {a.shape} sparse matrix by array of shape {d.shape}"
        )
    return a._csr @ d


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular factor C with C @ C.T equal to the factored matrix."""

    lower: np.ndarray

    @property
    def order(self):
        return self.lower.shape[0]


def cholesky_factor(m):
    """Cholesky factorization of a symmetric positive definite matrix.

    Parameters
    ----------
    m : ndarray, shape (k, k)
        Symmetric (to 1e-12 relative) positive definite matrix.

    Returns
    -------
    CholeskyFactor

    Raises
    ------
    NotPositiveDefiniteError
        If a pivot <= 0 is encountered.  With a Gram-plus-rho*I input and
        rho > 0 this indicates a caller bug, so no regularization fallback
        is attempted.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError("cannot factor a matrix with non-finite entries")
    if m.size:
        scale = max(float(np.max(np.abs(m))), 1.0)
        if float(np.max(np.abs(m - m.T))) > 1e-12 * scale:
            raise ValueError("matrix is not symmetric")
    try:
        lower = scipy.linalg.cholesky(m, lower=True)
    except scipy.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from None
    return CholeskyFactor(lower=lower)


def cholesky_solve(factor, b):
    """Solve ``(C C^T) S = B`` by forward then backward substitution.

    Parameters
    ----------
    factor : CholeskyFactor
    b : ndarray, shape (k,) or (k, m)

    Returns
    -------
    ndarray with the shape of ``b``.
    """
    b = np.asarray(b, dtype=np.float64)
    if b.ndim not in (1, 2) or b.shape[0] != factor.order:
        raise DimensionMismatchError(
            f"right-hand side of shape {b.shape} does not match factor order "
            f"{factor.order}"
        )
    halfway = scipy.linalg.solve_triangular(factor.lower, b, lower=True)
    return scipy.linalg.solve_triangular(factor.lower.T, halfway, lower=False)


def spectral_norm(m, tol=1e-9, max_iter=10_000):
    """Largest eigenvalue magnitude of a symmetric matrix by power iteration.

    The iteration starts from the deterministic normalized all-ones
    vector and stops once the eigenpair residual ``||Mv - lambda v||``
    drops below ``tol * |lambda|`` (or after ``max_iter`` rounds).  It
    also stops when the estimated remaining gain of the Rayleigh
    sequence falls below the same bound, which handles matrices whose
    top eigenvalues nearly coincide: the eigenpair residual then
    contracts too slowly to certify, while the estimate itself has long
    settled.  Every such early stop is first double-checked by a short
    power iteration confined to the orthogonal complement of the
    current vector; if that probe surfaces a larger Rayleigh value, a
    dominant mode is still hiding and the iteration continues instead.
    If the all-ones start has an exactly zero image -- it lies in the
    kernel -- the iteration restarts from each basis-vector image with
    a nonzero norm and keeps the largest estimate.

    Intended for positive semidefinite inputs (Gram matrices plus a
    ridge), for which the returned value is the largest eigenvalue.
    """
    value, _ = _norm_and_direction(m, tol=tol, max_iter=max_iter)
    return value


def _norm_and_direction(m, tol=1e-9, max_iter=10_000, start=None):
    """spectral_norm plus the unit vector that realized the estimate.

    ``start`` warm-starts the iteration (callers that repeatedly take
    norms of slowly changing matrices pass the previous direction back
    in, which lets the residual certificate fire almost immediately).
    The direction is None for empty input and for estimates that ended
    on an exactly zero image.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError("matrix entries must be finite")
    n = m.shape[0]
    if n == 0:
        return 0.0, None
    if start is not None:
        start = np.asarray(start, dtype=np.float64).reshape(n)
        norm = np.linalg.norm(start)
        if norm > 0.0 and np.all(np.isfinite(start)):
            start = start / norm
        else:
            start = None
    if start is None:
        start = np.full(n, 1.0 / np.sqrt(n))
    if np.any(m @ start):
        return _power_iteration(m, start, tol, max_iter)
    best = 0.0
    direction = None
    for j in range(n):
        column = m[:, j]
        norm = np.linalg.norm(column)
        if norm > 0.0:
            value, vec = _power_iteration(m, column / norm, tol, max_iter)
            if value > best:
                best = value
                direction = vec
    return best, direction


def _power_iteration(m, v, tol, max_iter):
    window = 32  # iterations between value-side checkpoints
    guard = 1e-3  # residual level below which value verdicts may fire
    noise = 64.0 * np.finfo(np.float64).eps  # checkpoint rounding floor
    dust = 1024.0 * np.finfo(np.float64).eps  # near-degenerate jitter scale
    older = newer = None
    ratio_prev = math.inf
    settled_value = math.inf
    settled = 0
    strikes = 0
    wobbles = 0
    rejections = 0
    rayleigh = 0.0
    for done in range(max_iter):
        w = m @ v
        rayleigh = float(v @ w)
        if not np.isfinite(rayleigh):
            raise NonFiniteError("power iteration produced non-finite values")
        # ||Mv - lambda v|| <= tol*|lambda| certifies that lambda is
        # within tol*|lambda| of a true eigenvalue of symmetric m.
        bound = tol * abs(rayleigh)
        residual = float(np.linalg.norm(w - rayleigh * v))
        if residual <= bound:
            break
        # Value-side stopping for matrices whose top eigenvalues nearly
        # coincide: the pair residual then contracts too slowly to
        # certify while the Rayleigh estimate has long settled.  In
        # that regime the checkpointed gains decay like a geometric
        # sum, so the gain still to come is about inc*q/(1-q) with q
        # the increment ratio, and the ratio-based verdicts wait until
        # consecutive ratios agree.  Gains are *not* always decreasing,
        # though -- a start vector weak on the dominant mode climbs an
        # S-curve whose gains rise mid-flight -- so no verdict may rest
        # on the gain pattern alone.  Two safeguards cover that: every
        # verdict requires the eigenpair residual to have dropped to
        # the guard level already, and before returning, a short power
        # iteration confined to the orthogonal complement of v must
        # fail to surface a larger Rayleigh value.  A converged
        # near-coincident pair leaves only smaller values in the
        # complement, while a still-hidden dominant mode shows up above
        # the current estimate -- in that case the probe direction is
        # mixed into v and the climb resumes.
        if done % window == 0:
            if older is not None and rejections < 8:
                stop_value = None
                tail = 0.0
                tracking = False
                if residual <= guard * abs(rayleigh):
                    gain_past = newer - older
                    gain_last = rayleigh - newer
                    if gain_last <= noise * abs(rayleigh):
                        # Rounding floor: the estimate has stopped
                        # moving at double precision resolution.
                        stop_value = abs(rayleigh)
                    elif (
                        gain_last <= dust * abs(rayleigh)
                        and gain_past <= dust * abs(rayleigh)
                    ):
                        # Spectral dust: a cluster of eigenvalues split
                        # only at rounding scale keeps the gains
                        # jittering without direction.  Three such
                        # checkpoints running end the climb.
                        wobbles += 1
                        if wobbles >= 3:
                            stop_value = abs(rayleigh)
                            tail = gain_last
                    elif gain_last >= gain_past:
                        # A rising stretch above jitter scale: an
                        # S-curve climb is still feeding the estimate,
                        # so start the gain tracking afresh.
                        wobbles = 0
                    else:
                        tracking = True
                        wobbles = 0
                        ratio = gain_last / gain_past
                        if abs(ratio - ratio_prev) <= 0.25 * (1.0 - ratio):
                            tail = gain_last * ratio / (1.0 - ratio)
                            if tail <= bound:
                                # Remaining gain cannot move the
                                # estimate past the certified bound.
                                stop_value = abs(rayleigh)
                            else:
                                extrapolated = rayleigh + tail
                                drift_scale = min(1.0, (1.0 - ratio) / ratio)
                                if (
                                    abs(extrapolated - settled_value)
                                    <= 0.25 * bound * drift_scale
                                ):
                                    settled += 1
                                    if settled >= 2:
                                        # Consecutive extrapolations
                                        # agree more tightly than slow
                                        # geometric drift could allow.
                                        stop_value = abs(extrapolated)
                                else:
                                    settled = 0
                                settled_value = extrapolated
                                if stop_value is None and window * math.log(
                                    tail / bound
                                ) > -math.log(ratio) * 2.0 * (max_iter - done):
                                    # The tail is decisively out of
                                    # reach within the rounds left
                                    # (twice over, so a warm-up ratio
                                    # cannot fake it); the estimate is
                                    # pinned between the coinciding
                                    # eigenvalues.
                                    strikes += 1
                                    if strikes >= 3:
                                        stop_value = abs(rayleigh)
                                else:
                                    strikes = 0
                        ratio_prev = ratio
                if not tracking:
                    ratio_prev = math.inf
                    settled_value = math.inf
                    settled = 0
                    strikes = 0
                    if residual > guard * abs(rayleigh):
                        wobbles = 0
                if stop_value is not None:
                    mu, direction = _complement_probe(m, v)
                    if mu <= rayleigh + max(8.0 * bound, 4.0 * tail):
                        return stop_value, v
                    # A larger value is hiding orthogonally to v: this
                    # plateau is not the top of the spectrum.  Fold the
                    # probe direction in and start tracking afresh.
                    rejections += 1
                    v = v + direction
                    v /= np.linalg.norm(v)
                    older = newer = None
                    wobbles = 0
                    continue
            older, newer = newer, rayleigh
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0, None
        v = w / norm
    return abs(rayleigh), v


def _complement_probe(m, v, steps=48):
    """Best Rayleigh value reachable orthogonally to the unit vector v.

    Runs a short power iteration on the compression of ``m`` to the
    orthogonal complement of ``v`` (re-projecting every step, so an
    only approximately invariant ``v`` cannot leak back in), starting
    from the basis vector with the smallest ``v`` component.  Returns
    the final Rayleigh value and the direction that produced it.
    """
    j = int(np.argmin(np.abs(v)))
    u = -v[j] * v
    u[j] += 1.0
    u /= np.linalg.norm(u)
    mu = 0.0
    for _ in range(steps):
        w = m @ u
        w -= (v @ w) * v
        mu = float(u @ w)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            break
        u = w / norm
    return mu, u


def pos_part(m):
    """Elementwise positive part ``max(x, 0)``; idempotent."""
    return np.maximum(np.asarray(m, dtype=np.float64), 0.0)
