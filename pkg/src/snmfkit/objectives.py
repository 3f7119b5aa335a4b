"""Objective values and gradients for the factorization problems.

Both solvers monitor the fit ``||A - L L^T||_F^2`` and the penalized
splitting objective ``||A - L Z^T||_F^2 + rho ||L - Z||_F^2``.  All
evaluations go through the Gram identity (A symmetric)

    ||A - L Z^T||_F^2 = ||A||_F^2 - 2 <A Z, L> + <L^T L, Z^T Z>,

which costs O(nnz K + n K^2) and never materializes the dense n x n
product L Z^T.
"""

import numpy as np

from .exceptions import DimensionMismatchError
from .linalg import SparseSymMatrix


def _norm2(a):
    if isinstance(a, SparseSymMatrix):
        return a.frobenius_norm() ** 2
    a = np.asarray(a, dtype=np.float64)
    return float(np.sum(a * a))


def _validate(a, l, z):
    if l.ndim != 2:
        raise DimensionMismatchError(f"factor must be 2-D, got shape {l.shape}")
    if a.shape[0] != a.shape[1] or a.shape[0] != l.shape[0]:
        raise DimensionMismatchError(
            f"matrix of shape {a.shape} does not match factor of shape {l.shape}"
        )
    if z is not None and z.shape != l.shape:
        raise DimensionMismatchError(
            f"factor shapes {l.shape} and {z.shape} differ"
        )


def snmf_objective(a, l):
    """Value of ``||A - L L^T||_F^2``.

    Parameters
    ----------
    a : SparseSymMatrix or dense symmetric ndarray, shape (n, n)
    l : ndarray, shape (n, k)

    Returns
    -------
    float
    """
    l = np.asarray(l, dtype=np.float64)
    _validate(a, l, None)
    gram = l.T @ l
    return _norm2(a) - 2.0 * float(np.sum((a @ l) * l)) + float(np.sum(gram * gram))


def qpm_objective(a, l, z, rho):
    """Value of ``||A - L Z^T||_F^2 + rho ||L - Z||_F^2``."""
    l = np.asarray(l, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    _validate(a, l, z)
    cross = float(np.sum((l.T @ l) * (z.T @ z)))
    fit = _norm2(a) - 2.0 * float(np.sum((a @ z) * l)) + cross
    return fit + rho * float(np.sum((l - z) ** 2))


def qpm_grad_l(a, l, z, rho):
    """Gradient of :func:`qpm_objective` with respect to L.

    Equals ``2 [(L Z^T - A) Z + rho (L - Z)]``, evaluated as
    ``2 [L (Z^T Z) - A Z + rho (L - Z)]``.
    """
    l = np.asarray(l, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    _validate(a, l, z)
    return 2.0 * (l @ (z.T @ z) - a @ z + rho * (l - z))


def qpm_grad_z(a, l, z, rho):
    """Gradient of :func:`qpm_objective` with respect to Z (A symmetric)."""
    l = np.asarray(l, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    _validate(a, l, z)
    return 2.0 * (z @ (l.T @ l) - a @ l + rho * (z - l))
