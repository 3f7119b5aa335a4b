"""Similarity-graph construction from raw data points.

Given points d_1 .. d_n, the weight matrix uses adjusted q-nearest
-neighbor connectivity with locally scaled Gaussian weights,

    W_ij = exp(-||d_i - d_j||^2 / (sigma_i sigma_j))
           when j is in N_q(i) or i is in N_q(j),  else 0,

where N_q(i) holds the q nearest neighbors of d_i (self excluded, ties
broken by lower index) and sigma_i is the unsquared distance from d_i to
its p-th nearest neighbor.  The clustering affinity is the symmetric
degree normalization A = D^{-1/2} W D^{-1/2} with D = diag of the row
sums of W.

Neighbor search is a brute-force O(n^2) scan; at the few-thousand-point
scale this code targets, tree indices would only add moving parts.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateScaleError,
    DimensionMismatchError,
    IsolatedVertexError,
    LengthMismatchError,
    NonFiniteError,
    TooFewPointsError,
)
from .linalg import SparseSymMatrix


@dataclass
class DataSet:
    """Points with optional gold labels.

    Parameters
    ----------
    points : ndarray, shape (n, m)
        Finite coordinates, one row per point.
    labels : ndarray of int, shape (n,), optional
        Gold cluster labels used only for evaluation.
    """

    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 2:
            raise DimensionMismatchError(
                f"points must be a 2-D array, got shape {points.shape}"
            )
        if not np.all(np.isfinite(points)):
            raise NonFiniteError("point coordinates must be finite")
        self.points = points
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if labels.shape != (points.shape[0],):
                raise LengthMismatchError(
                    f"{points.shape[0]} points but {labels.size} labels"
                )
            self.labels = labels

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]


@dataclass(frozen=True)
class GraphConfig:
    """Graph-construction knobs.

    p is the neighbor rank that sets each point's local scale sigma_i;
    q_override replaces the default neighbor-list size floor(log2 n) + 1.
    Distances are squared Euclidean.
    """

    p: int = 7
    q_override: int | None = None

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.q_override is not None and self.q_override < 1:
            raise ValueError(f"q_override must be >= 1, got {self.q_override}")


@dataclass(frozen=True)
class WeightMatrix:
    """Locally scaled weights W (zero diagonal, entries in [0, 1])."""

    matrix: SparseSymMatrix
    q: int
    p: int


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Normalized affinity A = D^{-1/2} W D^{-1/2} plus the degrees of W."""

    matrix: SparseSymMatrix
    degrees: np.ndarray


def neighbor_count(n, cfg=None):
    """Neighbor-list size: ``cfg.q_override`` if set, else floor(log2 n) + 1."""
    if n < 2:
        raise TooFewPointsError(f"need at least 2 points, got {n}")
    if cfg is not None and cfg.q_override is not None:
        return cfg.q_override
    return int(n).bit_length()  # == floor(log2 n) + 1 for n >= 1


def build_weight_matrix(data, cfg=None):
    """Build the locally scaled q-nearest-neighbor weight matrix.

    Parameters
    ----------
    data : DataSet
    cfg : GraphConfig, optional

    Returns
    -------
    WeightMatrix

    Raises
    ------
    TooFewPointsError
        If n <= max(p, q): every point needs q neighbors and a p-th
        neighbor distance, self excluded.
    DegenerateScaleError
        If some sigma_i = 0 (point i has duplicates up to rank p); the
        weight formula is undefined there, and silently fudging the
        scale would hide a data problem.  Deduplicate first.
    """
    if cfg is None:
        cfg = GraphConfig()
    points = data.points
    n = data.n
    q = neighbor_count(n, cfg)
    if n <= max(cfg.p, q):
        raise TooFewPointsError(
            f"{n} points cannot support q={q} neighbors with scale rank p={cfg.p}"
        )
    dist2 = np.empty((n, n))
    for i in range(n):
        dist2[i] = np.sum((points - points[i]) ** 2, axis=1)
    neighbor = np.zeros((n, n), dtype=bool)
    sigma = np.empty(n)
    for i in range(n):
        row = dist2[i].copy()
        row[i] = np.inf  # self excluded
        order = np.argsort(row, kind="stable")  # stable -> ties to lower index
        neighbor[i, order[:q]] = True
        sigma[i] = np.sqrt(row[order[cfg.p - 1]])
        if sigma[i] == 0.0:
            raise DegenerateScaleError(
                f"point {i} has at least {cfg.p} exact duplicates; "
                "its local scale is zero"
            )
    linked = neighbor | neighbor.T
    np.fill_diagonal(linked, False)
    # compute each weight once on the upper triangle and mirror, so
    # W[i, j] == W[j, i] holds bitwise
    ui, uj = np.nonzero(np.triu(linked, k=1))
    weights = np.exp(-dist2[ui, uj] / (sigma[ui] * sigma[uj]))
    matrix = SparseSymMatrix.from_triplets(
        n,
        np.concatenate([ui, uj]),
        np.concatenate([uj, ui]),
        np.concatenate([weights, weights]),
    )
    return WeightMatrix(matrix=matrix, q=q, p=cfg.p)


def normalize_adjacency(w):
    """Symmetric degree normalization A_ij = W_ij / sqrt(D_ii D_jj).

    Parameters
    ----------
    w : WeightMatrix or SparseSymMatrix

    Returns
    -------
    AdjacencyMatrix

    Raises
    ------
    IsolatedVertexError
        If some vertex has zero degree.
    """
    matrix = w.matrix if isinstance(w, WeightMatrix) else w
    degrees = matrix.degrees()
    isolated = np.flatnonzero(degrees <= 0.0)
    if isolated.size:
        raise IsolatedVertexError(
            f"vertex {isolated[0]} has zero degree; cannot normalize"
        )
    dinv = 1.0 / np.sqrt(degrees)
    rows, cols, values = matrix.triplets()
    upper = rows < cols
    ui, uj = rows[upper], cols[upper]
    uv = values[upper] * dinv[ui] * dinv[uj]
    on_diag = rows == cols
    di = rows[on_diag]
    dv = values[on_diag] * dinv[di] * dinv[di]
    normalized = SparseSymMatrix.from_triplets(
        matrix.n,
        np.concatenate([ui, uj, di]),
        np.concatenate([uj, ui, di]),
        np.concatenate([uv, uv, dv]),
    )
    return AdjacencyMatrix(matrix=normalized, degrees=degrees)
