"""Graph clustering by symmetric nonnegative matrix factorization.

Approximates a symmetric nonnegative affinity matrix A by L L^T with
L >= 0 and reads cluster memberships off the rows of L.  Two solvers are
provided: an accelerated proximal-gradient method on the quadratically
penalized split of the problem, and an ADMM method on the exact split
reformulation with first-order (KKT) residual diagnostics.

Submodules
----------
graph
    Locally scaled q-nearest-neighbor similarity graphs and symmetric
    degree normalization.
apg, admm
    The two solvers, sharing the initialization scheme so runs can be
    compared from identical starting factors.
kkt
    Per-condition first-order optimality residuals for solution quality.
evaluate
    Argmax cluster assignment, optimal label matching, accuracy
    scoring, and synthetic dataset generators.
costmodel
    Per-iteration flop model and a timing harness.
ingest
    Points-CSV and triplet-adjacency readers.
cli
    The ``snmfkit`` command-line experiment runner.

Example
-------
>>> from snmfkit import (SyntheticSpec, generate, build_weight_matrix,
...                      normalize_adjacency, solve_admm, assign_clusters)
>>> data = generate(SyntheticSpec("blobs", n_per_cluster=50, k=3, seed=1))
>>> a = normalize_adjacency(build_weight_matrix(data)).matrix
>>> labels = assign_clusters(solve_admm(a, 3).l).labels
"""

__version__ = "0.1.0"

from .admm import (
    AdmmConfig,
    AdmmResult,
    AdmmState,
    solve_admm,
    update_duals,
    update_l,
    update_split,
)
from .apg import (
    ApgBlockState,
    ApgConfig,
    ApgResult,
    apg_block_update,
    lipschitz_step,
    random_init,
    solve_apg,
)
from .costmodel import CostEstimate, flops_admm, measure_seconds_per_iteration
from .evaluate import (
    AccuracyReport,
    ClusterAssignment,
    SyntheticSpec,
    assign_clusters,
    best_mapping,
    generate,
)
from .exceptions import (
    AsymmetricConflictError,
    DegenerateScaleError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidKError,
    IsolatedVertexError,
    LengthMismatchError,
    NegativeWeightError,
    NonFiniteError,
    NotPositiveDefiniteError,
    ParseError,
    RaggedRowsError,
    SnmfError,
    TooFewPointsError,
)
from .graph import (
    AdjacencyMatrix,
    DataSet,
    GraphConfig,
    WeightMatrix,
    build_weight_matrix,
    neighbor_count,
    normalize_adjacency,
)
from .ingest import ingest_adjacency, ingest_points
from .kkt import KktResidual, kkt_residual
from .linalg import (
    CholeskyFactor,
    SparseSymMatrix,
    cholesky_factor,
    cholesky_solve,
    pos_part,
    sparse_dense_mul,
    spectral_norm,
)
from .objectives import qpm_grad_l, qpm_grad_z, qpm_objective, snmf_objective
from .util import relative_change

__all__ = [
    "AccuracyReport",
    "AdjacencyMatrix",
    "AdmmConfig",
    "AdmmResult",
    "AdmmState",
    "ApgBlockState",
    "ApgConfig",
    "ApgResult",
    "AsymmetricConflictError",
    "CholeskyFactor",
    "ClusterAssignment",
    "CostEstimate",
    "DataSet",
    "DegenerateScaleError",
    "DimensionMismatchError",
    "GraphConfig",
    "IndexOutOfRangeError",
    "InvalidKError",
    "IsolatedVertexError",
    "KktResidual",
    "LengthMismatchError",
    "NegativeWeightError",
    "NonFiniteError",
    "NotPositiveDefiniteError",
    "ParseError",
    "RaggedRowsError",
    "SnmfError",
    "SparseSymMatrix",
    "SyntheticSpec",
    "TooFewPointsError",
    "WeightMatrix",
    "apg_block_update",
    "assign_clusters",
    "best_mapping",
    "build_weight_matrix",
    "cholesky_factor",
    "cholesky_solve",
    "flops_admm",
    "generate",
    "ingest_adjacency",
    "ingest_points",
    "kkt_residual",
    "lipschitz_step",
    "measure_seconds_per_iteration",
    "neighbor_count",
    "normalize_adjacency",
    "pos_part",
    "qpm_grad_l",
    "qpm_grad_z",
    "qpm_objective",
    "random_init",
    "relative_change",
    "snmf_objective",
    "solve_admm",
    "solve_apg",
    "sparse_dense_mul",
    "spectral_norm",
    "update_duals",
    "update_l",
    "update_split",
]
