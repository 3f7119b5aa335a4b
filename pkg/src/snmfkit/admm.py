"""ADMM solver for the exact split reformulation.

    min ||A - X Y^T||_F^2   s.t.  X = L,  Y = L,  L >= 0

with dual variables Lambda (for X = L) and Gamma (for Y = L) and penalty
rho.  One sweep performs, in order:

    X  <- argmin of the augmented Lagrangian over X   (closed form)
    Y  <- argmin over Y, using the fresh X            (closed form)
    L  <- [ (X - Lambda/rho + Y - Gamma/rho) / 2 ]+
    Lambda <- Lambda + rho (L - X)
    Gamma  <- Gamma  + rho (L - Y)

The X and Y subproblems are ridge-regularized least squares solved via a
K x K Cholesky factorization and two triangular solves -- never an
explicit inverse.  The scheme is a heuristic on this nonconvex problem:
it may cycle, so hitting max_iter is a soft failure (the result is
returned flagged, with the KKT residual quantifying its quality).
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidKError, NonFiniteError
from .kkt import KktResidual, kkt_residual
from .linalg import cholesky_factor, cholesky_solve, pos_part
from .objectives import snmf_objective
from .util import relative_change


@dataclass(frozen=True)
class AdmmConfig:
    """Solver settings: penalty/dual step rho, stopping threshold epsilon
    (on the summed relative changes of X, Y and L), and iteration cap."""

    rho: float = 0.1
    epsilon: float = 1e-5
    max_iter: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.rho <= 0.0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass
class AdmmState:
    """Full iterate: unconstrained splits X, Y, nonnegative factor L,
    dual variables, and the iteration count that produced them."""

    x: np.ndarray
    y: np.ndarray
    l: np.ndarray
    lam: np.ndarray
    gam: np.ndarray
    iteration: int = 0


@dataclass
class AdmmResult:
    """Solve outcome.

    trace holds ||A - L L^T||_F^2 after each iteration (directly
    comparable with the other solver's final objective); gap_x and gap_y
    are ||X - L||_F/||L||_F and ||Y - L||_F/||L||_F at exit; kkt is the
    exit-point residual.  converged is False when max_iter ran out.
    """

    l: np.ndarray
    x: np.ndarray
    y: np.ndarray
    lam: np.ndarray
    gam: np.ndarray
    iterations: int
    converged: bool
    objective: float
    trace: list = field(default_factory=list)
    gap_x: float = 0.0
    gap_y: float = 0.0
    kkt: KktResidual | None = None
    wall_time_s: float = 0.0


def update_split(a, other, l, dual, rho):
    """Exact minimizer of one unconstrained split subproblem.

    Solves  result (other^T other + rho I) = A other + rho L + dual  by
    Cholesky-factoring the K x K system matrix and running forward and
    backward substitution on the transposed right-hand side.

    Parameters
    ----------
    a : SparseSymMatrix
    other : ndarray, (n, k)
        The opposite split (Y when updating X and vice versa).
    l : ndarray, (n, k)
    dual : ndarray, (n, k)
        The multiplier tied to the updated split's coupling constraint.
    rho : float, > 0

    Returns
    -------
    ndarray, (n, k)
    """
    other = np.asarray(other, dtype=np.float64)
    k = other.shape[1]
    factor = cholesky_factor(other.T @ other + rho * np.eye(k))
    rhs = a @ other + rho * l + dual
    return cholesky_solve(factor, rhs.T).T


def update_l(x, y, lam, gam, rho):
    """Projected average  [ (X - Lambda/rho + Y - Gamma/rho) / 2 ]+ ."""
    return pos_part(0.5 * (x - lam / rho + y - gam / rho))


def update_duals(state, rho):
    """Gradient-ascent dual step; the primal blocks are left untouched."""
    return AdmmState(
        x=state.x,
        y=state.y,
        l=state.l,
        lam=state.lam + rho * (state.l - state.x),
        gam=state.gam + rho * (state.l - state.y),
        iteration=state.iteration,
    )


def _checked(state):
    for arr in (state.x, state.y, state.l, state.lam, state.gam):
        if not np.all(np.isfinite(arr)):
            raise NonFiniteError("iterate produced non-finite values")
    return state


def solve_admm(a, k, cfg=None, init=None):
    """Run the ADMM sweep until the stopping test or the iteration cap.

    Parameters
    ----------
    a : SparseSymMatrix
        Symmetric nonnegative affinity, n x n.
    k : int
        Number of clusters, 1 <= k < n.
    cfg : AdmmConfig, optional
    init : ndarray, shape (n, k), optional
        Nonnegative start; X, Y and L all begin there and the duals at
        zero.  Drawn via :func:`random_init` from ``cfg.seed`` when
        omitted, so a seed shared with the other solver yields the same
        starting factor.

    Returns
    -------
    AdmmResult
    """
    # local import: random_init lives with the other solver's code
    from .apg import random_init

    if cfg is None:
        cfg = AdmmConfig()
    if not 1 <= k < a.n:
        raise InvalidKError(f"k must satisfy 1 <= k < n={a.n}, got {k}")
    if init is None:
        init = random_init(a, k, cfg.seed)
    else:
        init = np.asarray(init, dtype=np.float64)
        if init.shape != (a.n, k):
            raise InvalidKError(
                f"init of shape {init.shape} does not match ({a.n}, {k})"
            )
        if np.any(init < 0.0):
            raise ValueError("init must be nonnegative")
    start = time.perf_counter()
    state = AdmmState(
        x=init.copy(),
        y=init.copy(),
        l=init.copy(),
        lam=np.zeros_like(init),
        gam=np.zeros_like(init),
        iteration=0,
    )
    trace = []
    converged = False
    for it in range(1, cfg.max_iter + 1):
        previous = state
        x = update_split(a, state.y, state.l, state.lam, cfg.rho)
        y = update_split(a, x, state.l, state.gam, cfg.rho)  # fresh x
        l = update_l(x, y, state.lam, state.gam, cfg.rho)
        state = _checked(
            update_duals(
                AdmmState(x=x, y=y, l=l, lam=state.lam, gam=state.gam, iteration=it),
                cfg.rho,
            )
        )
        trace.append(snmf_objective(a, state.l))
        rel = (
            relative_change(state.x, previous.x)
            + relative_change(state.y, previous.y)
            + relative_change(state.l, previous.l)
        )
        if rel <= cfg.epsilon:
            converged = True
            break
    return AdmmResult(
        l=state.l,
        x=state.x,
        y=state.y,
        lam=state.lam,
        gam=state.gam,
        iterations=state.iteration,
        converged=converged,
        objective=trace[-1],
        trace=trace,
        gap_x=relative_change(state.x, state.l),
        gap_y=relative_change(state.y, state.l),
        kkt=kkt_residual(a, state),
        wall_time_s=time.perf_counter() - start,
    )
