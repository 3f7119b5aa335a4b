"""First-order optimality diagnostics for the split formulation.

For  min ||A - X Y^T||_F^2  s.t.  X = L, Y = L, L >= 0  with multipliers
Lambda and Gamma attached to the two coupling constraints, a point is
first-order optimal when

    (X Y^T - A) Y = Lambda        stationarity in X
    (Y X^T - A) X = Gamma         stationarity in Y
    X = L,  Y = L                 primal feasibility (coupling)
    L >= 0                        primal feasibility (sign)
    Lambda + Gamma >= 0           dual feasibility
    <Lambda + Gamma, L> = 0       complementary slackness

(the multiplier of the sign constraint is eliminated as
-(Lambda + Gamma), which folds the last two lines into the form above).
:func:`kkt_residual` reports the Frobenius norm of each violation plus a
single summary: the max over components divided by max(1, ||A||_F), so
the headline number is comparable across problem scales while the
individual components stay raw.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import DimensionMismatchError
from .linalg import pos_part


@dataclass(frozen=True)
class KktResidual:
    """Per-condition residual norms; ``norm`` is the scaled maximum."""

    r_stationarity_x: float
    r_stationarity_y: float
    r_primal_x: float
    r_primal_y: float
    r_nonneg: float
    r_dual: float
    r_comp: float
    norm: float

    def as_dict(self):
        return asdict(self)


def kkt_residual(a, state):
    """Evaluate all seven residual components at an ADMM state.

    Parameters
    ----------
    a : SparseSymMatrix
    state : object with x, y, l, lam, gam arrays (e.g. AdmmState)

    Returns
    -------
    KktResidual
    """
    x, y, l = state.x, state.y, state.l
    lam, gam = state.lam, state.gam
    for name, arr in (("x", x), ("y", y), ("lam", lam), ("gam", gam)):
        if arr.shape != l.shape:
            raise DimensionMismatchError(
                f"state matrix {name} has shape {arr.shape}, expected {l.shape}"
            )
    if a.shape[0] != l.shape[0]:
        raise DimensionMismatchError(
            f"matrix of shape {a.shape} does not match state of shape {l.shape}"
        )
    fro = np.linalg.norm
    stat_x = x @ (y.T @ y) - a @ y - lam
    stat_y = y @ (x.T @ x) - a @ x - gam
    dual_sum = lam + gam
    components = (
        float(fro(stat_x)),
        float(fro(stat_y)),
        float(fro(x - l)),
        float(fro(y - l)),
        float(fro(pos_part(-l))),
        float(fro(pos_part(-dual_sum))),
        float(abs(np.sum(dual_sum * l))),
    )
    scale = max(1.0, a.frobenius_norm())
    return KktResidual(*components, norm=max(components) / scale)
