from dataclasses import dataclass

import numpy as np

from meyerbhcp.errors import UndefinedRelativeError
from meyerbhcp.grid import RealField, check_same_grid
from meyerbhcp.history.metric import Metric


@dataclass(frozen=True)
class ErrorReport(Metric):
    absolute: float  # sup-norm error
    relative: float  # L2 error over L2 norm of the exact field


def error_report(approx: RealField, exact: RealField, mask: np.ndarray = None) -> ErrorReport:
    """Errors over the whole grid, or over the points selected by mask."""
    check_same_grid(approx.grid, exact.grid)
    exact_norm = exact.l2_norm(mask)
    if exact_norm == 0.0:
        raise UndefinedRelativeError('relative error is undefined for a zero exact field')
    difference = approx - exact
    return ErrorReport(
        absolute=difference.sup_norm(mask),
        relative=difference.l2_norm(mask) / exact_norm,
    )


def measured_delta(noisy: RealField, clean: RealField) -> float:
    """Discrete L2 norm of the data error."""
    check_same_grid(noisy.grid, clean.grid)
    return (noisy - clean).l2_norm()
