"""
Amplification of a small high-frequency perturbation of the final data,
with and without the Meyer projection.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence
import math

import numpy as np

from meyerbhcp.benchmarks.problems import BenchmarkProblem, final_data
from meyerbhcp.diffusivity import mu
from meyerbhcp.errors import AliasingError, DomainError
from meyerbhcp.grid import RealField
from meyerbhcp.history.metric import Metric
from meyerbhcp.logging_utils import get_logger
from meyerbhcp.regularizer import EXPONENT_CAP, RegularizationConfig, regularized_solve, unregularized_solve

log = get_logger('meyerbhcp.illposed')


@dataclass(frozen=True)
class IllposednessRow(Metric):
    m: int
    data_error: float
    solution_error: float
    ratio_bound: float
    regularized_error: Optional[float] = None


def perturbation(grid, m: int) -> RealField:
    """sin(m |x|) / m^2"""
    return RealField.from_function(grid, lambda *xs: np.sin(m * np.sqrt(sum(x ** 2 for x in xs))) / m ** 2)


def illposedness_demo(b: BenchmarkProblem, m: int, cfg: RegularizationConfig = None) -> IllposednessRow:
    """
    Perturbs the final data by sin(m |x|) / m^2 and measures at t = 0 how far
    the unregularized (and, given cfg, the regularized) solution moves.
    """
    if m < 1:
        raise DomainError(f'm must be a positive integer, got {m}')
    if m >= b.grid.min_nyquist:
        raise AliasingError(f'm={m} is not below the Nyquist frequency {b.grid.min_nyquist:.6g} of the grid')
    clean = final_data(b)
    bump = perturbation(b.grid, m)
    perturbed = clean + bump

    unperturbed_solution, _ = unregularized_solve(clean, 0.0, b.profile)
    perturbed_solution, report = unregularized_solve(perturbed, 0.0, b.profile)
    if report.saturated:
        log.warning(f'm={m}: unregularized solution saturated; solution_error is a lower bound')

    regularized_error = None
    if cfg is not None:
        regularized_clean, _ = regularized_solve(clean, 0.0, b.profile, cfg)
        regularized_perturbed, _ = regularized_solve(perturbed, 0.0, b.profile, cfg)
        regularized_error = (regularized_perturbed - regularized_clean).sup_norm()

    mu_T0 = mu(b.profile, 0.0).value
    return IllposednessRow(
        m=m,
        data_error=bump.sup_norm(),
        solution_error=(perturbed_solution - unperturbed_solution).sup_norm(),
        ratio_bound=math.exp(min(m * m * mu_T0, EXPONENT_CAP)) / m ** 2,
        regularized_error=regularized_error,
    )


def illposedness_table(b: BenchmarkProblem, ms: Sequence[int], cfg: RegularizationConfig = None) -> List[IllposednessRow]:
    if not ms:
        raise DomainError('need at least one value of m')
    rows = [illposedness_demo(b, m, cfg) for m in sorted(ms)]
    for smaller, larger in zip(rows, rows[1:]):
        if not larger.data_error < smaller.data_error:
            log.warning(f'data error did not decrease from m={smaller.m} to m={larger.m}')
        if not larger.solution_error > smaller.solution_error:
            log.warning(f'solution error did not increase from m={smaller.m} to m={larger.m}')
    return rows
