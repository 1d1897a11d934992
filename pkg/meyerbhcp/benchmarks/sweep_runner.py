from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence
import os

import numpy as np

from meyerbhcp.benchmarks.metrics import ErrorReport, error_report, measured_delta
from meyerbhcp.benchmarks.noise import NoiseSpec, add_noise
from meyerbhcp.benchmarks.problems import BenchmarkProblem, exact_solution, final_data
from meyerbhcp.errors import DomainError
from meyerbhcp.grading.audit import AuditedRun
from meyerbhcp.grading.compound_audit import CompoundAudit
from meyerbhcp.grading.grade import Grade
from meyerbhcp.grading.solve_audits import (
    DominantModeAudit, ErrorSplitAudit, FiniteOutputAudit, StabilityBoundAudit)
from meyerbhcp.grid import RealField
from meyerbhcp.history.metric import Metric
from meyerbhcp.logging_utils import get_logger
from meyerbhcp.regularizer import RegularizationConfig, SolveReport, regularized_solve

LOGGER_ID = 'meyerbhcp.sweep'
THREADS_ENV_VAR = 'BHCP_THREADS'

# delta only drives the level rule; with a manual level any positive value will do.
_SMALLEST_DELTA = np.finfo(float).tiny


def make_default_audit(check_dominant_mode: bool = False) -> CompoundAudit:
    audits = [StabilityBoundAudit(), ErrorSplitAudit(), FiniteOutputAudit()]
    if check_dominant_mode:
        audits.append(DominantModeAudit())
    return CompoundAudit(audits)


@dataclass(eq=False)
class BenchmarkRun(Metric):
    """One regularized solve of a benchmark, with what is needed to audit and report it."""
    problem: BenchmarkProblem
    noise: NoiseSpec
    t: float
    delta: float
    solve_report: SolveReport
    errors: ErrorReport
    grade: Optional[Grade]
    audit: CompoundAudit
    exact: RealField = field(repr=False, default=None)
    noisy_final: RealField = field(repr=False, default=None)
    reconstruction: RealField = field(repr=False, default=None)

    def to_json(self):
        return {
            'problem_id': self.problem.problem_id.name,
            'noise': self.noise,
            't': self.t,
            'delta': self.delta,
            'solve_report': self.solve_report,
            'errors': self.errors,
            'grade': self.grade,
            'audit': self.audit,
        }


def run_benchmark(b: BenchmarkProblem, noise: NoiseSpec, cfg: RegularizationConfig, t: float,
                  audit: CompoundAudit = None) -> BenchmarkRun:
    """
    Noisy final data -> regularized solve at t -> errors against the exact
    solution, graded by the audits.
    """
    audit = make_default_audit() if audit is None else audit
    clean = final_data(b)
    noisy = add_noise(clean, noise)
    reconstruction, report = regularized_solve(noisy, t, b.profile, cfg)
    clean_reconstruction, _ = regularized_solve(clean, t, b.profile, cfg)
    noise_response, _ = regularized_solve(clean - noisy, t, b.profile, cfg)
    exact = exact_solution(b, t)
    mask = b.error_mask()
    run = AuditedRun(
        reconstruction=reconstruction,
        report=report,
        exact=exact,
        clean_final=clean,
        noisy_final=noisy,
        noise_response=noise_response,
        clean_reconstruction=clean_reconstruction,
        error_mask=mask,
    )
    return BenchmarkRun(
        problem=b,
        noise=noise,
        t=t,
        delta=measured_delta(noisy, clean),
        solve_report=report,
        errors=error_report(reconstruction, exact, mask),
        grade=audit.grade(run),
        audit=audit,
        exact=exact,
        noisy_final=noisy,
        reconstruction=reconstruction,
    )


@dataclass(frozen=True)
class SweepCell(Metric):
    J: int
    epsilon: float
    errors: ErrorReport
    grade: Optional[Grade]


def threads_from_env() -> int:
    value = os.environ.get(THREADS_ENV_VAR, '0')
    try:
        threads = int(value)
    except ValueError:
        raise DomainError(f'{THREADS_ENV_VAR} must be an integer, got {value!r}')
    if threads < 0:
        raise DomainError(f'{THREADS_ENV_VAR} must be non-negative, got {threads}')
    return threads


def run_sweep(b: BenchmarkProblem, epsilons: Sequence[float], levels: Sequence[int], t: float,
              seed: int = 4, threads: int = None) -> List[SweepCell]:
    """
    One cell per (J, epsilon), ordered by J then epsilon.
    The noise of a cell depends only on (seed, index of epsilon), so every level
    sees the same noisy data and the result does not depend on threads.
    """
    if not epsilons or not levels:
        raise DomainError('a sweep needs at least one epsilon and one level')
    threads = threads_from_env() if threads is None else threads
    jobs = [(J, stream, epsilon) for J in levels for stream, epsilon in enumerate(epsilons)]

    def run_cell(job) -> SweepCell:
        J, stream, epsilon = job
        cfg = RegularizationConfig(delta=max(epsilon, _SMALLEST_DELTA), manual_J=J, frequency_unit=b.frequency_unit)
        run = run_benchmark(b, NoiseSpec(epsilon, seed, stream), cfg, t)
        return SweepCell(J, epsilon, run.errors, run.grade)

    if threads == 0:
        cells = [run_cell(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            cells = list(executor.map(run_cell, jobs))
    log = get_logger(LOGGER_ID)
    for cell in cells:
        log.debug(f'V_{cell.J} epsilon={cell.epsilon:g}: absolute={cell.errors.absolute:.3e} '
                  f'relative={cell.errors.relative:.3e}')
    return cells


def cells_by_level(cells: Sequence[SweepCell]) -> Iterator[List[SweepCell]]:
    """Groups consecutive cells of the same level, i.e. the rows of the table."""
    row: List[SweepCell] = []
    for cell in cells:
        if row and row[0].J != cell.J:
            yield row
            row = []
        row.append(cell)
    if row:
        yield row
