from typing import Dict, Optional, Sequence

from meyerbhcp.benchmarks.problems import BenchmarkProblem, oracle_discrepancy
from meyerbhcp.grading.audit import Audit, AuditedRun
from meyerbhcp.grading.grade import Fail, Grade, Pass

DEFAULT_FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)


class OracleAgreementAudit(Audit):
    """
    Checks a benchmark's closed form against forward spectral propagation of
    its own initial state, at several times. Runs before anything trusts the
    closed form as ground truth.
    """

    class FailDueToDisagreement(Fail):
        def __init__(self, t: float, discrepancy: float, tolerance: float):
            self.t = t
            self.discrepancy = discrepancy
            self.tolerance = tolerance

        def __repr__(self):
            return (f'{super().__repr__()}: closed form disagrees with the spectral oracle at t={self.t:g}: '
                    f'relative L2 {self.discrepancy:.3e} > {self.tolerance:.1e}')

    def __init__(self, problem: BenchmarkProblem, fractions: Sequence[float] = DEFAULT_FRACTIONS,
                 printed: bool = False, tolerance: float = None):
        self.problem = problem
        self.times = [fraction * problem.horizon for fraction in fractions]
        self.printed = printed
        self.tolerance = problem.oracle_tolerance if tolerance is None else tolerance
        self.discrepancies: Dict[float, float] = {}

    def grade(self, run: AuditedRun = None) -> Optional[Grade]:
        worst = None
        for t in self.times:
            self.discrepancies[t] = oracle_discrepancy(self.problem, t, self.printed)
            if self.discrepancies[t] > self.tolerance and (worst is None or self.discrepancies[t] > self.discrepancies[worst]):
                worst = t
        if worst is not None:
            return self.FailDueToDisagreement(worst, self.discrepancies[worst], self.tolerance)
        return Pass()
