from dataclasses import dataclass
from typing import Optional

import numpy as np

from meyerbhcp.grading.grade import Grade
from meyerbhcp.grid import RealField
from meyerbhcp.history.metric import Metric
from meyerbhcp.regularizer import SolveReport


@dataclass(frozen=True, eq=False)
class AuditedRun:
    """
    Everything an Audit may look at after a regularized solve.
    Fields an audit does not need may be left as None.
    """
    reconstruction: RealField
    report: SolveReport
    exact: Optional[RealField] = None
    clean_final: Optional[RealField] = None
    noisy_final: Optional[RealField] = None
    noise_response: Optional[RealField] = None  # F_{t,J} applied to (clean_final - noisy_final)
    clean_reconstruction: Optional[RealField] = None  # F_{t,J} applied to clean_final
    error_mask: Optional[np.ndarray] = None


class Audit(Metric):
    """
    An Audit judges a finished run. Fields of an Audit are persisted with the run's Metrics.
    """

    def grade(self, run: AuditedRun) -> Optional[Grade]:
        """Returns None when the audit does not apply to the run."""
        pass
