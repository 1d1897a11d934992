"""
Audits applied to every regularized solve: the support-sharp propagator bound,
the triangle split of the total error, finiteness of the output and
whether the level keeps the data's dominant mode.
"""

from typing import Optional

import numpy as np

from meyerbhcp.grading.audit import Audit, AuditedRun
from meyerbhcp.grading.grade import Fail, Grade, Pass
from meyerbhcp.grid import forward_transform
from meyerbhcp.meyer import MeyerLevel, projection_multiplier


class StabilityBoundAudit(Audit):
    """
    Fails if the noise component was amplified beyond
    exp(((4pi/3) u 2^J)^2 n mu_T(t)).
    """

    class FailDueToAmplification(Fail):
        def __init__(self, measured: float, bound: float):
            self.measured = measured
            self.bound = bound

        def __repr__(self):
            return f'{super().__repr__()}: noise amplified by {self.measured:.6g} > bound {self.bound:.6g}'

    def __init__(self, relative_slack: float = 1e-9):
        self.relative_slack = relative_slack
        self.measured_amplification: float = None
        self.bound: float = None

    def grade(self, run: AuditedRun) -> Optional[Grade]:
        if run.noise_response is None or run.clean_final is None or run.noisy_final is None:
            return None
        data_error = (run.clean_final - run.noisy_final).l2_norm()
        if data_error == 0.0:
            self.measured_amplification = 0.0
            return Pass()
        self.measured_amplification = run.noise_response.l2_norm() / data_error
        self.bound = run.report.amplification_bound(run.reconstruction.grid.dim)
        if self.measured_amplification > self.bound * (1.0 + self.relative_slack):
            return self.FailDueToAmplification(self.measured_amplification, self.bound)
        return Pass()


class ErrorSplitAudit(Audit):
    """
    The total error must not exceed truncation error plus propagated noise
    (triangle inequality), up to a slack of absolute_slack plus relative_slack
    times the largest norm among the fields being subtracted.
    """

    class FailDueToSplit(Fail):
        def __init__(self, total: float, truncation: float, propagated_noise: float):
            self.total = total
            self.truncation = truncation
            self.propagated_noise = propagated_noise

        def __repr__(self):
            return (f'{super().__repr__()}: total error {self.total:.6g} exceeds '
                    f'{self.truncation:.6g} + {self.propagated_noise:.6g}')

    def __init__(self, absolute_slack: float = 1e-10, relative_slack: float = 1e-12):
        self.absolute_slack = absolute_slack
        self.relative_slack = relative_slack
        self.total: float = None
        self.truncation: float = None
        self.propagated_noise: float = None

    def grade(self, run: AuditedRun) -> Optional[Grade]:
        if run.exact is None or run.clean_reconstruction is None:
            return None
        mask = run.error_mask
        self.total = (run.reconstruction - run.exact).l2_norm(mask)
        self.truncation = (run.exact - run.clean_reconstruction).l2_norm(mask)
        self.propagated_noise = (run.clean_reconstruction - run.reconstruction).l2_norm(mask)
        scale = max(f.l2_norm(mask) for f in (run.reconstruction, run.exact, run.clean_reconstruction))
        slack = self.absolute_slack + self.relative_slack * scale
        if self.total > self.truncation + self.propagated_noise + slack:
            return self.FailDueToSplit(self.total, self.truncation, self.propagated_noise)
        return Pass()


class FiniteOutputAudit(Audit):
    """Fails when the reconstruction was clipped or its amplification saturated."""

    class FailDueToSaturation(Fail):
        def __init__(self, max_amplification: float):
            self.max_amplification = max_amplification

        def __repr__(self):
            return f'{super().__repr__()}: amplification saturated (max gain {self.max_amplification:.6g})'

    def grade(self, run: AuditedRun) -> Optional[Grade]:
        values = run.reconstruction.values
        clipped = values.size and np.max(np.abs(values)) >= np.finfo(float).max
        if run.report.saturated or clipped:
            return self.FailDueToSaturation(run.report.max_amplification)
        return Pass()


class DominantModeAudit(Audit):
    """
    Fails when the level's projection all but removes the strongest mode of the
    clean final data, as happens when the level sits below the data's frequencies.
    """

    class FailDueToRemovedMode(Fail):
        def __init__(self, J: int, frequency: float, kept_fraction: float):
            self.J = J
            self.frequency = frequency
            self.kept_fraction = kept_fraction

        def __repr__(self):
            return (f'{super().__repr__()}: level {self.J} keeps {self.kept_fraction:.3g} '
                    f'of the dominant mode at |omega| = {self.frequency:.6g}')

    def __init__(self, min_kept_fraction: float = 0.5):
        self.min_kept_fraction = min_kept_fraction
        self.kept_fraction: float = None

    def grade(self, run: AuditedRun) -> Optional[Grade]:
        data = run.clean_final if run.clean_final is not None else run.noisy_final
        if data is None or run.report.J_used is None:
            return None
        coeffs = np.abs(forward_transform(data).coeffs)
        if not np.any(coeffs):
            return None
        dominant = np.unravel_index(np.argmax(coeffs), coeffs.shape)
        level = MeyerLevel(run.report.J_used, run.report.frequency_unit)
        self.kept_fraction = float(projection_multiplier(data.grid, level).gains[dominant])
        if self.kept_fraction < self.min_kept_fraction:
            frequency = float(np.sqrt(data.grid.frequency_norm_squared()[dominant]))
            return self.FailDueToRemovedMode(level.J, frequency, self.kept_fraction)
        return Pass()
