"""
Heat propagators in the frequency domain, the choice of resolution level J*
and the regularized backward solver F_{t,J} = F_t P_J.

The constants of the stability estimates are never given numerically; they
are folded to 1 (C_3 = 1 in the level rule, C_2 = 1 in the bounds).
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import math

import numpy as np

from meyerbhcp.diffusivity import DiffusivityProfile, mu
from meyerbhcp.errors import AmplificationOverflow, DomainError, NoiseExceedsPriorBound
from meyerbhcp.grid import RealField, UniformGrid, apply_even_multiplier
from meyerbhcp.history.metric import Metric
from meyerbhcp.logging_utils import get_logger
from meyerbhcp.meyer import STOPBAND_EDGE, MeyerLevel, projection_multiplier

EXPONENT_CAP = 700.0

log = get_logger('meyerbhcp.regularizer')


@dataclass(frozen=True)
class RegularizationConfig(Metric):
    """
    delta: bound on the data error (L2).
    p_minus_q: smoothness gap between the a-priori space H^p and the error norm H^q.
    big_m: a-priori bound on the initial data.
    manual_J: overrides the level rule when set.
    clamp_floor: lowest level the rule may return.
    frequency_unit: unit in which levels are measured, see meyer.MeyerLevel.
    """
    delta: float
    p_minus_q: float = 0.0
    big_m: float = 1.0
    manual_J: Optional[int] = None
    clamp_floor: int = 0
    frequency_unit: float = 1.0

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError(f'delta must be positive, got {self.delta}')
        if not self.big_m > 0:
            raise DomainError(f'M must be positive, got {self.big_m}')
        if not self.p_minus_q >= 0:
            raise DomainError(f'p - q must be non-negative, got {self.p_minus_q}')
        if self.clamp_floor < 0:
            raise DomainError(f'clamp floor must be non-negative, got {self.clamp_floor}')


@dataclass(frozen=True)
class LevelSelection(Metric):
    J: int
    clamped: bool
    log_argument: float  # ln A; NaN when the level was set manually
    rule_J: Optional[int] = None  # J* before moving it into the frequency unit


@dataclass(frozen=True)
class SolveReport(Metric):
    J_used: Optional[int]
    mu_T_of_t: float
    max_amplification: float
    clamped: bool = False
    saturated: bool = False
    frequency_unit: float = 1.0

    def amplification_bound(self, dim: int) -> float:
        """exp(((4pi/3) u 2^J)^2 n mu_T(t)), the support-sharp propagator bound."""
        if self.J_used is None:
            return math.inf
        edge = STOPBAND_EDGE * self.frequency_unit * 2.0 ** self.J_used
        return math.exp(min(edge ** 2 * dim * self.mu_T_of_t, EXPONENT_CAP))


@dataclass(frozen=True, eq=False)
class PropagatorGains:
    gains: np.ndarray
    saturated: bool = False
    max_exponent: float = 0.0


def backward_multiplier(grid: UniformGrid, mu_value: float, support: np.ndarray = None,
                        saturate: bool = False) -> PropagatorGains:
    """
    gain(k) = exp(|omega(k)|^2 mu).
    Only frequencies where support != 0 count towards overflow; elsewhere the
    exponent is silently capped since the gain multiplies a zero coefficient.
    Exponents above EXPONENT_CAP raise AmplificationOverflow unless saturate is set,
    in which case they are capped and the result is flagged.
    """
    if mu_value < 0:
        raise DomainError(f'mu must be non-negative, got {mu_value}')
    exponent = grid.frequency_norm_squared() * mu_value
    relevant = exponent if support is None else np.where(support != 0, exponent, 0.0)
    max_exponent = float(np.max(relevant))
    saturated = max_exponent > EXPONENT_CAP
    if saturated and not saturate:
        raise AmplificationOverflow(max_exponent)
    return PropagatorGains(np.exp(np.minimum(exponent, EXPONENT_CAP)), saturated, max_exponent)


def forward_multiplier(grid: UniformGrid, mu_value: float) -> np.ndarray:
    """gain(k) = exp(-|omega(k)|^2 mu)"""
    if mu_value < 0:
        raise DomainError(f'mu must be non-negative, got {mu_value}')
    return np.exp(-grid.frequency_norm_squared() * mu_value)


def log_level_argument(cfg: RegularizationConfig, mu_T0: float) -> float:
    """
    ln A with A = (M/delta)^(1/mu) ((1/mu) ln(M/delta))^(-(p-q)/(2 mu)), evaluated in log space.
    """
    log_ratio = math.log(cfg.big_m / cfg.delta)
    return log_ratio / mu_T0 - cfg.p_minus_q / (2.0 * mu_T0) * math.log(log_ratio / mu_T0)


def direct_level_argument(cfg: RegularizationConfig, mu_T0: float) -> float:
    """A evaluated directly; may overflow to inf or underflow to 0."""
    ratio = cfg.big_m / cfg.delta
    with np.errstate(over='ignore', under='ignore'):
        return float(np.power(ratio, 1.0 / mu_T0) *
                     np.power(math.log(ratio) / mu_T0, -cfg.p_minus_q / (2.0 * mu_T0)))


def select_J(cfg: RegularizationConfig, mu_T0: float) -> LevelSelection:
    """
    J* = floor(1/2 log2 ln A), or clamp_floor when A <= e.
    """
    if cfg.manual_J is not None:
        return LevelSelection(int(cfg.manual_J), False, math.nan)
    if cfg.delta >= cfg.big_m:
        raise NoiseExceedsPriorBound(cfg.delta, cfg.big_m)
    if not mu_T0 > 0:
        raise DomainError(f'mu_T(0) must be positive, got {mu_T0}')
    log_a = log_level_argument(cfg, mu_T0)
    if log_a <= 1.0:
        log.warning(f'level rule argument ln A = {log_a:.4g} <= 1; clamping J to {cfg.clamp_floor}')
        return LevelSelection(cfg.clamp_floor, True, log_a)
    J = math.floor(0.5 * math.log2(log_a))
    if J < cfg.clamp_floor:
        return LevelSelection(cfg.clamp_floor, True, log_a)
    return LevelSelection(J, False, log_a)


def level_for_unit(rule_J: int, frequency_unit: float) -> int:
    """
    The level rule treats 2^J as the cutoff frequency. This is the Meyer level
    of the given unit whose stopband edge (4pi/3) u 2^J lies closest to that
    cutoff: rule_J + round(log2(1 / ((4pi/3) u))).
    """
    if not frequency_unit > 0:
        raise DomainError(f'frequency unit must be positive, got {frequency_unit}')
    return rule_J + round(math.log2(1.0 / (STOPBAND_EDGE * frequency_unit)))


def select_level(cfg: RegularizationConfig, mu_T0: float) -> LevelSelection:
    """
    The level a solve uses: manual_J as given, otherwise J* from select_J
    moved into cfg.frequency_unit and clamped to clamp_floor.
    """
    selection = select_J(cfg, mu_T0)
    if cfg.manual_J is not None:
        return selection
    J = level_for_unit(selection.J, cfg.frequency_unit)
    if J < cfg.clamp_floor:
        return LevelSelection(cfg.clamp_floor, True, selection.log_argument, rule_J=selection.J)
    return LevelSelection(J, selection.clamped, selection.log_argument, rule_J=selection.J)


def lemma2_f(lam: float, b: float, c: float, d: float) -> float:
    """f(lambda) = lambda^b (d ln(1/lambda))^(-c)"""
    _check_lemma2_domain(lam, b, d)
    return lam ** b * (d * math.log(1.0 / lam)) ** (-c)


def lemma2_finv_asymptotic(y: float, b: float, c: float, d: float) -> float:
    """Leading term of f^-1(y) = y^(1/b) ((d/b) ln(1/y))^(c/b) (1 + o(1)) as y -> 0."""
    _check_lemma2_domain(y, b, d)
    return y ** (1.0 / b) * ((d / b) * math.log(1.0 / y)) ** (c / b)


def _check_lemma2_domain(x: float, b: float, d: float):
    if not 0.0 < x < 1.0:
        raise DomainError(f'argument must lie in (0, 1), got {x}')
    if not (b > 0 and d > 0):
        raise DomainError(f'b and d must be positive, got b={b}, d={d}')


def theorem_error_bound(cfg: RegularizationConfig, mu_t0: float, mu_T_t: float, J: int) -> float:
    """
    Right-hand side of the two-term error estimate with constants folded to 1:
    exp(2^(2J) mu_T(t)) delta + exp(-2^(2J) mu_t(0)) 2^(-2J (p-q)/2) M
    """
    scale = 4.0 ** J
    propagated_noise = math.exp(min(scale * mu_T_t, EXPONENT_CAP)) * cfg.delta
    truncation = math.exp(-scale * mu_t0) * 2.0 ** (-J * cfg.p_minus_q) * cfg.big_m
    return propagated_noise + truncation


def select_J_by_bound(cfg: RegularizationConfig, mu_t0: float, mu_T_t: float, max_J: int = 12) -> int:
    """The level in [clamp_floor, max_J] minimizing theorem_error_bound."""
    levels = range(cfg.clamp_floor, max_J + 1)
    return min(levels, key=lambda J: theorem_error_bound(cfg, mu_t0, mu_T_t, J))


def holder_logarithmic_estimate(cfg: RegularizationConfig, mu_t0: float, mu_T0: float) -> float:
    """
    Leading term of the error at J*, for delta -> 0:
    2 delta^(mu_t(0)/mu_T(0)) M^(1 - mu_t(0)/mu_T(0)) ((1/mu_T(0)) ln(M/delta))^(-(p-q)/2 * mu_T(t)/mu_T(0))
    Hoelder type when p = q; logarithmic type at t = 0.
    """
    if cfg.delta >= cfg.big_m:
        raise NoiseExceedsPriorBound(cfg.delta, cfg.big_m)
    theta = mu_t0 / mu_T0
    log_term = math.log(cfg.big_m / cfg.delta) / mu_T0
    return 2.0 * cfg.delta ** theta * cfg.big_m ** (1.0 - theta) * log_term ** (-0.5 * cfg.p_minus_q * (1.0 - theta))


def _check_solve_time(t: float, p: DiffusivityProfile):
    if not 0.0 <= t <= p.horizon:
        raise DomainError(f't={t} outside [0, {p.horizon}]')


def regularized_solve(final_data: RealField, t: float, p: DiffusivityProfile,
                      cfg: RegularizationConfig) -> Tuple[RealField, SolveReport]:
    """
    u(t) ~ F_t P_J* final_data:
    forward transform, level-J* projection, backward propagation, inverse transform.
    """
    _check_solve_time(t, p)
    mu_T_t = mu(p, t).value
    selection = select_level(cfg, mu(p, 0.0).value)
    level = MeyerLevel(selection.J, cfg.frequency_unit)
    projection = projection_multiplier(final_data.grid, level)
    propagator = backward_multiplier(final_data.grid, mu_T_t, support=projection.gains, saturate=True)
    if propagator.saturated:
        log.warning(f'J={level.J}: amplification saturated at exp({EXPONENT_CAP:g}) inside the passband')
    gains = projection.gains * propagator.gains
    solution, overflowed = _propagate(final_data, gains)
    report = SolveReport(
        J_used=level.J,
        mu_T_of_t=mu_T_t,
        max_amplification=float(np.max(gains)),
        clamped=selection.clamped,
        saturated=propagator.saturated or overflowed,
        frequency_unit=cfg.frequency_unit,
    )
    return solution, report


def unregularized_solve(final_data: RealField, t: float, p: DiffusivityProfile) -> Tuple[RealField, SolveReport]:
    """F_t final_data with gains capped at exp(EXPONENT_CAP); the report flags saturation."""
    _check_solve_time(t, p)
    mu_T_t = mu(p, t).value
    propagator = backward_multiplier(final_data.grid, mu_T_t, saturate=True)
    if propagator.saturated:
        log.warning(f'unregularized amplification saturated at exp({EXPONENT_CAP:g})')
    solution, overflowed = _propagate(final_data, propagator.gains)
    report = SolveReport(
        J_used=None,
        mu_T_of_t=mu_T_t,
        max_amplification=float(np.max(propagator.gains)),
        saturated=propagator.saturated or overflowed,
    )
    return solution, report


_RESCALE_EXPONENT = EXPONENT_CAP / 2


def _propagate(final_data: RealField, gains: np.ndarray) -> Tuple[RealField, bool]:
    """
    Applies real, even gains up to exp(EXPONENT_CAP) without producing infinities:
    the spectrum is shrunk before the inverse transform and grown afterwards,
    clipping to the largest float. Returns whether any value was clipped.
    The half spectrum keeps the result real even where the gains blow the
    roundoff of the data's spectrum up to the float limit.
    """
    shrunk = apply_even_multiplier(final_data, gains * math.exp(-_RESCALE_EXPONENT))
    largest = np.finfo(float).max
    with np.errstate(over='ignore', invalid='ignore'):
        values = shrunk * math.exp(_RESCALE_EXPONENT)
    overflowed = not np.all(np.isfinite(values))
    return RealField(final_data.grid, np.clip(np.nan_to_num(values, posinf=largest, neginf=-largest), -largest, largest)), overflowed
