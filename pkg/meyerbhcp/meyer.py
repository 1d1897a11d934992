"""
Meyer scaling function and wavelet in the frequency domain, and the level-J
multiresolution projection realized as a spectral multiplier.

P_J is the separable multiplier p_J(omega) = prod_i |phi^(omega_i / 2^J)|^2.
It is exactly 1 on the passband cube Lambda_J = 2^J [-2pi/3, 2pi/3]^n and
exactly 0 wherever some |omega_i| >= (4pi/3) 2^J, which are the only
properties the stability estimates rely on. Away from those regions it is a
smooth taper, so P_J P_J = P_J fails in the transition band only.

Levels may be measured in a frequency unit other than 1 (see MeyerLevel).
"""

from dataclasses import dataclass
import math

import numpy as np

from meyerbhcp.errors import DomainError
from meyerbhcp.grid import SpectralField, UniformGrid, check_same_grid
from meyerbhcp.logging_utils import get_logger

PASSBAND_EDGE = 2 * math.pi / 3
STOPBAND_EDGE = 4 * math.pi / 3
WAVELET_STOPBAND_EDGE = 8 * math.pi / 3

log = get_logger('meyerbhcp.meyer')


def aux_poly(x):
    """nu(x) = x^4 (35 - 84x + 70x^2 - 20x^3) with x clamped to [0, 1]."""
    x = np.clip(x, 0.0, 1.0)
    return x ** 4 * (35.0 - 84.0 * x + 70.0 * x ** 2 - 20.0 * x ** 3)


def scaling_hat(omega):
    """
    Meyer scaling function in frequency, normalized to gain 1 on the passband.
    """
    a = np.abs(np.asarray(omega, dtype=float))
    transition = np.cos(0.5 * np.pi * aux_poly(3.0 * a / (2.0 * np.pi) - 1.0))
    result = np.where(a <= PASSBAND_EDGE, 1.0, np.where(a < STOPBAND_EDGE, transition, 0.0))
    return result[()] if result.ndim == 0 else result


def wavelet_hat_magnitude(omega):
    """|psi^(omega)|; the phase factor exp(i omega / 2) is not needed anywhere."""
    a = np.abs(np.asarray(omega, dtype=float))
    rising = np.sin(0.5 * np.pi * aux_poly(3.0 * a / (2.0 * np.pi) - 1.0))
    falling = np.cos(0.5 * np.pi * aux_poly(3.0 * a / (4.0 * np.pi) - 1.0))
    result = np.where(
        (a >= PASSBAND_EDGE) & (a <= STOPBAND_EDGE), rising,
        np.where((a > STOPBAND_EDGE) & (a < WAVELET_STOPBAND_EDGE), falling, 0.0))
    return result[()] if result.ndim == 0 else result


@dataclass(frozen=True)
class MeyerLevel:
    """
    Resolution level J. With frequency_unit u the passband cube is
    u 2^J [-2pi/3, 2pi/3]^n.
    """
    J: int
    frequency_unit: float = 1.0

    def __post_init__(self):
        if int(self.J) != self.J or self.J < 0:
            raise DomainError(f'level J must be a non-negative integer, got {self.J}')
        if not self.frequency_unit > 0:
            raise DomainError(f'frequency unit must be positive, got {self.frequency_unit}')
        object.__setattr__(self, 'J', int(self.J))

    @property
    def scale(self) -> float:
        return self.frequency_unit * 2.0 ** self.J

    @property
    def passband_edge(self) -> float:
        return PASSBAND_EDGE * self.scale

    @property
    def stopband_edge(self) -> float:
        return STOPBAND_EDGE * self.scale

    def check_against(self, grid: UniformGrid):
        for axis in range(grid.dim):
            nyquist = grid.nyquist(axis)
            if self.passband_edge > nyquist:
                log.warning(f'J={self.J}: passband edge {self.passband_edge:.4g} exceeds the Nyquist '
                            f'frequency {nyquist:.4g} of axis {axis}; passband truncated')
            elif self.stopband_edge > nyquist:
                log.warning(f'J={self.J}: stopband edge {self.stopband_edge:.4g} exceeds the Nyquist '
                            f'frequency {nyquist:.4g} of axis {axis}')


def as_level(J, frequency_unit: float = 1.0) -> MeyerLevel:
    return J if isinstance(J, MeyerLevel) else MeyerLevel(J, frequency_unit)


@dataclass(frozen=True, eq=False)
class SpectralMultiplier:
    """Real gains in [0, 1], aligned with SpectralField.coeffs and even in k."""
    grid: UniformGrid
    gains: np.ndarray

    def __post_init__(self):
        gains = np.broadcast_to(np.asarray(self.gains, dtype=float), self.grid.shape)
        if np.any(gains < 0.0) or np.any(gains > 1.0):
            raise DomainError('multiplier gains must lie in [0, 1]')
        object.__setattr__(self, 'gains', gains)

    def apply(self, spectrum: SpectralField) -> SpectralField:
        check_same_grid(self.grid, spectrum.grid)
        return spectrum.multiplied(self.gains)

    def __sub__(self, other: 'SpectralMultiplier') -> 'SpectralMultiplier':
        check_same_grid(self.grid, other.grid)
        return SpectralMultiplier(self.grid, np.clip(self.gains - other.gains, 0.0, 1.0))


def projection_multiplier(grid: UniformGrid, J) -> SpectralMultiplier:
    """p_J(omega) = prod_i |scaling_hat(omega_i / (u 2^J))|^2"""
    level = as_level(J)
    level.check_against(grid)
    gains = np.ones(grid.shape)
    for omega in grid.frequencies():
        # Dividing by a power of two is exact, which keeps the band edges bitwise exact.
        gains = gains * scaling_hat(omega / level.scale) ** 2
    return SpectralMultiplier(grid, gains)


def high_pass_multiplier(grid: UniformGrid, J) -> SpectralMultiplier:
    """1 - chi_J: zero on the closed cube Lambda_J, one outside."""
    level = as_level(J)
    inside = np.ones(grid.shape, dtype=bool)
    for omega in grid.frequencies():
        inside = inside & (np.abs(omega / level.scale) <= PASSBAND_EDGE)
    return SpectralMultiplier(grid, np.where(inside, 0.0, 1.0))


def detail_multiplier(grid: UniformGrid, J) -> SpectralMultiplier:
    """q_J = p_{J+1} - p_J, the realization of Q_J on W_J."""
    level = as_level(J)
    finer = MeyerLevel(level.J + 1, level.frequency_unit)
    return projection_multiplier(grid, finer) - projection_multiplier(grid, level)


def apply_projection(spectrum: SpectralField, J) -> SpectralField:
    return projection_multiplier(spectrum.grid, J).apply(spectrum)
