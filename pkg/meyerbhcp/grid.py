"""
Uniform periodic grids and the discrete Fourier transform with the
(2 pi)^(-n/2) normalization, so spectral multipliers can be written exactly as
their continuous counterparts.

Coefficients are stored in numpy's FFT order. frequency_at() is the only place
that turns an integer wave vector into an angular frequency.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Tuple
import math

import numpy as np

from meyerbhcp.errors import GridError, NonRealReconstructionError, WaveVectorOutOfRange

MIN_COUNT = 8
IMAGINARY_RESIDUE_TOLERANCE = 1e-8


@dataclass(frozen=True)
class UniformGrid:
    """
    An n-dimensional periodic lattice: axis i samples [lower[i], upper[i])
    at counts[i] equidistant points.
    """
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'lower', tuple(float(a) for a in self.lower))
        object.__setattr__(self, 'upper', tuple(float(b) for b in self.upper))
        object.__setattr__(self, 'counts', tuple(int(n) for n in self.counts))
        if not (len(self.lower) == len(self.upper) == len(self.counts) >= 1):
            raise GridError('lower, upper and counts must have the same positive length')
        for a, b, n in zip(self.lower, self.upper, self.counts):
            if not b > a:
                raise GridError(f'upper bound {b} must exceed lower bound {a}')
            if n < MIN_COUNT or n & (n - 1):
                raise GridError(f'sample count {n} must be a power of two >= {MIN_COUNT}')
        if not self.cell_volume > 0:
            raise GridError('cell volume must be strictly positive')

    @classmethod
    def cube(cls, lower: float, upper: float, count: int, dim: int = 1) -> 'UniformGrid':
        return cls((lower,) * dim, (upper,) * dim, (count,) * dim)

    @property
    def dim(self) -> int:
        return len(self.counts)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.counts

    @property
    def lengths(self) -> Tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.lower, self.upper))

    @property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(length / n for length, n in zip(self.lengths, self.counts))

    @property
    def cell_volume(self) -> float:
        return reduce(lambda x, y: x * y, self.spacing, 1.0)

    @property
    def frequency_cell_volume(self) -> float:
        return reduce(lambda x, y: x * y, (2 * math.pi / length for length in self.lengths), 1.0)

    @property
    def volume(self) -> float:
        return reduce(lambda x, y: x * y, self.lengths, 1.0)

    def nyquist(self, axis: int) -> float:
        """Largest representable |omega| along the axis."""
        return math.pi * self.counts[axis] / self.lengths[axis]

    @property
    def min_nyquist(self) -> float:
        return min(self.nyquist(i) for i in range(self.dim))

    def axis_coordinates(self, axis: int) -> np.ndarray:
        return self.lower[axis] + self.spacing[axis] * np.arange(self.counts[axis])

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Broadcastable coordinate arrays, one per axis (ij indexing)."""
        return tuple(np.meshgrid(*(self.axis_coordinates(i) for i in range(self.dim)), indexing='ij', sparse=True))

    def axis_wave_numbers(self, axis: int) -> np.ndarray:
        """Integer wave numbers of the axis in storage (FFT) order."""
        n = self.counts[axis]
        return np.fft.fftfreq(n, d=1.0 / n).round().astype(np.int64)

    def axis_frequencies(self, axis: int) -> np.ndarray:
        return frequency_at(self, self.axis_wave_numbers(axis), axis=axis)

    def frequencies(self) -> Tuple[np.ndarray, ...]:
        """Broadcastable angular-frequency arrays aligned with SpectralField.coeffs."""
        return tuple(np.meshgrid(*(self.axis_frequencies(i) for i in range(self.dim)), indexing='ij', sparse=True))

    def frequency_norm_squared(self) -> np.ndarray:
        return sum(w ** 2 for w in self.frequencies()) * np.ones(self.shape)


def frequency_at(grid: UniformGrid, k, axis: int = None):
    """
    Angular frequency omega_i = 2 pi k_i / (b_i - a_i) of the wave vector k.
    With axis given, k holds wave numbers of that single axis.
    """
    if axis is not None:
        k_arr = np.asarray(k)
        n = grid.counts[axis]
        if np.any(k_arr < -n // 2) or np.any(k_arr >= n // 2):
            raise WaveVectorOutOfRange(f'wave number out of [{-n // 2}, {n // 2}) on axis {axis}')
        return 2 * np.pi * k_arr / grid.lengths[axis]

    k_vec = np.atleast_1d(np.asarray(k))
    if k_vec.shape != (grid.dim,):
        raise WaveVectorOutOfRange(f'expected a wave vector of length {grid.dim}, got shape {k_vec.shape}')
    return np.array([frequency_at(grid, k_vec[i], axis=i) for i in range(grid.dim)], dtype=float)


def check_same_grid(*grids: UniformGrid):
    first = grids[0]
    for other in grids[1:]:
        if other != first:
            raise GridError(f'grid mismatch: {first} vs {other}')


@dataclass(frozen=True, eq=False)
class RealField:
    """Physical samples on a grid."""
    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        # Own copy: freezing must not touch the caller's array.
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise GridError(f'values of shape {values.shape} do not match grid shape {self.grid.shape}')
        if not np.all(np.isfinite(values)):
            raise GridError('field contains non-finite values')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_function(cls, grid: UniformGrid, function) -> 'RealField':
        return cls(grid, np.broadcast_to(function(*grid.coordinates()), grid.shape).copy())

    @classmethod
    def zeros(cls, grid: UniformGrid) -> 'RealField':
        return cls(grid, np.zeros(grid.shape))

    def __add__(self, other: 'RealField') -> 'RealField':
        check_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.values + other.values)

    def __sub__(self, other: 'RealField') -> 'RealField':
        check_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.values - other.values)

    def scaled(self, factor: float) -> 'RealField':
        return RealField(self.grid, factor * self.values)

    def l2_norm(self, mask: np.ndarray = None) -> float:
        """
        Discrete L2 norm sqrt(h * sum |f|^2), optionally over a mask.
        Scaled by the largest magnitude so values near the float limit do not overflow.
        """
        values = self.values if mask is None else self.values[mask]
        largest = float(np.max(np.abs(values))) if values.size else 0.0
        if largest == 0.0:
            return 0.0
        return largest * math.sqrt(self.grid.cell_volume * float(np.sum((values / largest) ** 2)))

    def sup_norm(self, mask: np.ndarray = None) -> float:
        values = self.values if mask is None else self.values[mask]
        return float(np.max(np.abs(values))) if values.size else 0.0


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients in storage order; see UniformGrid.frequencies()."""
    grid: UniformGrid
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != self.grid.shape:
            raise GridError(f'coefficients of shape {coeffs.shape} do not match grid shape {self.grid.shape}')
        object.__setattr__(self, 'coeffs', coeffs)

    def multiplied(self, gains: np.ndarray) -> 'SpectralField':
        return SpectralField(self.grid, self.coeffs * gains)

    def coefficient(self, k: Sequence[int]) -> complex:
        """The coefficient of the centered wave vector k."""
        frequency_at(self.grid, k)  # range check
        return complex(self.coeffs[tuple(int(ki) % n for ki, n in zip(k, self.grid.counts))])

    def l2_norm(self) -> float:
        return math.sqrt(self.grid.frequency_cell_volume * float(np.sum(np.abs(self.coeffs) ** 2)))


def _normalization(grid: UniformGrid) -> float:
    return (2 * math.pi) ** (-grid.dim / 2) * grid.cell_volume


def _shift_phase(grid: UniformGrid) -> np.ndarray:
    """exp(-i omega . a): accounts for the grid not starting at the origin."""
    return np.exp(-1j * sum(w * a for w, a in zip(grid.frequencies(), grid.lower)))


def forward_transform(f: RealField) -> SpectralField:
    """
    coeff(k) = (2 pi)^(-n/2) h sum_x f(x) exp(-i omega(k) . x)
    """
    grid = f.grid
    return SpectralField(grid, _normalization(grid) * _shift_phase(grid) * np.fft.fftn(f.values))


def inverse_transform(spectrum: SpectralField) -> RealField:
    grid = spectrum.grid
    if not np.all(np.isfinite(spectrum.coeffs)):
        raise GridError('spectrum contains non-finite coefficients')
    complex_values = np.fft.ifftn(spectrum.coeffs / _shift_phase(grid)) / _normalization(grid)
    residue = float(np.max(np.abs(complex_values.imag))) if complex_values.size else 0.0
    scale = max(1.0, float(np.max(np.abs(complex_values.real))))
    if residue > IMAGINARY_RESIDUE_TOLERANCE * scale:
        raise NonRealReconstructionError(
            f'non-real reconstruction: imaginary residue {residue:.3g} (scale {scale:.3g})')
    return RealField(grid, complex_values.real)


def apply_even_multiplier(f: RealField, gains: np.ndarray) -> np.ndarray:
    """
    Samples of inverse_transform(forward_transform(f).multiplied(gains)) for
    gains with gain(omega) == gain(-omega).
    Runs on the half spectrum of the real-input FFT, so the result is real by
    construction however large the gains; normalization and shift phase cancel.
    Returns a bare array since the caller may still rescale non-finite values.
    """
    grid = f.grid
    if gains.shape != grid.shape:
        raise GridError(f'gains of shape {gains.shape} do not match grid shape {grid.shape}')
    half_gains = gains[..., :grid.counts[-1] // 2 + 1]
    axes = tuple(range(grid.dim))
    with np.errstate(over='ignore', invalid='ignore'):
        return np.fft.irfftn(np.fft.rfftn(f.values, axes=axes) * half_gains, s=grid.shape, axes=axes)


def spectral_derivative(f: RealField, axis: int, order: int = 1) -> RealField:
    omega = f.grid.frequencies()[axis]
    gains = (1j * omega) ** order
    if order % 2:
        # The Nyquist mode has no partner of opposite sign; odd derivatives drop it.
        nyquist_omega = frequency_at(f.grid, -f.grid.counts[axis] // 2, axis=axis)
        gains = np.where(omega == nyquist_omega, 0, gains)
    return inverse_transform(forward_transform(f).multiplied(gains))


def spectral_laplacian(f: RealField) -> RealField:
    return inverse_transform(forward_transform(f).multiplied(-f.grid.frequency_norm_squared()))


def sobolev_norm(spectrum: SpectralField, s: float) -> float:
    """H^s norm (integral of |f^|^2 (1 + |omega|^2)^s)^(1/2)."""
    weights = (1.0 + spectrum.grid.frequency_norm_squared()) ** s
    return math.sqrt(spectrum.grid.frequency_cell_volume * float(np.sum(weights * np.abs(spectrum.coeffs) ** 2)))
