"""
Time-dependent thermal diffusivity kappa(t) and the accumulated diffusivity
mu_T(t) = integral of kappa over [t, T].
"""

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Tuple
import csv

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

from meyerbhcp.errors import DomainError, QuadratureFailure

POSITIVITY_SAMPLES = 1024
QUADRATURE_ABS_TOLERANCE = 1e-12
# Must stay above quad's roundoff floor of about 50 eps.
QUADRATURE_REL_TOLERANCE = 1e-12
QUADRATURE_SUBINTERVAL_LIMIT = 200


@dataclass(frozen=True)
class MuValue:
    value: float
    estimated_quadrature_error: float = 0.0

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class DiffusivityProfile:
    """
    A positive diffusivity kappa(t) on [0, horizon].
    Subclasses provide kappa_unchecked() and may override integral().
    """
    horizon: float

    def __post_init__(self):
        if not self.horizon > 0:
            raise DomainError(f'horizon T must be positive, got {self.horizon}')
        self._check_positive()

    def _check_positive(self):
        samples = self.kappa_unchecked(np.linspace(0.0, self.horizon, POSITIVITY_SAMPLES))
        if not np.all(samples > 0):
            raise DomainError(f'{self} is not positive on [0, {self.horizon}]')

    def kappa_unchecked(self, t):
        raise NotImplementedError()

    def integral(self, t: float, s: float) -> MuValue:
        """
        Integral of kappa over [t, s] by adaptive quadrature, accurate to
        max(1e-12, 1e-12 |value|).
        """
        value, abserr, info, *message = quad(
            self.kappa_unchecked, t, s,
            epsabs=QUADRATURE_ABS_TOLERANCE, epsrel=QUADRATURE_REL_TOLERANCE,
            limit=QUADRATURE_SUBINTERVAL_LIMIT, full_output=1,
            points=self.breakpoints(t, s),
        )
        tolerance = max(QUADRATURE_ABS_TOLERANCE, QUADRATURE_REL_TOLERANCE * abs(value))
        if message or abserr > tolerance:
            raise QuadratureFailure(
                f'quadrature failure for {self} on [{t}, {s}]: '
                f'error estimate {abserr:.3g} after {info["neval"]} evaluations')
        return MuValue(value, abserr)

    def breakpoints(self, t: float, s: float):
        return None

    def spec(self) -> str:
        """The --kappa flag value describing this profile."""
        raise NotImplementedError()


@dataclass(frozen=True)
class AffineProfile(DiffusivityProfile):
    """kappa(t) = slope * t + intercept"""
    slope: float = 1.0
    intercept: float = 1.0

    def _check_positive(self):
        if not (self.intercept > 0 and self.slope * self.horizon + self.intercept > 0):
            raise DomainError(f'{self} is not positive on [0, {self.horizon}]')

    def kappa_unchecked(self, t):
        return self.slope * np.asarray(t) + self.intercept

    def integral(self, t: float, s: float) -> MuValue:
        antiderivative = lambda x: 0.5 * self.slope * x * x + self.intercept * x
        return MuValue(antiderivative(s) - antiderivative(t))

    def spec(self) -> str:
        return f'affine:{self.slope!r},{self.intercept!r}'


@dataclass(frozen=True)
class Rational100ExpProfile(DiffusivityProfile):
    """kappa(t) = 1 / (100 + exp(t^2))"""

    def kappa_unchecked(self, t):
        return 1.0 / (100.0 + np.exp(np.square(t)))

    def spec(self) -> str:
        return 'rational100exp'


@dataclass(frozen=True)
class TabulatedProfile(DiffusivityProfile):
    """kappa given at knots, monotone-cubic (PCHIP) interpolated between them."""
    times: Tuple[float, ...] = ()
    values: Tuple[float, ...] = ()
    source: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'times', tuple(float(t) for t in self.times))
        object.__setattr__(self, 'values', tuple(float(v) for v in self.values))
        if len(self.times) < 2 or len(self.times) != len(self.values):
            raise DomainError('a tabulated profile needs at least two (t, kappa) knots')
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise DomainError('tabulated knots must be strictly increasing in t')
        if self.times[0] > 0 or self.times[-1] < self.horizon:
            raise DomainError(f'tabulated knots must cover [0, {self.horizon}]')
        super().__post_init__()

    def _check_positive(self):
        if min(self.values) <= 0:
            raise DomainError('tabulated diffusivity must be positive at every knot')

    @property
    def _interpolator(self) -> PchipInterpolator:
        return _pchip(self.times, self.values)

    def kappa_unchecked(self, t):
        return self._interpolator(t)[()]

    def breakpoints(self, t: float, s: float):
        inside = [x for x in self.times if t < x < s]
        return inside or None

    def spec(self) -> str:
        return f'file:{self.source}'


@lru_cache(maxsize=64)
def _pchip(times: Tuple[float, ...], values: Tuple[float, ...]) -> PchipInterpolator:
    return PchipInterpolator(np.array(times), np.array(values), extrapolate=False)


def _check_time(p: DiffusivityProfile, t: float, upper: float = None):
    upper = p.horizon if upper is None else upper
    if not (0.0 <= t <= upper):
        raise DomainError(f't={t} outside [0, {upper}]')


def kappa_eval(p: DiffusivityProfile, t: float) -> float:
    _check_time(p, t)
    return float(p.kappa_unchecked(t))


def mu(p: DiffusivityProfile, t: float, T: float = None) -> MuValue:
    """mu_T(t): integral of kappa over [t, T]. T defaults to the profile's horizon."""
    T = p.horizon if T is None else T
    _check_time(p, T)
    _check_time(p, t, T)
    if t == T:
        return MuValue(0.0, 0.0)
    return _memoized_mu(p, float(t), float(T))


# lru_cache is safe under concurrent reads and inserts.
@lru_cache(maxsize=4096)
def _memoized_mu(p: DiffusivityProfile, t: float, T: float) -> MuValue:
    return p.integral(t, T)


def profile_from_spec(spec: str, horizon: float) -> DiffusivityProfile:
    """
    Parses `affine:<slope>,<intercept>`, `rational100exp` or `file:<path>`.
    """
    kind, _, argument = spec.partition(':')
    kind = kind.strip().lower()
    if kind == 'affine':
        try:
            slope, intercept = (float(x) for x in argument.split(','))
        except ValueError:
            raise DomainError(f'expected affine:<slope>,<intercept>, got {spec!r}')
        return AffineProfile(horizon=horizon, slope=slope, intercept=intercept)
    if kind == 'rational100exp':
        return Rational100ExpProfile(horizon=horizon)
    if kind == 'file':
        return load_tabulated_csv(Path(argument), horizon)
    raise DomainError(f'unknown diffusivity profile {spec!r}')


def load_tabulated_csv(path: Path, horizon: float) -> TabulatedProfile:
    """Reads a two-column CSV (t, kappa) with a header row."""
    try:
        with open(path, newline='') as f:
            rows = list(csv.reader(f))
    except OSError as e:
        raise DomainError(f'cannot read diffusivity table {path}: {e}')
    if not rows:
        raise DomainError(f'{path} is empty; expected a header row')
    times, values = [], []
    for line_number, row in enumerate(rows[1:], start=2):
        if not row or not ''.join(row).strip():
            continue
        try:
            t, kappa = (float(x) for x in row)
        except ValueError:
            raise DomainError(f'{path}:{line_number}: expected two numeric columns, got {row}')
        times.append(t)
        values.append(kappa)
    return TabulatedProfile(horizon=horizon, times=tuple(times), values=tuple(values), source=str(path))
