from dataclasses import dataclass

from meyerbhcp.errors import DomainError
from meyerbhcp.grid import RealField
from meyerbhcp.history.metric import Metric
from meyerbhcp.rng import SeededNoiseGenerator


@dataclass(frozen=True)
class NoiseSpec(Metric):
    """
    epsilon: scale of the i.i.d. standard normal perturbation.
    stream: independent noise stream for the same seed, e.g. one per sweep cell.
    """
    epsilon: float
    seed: int = 4
    stream: int = 0

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise DomainError(f'epsilon must be non-negative, got {self.epsilon}')


def add_noise(f: RealField, spec: NoiseSpec) -> RealField:
    """f + epsilon g, g drawn from the generator of (seed, stream)."""
    if spec.epsilon == 0:
        return f
    g = SeededNoiseGenerator(spec.seed, spec.stream).standard_normal(f.grid.shape)
    return RealField(f.grid, f.values + spec.epsilon * g)
