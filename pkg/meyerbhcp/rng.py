from typing import Sequence

import numpy as np

# numpy's default bit generator. Recorded in manifests so runs can be reproduced.
BIT_GENERATOR_NAME = 'PCG64'


class SeededNoiseGenerator:
    """
    A numpy Generator seeded from (seed, stream).
    Distinct streams (e.g. sweep cells) get statistically independent noise,
    and the same (seed, stream) always yields the same samples regardless of
    the order in which streams are created.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed
        self.stream = stream
        self._generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))

    def standard_normal(self, shape: Sequence[int]) -> np.ndarray:
        return self._generator.standard_normal(tuple(shape))
