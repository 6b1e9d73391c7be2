"""Reproducible random number streams.

Every sampler in the package takes an :class:`RngState`.  A state is a
(seed, stream) pair mapped through ``numpy``'s ``SeedSequence`` onto a
PCG64 generator, so identical states reproduce identical output
bit-for-bit and independent replicates get independent streams without
coordination.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

ALGORITHM = "pcg64"

SEED_ENV_VAR = "BIMAP_LAB_SEED"
_DEFAULT_SEED = 2024


def default_seed() -> int:
    """Seed from the BIMAP_LAB_SEED environment variable, else 2024."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return _DEFAULT_SEED
    return int(raw, 0)


@dataclass(frozen=True)
class RngState:
    """Seeded, splittable generator state.

    ``stream`` is a replicate index (or tuple of indices for nested
    splits).  Two states differing in any component yield independent
    streams.
    """

    seed: int
    stream: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if isinstance(self.stream, int):
            object.__setattr__(self, "stream", (self.stream,))
        else:
            object.__setattr__(self, "stream", tuple(self.stream))

    @property
    def algorithm(self) -> str:
        return ALGORITHM

    def split(self, *indices: int) -> "RngState":
        """Derived state for a sub-stream, e.g. ``state.split(rep)``."""
        return RngState(self.seed, self.stream + tuple(indices))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream)
        return np.random.Generator(np.random.PCG64(ss))

    def describe(self) -> dict:
        return {"seed": self.seed, "stream": list(self.stream), "algorithm": ALGORITHM}
