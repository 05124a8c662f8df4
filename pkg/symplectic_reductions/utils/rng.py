"""
Seeded Random Streams

Deterministic, splittable random number generation. Every sampled point in the
toolkit is drawn from a stream derived from one root seed, so a verification run
can be replayed from the seed printed in its witness.
"""

import zlib
from typing import Hashable, Tuple

import numpy as np
from numpy.random import Generator, SeedSequence
from sympy import ImmutableMatrix

from ..exceptions import InvalidParameterError

# Random matrix entries are integers in [-ENTRY_BOUND, ENTRY_BOUND]
ENTRY_BOUND = 9


def _key_code(key: Hashable) -> int:
    if isinstance(key, int) and key >= 0:
        return key
    return zlib.crc32(repr(key).encode("utf-8"))


class SeededRng:
    """
    A reproducible random stream identified by a root seed and a spawn path.

    Child streams obtained with :meth:`spawn` depend only on the root seed and the
    sequence of keys used to reach them, never on how much the parent has drawn.
    """

    def __init__(self, seed: int = 0, path: Tuple[int, ...] = ()):
        if not isinstance(seed, int) or seed < 0:
            raise InvalidParameterError(f"seed must be a non-negative integer, got {seed!r}")
        self.seed = seed
        self.path = tuple(path)
        self._generator: Generator = np.random.default_rng(
            SeedSequence(seed, spawn_key=self.path)
        )

    def spawn(self, key: Hashable) -> "SeededRng":
        """Derive an independent child stream for ``key``."""
        return SeededRng(self.seed, self.path + (_key_code(key),))

    def integer(self, low: int, high: int) -> int:
        """Draw an integer in the closed interval [low, high]."""
        return int(self._generator.integers(low, high + 1))

    def integer_matrix(self, rows: int, cols: int, bound: int = ENTRY_BOUND) -> ImmutableMatrix:
        """
        Draw a rows x cols matrix of integers in [-bound, bound].

        Args:
            rows: Number of rows (may be 0)
            cols: Number of columns (may be 0)
            bound: Absolute bound on the entries

        Returns:
            ImmutableMatrix: Exact integer matrix
        """
        values = self._generator.integers(-bound, bound + 1, size=(rows, cols))
        return ImmutableMatrix(rows, cols, [int(v) for v in values.flat])

    def describe(self) -> str:
        """Seed and spawn path, for witnesses."""
        return f"{self.seed}/{'.'.join(str(p) for p in self.path) or 'root'}"

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed}, path={self.path})"
