"""Seeded streams of standard-normal draws.

Everything random in this package is pulled from a ``GaussianStream``: a thin
wrapper around numpy's PCG64 generator that fixes the draw protocol (how many
normals an operation consumes, and in which order) so that runs are exactly
reproducible from a single integer seed.  Independent substreams for parallel
or logically separate consumers are derived with :meth:`GaussianStream.spawn`,
which uses numpy's ``SeedSequence`` spawning and is itself deterministic.
"""

from __future__ import annotations

import numpy as np

__all__ = ["GaussianStream"]

_MAX_SEED = 2**64


class GaussianStream:
    """Deterministic stream of N(0, 1) draws.

    Two streams built from the same seed produce identical draws, and the
    concatenation of ``fill(a)`` and ``fill(b)`` equals a single
    ``fill(a + b)``, so consumers may batch requests freely without changing
    the realized noise.

    Parameters
    ----------
    seed : int
        Root seed in ``[0, 2**64)``.
    """

    def __init__(self, seed: int, _seq: np.random.SeedSequence | None = None):
        if _seq is None:
            if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
                raise ValueError(f"seed must be an integer, got {seed!r}")
            if not 0 <= int(seed) < _MAX_SEED:
                raise ValueError(f"seed must be in [0, 2**64), got {seed}")
            _seq = np.random.SeedSequence(int(seed))
        self.seed = int(seed)
        self._seq = _seq
        self._gen = np.random.Generator(np.random.PCG64(_seq))
        self.count_drawn = 0

    def fill(self, n: int) -> np.ndarray:
        """Return the next ``n`` standard-normal draws as a float64 array."""
        n = int(n)
        if n < 0:
            raise ValueError(f"cannot draw a negative number of samples: {n}")
        out = self._gen.standard_normal(n)
        self.count_drawn += n
        return out

    def normal(self) -> float:
        """Return a single standard-normal draw."""
        return float(self.fill(1)[0])

    def spawn(self, k: int) -> list["GaussianStream"]:
        """Derive ``k`` independent child streams.

        Children are independent of each other and of future draws from this
        stream; the derivation is deterministic given the root seed and the
        number of children spawned so far.
        """
        k = int(k)
        if k < 1:
            raise ValueError(f"must spawn at least one child stream, got {k}")
        return [GaussianStream(self.seed, _seq=s) for s in self._seq.spawn(k)]

    def __repr__(self):
        return f"GaussianStream(seed={self.seed}, count_drawn={self.count_drawn})"
