import numpy as np


class StubStream:
    """Feeds a fixed innovation sequence to a sampler (for hand examples)."""

    def __init__(self, z):
        self._z = np.asarray(z, dtype=np.float64)
        self._i = 0

    def fill(self, n):
        out = self._z[self._i:self._i + n]
        assert out.size == n, "stub stream exhausted"
        self._i += n
        return out.copy()

    def normal(self):
        return float(self.fill(1)[0])
