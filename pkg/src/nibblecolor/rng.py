"""Counter-based random numbers keyed by (seed, round, phase, vertex, color).

Every uniform draw is a pure function of its key, so a round's outcome does
not depend on the order in which vertices or colors are visited. The mixing
function is the SplitMix64 finalizer applied once per key component.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

# phase identifiers; distinct streams inside one round
ASSIGN = 1
COIN = 2


def _mix(z):
    z = z ^ (z >> np.uint64(30))
    z = z * _M1
    z = z ^ (z >> np.uint64(27))
    z = z * _M2
    return z ^ (z >> np.uint64(31))


def _absorb(h, x):
    x = np.asarray(x).astype(np.uint64)
    return _mix(h ^ (x * _GOLDEN + np.uint64(0x632BE59BD9B4E019)))


class CounterRNG:
    """Stateless uniform generator; ``uniform(round, phase, u, c)`` broadcasts.

    >>> rng = CounterRNG(42)
    >>> float(rng.uniform(0, ASSIGN, 3, 1)) == float(rng.uniform(0, ASSIGN, 3, 1))
    True
    """

    def __init__(self, seed):
        self.seed = int(seed) & _MASK64
        with np.errstate(over="ignore"):
            self._key = _mix(np.array([self.seed], dtype=np.uint64))[0]

    def bits(self, round_, phase, vertex, color):
        with np.errstate(over="ignore"):
            h = np.asarray(self._key, dtype=np.uint64)
            h = _absorb(h, round_)
            h = _absorb(h, phase)
            h = _absorb(h, vertex)
            h = _absorb(h, color)
        return h

    def uniform(self, round_, phase, vertex, color):
        """Doubles in [0, 1) built from the top 53 bits of the keyed hash."""
        h = self.bits(round_, phase, vertex, color)
        return (h >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def grid(self, round_, phase, n, num_colors):
        """An ``(n, num_colors)`` array of uniforms for one phase of one round."""
        u = np.arange(n, dtype=np.uint64)[:, None]
        c = np.arange(num_colors, dtype=np.uint64)[None, :]
        return self.uniform(round_, phase, u, c)
