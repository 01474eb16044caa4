"""Pure-Python fallback for the compiled hash core.

Same 64-bit integer semantics as _hashcore.pyx, bit for bit. The FNV fold
is a sequential loop; splitmix64 is position-indexed and therefore done
with vectorized numpy uint64 arithmetic.
"""

import numpy as np

BACKEND = "python"

_MASK = 0xFFFFFFFFFFFFFFFF
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def fnv1a64(data, h0=None):
    """Fold `data` into a 64-bit FNV-1a hash, optionally chaining from h0."""
    h = _FNV_OFFSET if h0 is None else int(h0)
    for b in bytes(data):
        h = ((h ^ b) * _FNV_PRIME) & _MASK
    return h


def splitmix64_fill(seed, out):
    """Fill `out` (uint64 array) with the splitmix64 stream for `seed`."""
    n = out.shape[0]
    idx = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK) + idx * np.uint64(_SPLITMIX_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    out[:] = z ^ (z >> np.uint64(31))
