"""Deterministic hashing primitives shared by every synthetic backend.

The hot kernels (FNV-1a byte folding, splitmix64 expansion) live in the
compiled extension `celebbasis._hashcore` when it was built, with a
pure-Python/numpy fallback selected here at import time. Both produce
identical 64-bit results, so the choice never affects outputs, only speed.
Set CELEBBASIS_NO_EXT=1 to force the fallback.
"""

import os

import numpy as np

if os.environ.get("CELEBBASIS_NO_EXT"):
    from . import _hashcore_py as _impl
else:
    try:
        from . import _hashcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _hashcore_py as _impl

BACKEND = _impl.BACKEND

FNV64_OFFSET = 0xCBF29CE484222325
_MASK = 0xFFFFFFFFFFFFFFFF


def _as_buffer(data):
    if isinstance(data, np.ndarray):
        if data.dtype != np.uint8:
            return data.tobytes()
        return np.ascontiguousarray(data).reshape(-1)
    return data


def fnv1a64(data, h0=None):
    """64-bit FNV-1a hash of bytes / uint8 array; chain with h0 to stream."""
    return int(_impl.fnv1a64(_as_buffer(data), h0))


def hash_text(text: str) -> int:
    return fnv1a64(text.encode("utf-8"))


def combine64(*values: int) -> int:
    """Order-sensitive combination of 64-bit values into one hash."""
    h = FNV64_OFFSET
    for v in values:
        h = fnv1a64((int(v) & _MASK).to_bytes(8, "little"), h)
    return h


def splitmix64_array(seed: int, n: int) -> np.ndarray:
    """The first n outputs of the splitmix64 stream seeded by `seed`."""
    out = np.empty(n, dtype=np.uint64)
    _impl.splitmix64_fill(int(seed) & _MASK, out)
    return out


def hash_to_unit_floats(seed: int, n: int) -> np.ndarray:
    """n deterministic float64 values in [-1, 1) derived from `seed`.

    Uses the top 53 bits of each splitmix64 output, so the conversion to
    float is exact and identical everywhere.
    """
    u = splitmix64_array(seed, n)
    return (u >> np.uint64(11)).astype(np.float64) * 2.0**-52 - 1.0
