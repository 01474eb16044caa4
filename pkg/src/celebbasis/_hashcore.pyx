# cython: language_level=3
"""Compiled integer kernels: FNV-1a folding and splitmix64 expansion.

Both kernels are exact 64-bit integer arithmetic, so results are identical
to the pure-Python implementations in _hashcore_py regardless of platform.
"""

from libc.stdint cimport uint64_t

BACKEND = "cython"

cdef uint64_t FNV_OFFSET = 0xcbf29ce484222325UL
cdef uint64_t FNV_PRIME = 0x100000001b3UL
cdef uint64_t SPLITMIX_GAMMA = 0x9e3779b97f4a7c15UL


def fnv1a64(const unsigned char[::1] data, h0=None):
    """Fold `data` into a 64-bit FNV-1a hash, optionally chaining from h0."""
    cdef uint64_t h = FNV_OFFSET if h0 is None else <uint64_t> h0
    cdef Py_ssize_t i, n = data.shape[0]
    for i in range(n):
        h = (h ^ data[i]) * FNV_PRIME
    return h


def splitmix64_fill(seed, uint64_t[::1] out):
    """Fill `out` with the splitmix64 stream for `seed` (outputs 1..n)."""
    cdef uint64_t s = <uint64_t> seed
    cdef uint64_t z
    cdef Py_ssize_t i, n = out.shape[0]
    for i in range(n):
        z = s + (<uint64_t> (i + 1)) * SPLITMIX_GAMMA
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9UL
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebUL
        out[i] = z ^ (z >> 31)
