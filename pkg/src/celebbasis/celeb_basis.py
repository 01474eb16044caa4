"""The two-part name basis: per-slot mean + orthonormal PCA directions.

An identity is represented as two p-dim coefficient vectors over this
basis; `synthesize_arrays` turns coefficients back into a pair of d-dim
embeddings (mean_k + sum_x a_k[x] * direction_k[x]). The basis is frozen
after construction and persisted in a checksummed binary container.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedding_dictionary import EmbeddingPair, EmbeddingSet, Role
from .errors import DataFormatError
from .fileio import write_bytes_atomic
from .hashing import fnv1a64

MAGIC = b"CELBBAS1"
VERSION = 1
_HEADER = struct.Struct("<8sHIIIIQ")

ORTHONORMALITY_TOL = 1e-6


@dataclass
class BasisComponent:
    """Mean plus top-p orthonormal directions for one name slot."""

    mean: np.ndarray  # (d,) float32
    directions: np.ndarray  # (p, d) float32, rows orthonormal
    explained_variance: np.ndarray  # (p,) float32, nonincreasing

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=np.float32)
        self.directions = np.asarray(self.directions, dtype=np.float32)
        self.explained_variance = np.asarray(self.explained_variance, dtype=np.float32)
        p, d = self.directions.shape
        if self.mean.shape != (d,) or self.explained_variance.shape != (p,):
            raise DataFormatError("basis component shape mismatch")
        ev = self.explained_variance
        if np.any(ev[1:] > ev[:-1]):
            raise DataFormatError("explained variance must be nonincreasing")
        if np.any(ev < 0) or not np.isfinite(ev).all():
            raise DataFormatError("explained variance must be finite and nonnegative")
        b = self.directions.astype(np.float64)
        gram_err = np.abs(b @ b.T - np.eye(p)).max()
        if gram_err > ORTHONORMALITY_TOL:
            raise DataFormatError(f"directions not orthonormal (max |BB^T - I| = {gram_err:.3g})")
        for a in (self.mean, self.directions, self.explained_variance):
            a.flags.writeable = False

    @property
    def p(self) -> int:
        return self.directions.shape[0]

    @property
    def d(self) -> int:
        return self.directions.shape[1]


@dataclass
class CelebBasis:
    """Two basis components playing the first-name and last-name roles.

    Immutable; `m_first`/`m_second` record the deduplicated row counts of
    the source sets and `build_seed` the pipeline seed, for provenance.
    """

    first: BasisComponent
    second: BasisComponent
    m_first: int
    m_second: int
    build_seed: int = 0

    def __post_init__(self):
        if self.first.d != self.second.d or self.first.p != self.second.p:
            raise DataFormatError("basis components disagree on d or p")

    @property
    def d(self) -> int:
        return self.first.d

    @property
    def p(self) -> int:
        return self.first.p

    @property
    def flattened(self) -> bool:
        """True when both slots share one pooled component."""
        return np.array_equal(self.first.directions, self.second.directions) and np.array_equal(
            self.first.mean, self.second.mean
        )


@dataclass
class IdentityCoefficients:
    """Two p-dim coefficient vectors; the entire stored identity.

    Unit norm per group when produced by the identity mapper; `project`
    outputs are deliberately not renormalized.
    """

    a1: np.ndarray
    a2: np.ndarray

    def __post_init__(self):
        self.a1 = np.asarray(self.a1, dtype=np.float64)
        self.a2 = np.asarray(self.a2, dtype=np.float64)
        if self.a1.shape != self.a2.shape or self.a1.ndim != 1:
            raise ValueError("coefficient groups must be 1-D and share length")
        if not (np.isfinite(self.a1).all() and np.isfinite(self.a2).all()):
            raise ValueError("coefficients must be finite")

    @property
    def p(self) -> int:
        return self.a1.shape[0]


def compute_mean(embedding_set: EmbeddingSet) -> np.ndarray:
    """Arithmetic mean over rows, float32."""
    if len(embedding_set) < 1:
        raise DataFormatError("cannot take the mean of an empty set")
    return embedding_set.rows.astype(np.float64).mean(axis=0).astype(np.float32)


def compute_pca(embedding_set: EmbeddingSet, p: int) -> BasisComponent:
    """Top-p principal directions of the mean-centered rows, via SVD.

    Directions are unit-norm right singular vectors, sign-fixed so each
    row's largest-magnitude entry is positive; explained variances are
    singular values squared over (m' - 1). Coefficients are applied to the
    directions directly, so no whitening is performed.
    """
    rows = embedding_set.rows.astype(np.float64)
    m, d = rows.shape
    if m < 2:
        raise DataFormatError(f"PCA needs at least 2 rows, got {m}")
    p_max = min(m - 1, d)
    if not 1 <= p <= p_max:
        raise DataFormatError(
            f"p={p} out of range: must satisfy 1 <= p <= min(m'-1={m - 1}, d={d}) = {p_max}"
        )
    mean = rows.mean(axis=0)
    centered = rows - mean
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    tol = s[0] * max(m, d) * np.finfo(np.float64).eps if s.size else 0.0
    rank = int(np.count_nonzero(s > tol))
    if p > rank:
        raise DataFormatError(
            f"rank-deficient input: requested p={p} but achievable rank is {rank}"
        )
    directions = vt[:p]
    pivot = np.argmax(np.abs(directions), axis=1)
    flip = directions[np.arange(p), pivot] < 0
    directions = np.where(flip[:, None], -directions, directions)
    explained = s[:p] ** 2 / (m - 1)
    return BasisComponent(
        mean=mean.astype(np.float32),
        directions=directions.astype(np.float32),
        explained_variance=explained.astype(np.float32),
    )


def build_basis(
    first: EmbeddingSet, second: EmbeddingSet, p: int, build_seed: int = 0
) -> CelebBasis:
    """Independently decompose both slots into a shared-dimension basis."""
    if first.d != second.d:
        raise DataFormatError("embedding sets disagree on dimension")
    return CelebBasis(
        first=compute_pca(first, p),
        second=compute_pca(second, p),
        m_first=len(first),
        m_second=len(second),
        build_seed=int(build_seed),
    )


def build_flatten_basis(
    first: EmbeddingSet, second: EmbeddingSet, p: int, build_seed: int = 0
) -> CelebBasis:
    """Ablation variant: one component over both slots' rows pooled (and
    deduplicated across slots); the same component serves both name slots."""
    if first.d != second.d:
        raise DataFormatError("embedding sets disagree on dimension")
    rows, ids, seen = [], [], set()
    for part in (first, second):
        for tid, row in zip(part.source_token_ids, part.rows):
            if tid in seen:
                continue
            seen.add(tid)
            ids.append(tid)
            rows.append(row)
    pooled = EmbeddingSet(role=Role.FIRST, rows=np.stack(rows), source_token_ids=ids)
    component = compute_pca(pooled, p)
    return CelebBasis(
        first=component,
        second=component,
        m_first=len(pooled),
        m_second=len(pooled),
        build_seed=int(build_seed),
    )


def synthesize_arrays(
    basis: CelebBasis, a1: np.ndarray, a2: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Eq.-style reconstruction in float64: v_k = mean_k + a_k @ B_k."""
    a1 = np.asarray(a1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    if a1.shape != (basis.p,) or a2.shape != (basis.p,):
        raise DataFormatError(f"coefficient length must be p={basis.p}")
    v1 = basis.first.mean.astype(np.float64) + a1 @ basis.first.directions.astype(np.float64)
    v2 = basis.second.mean.astype(np.float64) + a2 @ basis.second.directions.astype(np.float64)
    return v1, v2


def synthesize_embedding(basis: CelebBasis, coeffs: IdentityCoefficients) -> EmbeddingPair:
    """Coefficients -> (first, second) embedding pair, float32."""
    v1, v2 = synthesize_arrays(basis, coeffs.a1, coeffs.a2)
    return EmbeddingPair(first=v1.astype(np.float32), second=v2.astype(np.float32))


def project(basis: CelebBasis, pair: EmbeddingPair) -> IdentityCoefficients:
    """Inverse of synthesis for in-span vectors: a_k = B_k (v_k - mean_k).

    The result is not renormalized."""
    v1 = np.asarray(pair.first, dtype=np.float64)
    v2 = np.asarray(pair.second, dtype=np.float64)
    if v1.shape != (basis.d,) or v2.shape != (basis.d,):
        raise DataFormatError(f"pair dimension must be d={basis.d}")
    a1 = basis.first.directions.astype(np.float64) @ (v1 - basis.first.mean.astype(np.float64))
    a2 = basis.second.directions.astype(np.float64) @ (v2 - basis.second.mean.astype(np.float64))
    return IdentityCoefficients(a1=a1, a2=a2)


def interpolate(v1: np.ndarray, v2: np.ndarray, lam: float) -> np.ndarray:
    """Exact linear blend lam * v1 + (1 - lam) * v2, lam in [0, 1]."""
    v1 = np.asarray(v1, dtype=np.float64)
    v2 = np.asarray(v2, dtype=np.float64)
    if v1.shape != v2.shape:
        raise ValueError("interpolation endpoints must share shape")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    return lam * v1 + (1.0 - lam) * v2


def _component_bytes(c: BasisComponent) -> bytes:
    return (
        np.ascontiguousarray(c.mean, dtype="<f4").tobytes()
        + np.ascontiguousarray(c.directions, dtype="<f4").tobytes()
        + np.ascontiguousarray(c.explained_variance, dtype="<f4").tobytes()
    )


def serialize_basis(basis: CelebBasis) -> bytes:
    header = _HEADER.pack(
        MAGIC, VERSION, basis.d, basis.p, basis.m_first, basis.m_second, basis.build_seed
    )
    body = header + _component_bytes(basis.first) + _component_bytes(basis.second)
    return body + struct.pack("<I", zlib.crc32(body))


def save_basis(basis: CelebBasis, path) -> None:
    write_bytes_atomic(path, serialize_basis(basis))


def expected_file_size(d: int, p: int) -> int:
    """Container size in bytes for given dimensions."""
    return _HEADER.size + 2 * (d + p * d + p) * 4 + 4


def load_basis(path) -> CelebBasis:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size + 4:
        raise DataFormatError(f"basis file {path} is truncated")
    magic, version, d, p, m_first, m_second, build_seed = _HEADER.unpack(data[: _HEADER.size])
    if magic != MAGIC:
        raise DataFormatError(f"bad magic in basis file {path}: {magic!r}")
    if version != VERSION:
        raise DataFormatError(f"unsupported basis version {version} in {path}")
    if len(data) != expected_file_size(d, p):
        raise DataFormatError(
            f"basis file {path} has {len(data)} bytes, expected {expected_file_size(d, p)}"
        )
    (stored_crc,) = struct.unpack("<I", data[-4:])
    if zlib.crc32(data[:-4]) != stored_crc:
        raise DataFormatError(f"checksum failure in basis file {path}")
    components = []
    offset = _HEADER.size
    for _ in range(2):
        mean = np.frombuffer(data, dtype="<f4", count=d, offset=offset).copy()
        offset += d * 4
        directions = np.frombuffer(data, dtype="<f4", count=p * d, offset=offset).reshape(p, d)
        offset += p * d * 4
        explained = np.frombuffer(data, dtype="<f4", count=p, offset=offset).copy()
        offset += p * 4
        components.append(
            BasisComponent(mean=mean, directions=directions.copy(), explained_variance=explained)
        )
    return CelebBasis(
        first=components[0],
        second=components[1],
        m_first=m_first,
        m_second=m_second,
        build_seed=build_seed,
    )


def basis_fingerprint(basis: CelebBasis) -> int:
    """64-bit fingerprint of the serialized basis; identity checkpoints
    record it so stale checkpoints cannot silently cross bases."""
    return fnv1a64(serialize_basis(basis))
