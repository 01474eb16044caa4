"""Adapter contracts for the heavy externals (text encoder, denoiser, face
models, sampler).

Every adapter declares `identifier` (recorded in run manifests),
`deterministic` and `concurrency_safe` flags, and exposes its frozen state
through `parameters()` so training runs can be audited for unintended
parameter drift. Images are uint8 numpy arrays of shape (H, W, 3)
everywhere.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np


@runtime_checkable
class TextEncoderAdapter(Protocol):
    """Tokenizer + embedding dictionary + sequence transformer."""

    identifier: str
    deterministic: bool
    concurrency_safe: bool
    d: int
    max_len: int

    def tokenize(self, text: str) -> list[int]:
        """Deterministic token ids for `text`, without sequence sentinels."""
        ...

    def dictionary_embed(self, token_ids) -> np.ndarray:
        """Pure dictionary lookup: (n,) token ids -> (n, d) float32."""
        ...

    def transform(self, embeddings: np.ndarray) -> np.ndarray:
        """Sequence conditioner: (l, d) -> (l, d), length-preserving."""
        ...

    def transform_vjp(self, upstream: np.ndarray) -> np.ndarray:
        """Backpropagate a gradient through transform(): (l, d) -> (l, d)."""
        ...

    def parameters(self) -> dict[str, np.ndarray]: ...


@runtime_checkable
class DenoiserAdapter(Protocol):
    """Noise predictor conditioned on a transformed text sequence.

    Always frozen under this package; `cond_vjp` exposes the gradient with
    respect to the condition so the coefficient path can be trained without
    touching denoiser internals.
    """

    identifier: str
    deterministic: bool
    concurrency_safe: bool
    channels: int
    height: int
    width: int
    cond_dim: int

    def predict_noise(self, z_t: np.ndarray, t: int, cond: np.ndarray) -> np.ndarray: ...

    def cond_vjp(
        self, z_t: np.ndarray, t: int, cond: np.ndarray, upstream: np.ndarray
    ) -> np.ndarray: ...

    def parameters(self) -> dict[str, np.ndarray]: ...


@runtime_checkable
class FaceEncoderAdapter(Protocol):
    """512-dim identity feature extractor."""

    identifier: str
    deterministic: bool
    concurrency_safe: bool

    def extract(self, image: np.ndarray) -> np.ndarray:
        """(H, W, 3) uint8 -> (512,) float32. Raises NoFaceError if the
        backend cannot find a face."""
        ...

    def parameters(self) -> dict[str, np.ndarray]: ...


@runtime_checkable
class FaceDetectorAdapter(Protocol):
    identifier: str
    deterministic: bool
    concurrency_safe: bool

    def detect(self, image: np.ndarray) -> bool: ...


@runtime_checkable
class ImageScorerAdapter(Protocol):
    """Image-text similarity scorer used for the prompt metric."""

    identifier: str
    deterministic: bool
    concurrency_safe: bool

    def score(self, image: np.ndarray, text: str) -> float: ...


@runtime_checkable
class SamplerAdapter(Protocol):
    """Turns a transformed condition into an image."""

    identifier: str
    deterministic: bool
    concurrency_safe: bool
    height: int
    width: int

    def sample(
        self, condition: np.ndarray, seed: int, steps: int = 30, guidance: float = 7.5
    ) -> np.ndarray: ...


@runtime_checkable
class LatentCodec(Protocol):
    """Maps a training image onto the denoiser's latent grid."""

    identifier: str
    deterministic: bool
    concurrency_safe: bool
    channels: int
    height: int
    width: int

    def encode(self, image: np.ndarray) -> np.ndarray:
        """(H, W, 3) uint8 -> (channels, height, width) float64 latent."""
        ...

    def parameters(self) -> dict[str, np.ndarray]: ...
