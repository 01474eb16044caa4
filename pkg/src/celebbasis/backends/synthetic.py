"""Deterministic synthetic backends.

These stand-ins make the whole pipeline (basis building, coefficient
fitting, generation, evaluation) runnable at desk scale with no model
weights and no network access. All randomness is derived from FNV-1a /
splitmix64 integer streams (see celebbasis.hashing), so every adapter is
bit-deterministic for a fixed seed, across processes and platforms.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np
from PIL import Image

from ..errors import AdapterError
from ..hashing import combine64, fnv1a64, hash_text, hash_to_unit_floats, splitmix64_array

# domain tags keep the integer streams of different adapters disjoint
_TAG_EMBED = 0x45
_TAG_TRANSFORM = 0x54
_TAG_FACE = 0x46
_TAG_SCORE = 0x53
_TAG_LATENT = 0x4C
_TAG_SAMPLE = 0x49


def _hash_image(image: np.ndarray) -> int:
    arr = np.ascontiguousarray(image, dtype=np.uint8)
    return fnv1a64(arr.reshape(-1))


def _float_bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


class SyntheticTextEncoder:
    """Whitespace tokenizer + hashed dictionary + fixed linear conditioner.

    Token ids are FNV-1a hashes of the token text; dictionary embeddings
    are splitmix64 expansions of (seed, token id), so the dictionary is a
    pure lookup that never needs to be stored. The sequence transform is a
    fixed seeded square matrix scaled to be roughly length-preserving.
    """

    deterministic = True
    concurrency_safe = True

    def __init__(self, seed: int = 0, d: int = 768, max_len: int = 77):
        if d < 2:
            raise ValueError(f"embedding dimension must be >= 2, got {d}")
        self.seed = int(seed)
        self.d = int(d)
        self.max_len = int(max_len)
        self.identifier = f"synthetic-text-encoder(seed={seed},d={d},max_len={max_len})"
        w = hash_to_unit_floats(combine64(self.seed, _TAG_TRANSFORM), d * d)
        self._transform_weight = w.reshape(d, d) * np.sqrt(3.0 / d)

    def tokenize(self, text: str) -> list[int]:
        return [hash_text(tok) for tok in text.split()]

    def dictionary_embed(self, token_ids) -> np.ndarray:
        rows = np.empty((len(token_ids), self.d), dtype=np.float32)
        scale = self.d**-0.5
        for i, tid in enumerate(token_ids):
            h = combine64(self.seed, _TAG_EMBED, int(tid))
            rows[i] = (hash_to_unit_floats(h, self.d) * scale).astype(np.float32)
        return rows

    def transform(self, embeddings: np.ndarray) -> np.ndarray:
        return np.asarray(embeddings, dtype=np.float64) @ self._transform_weight

    def transform_vjp(self, upstream: np.ndarray) -> np.ndarray:
        return np.asarray(upstream, dtype=np.float64) @ self._transform_weight.T

    def parameters(self) -> dict[str, np.ndarray]:
        return {"transform_weight": self._transform_weight}


class ToyDenoiser:
    """Small differentiable noise predictor with frozen parameters.

    The condition enters through a per-channel sigmoid gate on z_t, so a
    well-chosen condition lets the model reconstruct most of the injected
    noise while a random one does not: the denoising loss has a genuinely
    reducible component for the coefficient path to optimize. A small
    additive term carries the timestep embedding.
    """

    deterministic = True
    concurrency_safe = True

    def __init__(
        self,
        seed: int = 0,
        channels: int = 4,
        height: int = 8,
        width: int = 8,
        cond_dim: int = 768,
        gate_gain: float = 40.0,
        gate_bias: float = -2.5,
        time_gain: float = 0.02,
    ):
        self.seed = int(seed)
        self.channels = int(channels)
        self.height = int(height)
        self.width = int(width)
        self.cond_dim = int(cond_dim)
        self.identifier = (
            f"toy-denoiser(seed={seed},shape={channels}x{height}x{width},cond_dim={cond_dim})"
        )
        base = combine64(self.seed, _TAG_LATENT, _TAG_TRANSFORM)
        gw = hash_to_unit_floats(combine64(base, 1), channels * cond_dim)
        self._gate_weight = gw.reshape(channels, cond_dim) * (gate_gain / cond_dim)
        self._gate_bias = np.full(channels, float(gate_bias))
        tw = hash_to_unit_floats(combine64(base, 2), channels * 8)
        self._time_weight = tw.reshape(channels, 8) * time_gain

    def _time_embedding(self, t: int) -> np.ndarray:
        omega = 10.0 ** -np.arange(4, dtype=np.float64)
        phase = omega * float(t)
        return np.concatenate([np.sin(phase), np.cos(phase)])

    def _gate(self, cond: np.ndarray) -> np.ndarray:
        c = np.asarray(cond, dtype=np.float64).mean(axis=0)
        logit = self._gate_weight @ c + self._gate_bias
        return 1.0 / (1.0 + np.exp(-logit))

    def predict_noise(self, z_t: np.ndarray, t: int, cond: np.ndarray) -> np.ndarray:
        gate = self._gate(cond)
        tterm = self._time_weight @ self._time_embedding(t)
        return gate[:, None, None] * np.asarray(z_t, dtype=np.float64) + tterm[:, None, None]

    def cond_vjp(
        self, z_t: np.ndarray, t: int, cond: np.ndarray, upstream: np.ndarray
    ) -> np.ndarray:
        cond = np.asarray(cond, dtype=np.float64)
        gate = self._gate(cond)
        dgate = (np.asarray(upstream, dtype=np.float64) * np.asarray(z_t, dtype=np.float64)).sum(
            axis=(1, 2)
        )
        dlogit = dgate * gate * (1.0 - gate)
        dc = self._gate_weight.T @ dlogit
        l = cond.shape[0]
        return np.tile(dc / l, (l, 1))

    def parameters(self) -> dict[str, np.ndarray]:
        return {
            "gate_weight": self._gate_weight,
            "gate_bias": self._gate_bias,
            "time_weight": self._time_weight,
        }

    def force_nudge(self, scale: float = 1e-3) -> None:
        """Deliberately corrupt a frozen parameter. Negative-test hook for
        the frozen-parameter audit; never called by the pipeline."""
        self._gate_weight[0, 0] += scale


class SyntheticFaceEncoder:
    """Unit-norm 512-dim feature derived from the image content hash."""

    deterministic = True
    concurrency_safe = True

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self.identifier = f"synthetic-face-encoder(seed={seed})"

    def extract(self, image: np.ndarray) -> np.ndarray:
        h = combine64(self.seed, _TAG_FACE, _hash_image(image))
        f = hash_to_unit_floats(h, 512)
        # guard the measure-zero all-zero draw; never divides by zero
        f = f / max(float(np.linalg.norm(f)), 1e-12)
        return f.astype(np.float32)

    def parameters(self) -> dict[str, np.ndarray]:
        return {}


class MockFaceDetector:
    """Face detector driven by a configurable rule.

    rule: "always", "never", "hash-even" (detects when the image content
    hash is even), or any callable image -> bool.
    """

    deterministic = True
    concurrency_safe = True

    def __init__(self, rule="always"):
        self._callable = None
        if callable(rule):
            self._callable = rule
            self.rule = getattr(rule, "__name__", "callable")
        elif rule in ("always", "never", "hash-even"):
            self.rule = rule
        else:
            raise AdapterError(f"unknown detector rule: {rule!r}")
        self.identifier = f"mock-detector(rule={self.rule})"

    def detect(self, image: np.ndarray) -> bool:
        if self._callable is not None:
            return bool(self._callable(image))
        if self.rule == "always":
            return True
        if self.rule == "never":
            return False
        return _hash_image(image) % 2 == 0


class MockImageScorer:
    """Cosine similarity between hashed image and text features.

    Image and text content that hash to the same bytes get identical
    features, hence a score of exactly 1.0.
    """

    deterministic = True
    concurrency_safe = True

    def __init__(self, seed: int = 0, dim: int = 256):
        self.seed = int(seed)
        self.dim = int(dim)
        self.identifier = f"mock-scorer(seed={seed},dim={dim})"

    def _feature(self, content_hash: int) -> np.ndarray:
        f = hash_to_unit_floats(combine64(self.seed, _TAG_SCORE, content_hash), self.dim)
        return f / max(float(np.linalg.norm(f)), 1e-12)

    def score(self, image: np.ndarray, text: str) -> float:
        fi = self._feature(_hash_image(image))
        ft = self._feature(fnv1a64(text.encode("utf-8")))
        return float(fi @ ft)


class SyntheticSampler:
    """Deterministic image source: pixels are a splitmix64 stream keyed by
    (condition bytes, seed, sampler params)."""

    deterministic = True
    concurrency_safe = True

    def __init__(self, height: int = 64, width: int = 64):
        self.height = int(height)
        self.width = int(width)
        self.identifier = f"synthetic-sampler({height}x{width})"

    def sample(
        self, condition: np.ndarray, seed: int, steps: int = 30, guidance: float = 7.5
    ) -> np.ndarray:
        cond32 = np.ascontiguousarray(condition, dtype=np.float32)
        h = combine64(
            _TAG_SAMPLE, fnv1a64(cond32.tobytes()), int(seed), int(steps), _float_bits(guidance)
        )
        u = splitmix64_array(h, self.height * self.width * 3)
        pixels = (u >> np.uint64(56)).astype(np.uint8)
        return pixels.reshape(self.height, self.width, 3)


class ToyLatentCodec:
    """Projects an image onto the toy denoiser's latent grid.

    Bilinear resize to the latent resolution, a fixed seeded channel mix,
    then per-image standardization so latents have zero mean and unit
    variance regardless of augmentation.
    """

    deterministic = True
    concurrency_safe = True

    def __init__(self, seed: int = 0, channels: int = 4, height: int = 8, width: int = 8):
        self.seed = int(seed)
        self.channels = int(channels)
        self.height = int(height)
        self.width = int(width)
        self.identifier = f"toy-latent-codec(seed={seed},shape={channels}x{height}x{width})"
        m = hash_to_unit_floats(combine64(self.seed, _TAG_LATENT), channels * 3)
        self._mix = m.reshape(channels, 3)

    def encode(self, image: np.ndarray) -> np.ndarray:
        img = Image.fromarray(np.ascontiguousarray(image, dtype=np.uint8))
        small = np.asarray(img.resize((self.width, self.height), Image.BILINEAR), dtype=np.float64)
        z = np.einsum("kc,hwc->khw", self._mix, small / 255.0)
        z -= z.mean()
        return z / max(float(z.std()), 1e-6)

    def parameters(self) -> dict[str, np.ndarray]:
        return {"mix": self._mix}


@dataclass
class AdapterBundle:
    """Everything the trainer and evaluator need, in one place."""

    text_encoder: object
    denoiser: object
    face_encoder: object
    latent_codec: object
    sampler: object
    scorer: object
    detector: object

    def identifiers(self) -> dict[str, str]:
        return {
            name: getattr(getattr(self, name), "identifier", "?")
            for name in (
                "text_encoder",
                "denoiser",
                "face_encoder",
                "latent_codec",
                "sampler",
                "scorer",
                "detector",
            )
        }


def synthetic_bundle(
    seed: int = 0,
    d: int = 768,
    max_len: int = 77,
    channels: int = 4,
    latent_size: int = 8,
    image_size: int = 64,
    detector_rule="always",
) -> AdapterBundle:
    """A complete, mutually consistent set of synthetic adapters."""
    return AdapterBundle(
        text_encoder=SyntheticTextEncoder(seed=seed, d=d, max_len=max_len),
        denoiser=ToyDenoiser(
            seed=seed, channels=channels, height=latent_size, width=latent_size, cond_dim=d
        ),
        face_encoder=SyntheticFaceEncoder(seed=seed),
        latent_codec=ToyLatentCodec(
            seed=seed, channels=channels, height=latent_size, width=latent_size
        ),
        sampler=SyntheticSampler(height=image_size, width=image_size),
        scorer=MockImageScorer(seed=seed),
        detector=MockFaceDetector(rule=detector_rule),
    )
