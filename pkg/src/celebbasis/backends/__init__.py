from .contracts import (
    DenoiserAdapter,
    FaceDetectorAdapter,
    FaceEncoderAdapter,
    ImageScorerAdapter,
    LatentCodec,
    SamplerAdapter,
    TextEncoderAdapter,
)
from .registry import available_backends, create_backend, load_plugin, register_backend
from .synthetic import (
    AdapterBundle,
    MockFaceDetector,
    MockImageScorer,
    SyntheticFaceEncoder,
    SyntheticSampler,
    SyntheticTextEncoder,
    ToyDenoiser,
    ToyLatentCodec,
    synthetic_bundle,
)

__all__ = [
    "AdapterBundle",
    "DenoiserAdapter",
    "FaceDetectorAdapter",
    "FaceEncoderAdapter",
    "ImageScorerAdapter",
    "LatentCodec",
    "MockFaceDetector",
    "MockImageScorer",
    "SamplerAdapter",
    "SyntheticFaceEncoder",
    "SyntheticSampler",
    "SyntheticTextEncoder",
    "TextEncoderAdapter",
    "ToyDenoiser",
    "ToyLatentCodec",
    "available_backends",
    "create_backend",
    "load_plugin",
    "register_backend",
    "synthetic_bundle",
]
