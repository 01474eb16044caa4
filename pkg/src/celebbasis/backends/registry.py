"""Name-based adapter registry.

Synthetic backends register themselves below; real backends (an actual
diffusion sampler, CLIP scorer, face recognizer, ...) are optional plugins:
a plugin module registers its factories at import time via
`register_backend`, and `load_plugin` imports such a module by name.
Nothing in the test suite requires a real backend to exist.
"""

from __future__ import annotations

import importlib
from typing import Callable

from ..errors import AdapterError
from . import synthetic

_REGISTRY: dict[str, Callable] = {}


def register_backend(name: str, factory: Callable | None = None):
    """Register `factory` under `name`; usable as a decorator."""

    def _register(f):
        if name in _REGISTRY:
            raise AdapterError(f"backend name already registered: {name!r}")
        _REGISTRY[name] = f
        return f

    if factory is not None:
        return _register(factory)
    return _register


def create_backend(name: str, **kwargs):
    try:
        factory = _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise AdapterError(f"unknown backend {name!r} (available: {known})") from None
    return factory(**kwargs)


def available_backends() -> list[str]:
    return sorted(_REGISTRY)


def load_plugin(module_name: str) -> None:
    """Import a plugin module so it can register real backends."""
    try:
        importlib.import_module(module_name)
    except ImportError as exc:
        raise AdapterError(f"cannot load backend plugin {module_name!r}: {exc}") from exc


register_backend("synthetic-text-encoder", synthetic.SyntheticTextEncoder)
register_backend("toy-denoiser", synthetic.ToyDenoiser)
register_backend("synthetic-face-encoder", synthetic.SyntheticFaceEncoder)
register_backend("mock-detector", synthetic.MockFaceDetector)
register_backend("mock-scorer", synthetic.MockImageScorer)
register_backend("synthetic-sampler", synthetic.SyntheticSampler)
register_backend("toy-latent-codec", synthetic.ToyLatentCodec)
