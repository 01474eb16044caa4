"""celebbasis: personalize a text-to-image model with a new identity by
fitting coefficients over a PCA basis built from name-token embeddings."""

__version__ = "0.1.0"
