"""Exception hierarchy. CLI exit codes: usage errors exit 2 (argparse),
DataFormatError and ValueError exit 3, AdapterError exits 4."""


class CelebBasisError(Exception):
    """Base class for all package errors."""


class DataFormatError(CelebBasisError):
    """Bad input data or on-disk format: corrupt files, rank/dimension
    violations, fingerprint mismatches, empty inputs."""


class CompositionError(CelebBasisError):
    """A name does not yield two embeddings with distinct token ids."""


class AdapterError(CelebBasisError):
    """A backend adapter failed or is unavailable."""


class NoFaceError(AdapterError):
    """A face encoder or detector found no face in the image."""


class TrainingDivergedError(CelebBasisError):
    """Non-finite loss or gradient; training aborts with diagnostics."""
