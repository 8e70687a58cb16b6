"""Exception hierarchy shared across the package."""


class PopinnError(Exception):
    """Base class for all package-specific failures."""


class NumericError(PopinnError):
    """A computation produced a non-finite or otherwise invalid number."""


class CflViolation(NumericError):
    """Explicit upwind step would be unstable for the requested grid."""


class CheckpointError(PopinnError):
    """Checkpoint file is malformed or incompatible with the request."""


class ConfigError(PopinnError):
    """Invalid run configuration (unknown key, bad value, missing input)."""
