"""Exception types shared across the package."""


class ProjFifError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ProjFifError, ValueError):
    """Invalid input data, configuration, or arguments."""


class HyperplaneError(ValidationError):
    """Representative lies on, or numerically too close to, the removed line z = 0."""


class DegenerateIntervalError(ValidationError):
    """Interval endpoints coincide or are out of order."""


class DataOrderingError(ValidationError):
    """Interpolation abscissae are not strictly increasing."""


class ScaleError(ValidationError):
    """Vertical scale factor outside the allowed open unit interval."""


class GridMismatchError(ValidationError):
    """Two sampled graphs do not share the same abscissa grid."""


class GridAlignmentError(ValidationError):
    """Grid nodes do not include every data abscissa."""


class CloudLimitError(ValidationError):
    """Point cloud grew past the configured size cap."""


class ConfigError(ValidationError):
    """Config text could not be parsed or failed semantic validation."""


class ConvergenceError(ProjFifError):
    """Fixed-point iteration stopped before reaching tolerance."""
