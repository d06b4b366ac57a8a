"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands or configuration disagree on the Hilbert-space dimension."""


class NonHermitianInput(ValueError):
    """Matrix handed to a Hermitian-only routine is not Hermitian."""


class NotPositive(ValueError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class DensityValidationError(ValueError):
    """Base class for density-matrix validation failures."""


class NotHermitian(DensityValidationError):
    pass


class NotUnitTrace(DensityValidationError):
    pass


class NotPSD(DensityValidationError):
    pass


class ZeroWeight(ValueError):
    """Measurement element carries no probability weight."""


class DegenerateParams(ValueError):
    """Parameter vector too close to zero to define a state."""


class EmptySample(ValueError):
    """State sample contains no states."""


class QuadratureNotConverged(RuntimeError):
    """Numeric integration did not stabilize under step refinement."""


class ConfigError(ValueError):
    """Invalid configuration value; ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class ParseError(ValueError):
    """Malformed config file; ``line`` is the 1-based offending line."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
