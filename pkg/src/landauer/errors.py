"""Exception types raised across the package."""


class LandauerError(Exception):
    """Base class for all package errors."""


class NotHermitian(LandauerError, ValueError):
    pass


class NoConvergence(LandauerError, RuntimeError):
    pass


class DimensionMismatch(LandauerError, ValueError):
    pass


class InvalidBeta(LandauerError, ValueError):
    pass


class DomainError(LandauerError, ValueError):
    pass


class OutOfTableRange(LandauerError, ValueError):
    pass


class PositiveEntropyChange(LandauerError, ValueError):
    pass


class TruncationUnconverged(LandauerError, RuntimeError):
    pass


class ConfigError(LandauerError, ValueError):
    """Malformed environment-model or command configuration."""
