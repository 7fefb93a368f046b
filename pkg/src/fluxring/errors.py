"""Exception types shared by all fluxring modules."""


class FluxringError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FluxringError, ValueError):
    """Input outside the physically meaningful domain of an operation."""


class NoCondensateError(DomainError):
    """Temperature at or above the critical temperature: no pair condensate."""


class ConfigError(FluxringError, ValueError):
    """Inconsistent or unusable configuration (geometry/regime mismatch,
    malformed config file or run options)."""


class TruncationError(FluxringError, RuntimeError):
    """A state sum could not meet its truncation-residual bound."""
