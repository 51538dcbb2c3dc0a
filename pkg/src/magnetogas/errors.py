"""Exception and warning types shared across the package."""


class MagnetogasError(Exception):
    """Base class for every error raised by this package."""


class InputError(MagnetogasError, ValueError):
    """Malformed user input: bad flag combinations, unparseable config."""


class DomainError(MagnetogasError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation at a pole (the zeta engine at z = 1)."""


class ThresholdError(DomainError):
    """Evaluation exactly at a Landau-level threshold where the quantity diverges."""


class CapacityError(MagnetogasError, IndexError):
    """Request beyond a fixed table size."""


class ToleranceError(MagnetogasError, RuntimeError):
    """A numerical routine could not meet its tolerance.

    Carries the last iterate so callers can decide whether to proceed:
    attributes best_estimate and error_estimate (either may be None).
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class TruncationError(ToleranceError):
    """A series cap was reached before its tail bound fell below tolerance."""


class DegeneracyWarning(UserWarning):
    """Point is not strongly degenerate; a degenerate-limit formula was applied anyway."""


class ThresholdWarning(UserWarning):
    """Landau threshold hit exactly; a one-sided limit was returned."""
