"""Exception types raised by the simulation layers."""


class QReflectError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(QReflectError):
    """Invalid user input (units, scenario files, packet placement).

    ``field`` optionally carries the dotted path of the offending config key.
    """

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class NumericalBreakdownError(QReflectError):
    """Tridiagonal elimination hit a (near-)zero pivot."""

    def __init__(self, message: str, step: int | None = None, index: int | None = None):
        self.step = step
        self.index = index
        super().__init__(message)


class StationarityTimeout(QReflectError):
    """Stop rule not satisfied within the hard step cap.

    Carries the partial propagation result in ``partial``.
    """

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class IntegrationFailure(QReflectError):
    """Adaptive ODE integration did not meet its tolerances."""


class EvanescentTransmissionError(QReflectError):
    """Requested scattering energy lies below the constant potential floor."""


class UndefinedTransformError(QReflectError):
    """Energy rescaling requested with zero drive frequency."""


class ExtrapolationUnavailable(QReflectError):
    """Fewer than two maxima detected; asymptotic averaging impossible."""
