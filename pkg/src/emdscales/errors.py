"""Exception hierarchy.

Every error raised by the library derives from :class:`EmdScalesError`. The
four intermediate classes group errors by the CLI exit code they map to.
"""


class EmdScalesError(Exception):
    """Base class for all library errors."""

    kind = "error"


class DataFormatError(EmdScalesError, ValueError):
    """Malformed input: missing columns, unparsable values, bad ordering."""

    kind = "format"


class OrderingError(DataFormatError):
    """Dates are duplicated or not strictly increasing."""

    kind = "ordering"


class InsufficientDataError(DataFormatError):
    """Too few valid rows to build the requested structure."""

    kind = "insufficient-data"


class NumericalError(EmdScalesError, ArithmeticError):
    """A numerical routine cannot produce a meaningful answer for its input."""

    kind = "numerical"


class DegenerateEnvelopeError(NumericalError):
    kind = "degenerate-envelope"


class DegenerateSignalError(NumericalError):
    kind = "degenerate-signal"


class UnreliableFrequencyError(NumericalError):
    kind = "unreliable-frequency"


class ZeroDispersionError(NumericalError):
    kind = "zero-dispersion"


class InsufficientScalesError(NumericalError):
    kind = "insufficient-scales"


class DegenerateEnergyError(NumericalError):
    kind = "degenerate-energy"


class InsufficientOverlapError(NumericalError):
    kind = "insufficient-overlap"


class ZeroVarianceError(NumericalError):
    kind = "zero-variance"


class ParameterError(EmdScalesError, ValueError):
    """An argument lies outside its documented range."""

    kind = "parameter"


class DataWarning(UserWarning):
    """Non-fatal data problem (dropped rows, uncovered fiscal years, ...)."""
