"""Exception hierarchy shared by all modules."""


class HochcalcError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(HochcalcError):
    """Incompatible objects were combined (mixed fields, mixed algebras,
    dimension mismatches)."""


class DomainError(HochcalcError):
    """A precondition on the mathematical domain of an operation failed
    (parity constraints, non-cocycle inputs, bidegree mismatches).

    May carry a ``witness`` attribute pointing at the offending object.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(HochcalcError):
    """An algebra or structure failed validation; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UndefinedCellError(HochcalcError):
    """A spectral-sequence cell or differential was requested outside the
    range where it is defined."""


class NotProvidedError(HochcalcError):
    """The requested map exists but no formula for it is provided; it is
    exposed only through the extension solver."""


class UnsupportedDepthError(HochcalcError):
    """The extension solver does not search at the requested depth."""


class UnsupportedAlgebraError(HochcalcError):
    """The algebra is outside the supported class (e.g. a twisting
    automorphism of infinite order)."""


class InputError(HochcalcError):
    """A parse or structural-validation error in an input document.

    ``path`` addresses the offending location, e.g. ``algebra.products.u.u``.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
