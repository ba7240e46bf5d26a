class DunklSpectraError(Exception):
    """Base class for all errors raised by dunkl_spectra."""


class DomainError(DunklSpectraError, ValueError):
    """A parameter lies outside the domain of an operation."""


class DegeneracyError(DomainError):
    """An excluded integer difference puts a Gamma pole in a closed form."""


class InsufficientDataError(DomainError):
    """A fit was asked for with too few usable entries."""


class HypothesisError(DunklSpectraError, ValueError):
    """The hypotheses of a spectral theorem fail for the given exponents.

    Args:
        message: Human readable summary
        violated: Names of the violated clauses
    """

    def __init__(self, message, violated=None):
        super().__init__(message)
        self.violated = list(violated or [])


class ConvergenceError(DunklSpectraError, RuntimeError):
    """A numerical procedure did not reach its tolerance."""


EXIT_CODES = {
    DomainError: 2,
    HypothesisError: 4,
    ConvergenceError: 3,
}


def exit_code_for(error: Exception) -> int:
    """Map an exception to the command-line exit status."""
    for error_type, code in EXIT_CODES.items():
        if isinstance(error, error_type):
            return code
    return 1
