"""Exception types raised across the package.

Each class carries the short error name used in reports and by the CLI.
"""


class EhrhartError(Exception):
    """Base class for all package errors."""


class ZeroVector(EhrhartError, ValueError):
    pass


class DegenerateCone(EhrhartError, ValueError):
    pass


class DegenerateFace(EhrhartError, ValueError):
    pass


class DegenerateSimplex(EhrhartError, ValueError):
    pass


class LevelError(EhrhartError, ValueError):
    pass


class DivisionByZero(EhrhartError, ZeroDivisionError):
    pass


class PoleAtZero(EhrhartError, ValueError):
    pass


class NotRational(EhrhartError, ArithmeticError):
    """A quantity that must be rational has non-rational cyclotomic components."""


class FaceDependence(EhrhartError, ArithmeticError):
    """Faces of equal dimension produced different b_r values."""


class NotCoprime(EhrhartError, ValueError):
    pass


class DilationPositive(EhrhartError, ValueError):
    pass


class ReconstructionFailed(EhrhartError, ArithmeticError):
    pass


class CalibrationError(EhrhartError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoProfileMatches(CalibrationError):
    pass


class AmbiguousProfile(CalibrationError):
    pass


# exit code 3 in the CLI: the engine broke one of its own invariants
ENGINE_ERRORS = (NotRational, FaceDependence, ReconstructionFailed)
