"""Exceptions raised by the inversion pipeline.

Every class carries the exit code the command line reports for it.
"""


class TphError(Exception):
    """Base class for all pipeline failures."""

    exit_code = 1


class ShapeMismatch(TphError):
    """Operands or input blocks have incompatible shapes."""

    exit_code = 1


class IndexRangeError(TphError):
    """A family index or Laurent power lies outside its admissible range."""

    exit_code = 1


class ParseError(TphError):
    """An input file could not be read as a problem or matrix file."""

    exit_code = 2


class ZeroSequence(TphError):
    """The generating sequence vanishes identically."""

    exit_code = 3


class DefectUnsupported(TphError):
    """The sequence is right defective (omega > 0) and no fallback applies."""

    exit_code = 3

    def __init__(self, message, omega, table=None):
        super().__init__(message)
        self.omega = omega
        self.table = table


class NotUnimodular(TphError):
    """A polynomial matrix expected to be unimodular has a non-constant or zero determinant."""

    exit_code = 4


class EssentialityViolation(TphError):
    """A column of A(z)R(z) has a nonzero coefficient in its forbidden band."""

    exit_code = 4


class InternalConsistencyError(TphError):
    """A self-check of the structured pipeline failed."""

    exit_code = 4
