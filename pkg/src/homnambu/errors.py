"""Exception hierarchy shared by every module of the package."""


class HomNambuError(Exception):
    """Base class for all errors raised by homnambu."""


class DimensionError(HomNambuError, ValueError):
    """Vector length, matrix shape or unknown range does not fit."""


class ArityError(HomNambuError, ValueError):
    """Wrong number of arguments for a bracket or cochain."""


class PreconditionError(HomNambuError, ValueError):
    """An operation was called on input violating its hypothesis.

    ``report`` carries the failing :class:`~homnambu.homcore.CheckReport`
    when the violation was detected by a checker.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FormatError(HomNambuError, ValueError):
    """Syntax error in an algebra or cochain file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SemanticError(FormatError):
    """Well-formed file whose content is inconsistent (bad index, duplicate...)."""
