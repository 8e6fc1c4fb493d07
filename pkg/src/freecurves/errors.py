"""Exception hierarchy shared by every module."""


class FreeCurvesError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(FreeCurvesError, ValueError):
    """Objects of different lattice ranks were combined."""


class PairingError(FreeCurvesError, ValueError):
    """The intersection form is degenerate or the wrong shape."""


class StructureError(FreeCurvesError, ValueError):
    """A cone lacks a property an operation needs (e.g. it contains a line)."""


class PreconditionError(FreeCurvesError, ValueError):
    """Input data violates an operation's hypotheses."""


class DataError(FreeCurvesError, ValueError):
    """A family file or record is malformed or fails validation.

    ``path`` names the offending field, e.g. ``"core[3]"``.
    """

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class FamilyNotFound(FreeCurvesError, KeyError):
    """No family file with the requested label exists."""

    def __str__(self):
        return f"unknown family {self.args[0]!r}"


class DomainError(FreeCurvesError, ValueError):
    """A class lies outside the domain of a census or shift check."""
