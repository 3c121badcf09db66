"""Exception hierarchy shared by all workbench modules."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error raised by tqftlab."""


class DivisionByZero(WorkbenchError, ZeroDivisionError):
    pass


class ConductorOverflow(WorkbenchError, ValueError):
    pass


class ParseError(WorkbenchError, ValueError):
    """Malformed literal, word or file.  ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class UnsupportedParams(WorkbenchError, ValueError):
    pass


class NotCommuting(WorkbenchError, ValueError):
    pass


class GroupMismatch(WorkbenchError, ValueError):
    pass


class NotTwoGroup(WorkbenchError, ValueError):
    pass


class CharacterNotCocycleForm(WorkbenchError, ValueError):
    pass


class NotScalarMultiple(WorkbenchError, ValueError):
    pass


class NotCommutative(WorkbenchError, ValueError):
    pass


class AlgebraMismatch(WorkbenchError, ValueError):
    pass


class WordTypeError(WorkbenchError, TypeError):
    """Boundary mismatch inside a cobordism word."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class SignMismatch(WorkbenchError, ValueError):
    pass


class TwistedInput(WorkbenchError, ValueError):
    pass


class InconsistentBoundaryData(WorkbenchError, ValueError):
    pass


class NotProjectivelyTrivial(WorkbenchError, ValueError):
    pass
