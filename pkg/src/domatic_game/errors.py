"""Exception hierarchy shared by every module."""


class DomaticGameError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DomaticGameError, ValueError):
    """Bad graph, family or configuration parameters."""


class ParseError(InputError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class CapacityError(DomaticGameError):
    """An exhaustive computation would exceed its configured size guard."""


class IllegalMoveError(DomaticGameError, ValueError):
    pass


class UsageError(DomaticGameError):
    """An operation was called in a state where it is not defined."""


class ApplicabilityError(UsageError):
    """A strategy was asked to play a game it is not defined for."""


class StrategyFault(DomaticGameError):
    def __init__(self, message: str, ply: int):
        self.ply = ply
        super().__init__(f"ply {ply}: {message}")


class NotCoveredError(DomaticGameError):
    """No closed-form value is known for the requested family."""
