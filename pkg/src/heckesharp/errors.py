"""Exception types. ``DomainError`` subclasses map to CLI exit code 1."""

from .coeffring import NotDivisible  # noqa: F401  (re-export)


class DomainError(Exception):
    pass


class InconsistentDescriptor(DomainError):
    pass


class BlockMismatch(DomainError):
    pass


class InvalidCocycle(DomainError):
    pass


class NotDominant(DomainError, ValueError):
    pass


class InvalidAutomorphism(DomainError, ValueError):
    pass


class ActionMismatch(DomainError, ValueError):
    pass


class NotAGroupAction(DomainError):
    pass


class CheckFailed(DomainError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class UnknownEntry(DomainError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown entry"


class RangeExceeded(DomainError, ValueError):
    pass


class ParseError(Exception):
    """Malformed descriptor input; ``path`` locates the offending JSON node."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
